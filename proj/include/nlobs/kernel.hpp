#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nlobs/geometry.hpp"

namespace nlobs {

/// Ellipticity data for the comparable-kernel class: kernels sandwiched
/// between (1-s)*lambda*|y|^{-n-2s} and (1-s)*Lambda*|y|^{-n-2s}.
struct EllipticityParams {
    double lambda = 1.0;
    double Lambda = 1.0;
    double s = 0.5;
    double s0 = 0.25;

    void validate() const;
};

enum class KernelKind { fractional, homogeneous, callable };

/// Symmetric positive kernel K(y) of a linear nonlocal operator.
///
/// Variants:
///  - fractional:  K(y) = c * |y|^{-n-2s} with the standard normalization
///    c = 4^s Gamma(n/2+s) / (pi^{n/2} |Gamma(-s)|), so the operator is
///    exactly -(-Laplace)^s.
///  - homogeneous: K(y) = a(y/|y|) * |y|^{-n-2s}, a piecewise constant over
///    2m equal angular sectors with a(theta+pi) = a(theta).
///  - callable:    arbitrary symmetric positive K given as a function.
struct KernelSpec {
    KernelKind kind = KernelKind::fractional;
    int dim = 1;
    double s = 0.5;
    double c = 0.0;                  // fractional normalization
    std::vector<double> a;           // homogeneous: 2m sector values
    std::function<double(const Point&)> fn;  // callable variant

    double operator()(const Point& y) const;
    /// K(y) * |y|^{n+2s}: the local multiplier against the pure power law.
    double power_multiplier(const Point& y) const;
    /// Angular value for a unit direction (homogeneous / fractional).
    double angular(double theta) const;
    /// Total angular mass: integral of the angular part over directions
    /// (2c in 1D, integral of a(theta) over the circle in 2D).
    double angular_mass() const;
};

/// The standard fractional Laplacian normalization c_{n,s}.
double frac_normalization(int dim, double s);

/// Kernel of -(-Laplace)^s in dimension n.  Throws for s outside (0,1).
KernelSpec frac_kernel(int dim, double s);

/// Homogeneous kernel from 2m sector values (theta in [0, 2pi) split
/// evenly); values for opposite sectors must agree.
KernelSpec homogeneous_kernel(int dim, double s, const std::vector<double>& sector_values);

KernelSpec callable_kernel(int dim, double s, std::function<double(const Point&)> fn);

/// Closed-form tail mass: integral of K over {|y| > R}.
/// Throws for R <= 0 or a non-power-law variant.
double tail_mass(const KernelSpec& k, double R);

/// Report of the comparability check against the power-law sandwich.
struct L0Report {
    bool pass = true;
    std::size_t checked = 0;
    std::vector<std::string> violations;  // one line per failing sample
    double worst_low = 0.0;   // most negative margin K - lower bound
    double worst_high = 0.0;  // most negative margin upper bound - K
};

/// Verifies (1-s)*lambda*|y|^{-n-2s} <= K(y) <= (1-s)*Lambda*|y|^{-n-2s}
/// at every sample.  Violations are reported, not thrown.
L0Report l0_check(const KernelSpec& k, const EllipticityParams& p,
                  const std::vector<Point>& samples, double rel_slack = 1e-12);

}  // namespace nlobs
