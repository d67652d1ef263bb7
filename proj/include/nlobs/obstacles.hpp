#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nlobs/field.hpp"
#include "nlobs/geometry.hpp"

namespace nlobs {

using ScalarFn = std::function<double(const Point&)>;

/// Obstacle pair and exterior data: psi_minus <= psi_plus, both equal to
/// phi outside the domain, Lipschitz with constant c1, gap bounded by
/// 2*c1*d inside.
struct ObstacleSet {
    ScalarFn psi_plus;
    ScalarFn psi_minus;
    ScalarFn phi;
    double c1 = 1.0;          // Lipschitz constant
    double sup_bound = 1.0;   // bound on |psi|, |phi|
    Domain domain;
    std::string preset_name;
    // twice differentiable on a two-sided boundary collar of this width
    // (0 when the obstacles are only Lipschitz across the boundary)
    double smooth_collar = 0.0;
};

/// phi = 0 and psi = +/- rho, rho the distance to the boundary extended by
/// zero outside.  The canonical Lipschitz, non-C1 example.
ObstacleSet preset_distance_obstacles(const Domain& domain);

/// Same shape but rounded across the boundary so psi are C^2 on a collar
/// of the given width (default 0.1) in the whole space.
ObstacleSet preset_smoothed_distance_obstacles(const Domain& domain, double collar_width = 0.1);

/// psi = +/- level with phi = 0; only pairs with large domains where the
/// obstacles stay far from the data (used to exercise machinery).
ObstacleSet preset_constant_obstacles(const Domain& domain, double level = 1.0);

/// Obstacles pushed out to +/- scale so they never bind.
ObstacleSet preset_inactive_obstacles(const Domain& domain, double scale = 10.0);

/// Discrete mollification: weights proportional to
/// exp(-1/(1-|y/eps|^2)) on |y| < eps, renormalized on the lattice to unit
/// mass, so constants are reproduced exactly.
struct Mollifier {
    double eps = 0.0;
    double h = 0.0;
    int dim = 1;
    std::vector<std::array<long, 2>> offsets;
    std::vector<double> weights;  // sum to exactly 1

    double apply(const ScalarFn& f, const Point& x) const;
};

Mollifier build_mollifier(const Grid& grid, double eps);

/// A mollified function: sampled field plus the off-grid callable.
struct MollifiedFn {
    Field field;
    ScalarFn fn;
};

/// Mollifies a callable on the grid; requires eps > 2h.
MollifiedFn mollify(const ScalarFn& f, double eps, const Grid& grid);

/// The smoothed obstacle triple at radius eps, posed on the dilated domain.
struct MollifiedObstacles {
    double eps = 0.0;
    MollifiedFn psi_plus;
    MollifiedFn psi_minus;
    MollifiedFn phi;
    Domain domain_eps;  // dilation of the base domain by eps
    const ObstacleSet* base = nullptr;
};

MollifiedObstacles mollify_obstacles(const ObstacleSet& set, double eps, const Grid& grid);

/// Blended obstacles for boundary experiments: the raw pair near the
/// boundary (where it is C^2), the mollified pair inside, glued by a
/// smooth cutoff supported on the outer collar.  Posed on the base domain
/// (no dilation) with the raw exterior data.
struct BlendedObstacles {
    double eps = 0.0;
    double w = 0.0, w1 = 0.0, w2 = 0.0;  // collar widths, w > w1 > w2
    ScalarFn zeta;                        // 1 on {|d| < w1}, 0 off {|d| < w}
    ScalarFn psi_plus;
    ScalarFn psi_minus;
    double gap_floor = 0.0;  // min of raw gap over {d >= w2}
    const ObstacleSet* base = nullptr;
};

/// Throws when collars are not strictly nested or the measured gap floor
/// is not positive.
BlendedObstacles blend(const ObstacleSet& set, const MollifiedObstacles& m, const Grid& grid,
                       double w, double w1, double w2);

/// Admissibility report: Lipschitz bound, gap bound, and one-sided
/// second-difference bounds on interior margins.
struct ObstacleReport {
    bool lipschitz_ok = true;
    double measured_lipschitz = 0.0;
    bool gap_ok = true;
    double worst_gap_margin = 0.0;  // min of 2*c1*d - (psi+ - psi-) over interior
    struct MarginEntry {
        double margin = 0.0;    // eps
        double c_semiconcave = 0.0;  // smallest working constant for the margin
    };
    std::vector<MarginEntry> semiconcavity;
    std::vector<std::string> notes;
    bool pass() const { return lipschitz_ok && gap_ok; }
};

ObstacleReport verify_obstacles(const ObstacleSet& set, const Grid& grid,
                                const std::vector<double>& margins);

/// Mollification quality report: uniform distance to the raw obstacles,
/// difference-quotient bound, ordering and agreement with the mollified
/// exterior data outside the dilated domain.
struct MollifiedReport {
    double sup_dev_plus = 0.0;   // sup |psi_eps+ - psi+|
    double sup_dev_minus = 0.0;
    bool dev_ok = true;          // both <= c1 * eps
    double max_quotient = 0.0;   // largest first difference quotient magnitude
    bool quotient_ok = true;     // <= c1 * (1 + 1e-6)
    bool ordered_ok = true;      // psi_eps- < psi_eps+ on the dilated interior
    bool exterior_ok = true;     // psi_eps = phi_eps outside the dilated domain
    bool pass() const { return dev_ok && quotient_ok && ordered_ok && exterior_ok; }
};

MollifiedReport verify_mollified(const MollifiedObstacles& m, const ObstacleSet& set);

}  // namespace nlobs
