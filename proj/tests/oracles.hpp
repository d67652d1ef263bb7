#pragma once

// Brute-force reference computations used only by tests.  These evaluate the
// defining integrals directly from analytic function values on fine lattices,
// independent of the quadrature machinery they are checking.

#include <cmath>
#include <functional>

namespace oracles {

// int delta_u(x,y) K(y) dy in 1D by plain fine-lattice midpoint summation with
// an analytic far-field term: u is assumed equal to `far(x)` for |arg| > r_far.
inline double linear_1d(const std::function<double(double)>& u, double x,
                        const std::function<double(double)>& kernel, double s, double hh,
                        double R, const std::function<double(double)>& far) {
    double acc = 0.0;
    const double u0 = u(x);
    for (double y = 0.5 * hh; y < R; y += hh)
        acc += (u(x + y) + u(x - y) - 2.0 * u0) * kernel(y) * hh * 2.0;
    // far tail: exact for kernels proportional to |y|^{-1-2s}
    const double kmult = kernel(R) * std::pow(R, 1.0 + 2.0 * s);
    double tail_const = (far(x + 2.0 * R) + far(x - 2.0 * R) - 2.0 * u0);
    acc += tail_const * kmult * std::pow(R, -2.0 * s) / s;
    return acc;
}

// Extremal operator at one point in 1D: (1-s) * int (up*d^+ - dn*d^-) |y|^{-1-2s} dy
inline double pucci_1d(const std::function<double(double)>& u, double x, double s, double up,
                       double dn, double hh, double R, double u_far) {
    double acc = 0.0;
    const double u0 = u(x);
    for (double y = 0.5 * hh; y < R; y += hh) {
        const double d = u(x + y) + u(x - y) - 2.0 * u0;
        acc += (d >= 0.0 ? up * d : dn * d) * std::pow(y, -1.0 - 2.0 * s) * hh * 2.0;
    }
    const double dtail = 2.0 * u_far - 2.0 * u0;
    acc += (dtail >= 0.0 ? up * dtail : dn * dtail) * std::pow(R, -2.0 * s) / s;
    return (1.0 - s) * acc;
}

}  // namespace oracles
