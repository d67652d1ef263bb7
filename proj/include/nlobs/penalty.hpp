#pragma once

#include <stdexcept>

#include "nlobs/field.hpp"
#include "nlobs/obstacles.hpp"

namespace nlobs {

/// One-sided penalty at scale delta: zero on (-inf, 0], linear t/delta
/// beyond delta, glued by the unique monotone C^1 cubic bridge.  The slope
/// is bounded by 4/(3*delta).
struct PenaltyFn {
    double delta = 0.0;

    explicit PenaltyFn(double d) : delta(d) {
        if (!(d > 0.0)) throw std::invalid_argument("penalty: requires delta > 0");
    }

    double value(double t) const {
        if (t <= 0.0) return 0.0;
        if (t >= delta) return t / delta;
        const double r = t / delta;
        return 2.0 * r * r - r * r * r;
    }
    double slope(double t) const {
        if (t <= 0.0) return 0.0;
        if (t >= delta) return 1.0 / delta;
        return t * (4.0 * delta - 3.0 * t) / (delta * delta * delta);
    }
    double max_slope() const { return 4.0 / (3.0 * delta); }
};

inline double beta_eval(const PenaltyFn& p, double t) { return p.value(t); }
inline double beta_deriv(const PenaltyFn& p, double t) { return p.slope(t); }

/// Pointwise penalized residual -Iu - f - beta(psi_eps^- - u) + beta(u - psi_eps^+)
/// on the given nodes; other entries are zero.
Field penal_residual(const Field& u, const Field& Iu, const Field& f,
                     const MollifiedObstacles& m, const PenaltyFn& p,
                     const std::vector<std::size_t>& nodes);

}  // namespace nlobs
