#include "nlobs/obstacles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace nlobs {

namespace {

double rho_plus(const Domain& dom, const Point& x) {
    return std::max(dom.signed_distance(x), 0.0);
}

// C^2 rounding profile: 0 for t <= 0, t - w/2 for t >= w, quartic bridge
// between; |q'| <= 1 and q'' vanishes at both junctions.
double rounded_profile(double t, double w) {
    if (t <= 0.0) return 0.0;
    if (t >= w) return t - 0.5 * w;
    const double t2 = t * t, t3 = t2 * t;
    return t3 / (w * w) - t3 * t / (2.0 * w * w * w);
}

}  // namespace

ObstacleSet preset_distance_obstacles(const Domain& domain) {
    ObstacleSet s;
    s.domain = domain;
    s.preset_name = "distance";
    const Domain dom = domain;
    s.psi_plus = [dom](const Point& x) { return rho_plus(dom, x); };
    s.psi_minus = [dom](const Point& x) { return -rho_plus(dom, x); };
    s.phi = [](const Point&) { return 0.0; };
    s.c1 = 1.0;
    s.sup_bound = domain.kind == DomainKind::interval ? 0.5 * (domain.b - domain.a) : domain.radius;
    s.smooth_collar = 0.0;
    return s;
}

ObstacleSet preset_smoothed_distance_obstacles(const Domain& domain, double collar_width) {
    if (!(collar_width > 0.0))
        throw std::invalid_argument("smoothed obstacles: collar width must be positive");
    ObstacleSet s;
    s.domain = domain;
    s.preset_name = "smoothed_distance";
    const Domain dom = domain;
    const double w = collar_width;
    s.psi_plus = [dom, w](const Point& x) { return rounded_profile(dom.signed_distance(x), w); };
    s.psi_minus = [dom, w](const Point& x) { return -rounded_profile(dom.signed_distance(x), w); };
    s.phi = [](const Point&) { return 0.0; };
    s.c1 = 1.0;
    const double inr = domain.kind == DomainKind::interval ? 0.5 * (domain.b - domain.a) : domain.radius;
    s.sup_bound = rounded_profile(inr, w);
    s.smooth_collar = w;
    return s;
}

ObstacleSet preset_constant_obstacles(const Domain& domain, double level) {
    ObstacleSet s;
    s.domain = domain;
    s.preset_name = "constant";
    s.psi_plus = [level](const Point&) { return level; };
    s.psi_minus = [level](const Point&) { return -level; };
    s.phi = [](const Point&) { return 0.0; };
    s.c1 = 1.0;
    s.sup_bound = level;
    return s;
}

ObstacleSet preset_inactive_obstacles(const Domain& domain, double scale) {
    ObstacleSet s = preset_constant_obstacles(domain, scale);
    s.preset_name = "inactive";
    return s;
}

Mollifier build_mollifier(const Grid& grid, double eps) {
    if (!(eps > 2.0 * grid.h))
        throw std::invalid_argument("mollifier: under-resolved, requires eps > 2h");
    Mollifier m;
    m.eps = eps;
    m.h = grid.h;
    m.dim = grid.dim;
    const long R = static_cast<long>(std::floor(eps / grid.h));
    double total = 0.0;
    for (long i = -R; i <= R; ++i) {
        const long jmax = grid.dim == 2 ? R : 0;
        for (long j = -jmax; j <= jmax; ++j) {
            const double r = std::hypot(static_cast<double>(i), static_cast<double>(j)) * grid.h;
            const double t = r / eps;
            if (t >= 1.0) continue;
            const double w = std::exp(-1.0 / (1.0 - t * t));
            m.offsets.push_back({i, j});
            m.weights.push_back(w);
            total += w;
        }
    }
    for (double& w : m.weights) w /= total;
    return m;
}

double Mollifier::apply(const ScalarFn& f, const Point& x) const {
    double acc = 0.0;
    for (std::size_t q = 0; q < offsets.size(); ++q) {
        const Point y = {x[0] - static_cast<double>(offsets[q][0]) * h,
                         x[1] - static_cast<double>(offsets[q][1]) * h};
        acc += weights[q] * f(y);
    }
    return acc;
}

MollifiedFn mollify(const ScalarFn& f, double eps, const Grid& grid) {
    Mollifier m = build_mollifier(grid, eps);
    MollifiedFn out;
    out.fn = [m, f](const Point& x) { return m.apply(f, x); };
    out.field = Field::from_callable(grid, out.fn, ExteriorData::callable(out.fn, 0.0));
    return out;
}

MollifiedObstacles mollify_obstacles(const ObstacleSet& set, double eps, const Grid& grid) {
    MollifiedObstacles m;
    m.eps = eps;
    m.base = &set;
    m.domain_eps = set.domain.dilated(eps);
    m.psi_plus = mollify(set.psi_plus, eps, grid);
    m.psi_minus = mollify(set.psi_minus, eps, grid);
    m.phi = mollify(set.phi, eps, grid);
    // beyond the halo the mollified obstacles agree with the mollified data
    const double bound = set.sup_bound;
    auto phi_fn = m.phi.fn;
    auto ext = ExteriorData::callable(phi_fn, bound);
    m.psi_plus.field.exterior = ext;
    m.psi_minus.field.exterior = ext;
    m.phi.field.exterior = ext;
    return m;
}

namespace {

double smooth_step(double t) {
    auto sigma = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
    const double a = sigma(t), b = sigma(1.0 - t);
    return a / (a + b);
}

}  // namespace

BlendedObstacles blend(const ObstacleSet& set, const MollifiedObstacles& m, const Grid& grid,
                       double w, double w1, double w2) {
    if (!(w > w1 && w1 > w2 && w2 > 0.0))
        throw std::invalid_argument("blend: collars must be strictly nested, w > w1 > w2 > 0");
    if (set.smooth_collar > 0.0 && w > set.smooth_collar + 1e-12)
        throw std::invalid_argument("blend: outer collar exceeds the obstacles' smooth collar");
    if (m.eps > w1 - w2)
        throw std::invalid_argument("blend: mollification radius too large for the collars");

    BlendedObstacles b;
    b.eps = m.eps;
    b.w = w;
    b.w1 = w1;
    b.w2 = w2;
    b.base = &set;

    const Domain dom = set.domain;
    b.zeta = [dom, w, w1](const Point& x) {
        const double ad = std::abs(dom.signed_distance(x));
        if (ad <= w1) return 1.0;
        if (ad >= w) return 0.0;
        return smooth_step((w - ad) / (w - w1));
    };

    auto mk = [&](const ScalarFn& raw, const ScalarFn& moll) -> ScalarFn {
        auto zeta = b.zeta;
        return [zeta, raw, moll](const Point& x) {
            const double z = zeta(x);
            if (z >= 1.0) return raw(x);
            if (z <= 0.0) return moll(x);
            return z * raw(x) + (1.0 - z) * moll(x);
        };
    };
    b.psi_plus = mk(set.psi_plus, m.psi_plus.fn);
    b.psi_minus = mk(set.psi_minus, m.psi_minus.fn);

    // gap floor over {d >= w2} and the off-collar blend gap
    double c = std::numeric_limits<double>::infinity();
    for (std::size_t f : grid.interior_nodes()) {
        const Point x = grid.position(grid.unflat(f));
        if (dom.signed_distance(x) >= w2)
            c = std::min(c, set.psi_plus(x) - set.psi_minus(x));
    }
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("blend: gap floor c <= 0");
    b.gap_floor = c;

    for (std::size_t f : grid.interior_nodes()) {
        const Point x = grid.position(grid.unflat(f));
        if (dom.signed_distance(x) >= w1) {
            const double gap = b.psi_plus(x) - b.psi_minus(x);
            if (gap < c * (1.0 - 1e-9))
                throw std::logic_error("blend: gap floor violated off the inner collar");
        }
    }
    return b;
}

ObstacleReport verify_obstacles(const ObstacleSet& set, const Grid& grid,
                                const std::vector<double>& margins) {
    ObstacleReport rep;
    const Grid& g = grid;

    // (a) Lipschitz bound over sampled node pairs
    std::mt19937 rng(2024);
    std::uniform_int_distribution<std::size_t> pick(0, g.node_count() - 1);
    double lip = 0.0;
    auto probe = [&](const Point& x, const Point& y) {
        const double dist = std::hypot(x[0] - y[0], x[1] - y[1]);
        if (dist == 0.0) return;
        for (const ScalarFn* f : {&set.psi_plus, &set.psi_minus, &set.phi})
            lip = std::max(lip, std::abs((*f)(x) - (*f)(y)) / dist);
    };
    for (std::size_t f = 0; f < g.node_count(); ++f) {
        const auto k = g.unflat(f);
        const Point x = g.position(k);
        for (long di : {1L, 3L}) {
            std::array<long, 2> k2{k[0] + di, k[1]};
            if (g.in_box(k2)) probe(x, g.position(k2));
            if (g.dim == 2) {
                std::array<long, 2> k3{k[0], k[1] + di};
                if (g.in_box(k3)) probe(x, g.position(k3));
            }
        }
    }
    for (int it = 0; it < 20000; ++it) {
        const auto a = g.unflat(pick(rng)), b = g.unflat(pick(rng));
        probe(g.position(a), g.position(b));
    }
    rep.measured_lipschitz = lip;
    rep.lipschitz_ok = lip <= set.c1 * (1.0 + 1e-9);

    // (b) gap bound 0 < psi+ - psi- <= 2*c1*d at interior nodes
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t f : g.interior_nodes()) {
        const Point x = g.position(g.unflat(f));
        const double gap = set.psi_plus(x) - set.psi_minus(x);
        const double d = set.domain.signed_distance(x);
        if (!(gap > 0.0)) rep.gap_ok = false;
        worst = std::min(worst, 2.0 * set.c1 * d - gap);
    }
    rep.worst_gap_margin = worst;
    if (worst < -1e-12) rep.gap_ok = false;

    // (c) one-sided second-difference bounds per interior margin
    for (double eps : margins) {
        double cbest = 0.0;
        for (std::size_t f : g.interior_nodes()) {
            const auto k = g.unflat(f);
            const Point x = g.position(k);
            const double d = set.domain.signed_distance(x);
            if (d < 2.0 * eps) continue;
            const long R = static_cast<long>(std::floor((d - eps) / g.h));
            for (long i = -R; i <= R; ++i) {
                const long jmax = g.dim == 2 ? R : 0;
                for (long j = (g.dim == 2 ? -R : (i <= 0 ? 1 : 0)); j <= jmax; ++j) {
                    if (i == 0 && j == 0) continue;
                    const double ry =
                        std::hypot(static_cast<double>(i), static_cast<double>(j)) * g.h;
                    if (ry > d - eps) continue;
                    const Point y{static_cast<double>(i) * g.h, static_cast<double>(j) * g.h};
                    const Point xp{x[0] + y[0], x[1] + y[1]}, xm{x[0] - y[0], x[1] - y[1]};
                    const double dp = set.psi_plus(xp) + set.psi_plus(xm) - 2.0 * set.psi_plus(x);
                    const double dm = set.psi_minus(xp) + set.psi_minus(xm) - 2.0 * set.psi_minus(x);
                    cbest = std::max(cbest, std::max(dp, -dm) / (ry * ry));
                }
            }
        }
        rep.semiconcavity.push_back({eps, cbest});
    }
    return rep;
}

MollifiedReport verify_mollified(const MollifiedObstacles& m, const ObstacleSet& set) {
    MollifiedReport rep;
    const Grid& g = *m.psi_plus.field.grid;
    const double c1 = set.c1;

    for (std::size_t f = 0; f < g.node_count(); ++f) {
        const Point x = g.position(g.unflat(f));
        rep.sup_dev_plus =
            std::max(rep.sup_dev_plus, std::abs(m.psi_plus.field.values[f] - set.psi_plus(x)));
        rep.sup_dev_minus =
            std::max(rep.sup_dev_minus, std::abs(m.psi_minus.field.values[f] - set.psi_minus(x)));
    }
    rep.dev_ok = rep.sup_dev_plus <= c1 * m.eps * (1.0 + 1e-9) &&
                 rep.sup_dev_minus <= c1 * m.eps * (1.0 + 1e-9);

    for (const Field* fld : {&m.psi_plus.field, &m.psi_minus.field}) {
        for (std::size_t f = 0; f < g.node_count(); ++f) {
            const auto k = g.unflat(f);
            for (int ax = 0; ax < g.dim; ++ax) {
                std::array<long, 2> k2 = k;
                k2[ax] += 1;
                if (!g.in_box(k2)) continue;
                rep.max_quotient = std::max(
                    rep.max_quotient, std::abs(fld->values[g.flat(k2)] - fld->values[f]) / g.h);
            }
        }
    }
    rep.quotient_ok = rep.max_quotient <= c1 * (1.0 + 1e-6);

    for (std::size_t f = 0; f < g.node_count(); ++f) {
        const Point x = g.position(g.unflat(f));
        const double de = m.domain_eps.signed_distance(x);
        const double gap = m.psi_plus.field.values[f] - m.psi_minus.field.values[f];
        if (de > 0.0) {
            if (gap < 0.0) rep.ordered_ok = false;
            // strict ordering away from the resolution-limited rim
            if (de > 2.0 * g.h && !(gap > 0.0)) rep.ordered_ok = false;
        } else {
            const double dev_p = std::abs(m.psi_plus.field.values[f] - m.phi.field.values[f]);
            const double dev_m = std::abs(m.psi_minus.field.values[f] - m.phi.field.values[f]);
            if (std::max(dev_p, dev_m) > 1e-12 * (1.0 + set.sup_bound)) rep.exterior_ok = false;
        }
    }
    return rep;
}

}  // namespace nlobs
