#include "nlobs/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace nlobs {

Domain Domain::interval(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("interval: requires a < b");
    Domain d;
    d.kind = DomainKind::interval;
    d.dim = 1;
    d.a = a;
    d.b = b;
    return d;
}

Domain Domain::disk(Point center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("disk: requires radius > 0");
    Domain d;
    d.kind = DomainKind::disk;
    d.dim = 2;
    d.center = center;
    d.radius = radius;
    return d;
}

double Domain::diameter() const {
    return kind == DomainKind::interval ? b - a : 2.0 * radius;
}

double Domain::signed_distance(const Point& x) const {
    if (kind == DomainKind::interval) {
        return std::min(x[0] - a, b - x[0]);
    }
    double dx = x[0] - center[0], dy = x[1] - center[1];
    return radius - std::hypot(dx, dy);
}

Domain Domain::dilated(double eps) const {
    if (eps < 0.0) throw std::invalid_argument("dilate: requires eps >= 0");
    Domain d = *this;
    if (kind == DomainKind::interval) {
        d.a -= eps;
        d.b += eps;
    } else {
        d.radius += eps;
    }
    return d;
}

double distance(const Domain& domain, const Point& x) { return domain.signed_distance(x); }

Domain dilate(const Domain& domain, double eps) { return domain.dilated(eps); }

namespace {

// Index range [lo, hi] of lattice points k with k*h in [xmin, xmax],
// tolerant to rounding at the endpoints.
std::pair<long, long> axis_range(double xmin, double xmax, double h) {
    const double tol = 1e-9 * h;
    long lo = static_cast<long>(std::ceil(xmin / h - 1e-9));
    long hi = static_cast<long>(std::floor(xmax / h + 1e-9));
    while (static_cast<double>(lo) * h < xmin - tol) ++lo;
    while (static_cast<double>(lo - 1) * h >= xmin - tol) --lo;
    while (static_cast<double>(hi) * h > xmax + tol) --hi;
    while (static_cast<double>(hi + 1) * h <= xmax + tol) ++hi;
    return {lo, hi};
}

}  // namespace

Grid build_grid(const Domain& domain, double h, double r_cut) {
    if (!(h > 0.0)) throw std::invalid_argument("build_grid: requires h > 0");
    if (r_cut < domain.diameter())
        throw std::invalid_argument("build_grid: r_cut must cover the tail quadrature radius (>= diam)");

    Grid g;
    g.dim = domain.dim;
    g.h = h;
    g.r_cut = r_cut;
    g.domain = domain;

    if (domain.kind == DomainKind::interval) {
        auto [lo, hi] = axis_range(domain.a - r_cut, domain.b + r_cut, h);
        g.lo = {lo, 0};
        g.hi = {hi, 0};
    } else {
        auto [lo0, hi0] = axis_range(domain.center[0] - domain.radius - r_cut,
                                     domain.center[0] + domain.radius + r_cut, h);
        auto [lo1, hi1] = axis_range(domain.center[1] - domain.radius - r_cut,
                                     domain.center[1] + domain.radius + r_cut, h);
        g.lo = {lo0, lo1};
        g.hi = {hi0, hi1};
    }

    g.interior.assign(g.node_count(), 0);
    for (std::size_t f = 0; f < g.interior.size(); ++f) {
        Point x = g.position(g.unflat(f));
        g.interior[f] = domain.signed_distance(x) > 0.0 ? 1 : 0;
    }
    return g;
}

std::vector<std::size_t> Grid::interior_nodes() const {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < interior.size(); ++f)
        if (interior[f]) out.push_back(f);
    return out;
}

DistanceField make_distance_field(const Grid& grid, const Domain& domain) {
    DistanceField df;
    df.grid = &grid;
    df.d.resize(grid.node_count());
    for (std::size_t f = 0; f < df.d.size(); ++f)
        df.d[f] = domain.signed_distance(grid.position(grid.unflat(f)));
    return df;
}

}  // namespace nlobs
