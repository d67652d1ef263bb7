#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace nlobs {

using Point = std::array<double, 2>;

enum class DomainKind { interval, disk };

/// Bounded open set with smooth boundary and a closed-form signed distance.
///
/// Two presets are supported: an interval (a,b) in 1D and a disk in 2D.
/// The signed distance is positive inside, zero on the boundary and
/// negative outside; its sign doubles as the interior classifier.
struct Domain {
    DomainKind kind = DomainKind::interval;
    int dim = 1;
    double a = -1.0, b = 1.0;   // interval endpoints
    Point center{0.0, 0.0};     // disk center
    double radius = 1.0;        // disk radius

    static Domain interval(double a, double b);
    static Domain disk(Point center, double radius);

    double diameter() const;
    /// Signed distance to the boundary, positive inside.
    double signed_distance(const Point& x) const;
    /// The enlarged domain {x : dist(x, closure) < eps}, same preset shape.
    Domain dilated(double eps) const;
};

/// Uniform lattice x = k*h covering the domain together with an exterior
/// halo out to r_cut.  Node storage is a full index box; each node is
/// classified interior (signed distance > 0) or exterior.
struct Grid {
    int dim = 1;
    double h = 0.0;
    double r_cut = 0.0;
    Domain domain;
    std::array<long, 2> lo{0, 0};  // inclusive index bounds per axis
    std::array<long, 2> hi{0, 0};
    std::vector<uint8_t> interior;  // per box node, relative to `domain`

    std::size_t node_count() const {
        std::size_t n = static_cast<std::size_t>(hi[0] - lo[0] + 1);
        if (dim == 2) n *= static_cast<std::size_t>(hi[1] - lo[1] + 1);
        return n;
    }
    bool in_box(const std::array<long, 2>& k) const {
        if (k[0] < lo[0] || k[0] > hi[0]) return false;
        if (dim == 2 && (k[1] < lo[1] || k[1] > hi[1])) return false;
        return true;
    }
    std::size_t flat(const std::array<long, 2>& k) const {
        std::size_t i0 = static_cast<std::size_t>(k[0] - lo[0]);
        if (dim == 1) return i0;
        std::size_t w1 = static_cast<std::size_t>(hi[1] - lo[1] + 1);
        return i0 * w1 + static_cast<std::size_t>(k[1] - lo[1]);
    }
    std::array<long, 2> unflat(std::size_t f) const {
        if (dim == 1) return {lo[0] + static_cast<long>(f), 0};
        std::size_t w1 = static_cast<std::size_t>(hi[1] - lo[1] + 1);
        return {lo[0] + static_cast<long>(f / w1), lo[1] + static_cast<long>(f % w1)};
    }
    Point position(const std::array<long, 2>& k) const {
        return {static_cast<double>(k[0]) * h, dim == 2 ? static_cast<double>(k[1]) * h : 0.0};
    }
    bool is_interior(std::size_t f) const { return interior[f] != 0; }

    std::vector<std::size_t> interior_nodes() const;
};

/// Builds the lattice for `domain` with spacing h and halo radius r_cut.
/// Throws std::invalid_argument for h <= 0 or r_cut < diam(domain).
Grid build_grid(const Domain& domain, double h, double r_cut);

/// Exact signed distance to the domain boundary (positive inside).
double distance(const Domain& domain, const Point& x);

/// The dilated domain; throws for negative eps.
Domain dilate(const Domain& domain, double eps);

/// Signed distance sampled at every box node of the grid, for an arbitrary
/// (possibly dilated) domain sharing the grid's lattice.
struct DistanceField {
    const Grid* grid = nullptr;
    std::vector<double> d;
    double operator[](std::size_t f) const { return d[f]; }
};

DistanceField make_distance_field(const Grid& grid, const Domain& domain);

}  // namespace nlobs
