#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "nlobs/geometry.hpp"

namespace nlobs {

/// Values of a grid function beyond the stored halo.
///
/// The zero/constant variants admit closed-form far-field handling in the
/// operator quadrature; the callable variant is integrated by radial
/// shells out to a tolerance-controlled radius.
struct ExteriorData {
    enum class Kind { none, zero, constant, callable };
    Kind kind = Kind::zero;
    double value = 0.0;
    std::function<double(const Point&)> fn;
    double sup_bound = 0.0;  // bound on |fn| (callable only)

    static ExteriorData none() { return {Kind::none, 0.0, nullptr, 0.0}; }
    static ExteriorData zero() { return {Kind::zero, 0.0, nullptr, 0.0}; }
    static ExteriorData constant(double v) { return {Kind::constant, v, nullptr, std::abs(v)}; }
    static ExteriorData callable(std::function<double(const Point&)> f, double sup) {
        return {Kind::callable, 0.0, std::move(f), sup};
    }

    bool closed_form() const { return kind == Kind::zero || kind == Kind::constant; }
    double far_constant() const { return kind == Kind::constant ? value : 0.0; }
    double eval(const Point& x) const {
        switch (kind) {
            case Kind::zero: return 0.0;
            case Kind::constant: return value;
            case Kind::callable: return fn(x);
            case Kind::none: break;
        }
        throw std::logic_error("ExteriorData: evaluated beyond halo with no exterior data");
    }
    double bound() const {
        switch (kind) {
            case Kind::zero: return 0.0;
            case Kind::constant: return std::abs(value);
            case Kind::callable: return sup_bound;
            case Kind::none: return 0.0;
        }
        return 0.0;
    }
};

/// Grid function: one value per box node plus exterior data for lookups
/// beyond the halo.  Lookups inside the box read stored values, so any
/// region where the field deviates from its exterior model must be
/// buffered from the box edge by the quadrature radius.
struct Field {
    const Grid* grid = nullptr;
    std::vector<double> values;
    ExteriorData exterior = ExteriorData::zero();

    static Field zeros(const Grid& g, ExteriorData ext = ExteriorData::zero()) {
        Field f;
        f.grid = &g;
        f.values.assign(g.node_count(), 0.0);
        f.exterior = std::move(ext);
        return f;
    }
    static Field from_callable(const Grid& g, const std::function<double(const Point&)>& fn,
                               ExteriorData ext = ExteriorData::zero()) {
        Field f = zeros(g, std::move(ext));
        for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = fn(g.position(g.unflat(i)));
        return f;
    }

    double at(const std::array<long, 2>& k) const {
        return grid->in_box(k) ? values[grid->flat(k)] : exterior.eval(grid->position(k));
    }
    double sup_abs() const {
        double m = exterior.bound();
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

/// u(x+y) + u(x-y) - 2u(x) for a lattice node and lattice offset.
inline double second_diff(const Field& u, const std::array<long, 2>& node,
                          const std::array<long, 2>& offset) {
    const std::array<long, 2> p{node[0] + offset[0], node[1] + offset[1]};
    const std::array<long, 2> q{node[0] - offset[0], node[1] - offset[1]};
    return u.at(p) + u.at(q) - 2.0 * u.at(node);
}

}  // namespace nlobs
