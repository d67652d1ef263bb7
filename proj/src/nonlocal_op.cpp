#include "nlobs/nonlocal_op.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nlobs {

namespace {

// int_a^b r^{-1-2s} dr
double mom0(double a, double b, double s) {
    return (std::pow(a, -2.0 * s) - std::pow(b, -2.0 * s)) / (2.0 * s);
}

// int_a^b r^{-2s} dr, stable across the exponent zero at s = 1/2
double mom1(double a, double b, double s) {
    const double d = 1.0 - 2.0 * s;
    if (d == 0.0) return std::log(b / a);
    return std::pow(a, d) * std::expm1(d * std::log(b / a)) / d;
}

// int_a^b r^{1-2s} dr  (a may be 0; exponent 2-2s > 0)
double mom2(double a, double b, double s) {
    const double e = 2.0 - 2.0 * s;
    return (std::pow(b, e) - (a == 0.0 ? 0.0 : std::pow(a, e))) / e;
}

void build_scheme_1d(QuadratureScheme& sc, double r_cut) {
    const double h = sc.h, s = sc.s;
    const long M = std::max<long>(1, static_cast<long>(std::floor(r_cut / h + 1e-9)));
    sc.r0 = static_cast<double>(M) * h;
    sc.m_half = 1;
    sc.dir_theta = {0.0};
    sc.offsets.reserve(static_cast<std::size_t>(M));
    for (long j = 1; j <= M; ++j) {
        const double a = static_cast<double>(j - 1) * h;
        const double b = static_cast<double>(j) * h;
        const double c = static_cast<double>(j + 1) * h;
        double w = 0.0;
        if (j == 1) {
            // quadratic interpolant of the second difference on (0, h]
            w += mom2(0.0, h, s) / (h * h);
        } else {
            w += (mom1(a, b, s) - a * mom0(a, b, s)) / h;
        }
        if (j < M) w += (c * mom0(b, c, s) - mom1(b, c, s)) / h;
        sc.offsets.push_back({{j, 0}, 2.0 * w, b, 0});
    }
    sc.tail_pw = 2.0 * std::pow(sc.r0, -2.0 * s) / (2.0 * s);
}

void build_scheme_2d(QuadratureScheme& sc, double r_cut, int m_half) {
    const double h = sc.h, s = sc.s;
    sc.r0 = r_cut;
    sc.m_half = std::max(1, m_half);
    const double width = std::numbers::pi / static_cast<double>(sc.m_half);
    sc.dir_theta.resize(static_cast<std::size_t>(sc.m_half));
    for (int c = 0; c < sc.m_half; ++c)
        sc.dir_theta[static_cast<std::size_t>(c)] = (static_cast<double>(c) + 0.5) * width;

    const double expo = -2.0 - 2.0 * s;
    const long K = static_cast<long>(std::floor(sc.r0 / h + 1e-9));
    auto cell_mass = [&](long k1, long k2) {
        const double x0 = static_cast<double>(k1) * h, y0 = static_cast<double>(k2) * h;
        if (std::max(std::labs(k1), std::labs(k2)) <= 4) {
            // near the singularity the kernel varies strongly across a cell
            const int n = 16;
            double sum = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double xs = x0 + (((i + 0.5) / n) - 0.5) * h;
                    const double ys = y0 + (((j + 0.5) / n) - 0.5) * h;
                    sum += std::pow(std::hypot(xs, ys), expo);
                }
            return sum * (h * h) / (n * n);
        }
        return std::pow(std::hypot(x0, y0), expo) * h * h;
    };

    for (long k1 = 0; k1 <= K; ++k1) {
        for (long k2 = (k1 == 0 ? 1 : -K); k2 <= K; ++k2) {
            const double r = std::hypot(static_cast<double>(k1), static_cast<double>(k2)) * h;
            if (r > sc.r0 + 1e-12) continue;
            const double theta = std::atan2(static_cast<double>(k2), static_cast<double>(k1));
            const double tpos = theta < 0.0 ? theta + 2.0 * std::numbers::pi : theta;
            long raw = static_cast<long>(std::floor(tpos / width));
            raw = std::clamp<long>(raw, 0, 2 * sc.m_half - 1);
            sc.offsets.push_back(
                {{k1, k2}, 2.0 * cell_mass(k1, k2), r, static_cast<int>(raw % sc.m_half)});
        }
    }

    // second-moment correction for the omitted center cell, carried by the
    // two axis neighbors through the discrete Laplacian
    const int n = 64;
    double icell2 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double xs = (((i + 0.5) / n) - 0.5) * h;
            const double ys = (((j + 0.5) / n) - 0.5) * h;
            icell2 += std::pow(std::hypot(xs, ys), -2.0 * s);
        }
    icell2 *= (h * h) / (n * n);
    for (auto& o : sc.offsets) {
        if ((o.k[0] == 1 && o.k[1] == 0) || (o.k[0] == 0 && o.k[1] == 1))
            o.pw += icell2 / (4.0 * h * h);
    }

    sc.tail_pw = 2.0 * std::numbers::pi * std::pow(sc.r0, -2.0 * s) / (2.0 * s);
}

}  // namespace

double QuadratureScheme::power_weight_sum() const {
    double t = 0.0;
    for (const auto& o : offsets) t += o.pw;
    return t;
}

QuadratureScheme build_scheme(const Grid& grid, double s, int m_half) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("build_scheme: s must be in (0,1)");
    QuadratureScheme sc;
    sc.dim = grid.dim;
    sc.h = grid.h;
    sc.s = s;
    if (grid.dim == 1)
        build_scheme_1d(sc, grid.r_cut);
    else
        build_scheme_2d(sc, grid.r_cut, m_half);
    return sc;
}

std::string OperatorSpec::name() const {
    switch (kind) {
        case OperatorKind::linear: return "linear";
        case OperatorKind::pucci_plus: return "pucci_plus";
        case OperatorKind::pucci_minus: return "pucci_minus";
        case OperatorKind::pucci_star_plus: return "pucci_star_plus";
        case OperatorKind::pucci_star_minus: return "pucci_star_minus";
        case OperatorKind::infsup: return "infsup";
    }
    return "?";
}

NonlocalEvaluator::NonlocalEvaluator(const Grid& grid, double s, int m_half, double tol_tail)
    : grid_(&grid), scheme_(build_scheme(grid, s, m_half)), tol_tail_(tol_tail) {}

KernelWeights NonlocalEvaluator::bind_kernel(const KernelSpec& k) const {
    if (k.dim != grid_->dim) throw std::invalid_argument("bind_kernel: kernel dimension mismatch");
    if (std::abs(k.s - scheme_.s) > 1e-12)
        throw std::invalid_argument("bind_kernel: kernel order differs from scheme order");
    KernelWeights kw;
    kw.mult.reserve(scheme_.offsets.size());
    for (const auto& o : scheme_.offsets) {
        const Point y = {static_cast<double>(o.k[0]) * scheme_.h,
                         static_cast<double>(o.k[1]) * scheme_.h};
        kw.mult.push_back(k.power_multiplier(y));
    }
    if (k.kind == KernelKind::callable) {
        // no closed-form tail: estimate the kernel tail mass by geometric
        // radial shells against the sampled multiplier
        double acc = 0.0;
        double r = scheme_.r0;
        const double rmax = scheme_.r0 * 1e6;
        while (r < rmax) {
            const double rn = r * 1.25;
            const double rb = std::sqrt(r * rn);
            double ang = 0.0;
            for (double th : scheme_.dir_theta) {
                const Point y = {rb * std::cos(th), grid_->dim == 2 ? rb * std::sin(th) : 0.0};
                ang += k.power_multiplier(y);
            }
            ang /= static_cast<double>(scheme_.dir_theta.size());
            acc += ang * (grid_->dim == 1 ? 2.0 : 2.0 * std::numbers::pi) * mom0(r, rn, scheme_.s);
            r = rn;
        }
        kw.tail_mult = acc / scheme_.tail_pw;
        kw.has_closed_tail = false;
    } else {
        kw.tail_mult = tail_mass(k, scheme_.r0) / scheme_.tail_pw;
    }
    kw.kernel = k;
    return kw;
}

namespace {

inline double field_value(const Field& u, const Grid& g, long i1, long i2) {
    if (i1 >= g.lo[0] && i1 <= g.hi[0] && (g.dim == 1 || (i2 >= g.lo[1] && i2 <= g.hi[1])))
        return u.values[g.flat({i1, i2})];
    return u.exterior.eval(g.position({i1, i2}));
}

inline double delta_folded(const Field& u, const Grid& g, long i1, long i2, double u0,
                           const QuadratureScheme::Offset& o) {
    return field_value(u, g, i1 + o.k[0], i2 + o.k[1]) +
           field_value(u, g, i1 - o.k[0], i2 - o.k[1]) - 2.0 * u0;
}

inline double sign_split(double t, double up, double down) {
    return t >= 0.0 ? up * t : down * t;
}

}  // namespace

struct NonlocalEvaluator::TailTerms {
    struct Term {
        double g;       // second-difference value
        double w;       // folded pure-power weight
        int sector;     // folded sector (closed-form terms use -1: all sectors)
        bool closed;    // closed-form tail (multiplier = kernel tail mass ratio)
        Point y;        // sample offset for pointwise kernel evaluation
    };
    std::vector<Term> terms;
};

void NonlocalEvaluator::collect_tail(const Field& u, double u0, const Point& x,
                                     TailTerms& out) const {
    out.terms.clear();
    const auto& ext = u.exterior;
    switch (ext.kind) {
        case ExteriorData::Kind::none:
            return;  // bound enforced by the public apply surface
        case ExteriorData::Kind::zero:
        case ExteriorData::Kind::constant: {
            const double g = 2.0 * ext.far_constant() - 2.0 * u0;
            out.terms.push_back({g, scheme_.tail_pw, -1, true, {0.0, 0.0}});
            return;
        }
        case ExteriorData::Kind::callable: break;
    }

    // geometric radial shells sampled at sector midpoint directions
    const double bound_scale = 4.0 * std::max(ext.bound(), std::abs(u0));
    const double s = scheme_.s;
    const int ndir = static_cast<int>(scheme_.dir_theta.size());
    const double ang_w = scheme_.dim == 1 ? 2.0 : 2.0 * std::numbers::pi / ndir;
    double r = scheme_.r0;
    int shells = 0;
    const int max_shells = 4000;
    auto iso = [&](double rad) {
        return (scheme_.dim == 1 ? 2.0 : 2.0 * std::numbers::pi) * std::pow(rad, -2.0 * s) /
               (2.0 * s);
    };
    while (bound_scale * iso(r) > tol_tail_ && shells < max_shells) {
        const double rn = r * shell_ratio_;
        const double rb = std::sqrt(r * rn);
        const double rho = mom0(r, rn, s);
        for (int c = 0; c < ndir; ++c) {
            const double th = scheme_.dir_theta[static_cast<std::size_t>(c)];
            const Point y = {rb * std::cos(th), scheme_.dim == 2 ? rb * std::sin(th) : 0.0};
            const Point p = {x[0] + y[0], x[1] + y[1]};
            const Point q = {x[0] - y[0], x[1] - y[1]};
            const double g = ext.eval(p) + ext.eval(q) - 2.0 * u0;
            out.terms.push_back({g, ang_w * rho, c, false, y});
        }
        r = rn;
        ++shells;
    }
    if (shells >= max_shells && bound_scale * iso(r) > tol_tail_)
        throw std::runtime_error("tail quadrature: tolerance unachievable within shell budget");
}

double NonlocalEvaluator::eval_linear(const Field& u, const KernelWeights& kw,
                                      std::size_t node) const {
    const Grid& g = *grid_;
    const auto idx = g.unflat(node);
    const double u0 = u.values[node];
    double acc = 0.0;
    for (std::size_t i = 0; i < scheme_.offsets.size(); ++i) {
        const auto& o = scheme_.offsets[i];
        acc += kw.mult[i] * o.pw * delta_folded(u, g, idx[0], idx[1], u0, o);
    }
    TailTerms tt;
    collect_tail(u, u0, g.position(idx), tt);
    for (const auto& t : tt.terms)
        acc += (t.closed ? kw.tail_mult : kw.kernel.power_multiplier(t.y)) * t.w * t.g;
    return acc;
}

double NonlocalEvaluator::eval_pucci(const Field& u, const EllipticityParams& p, bool plus,
                                     std::size_t node) const {
    const Grid& g = *grid_;
    const auto idx = g.unflat(node);
    const double u0 = u.values[node];
    const double up = plus ? p.Lambda : p.lambda;
    const double dn = plus ? p.lambda : p.Lambda;
    double acc = 0.0;
    for (const auto& o : scheme_.offsets)
        acc += sign_split(delta_folded(u, g, idx[0], idx[1], u0, o), up, dn) * o.pw;
    TailTerms tt;
    collect_tail(u, u0, g.position(idx), tt);
    for (const auto& t : tt.terms) acc += sign_split(t.g, up, dn) * t.w;
    return (1.0 - p.s) * acc;
}

double NonlocalEvaluator::eval_pucci_star(const Field& u, const EllipticityParams& p, bool plus,
                                          std::size_t node) const {
    const Grid& g = *grid_;
    const auto idx = g.unflat(node);
    const double u0 = u.values[node];
    const double up = plus ? p.Lambda : p.lambda;
    const double dn = plus ? p.lambda : p.Lambda;
    std::vector<double> sector(static_cast<std::size_t>(scheme_.m_half), 0.0);
    for (const auto& o : scheme_.offsets)
        sector[static_cast<std::size_t>(o.sector)] +=
            o.pw * delta_folded(u, g, idx[0], idx[1], u0, o);
    TailTerms tt;
    collect_tail(u, u0, g.position(idx), tt);
    for (const auto& t : tt.terms) {
        if (t.sector < 0) {
            const double share = t.w / static_cast<double>(scheme_.m_half);
            for (auto& sv : sector) sv += share * t.g;
        } else {
            sector[static_cast<std::size_t>(t.sector)] += t.w * t.g;
        }
    }
    double acc = 0.0;
    for (double sv : sector) acc += sign_split(sv, up, dn);
    return (1.0 - p.s) * acc;
}

double NonlocalEvaluator::diag_bound_linear(const KernelWeights& kw) const {
    double t = kw.tail_mult * scheme_.tail_pw;
    for (std::size_t i = 0; i < scheme_.offsets.size(); ++i)
        t += kw.mult[i] * scheme_.offsets[i].pw;
    return 2.0 * t;
}

double NonlocalEvaluator::diag_bound_pucci(const EllipticityParams& p) const {
    return 2.0 * (1.0 - p.s) * p.Lambda * (scheme_.power_weight_sum() + scheme_.tail_pw);
}

double NonlocalEvaluator::tail_bound_none(double sup_u, double sup_mult) const {
    return 4.0 * sup_u * sup_mult * scheme_.tail_pw;
}

BoundOperator::BoundOperator(const NonlocalEvaluator& ev, const OperatorSpec& spec)
    : ev_(&ev), spec_(spec) {
    switch (spec_.kind) {
        case OperatorKind::linear:
            kw_.push_back(ev.bind_kernel(spec_.kernel));
            break;
        case OperatorKind::infsup:
            if (spec_.families.empty())
                throw std::invalid_argument("infsup operator: needs at least one kernel family");
            for (const auto& row : spec_.families) {
                if (row.empty())
                    throw std::invalid_argument("infsup operator: empty kernel family row");
                row_sizes_.push_back(row.size());
                for (const auto& k : row) kw_.push_back(ev.bind_kernel(k));
            }
            break;
        default:
            spec_.ell.validate();
            break;
    }
}

double BoundOperator::eval(const Field& u, std::size_t node) const {
    switch (spec_.kind) {
        case OperatorKind::linear:
            return ev_->eval_linear(u, kw_[0], node);
        case OperatorKind::pucci_plus:
            return ev_->eval_pucci(u, spec_.ell, true, node);
        case OperatorKind::pucci_minus:
            return ev_->eval_pucci(u, spec_.ell, false, node);
        case OperatorKind::pucci_star_plus:
            return ev_->eval_pucci_star(u, spec_.ell, true, node);
        case OperatorKind::pucci_star_minus:
            return ev_->eval_pucci_star(u, spec_.ell, false, node);
        case OperatorKind::infsup: {
            double outer = 0.0;
            std::size_t at = 0;
            bool first_row = true;
            for (std::size_t rs : row_sizes_) {
                double inner = 0.0;
                for (std::size_t j = 0; j < rs; ++j) {
                    const double v = ev_->eval_linear(u, kw_[at + j], node);
                    inner = j == 0 ? v : std::max(inner, v);
                }
                outer = first_row ? inner : std::min(outer, inner);
                first_row = false;
                at += rs;
            }
            return outer;
        }
    }
    return 0.0;
}

double BoundOperator::diag_bound() const {
    switch (spec_.kind) {
        case OperatorKind::linear:
            return ev_->diag_bound_linear(kw_[0]);
        case OperatorKind::infsup: {
            double m = 0.0;
            for (const auto& kw : kw_) m = std::max(m, ev_->diag_bound_linear(kw));
            return m;
        }
        default:
            return ev_->diag_bound_pucci(spec_.ell);
    }
}

Field BoundOperator::apply(const Field& u, const std::vector<std::size_t>& nodes) const {
    if (u.exterior.kind == ExteriorData::Kind::none) {
        double sup_mult = 0.0;
        if (spec_.kind == OperatorKind::linear || spec_.kind == OperatorKind::infsup) {
            for (const auto& kw : kw_)
                for (double m : kw.mult) sup_mult = std::max(sup_mult, m);
        } else {
            sup_mult = (1.0 - spec_.ell.s) * spec_.ell.Lambda;
        }
        const double bound = ev_->tail_bound_none(u.sup_abs(), sup_mult);
        if (bound > ev_->tol_tail())
            throw std::runtime_error(
                "apply: tail tolerance unachievable within the stored halo (no exterior data)");
    }
    Field out = Field::zeros(*u.grid, ExteriorData::zero());
    for (std::size_t f : nodes) out.values[f] = eval(u, f);
    return out;
}

namespace {

Field transient_apply(const Field& u, const OperatorSpec& spec, double tol_tail, int sectors) {
    double s = spec.kind == OperatorKind::linear ? spec.kernel.s : spec.ell.s;
    NonlocalEvaluator ev(*u.grid, s, sectors, tol_tail);
    BoundOperator op(ev, spec);
    return op.apply(u, u.grid->interior_nodes());
}

}  // namespace

Field apply_linear(const Field& u, const KernelSpec& k, double tol_tail) {
    OperatorSpec spec;
    spec.kind = OperatorKind::linear;
    spec.kernel = k;
    spec.ell.s = k.s;
    spec.ell.s0 = 0.5 * k.s;
    return transient_apply(u, spec, tol_tail, 16);
}

Field apply_pucci(const Field& u, const EllipticityParams& p, bool plus, double tol_tail) {
    OperatorSpec spec;
    spec.kind = plus ? OperatorKind::pucci_plus : OperatorKind::pucci_minus;
    spec.ell = p;
    return transient_apply(u, spec, tol_tail, 16);
}

Field apply_pucci_star(const Field& u, const EllipticityParams& p, bool plus, int sectors,
                       double tol_tail) {
    OperatorSpec spec;
    spec.kind = plus ? OperatorKind::pucci_star_plus : OperatorKind::pucci_star_minus;
    spec.ell = p;
    spec.sectors = sectors;
    return transient_apply(u, spec, tol_tail, sectors);
}

namespace {

Field field_sub(const Field& u, const Field& v) {
    Field w = u;
    for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] -= v.values[i];
    using K = ExteriorData::Kind;
    const auto &eu = u.exterior, &ev = v.exterior;
    if (eu.kind == K::none || ev.kind == K::none) {
        w.exterior = ExteriorData::none();
    } else if (eu.closed_form() && ev.closed_form()) {
        const double d = eu.far_constant() - ev.far_constant();
        w.exterior = d == 0.0 ? ExteriorData::zero() : ExteriorData::constant(d);
    } else {
        w.exterior = ExteriorData::callable(
            [eu, ev](const Point& x) { return eu.eval(x) - ev.eval(x); },
            eu.bound() + ev.bound());
    }
    return w;
}

}  // namespace

EllipticityReport ellipticity_test(const OperatorSpec& I, const Field& u, const Field& v,
                                   double tol) {
    const Grid& g = *u.grid;
    double s = I.kind == OperatorKind::linear ? I.kernel.s : I.ell.s;
    NonlocalEvaluator ev(g, s, I.sectors, 1e-10);
    BoundOperator op(ev, I);
    Field w = field_sub(u, v);

    EllipticityReport rep;
    for (std::size_t f : g.interior_nodes()) {
        const double diff = op.eval(u, f) - op.eval(v, f);
        const double mminus = ev.eval_pucci(w, I.ell, false, f);
        const double mplus = ev.eval_pucci(w, I.ell, true, f);
        rep.checked++;
        rep.worst_low = std::min(rep.worst_low, diff - mminus);
        rep.worst_high = std::min(rep.worst_high, mplus - diff);
        if (diff < mminus - tol || diff > mplus + tol) {
            rep.pass = false;
            std::ostringstream os;
            const Point x = g.position(g.unflat(f));
            os << "x=(" << x[0] << "," << x[1] << ") M-=" << mminus << " dI=" << diff
               << " M+=" << mplus;
            rep.violations.push_back(os.str());
        }
    }
    return rep;
}

}  // namespace nlobs
