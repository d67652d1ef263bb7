#include "nlobs/kernel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nlobs {

void EllipticityParams::validate() const {
    if (!(0.0 < lambda && lambda <= Lambda))
        throw std::invalid_argument("ellipticity: requires 0 < lambda <= Lambda");
    if (!(0.0 < s0 && s0 < s && s < 1.0))
        throw std::invalid_argument("ellipticity: requires 0 < s0 < s < 1");
}

double frac_normalization(int dim, double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("frac_normalization: s must be in (0,1)");
    // |Gamma(-s)| = Gamma(1-s)/s for s in (0,1)
    const double n2 = 0.5 * static_cast<double>(dim);
    return std::pow(4.0, s) * std::tgamma(n2 + s) * s /
           (std::pow(std::numbers::pi, n2) * std::tgamma(1.0 - s));
}

KernelSpec frac_kernel(int dim, double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("frac_kernel: s must be in (0,1)");
    if (dim != 1 && dim != 2) throw std::invalid_argument("frac_kernel: dim must be 1 or 2");
    KernelSpec k;
    k.kind = KernelKind::fractional;
    k.dim = dim;
    k.s = s;
    // The operator integrates second differences u(x+y)+u(x-y)-2u(x); the
    // symmetrized form carries half of the first-difference normalization,
    // so that int delta_u(x,y) K(y) dy = -(-Laplace)^s u(x) exactly.
    k.c = 0.5 * frac_normalization(dim, s);
    return k;
}

KernelSpec homogeneous_kernel(int dim, double s, const std::vector<double>& sector_values) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("homogeneous_kernel: s must be in (0,1)");
    if (sector_values.empty() || sector_values.size() % 2 != 0)
        throw std::invalid_argument("homogeneous_kernel: need an even, positive sector count");
    const std::size_t m = sector_values.size() / 2;
    for (std::size_t i = 0; i < m; ++i) {
        if (sector_values[i] != sector_values[i + m])
            throw std::invalid_argument("homogeneous_kernel: opposite sectors must agree (K(-y)=K(y))");
        if (!(sector_values[i] > 0.0))
            throw std::invalid_argument("homogeneous_kernel: sector values must be positive");
    }
    KernelSpec k;
    k.kind = KernelKind::homogeneous;
    k.dim = dim;
    k.s = s;
    k.a = sector_values;
    return k;
}

KernelSpec callable_kernel(int dim, double s, std::function<double(const Point&)> fn) {
    KernelSpec k;
    k.kind = KernelKind::callable;
    k.dim = dim;
    k.s = s;
    k.fn = std::move(fn);
    return k;
}

double KernelSpec::angular(double theta) const {
    switch (kind) {
        case KernelKind::fractional:
            return c;
        case KernelKind::homogeneous: {
            const double two_pi = 2.0 * std::numbers::pi;
            double t = std::fmod(theta, two_pi);
            if (t < 0.0) t += two_pi;
            auto idx = static_cast<std::size_t>(t / two_pi * static_cast<double>(a.size()));
            if (idx >= a.size()) idx = a.size() - 1;
            return a[idx];
        }
        case KernelKind::callable:
            break;
    }
    throw std::logic_error("angular: callable kernels have no angular table");
}

double KernelSpec::operator()(const Point& y) const {
    const double r = dim == 1 ? std::abs(y[0]) : std::hypot(y[0], y[1]);
    if (r == 0.0) throw std::invalid_argument("kernel: undefined at y = 0");
    switch (kind) {
        case KernelKind::fractional:
            return c * std::pow(r, -static_cast<double>(dim) - 2.0 * s);
        case KernelKind::homogeneous: {
            double theta = dim == 1 ? (y[0] > 0.0 ? 0.0 : std::numbers::pi) : std::atan2(y[1], y[0]);
            return angular(theta) * std::pow(r, -static_cast<double>(dim) - 2.0 * s);
        }
        case KernelKind::callable:
            return fn(y);
    }
    return 0.0;
}

double KernelSpec::power_multiplier(const Point& y) const {
    const double r = dim == 1 ? std::abs(y[0]) : std::hypot(y[0], y[1]);
    return (*this)(y)*std::pow(r, static_cast<double>(dim) + 2.0 * s);
}

double KernelSpec::angular_mass() const {
    switch (kind) {
        case KernelKind::fractional:
            return dim == 1 ? 2.0 * c : 2.0 * std::numbers::pi * c;
        case KernelKind::homogeneous: {
            if (dim == 1) return a[0] + a[a.size() / 2];
            double sum = 0.0;
            for (double v : a) sum += v;
            return sum * (2.0 * std::numbers::pi / static_cast<double>(a.size()));
        }
        case KernelKind::callable:
            break;
    }
    throw std::logic_error("angular_mass: not available for callable kernels");
}

double tail_mass(const KernelSpec& k, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("tail_mass: requires R > 0");
    if (!(k.s > 0.0)) throw std::invalid_argument("tail_mass: non-integrable tail (s <= 0)");
    if (k.kind == KernelKind::callable)
        throw std::invalid_argument("tail_mass: no closed form for callable kernels");
    // omega * R^{-2s} / (2s), omega the angular mass
    return k.angular_mass() * std::pow(R, -2.0 * k.s) / (2.0 * k.s);
}

L0Report l0_check(const KernelSpec& k, const EllipticityParams& p,
                  const std::vector<Point>& samples, double rel_slack) {
    if (samples.empty()) throw std::invalid_argument("l0_check: empty sample set");
    p.validate();
    L0Report rep;
    for (const Point& y : samples) {
        const double r = k.dim == 1 ? std::abs(y[0]) : std::hypot(y[0], y[1]);
        if (r == 0.0) throw std::invalid_argument("l0_check: samples must be nonzero");
        const double pw = std::pow(r, -static_cast<double>(k.dim) - 2.0 * p.s);
        const double lowb = (1.0 - p.s) * p.lambda * pw;
        const double highb = (1.0 - p.s) * p.Lambda * pw;
        const double val = k(y);
        const double slack = rel_slack * highb;
        rep.checked++;
        rep.worst_low = std::min(rep.worst_low, val - lowb);
        rep.worst_high = std::min(rep.worst_high, highb - val);
        if (val < lowb - slack || val > highb + slack) {
            rep.pass = false;
            std::ostringstream os;
            os << "y=(" << y[0] << "," << y[1] << ") K=" << val << " bounds=[" << lowb << ","
               << highb << "]";
            rep.violations.push_back(os.str());
        }
    }
    return rep;
}

}  // namespace nlobs
