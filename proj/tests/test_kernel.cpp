#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlobs/kernel.hpp"

using namespace nlobs;

// Normalization constants frozen from a high-precision special-function
// oracle (30-digit evaluation of 4^s Gamma(n/2+s) s / (pi^{n/2} Gamma(1-s))).
TEST_CASE("fractional normalization matches the oracle") {
    CHECK(frac_normalization(1, 0.5) == doctest::Approx(0.3183098861837907).epsilon(1e-13));
    CHECK(frac_normalization(1, 0.3) == doctest::Approx(0.2300963816816321).epsilon(1e-13));
    CHECK(frac_normalization(1, 0.7) == doctest::Approx(0.3198810986673478).epsilon(1e-13));
    CHECK(frac_normalization(1, 0.9) == doctest::Approx(0.1649049388183027).epsilon(1e-13));
    CHECK(frac_normalization(1, 0.99) == doctest::Approx(0.019632596687581782).epsilon(1e-12));
    CHECK(frac_normalization(2, 0.5) == doctest::Approx(0.15915494309189534).epsilon(1e-13));
    CHECK(frac_normalization(2, 0.7) == doctest::Approx(0.17860038243844473).epsilon(1e-13));
}

TEST_CASE("fractional kernel: symmetry and power-law scaling") {
    auto k = frac_kernel(1, 0.5);
    // second-difference normalization: half of c_{1,1/2} = 1/pi
    CHECK(k.c == doctest::Approx(0.5 / M_PI));
    for (double y : {0.3, 1.0, 2.7}) {
        CHECK(k({y, 0.0}) == doctest::Approx(k({-y, 0.0})));
        CHECK(k({2.0 * y, 0.0}) == doctest::Approx(std::pow(2.0, -2.0) * k({y, 0.0})));
    }
    auto k2 = frac_kernel(2, 0.7);
    for (double y : {0.4, 1.3}) {
        CHECK(k2({y, -y}) == doctest::Approx(k2({-y, y})));
        CHECK(k2({2.0 * y, 0.0}) ==
              doctest::Approx(std::pow(2.0, -2.0 - 1.4) * k2({y, 0.0})));
    }
    CHECK_THROWS_AS(frac_kernel(1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(frac_kernel(1, 1.0), std::invalid_argument);
}

TEST_CASE("tail mass closed forms") {
    // n=1, s=1/2, c=1, R=1 -> 2
    auto k = callable_kernel(1, 0.5, nullptr);
    k.kind = KernelKind::fractional;
    k.c = 1.0;
    CHECK(tail_mass(k, 1.0) == doctest::Approx(2.0));
    // direct antiderivative: 2c R^{-2s} / (2s)
    auto kf = frac_kernel(1, 0.3);
    for (double R : {0.5, 1.0, 4.0})
        CHECK(tail_mass(kf, R) == doctest::Approx(2.0 * kf.c * std::pow(R, -0.6) / 0.6));
    CHECK(tail_mass(kf, 1e12) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK_THROWS_AS(tail_mass(kf, 0.0), std::invalid_argument);
}

TEST_CASE("tail mass agrees with brute-force lattice summation") {
    // sum K over R < |y| < 100R on a fine lattice vs the closed form
    for (double s : {0.3, 0.5, 0.7}) {
        auto k = frac_kernel(1, s);
        const double R = 1.0;
        const double hh = 1e-3;
        double sum = 0.0;
        for (double y = R + 0.5 * hh; y < 100.0 * R; y += hh) sum += 2.0 * k({y, 0.0}) * hh;
        const double closed = tail_mass(k, R) - tail_mass(k, 100.0 * R);
        CHECK(sum == doctest::Approx(closed).epsilon(0.02));
    }
}

TEST_CASE("Levy integrability is stable under refinement") {
    auto k = frac_kernel(1, 0.5);
    auto levy_sum = [&](double hh) {
        double acc = 0.0;
        for (double y = hh; y <= 1.0 + 1e-12; y += hh)
            acc += 2.0 * std::min(1.0, y * y) * k({y, 0.0}) * hh;
        return acc + tail_mass(k, 1.0);
    };
    const double a = levy_sum(1e-3), b = levy_sum(5e-4);
    CHECK(std::isfinite(a));
    CHECK(std::abs(b - a) / a < 0.05);
}

TEST_CASE("comparability sandwich check") {
    EllipticityParams p;
    p.lambda = 1.0;
    p.Lambda = 2.0;
    p.s = 0.5;
    p.s0 = 0.25;
    std::vector<Point> samples;
    for (double y = 0.1; y < 3.0; y += 0.07) samples.push_back({y, 0.0});

    SUBCASE("exact lower bound kernel passes") {
        auto k = callable_kernel(1, p.s, [&](const Point& y) {
            return (1.0 - p.s) * p.lambda * std::pow(std::abs(y[0]), -2.0);
        });
        auto rep = l0_check(k, p, samples);
        CHECK(rep.pass);
        CHECK(rep.worst_low == doctest::Approx(0.0));
    }
    SUBCASE("fractional kernel with collapsed sandwich passes") {
        auto k = frac_kernel(1, 0.5);
        EllipticityParams q = p;
        q.lambda = q.Lambda = k.c / (1.0 - k.s);
        CHECK(l0_check(k, q, samples).pass);
    }
    SUBCASE("out-of-band kernel is reported") {
        auto k = callable_kernel(1, p.s, [&](const Point& y) {
            return 3.0 * std::pow(std::abs(y[0]), -2.0);  // above (1-s)*Lambda = 1
        });
        auto rep = l0_check(k, p, samples);
        CHECK_FALSE(rep.pass);
        CHECK(rep.violations.size() == rep.checked);
    }
}

TEST_CASE("homogeneous kernel: sector table within the band passes") {
    EllipticityParams p;
    p.lambda = 1.0;
    p.Lambda = 2.0;
    p.s = 0.5;
    p.s0 = 0.25;
    const double lo = (1.0 - p.s) * p.lambda, hi = (1.0 - p.s) * p.Lambda;
    std::vector<double> a(32);
    for (std::size_t i = 0; i < 16; ++i) {
        a[i] = lo + (hi - lo) * static_cast<double>(i) / 15.0;
        a[i + 16] = a[i];  // K(-y) = K(y)
    }
    auto k = homogeneous_kernel(2, 0.5, a);
    std::vector<Point> samples;
    for (double t = 0.05; t < 6.28; t += 0.17) samples.push_back({1.3 * std::cos(t), 1.3 * std::sin(t)});
    CHECK(l0_check(k, p, samples).pass);
    CHECK(k({0.5, 0.5}) == doctest::Approx(k({-0.5, -0.5})));

    std::vector<double> bad = a;
    bad[3] = 2.0 * bad[19];
    CHECK_THROWS_AS(homogeneous_kernel(2, 0.5, bad), std::invalid_argument);
}
