#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlobs/geometry.hpp"

using namespace nlobs;

TEST_CASE("interval grid: interior nodes are the lattice points inside") {
    auto dom = Domain::interval(-1.0, 1.0);
    auto g = build_grid(dom, 0.5, 4.0);
    std::vector<double> interior;
    for (std::size_t f : g.interior_nodes()) interior.push_back(g.position(g.unflat(f))[0]);
    REQUIRE(interior.size() == 3);
    CHECK(interior[0] == doctest::Approx(-0.5));
    CHECK(interior[1] == doctest::Approx(0.0));
    CHECK(interior[2] == doctest::Approx(0.5));
}

TEST_CASE("interval grid: halo spans [-5, 5] at spacing 0.5") {
    auto g = build_grid(Domain::interval(-1.0, 1.0), 0.5, 4.0);
    CHECK(g.lo[0] == -10);
    CHECK(g.hi[0] == 10);
    CHECK(g.node_count() == 21);
    // halo = box minus interior
    CHECK(g.interior_nodes().size() == 3);
}

TEST_CASE("disk grid: strict interior lattice count at h = 0.5") {
    auto dom = Domain::disk({0.0, 0.0}, 1.0);
    auto g = build_grid(dom, 0.5, 2.0);
    // hand enumeration of {-1,-0.5,0,0.5,1}^2 with |x| < 1 strictly:
    // (0,0), 4 axis points at r=0.5, 4 diagonal points at r=sqrt(0.5)
    CHECK(g.interior_nodes().size() == 9);
    for (std::size_t f : g.interior_nodes()) {
        Point x = g.position(g.unflat(f));
        CHECK(std::hypot(x[0], x[1]) < 1.0);
    }
}

TEST_CASE("grid rejects bad arguments") {
    auto dom = Domain::interval(-1.0, 1.0);
    CHECK_THROWS_AS(build_grid(dom, 0.0, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(dom, -0.1, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(dom, 0.1, 1.0), std::invalid_argument);  // r_cut < diam
}

TEST_CASE("signed distance values") {
    auto iv = Domain::interval(-1.0, 1.0);
    CHECK(distance(iv, {0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(distance(iv, {1.5, 0.0}) == doctest::Approx(-0.5));
    auto dk = Domain::disk({0.0, 0.0}, 1.0);
    CHECK(distance(dk, {0.6, 0.8}) == doctest::Approx(0.0));
    CHECK(distance(dk, {0.0, 0.0}) == doctest::Approx(1.0));
}

TEST_CASE("dilation") {
    auto iv = Domain::interval(-1.0, 1.0);
    auto iv2 = dilate(iv, 0.1);
    CHECK(iv2.a == doctest::Approx(-1.1));
    CHECK(iv2.b == doctest::Approx(1.1));
    auto same = dilate(iv, 0.0);
    CHECK(same.a == iv.a);
    CHECK(same.b == iv.b);
    auto dk = dilate(Domain::disk({0.0, 0.0}, 1.0), 0.25);
    CHECK(dk.radius == doctest::Approx(1.25));
    CHECK_THROWS_AS(dilate(iv, -0.1), std::invalid_argument);
}

TEST_CASE("dilation is monotone on grid nodes") {
    auto dom = Domain::disk({0.0, 0.0}, 1.0);
    auto g = build_grid(dom, 0.25, 2.5);
    auto d1 = dilate(dom, 0.1), d2 = dilate(dom, 0.3);
    for (std::size_t f = 0; f < g.node_count(); ++f) {
        Point x = g.position(g.unflat(f));
        if (d1.signed_distance(x) > 0.0) CHECK(d2.signed_distance(x) > 0.0);
    }
}

TEST_CASE("distance is 1-Lipschitz on sampled pairs") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (auto dom : {Domain::interval(-1.0, 1.0), Domain::disk({0.2, -0.1}, 0.8)}) {
        for (int i = 0; i < 2000; ++i) {
            Point x{U(rng), dom.dim == 2 ? U(rng) : 0.0};
            Point y{U(rng), dom.dim == 2 ? U(rng) : 0.0};
            double dx = dom.signed_distance(x), dy = dom.signed_distance(y);
            double dist = std::hypot(x[0] - y[0], x[1] - y[1]);
            CHECK(std::abs(dx - dy) <= dist + 1e-12);
        }
    }
}

TEST_CASE("grid refinement nesting: halving h keeps coarse nodes") {
    auto dom = Domain::interval(-1.0, 1.0);
    auto coarse = build_grid(dom, 0.1, 4.0);
    auto fine = build_grid(dom, 0.05, 4.0);
    for (std::size_t f : coarse.interior_nodes()) {
        auto k = coarse.unflat(f);
        std::array<long, 2> k2{2 * k[0], 2 * k[1]};
        REQUIRE(fine.in_box(k2));
        CHECK(fine.is_interior(fine.flat(k2)));
    }
}

TEST_CASE("distance field matches domain distance and sign classification") {
    auto dom = Domain::disk({0.0, 0.0}, 1.0);
    auto g = build_grid(dom, 0.25, 2.5);
    auto df = make_distance_field(g, dom);
    for (std::size_t f = 0; f < g.node_count(); ++f) {
        CHECK(df[f] == doctest::Approx(dom.signed_distance(g.position(g.unflat(f)))));
        CHECK((df[f] > 0.0) == g.is_interior(f));
    }
}
