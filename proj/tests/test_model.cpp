#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "trefoil/geometric_model.hpp"

using namespace trefoil;

static ModelParams params(double r) {
    ModelParams mp;
    mp.r = r;
    return mp;
}

TEST_CASE("interval map identities") {
    // r = 0: f(0+) = -1 and f(1) = 1 exactly
    const ModelParams m0 = params(0.0);
    CHECK(interval_map(1e-300, m0) == -1.0);
    CHECK(interval_map(1.0, m0) == 1.0);
    // odd symmetry for every regime
    for (double r : {-0.1, 0.0, 0.1}) {
        const ModelParams mp = params(r);
        for (double x : {0.2, 0.55, 0.91})
            CHECK(interval_map(-x, mp) == doctest::Approx(-interval_map(x, mp)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(interval_map(0.0, m0), std::domain_error);
    CHECK_THROWS_AS(interval_map(1.5, m0), std::domain_error);
    // slope: mu = 2 + r + min(0, r)
    CHECK(params(0.1).mu() == doctest::Approx(2.1));
    CHECK(params(-0.1).mu() == doctest::Approx(1.8));
}

TEST_CASE("regime classification") {
    CHECK(classify_regime(params(-0.1)).regime == Regime::lorenz_attractor);
    CHECK(classify_regime(params(0.0)).regime == Regime::boundary_heteroclinic);
    CHECK(classify_regime(params(0.1)).regime == Regime::fake_horseshoe);
}

TEST_CASE("horseshoe markov data at r = 0.1") {
    const auto h = horseshoe_markov(params(0.1), 8);
    for (int i : {0, 1})
        for (int j : {0, 1}) CHECK(h.transitions[i][j] == 1);
    CHECK(h.preserves_unstable_orientation);
    CHECK(h.preserves_stable_orientation);
    CHECK(std::abs(h.entropy_estimate - std::log(2.0)) < 0.01);
    // the escape gap separates the rectangles
    CHECK(h.left_rect_x[1] < h.right_rect_x[0]);
}

TEST_CASE("periodic orbits and coding") {
    const ModelParams mp = params(0.1);
    // the all-R fixed point: x solves mu x - 1 - r = x
    const auto pR = periodic_orbit_from_word("R", mp);
    CHECK(pR.x == doctest::Approx((1 + 0.1) / (mp.mu() - 1)).epsilon(1e-12));
    CHECK(pR.y == doctest::Approx(6.0 / 7.0).epsilon(1e-12));
    // words round-trip through the itinerary
    for (const char* w : {"RL", "RRL", "RLLRL", "RRLRLL"}) {
        const auto p = periodic_orbit_from_word(w, mp);
        CHECK(model_itinerary(p, mp, static_cast<int>(std::string(w).size())) == w);
    }
    // distinct words give distinct orbits
    std::set<double> xs;
    for (const char* w : {"RL", "RRL", "RLL", "RRRL"})
        xs.insert(periodic_orbit_from_word(w, mp).x);
    CHECK(xs.size() == 4);
}

TEST_CASE("kneading sequences are mirror images") {
    const auto k = kneading(params(0.1), 8);
    REQUIRE(k.plus.size() == k.minus.size());
    for (size_t i = 0; i < k.plus.size(); ++i)
        CHECK(k.plus[i] == (k.minus[i] == 'L' ? 'R' : 'L'));
}

TEST_CASE("lap numbers") {
    // full shift doubling very close to r = 0
    const ModelParams tiny = params(-1e-6);
    for (int n : {1, 2, 3, 8})
        CHECK(lap_number(tiny, n) == (1L << n));
    // growth rate tracks log(mu) at moderate r < 0
    for (double r : {-0.01, -0.001}) {
        const ModelParams mp = params(r);
        const int n = 12;
        const double rate = std::log(static_cast<double>(lap_number(mp, n))) / n;
        CHECK(std::abs(rate - std::log(mp.mu())) < 0.02);
    }
}
