#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trefoil/hyperbolic.hpp"
#include "trefoil/modular.hpp"

using namespace trefoil;

TEST_CASE("representation traces") {
    for (double l : {0.3, 0.5, 1.0}) {
        Representation rep(l);
        CHECK(std::abs(rep.a().trace()) < 1e-12);                           // order 2
        CHECK(std::abs(std::abs(Mat2(rep.b()).trace()) - 1.0) < 1e-12);    // order 3
        CHECK(std::abs(Mat2(rep.h()).trace()) ==
              doctest::Approx(2 * std::cosh(l / 2)).epsilon(1e-12));
        CHECK(closed_geodesic_length(rep.h()) == doctest::Approx(l).epsilon(1e-10));
    }
    // l = 0 is the standard modular pair: tr(ab) = -2 (parabolic boundary)
    Representation rep0(0.0);
    CHECK(std::abs(std::abs(Mat2(rep0.h()).trace()) - 2.0) < 1e-10);
}

TEST_CASE("section geometry") {
    Representation rep(0.5);
    const auto sec = section_geometry(rep);
    REQUIRE(sec.trimmed);
    CHECK(sec.x_lo == doctest::Approx(-sec.x_hi).epsilon(1e-10));  // symmetric trim
    CHECK(sec.x_lo < 0);
    // l1 = b l0, l2 = b^2 l0
    const GeodesicLine l1 = mobius_apply(rep.b(), sec.l0);
    CHECK(approx_equal(l1.u, sec.l1.u, 1e-8));
    CHECK(approx_equal(l1.v, sec.l1.v, 1e-8));
    // q lies on l0
    CHECK(std::abs(line_side(sec.l0, rep.cone_q())) < 1e-12);
}

TEST_CASE("theta bounds") {
    Representation rep(0.5);
    const auto sec = section_geometry(rep);
    // symmetric identity at the center
    const auto c = theta_bounds(sec, 0.0);
    CHECK(c.theta0_s + c.theta1_s == doctest::Approx(3.14159265358979323846).epsilon(1e-12));
    for (double f : {-0.9, -0.4, 0.0, 0.4, 0.9}) {
        const auto tb = theta_bounds(sec, f * sec.x_hi);
        CHECK(tb.theta0_s < tb.theta0_u);
        CHECK(tb.theta1_u < tb.theta1_s);
        const auto band = core_band(sec, f * sec.x_hi);
        CHECK(band.first < band.second);
        CHECK(band.first > 0);
        CHECK(band.second < 3.14159265358979323846);
    }
}

TEST_CASE("first return refuses the cusped case") {
    Representation rep(0.0);
    const auto sec = section_geometry(rep);
    CHECK_THROWS_AS(first_return(rep, sec, SectionPoint{0.0, 1.5}), std::domain_error);
}

TEST_CASE("periodic itineraries match their words") {
    Representation rep(0.5);
    const auto sec = section_geometry(rep);
    for (const std::string w : {"RL", "RRL", "RLLRL"}) {
        const Mat2 m = rep.word_matrix(w);
        const auto seed = seed_from_axis(rep, sec, m);
        REQUIRE(seed.has_value());
        const int n = static_cast<int>(w.size());
        const auto it = itinerary(rep, sec, *seed, 2 * n);
        REQUIRE(it.ok);
        CHECK(it.word == w + w);
        // the return-time sum over one period is the geodesic length
        CHECK(it.total_time == doctest::Approx(2 * closed_geodesic_length(m)).epsilon(1e-7));
    }
}

TEST_CASE("itinerary repeats with the word period") {
    Representation rep(0.5);
    const auto sec = section_geometry(rep);
    const auto seedR = seed_from_axis(rep, sec, rep.word_matrix("RRL"));
    REQUIRE(seedR.has_value());
    const auto it = itinerary(rep, sec, *seedR, 6);
    REQUIRE(it.ok);
    CHECK(it.word == "RRLRRL");
}

TEST_CASE("two-leaf return image") {
    for (double l : {0.3, 0.6}) {
        Representation rep(l);
        const auto sec = section_geometry(rep);
        const auto leaves = sample_leaf_endpoints(rep, sec, 4);
        REQUIRE(leaves.size() >= 4);
        for (size_t i = 0; i < 4; ++i) {
            const auto rep2 = verify_two_leaf_image(rep, sec, leaves[i]);
            CHECK(rep2.ok);
            CHECK(rep2.clusters == 2);
            CHECK(rep2.max_dispersion < 1e-8);
            CHECK(rep2.orientation_preserved);
        }
    }
}
