#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "trefoil/hyperbolic.hpp"

using namespace trefoil;
using std::abs;

TEST_CASE("mobius action basics") {
    const Complex i(0, 1);
    CHECK(abs(mobius_apply(gen_S(), i) - i) < 1e-15);
    CHECK(abs(mobius_apply(gen_T(), i) - (i + 1.0)) < 1e-15);
    // S sends 0 <-> infinity
    CHECK(mobius_apply(gen_S(), IdealPoint::at(0)).inf);
    CHECK(mobius_apply(gen_S(), IdealPoint::infinity()) == IdealPoint::at(0));
    // composition = matrix product
    const Mat2 m = gen_T() * gen_S();
    const Complex z(0.3, 0.8);
    CHECK(abs(mobius_apply(m, z) - mobius_apply(gen_T(), mobius_apply(gen_S(), z))) < 1e-14);
}

TEST_CASE("distance and geodesics") {
    const Complex i(0, 1);
    CHECK(hyperbolic_distance(i, Complex(0, 2)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    // invariance under the group
    const Mat2 g = mat2(2, 1, 1, 1);
    const Complex a(0.1, 0.7), b(-0.4, 2.1);
    CHECK(hyperbolic_distance(mobius_apply(g, a), mobius_apply(g, b)) ==
          doctest::Approx(hyperbolic_distance(a, b)).epsilon(1e-11));
    // line through -1, 1 is the unit semicircle
    const GeodesicLine l{IdealPoint::at(-1), IdealPoint::at(1)};
    CHECK(abs(line_side(l, i)) < 1e-14);
    CHECK(line_side(l, Complex(0, 2)) * line_side(l, Complex(0, 0.5)) < 0);
    CHECK(abs(line_point_at(l, 0.0) - i) < 1e-12);
    // parametrization is unit speed
    const Complex p1 = line_point_at(l, 0.3), p2 = line_point_at(l, 1.1);
    CHECK(hyperbolic_distance(p1, p2) == doctest::Approx(0.8).epsilon(1e-10));
    CHECK(line_progress(l, p2) == doctest::Approx(1.1).epsilon(1e-10));
}

TEST_CASE("frames and the geodesic flow") {
    const Complex z(0.25, 1.5);
    const double phi = 2.1;
    const Frame f = frame_at(z, phi);
    CHECK(abs(frame_base(f) - z) < 1e-12);
    CHECK(frame_angle(f) == doctest::Approx(phi).epsilon(1e-12));
    // flowing for time t moves the base point distance t
    const Frame g = geodesic_flow(f, 0.7);
    CHECK(hyperbolic_distance(frame_base(f), frame_base(g)) == doctest::Approx(0.7).epsilon(1e-10));
    // the flowed base stays on the frame's geodesic
    const GeodesicLine l = frame_geodesic(f);
    CHECK(abs(line_side(l, frame_base(g))) < 1e-10);
}

TEST_CASE("hyperbolic elements") {
    const Mat2 g = mat2(2, 1, 1, 1);  // trace 3
    CHECK(is_hyperbolic(g));
    CHECK(closed_geodesic_length(g) == doctest::Approx(2 * std::acosh(1.5)).epsilon(1e-14));
    CHECK_THROWS_AS(closed_geodesic_length(gen_S()), std::domain_error);
    // the axis endpoints are fixed points
    const GeodesicLine ax = axis(g);
    CHECK(approx_equal(mobius_apply(g, ax.u), ax.u, 1e-10));
    CHECK(approx_equal(mobius_apply(g, ax.v), ax.v, 1e-10));
    // attracting endpoint: iterates of any point converge to ax.v
    Complex z(0.1, 1.0);
    for (int k = 0; k < 40; ++k) z = mobius_apply(g, z);
    CHECK(std::real(z) == doctest::Approx(ax.v.x).epsilon(1e-6));
}

TEST_CASE("fundamental domain reduction") {
    const Complex z0(0.13, 1.21);
    Mat2 w = gen_T() * gen_T() * gen_S() * gen_T() * gen_S();
    const Complex z = mobius_apply(w, z0);
    const Reduction red = reduce_to_fundamental_domain(z);
    CHECK(abs(std::real(red.z)) <= 0.5 + 1e-12);
    CHECK(abs(red.z) >= 1.0 - 1e-12);
    CHECK(abs(mobius_apply(red.word, z) - red.z) < 1e-10);
    CHECK(abs(red.z - z0) < 1e-9);  // same orbit point recovered
}

TEST_CASE("projective matrix comparison") {
    const Mat2 g = mat2(2, 1, 1, 1);
    CHECK(proj_equal(g, Mat2(-g)));
    CHECK(!proj_equal(g, gen_T()));
    CHECK(proj_equal(g * inverse_unimodular(g), Mat2::Identity()));
}
