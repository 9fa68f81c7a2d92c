#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trefoil/lorenz.hpp"

using namespace trefoil;

TEST_CASE("equilibria and field symmetry") {
    const LorenzParams p;
    const auto eq = equilibria(p);
    REQUIRE(eq.size() == 3);
    for (const auto& e : eq) CHECK(lorenz_field(e, p).norm() < 1e-12);
    CHECK(c_plus(p).z() == doctest::Approx(27.0));
    // equivariance under (x,y,z) -> (-x,-y,z)
    const Vec3 s(1.3, -0.7, 5.0);
    const Vec3 f1 = lorenz_field(s, p);
    const Vec3 f2 = lorenz_field(Vec3(-s.x(), -s.y(), s.z()), p);
    CHECK((Vec3(-f1.x(), -f1.y(), f1.z()) - f2).norm() < 1e-14);
}

TEST_CASE("origin spectrum at classical parameters") {
    const auto os = eigen_origin(LorenzParams{});
    CHECK(os.lambda2 == -8.0 / 3.0);  // exact
    CHECK(std::abs(os.lambda1 - 11.8277) < 1e-3);
    CHECK(std::abs(os.lambda3 + 22.8277) < 1e-3);
    CHECK(os.ordering_ok);
}

TEST_CASE("C+ spectrum is saddle-focus at classical parameters") {
    const auto fs = eigen_cplus(LorenzParams{});
    CHECK(fs.saddle_focus);
    CHECK(fs.real_eig == doctest::Approx(-13.854578).epsilon(1e-5));
    CHECK(fs.pair.real() == doctest::Approx(0.093956).epsilon(1e-4));
    CHECK(fs.pair.imag() == doctest::Approx(10.194505).epsilon(1e-5));
}

TEST_CASE("integrator accuracy and events") {
    const LorenzParams p;
    IntegrateOptions o1, o2;
    o1.tol = 1e-10;
    o2.tol = 1e-13;
    const Vec3 y0(1, 1, 1);
    const auto a = integrate(y0, p, 5.0, o1);
    const auto b = integrate(y0, p, 5.0, o2);
    CHECK((a.final_state - b.final_state).norm() < 1e-5);
    // event: crossing the plane z = 27
    IntegrateOptions oe;
    oe.events.push_back([](double, const Vec3& s) { return s.z() - 27.0; });
    const auto tr = integrate(Vec3(1, 1, 40), p, 5.0, oe);
    REQUIRE(tr.event_hit);
    CHECK(std::abs(tr.event_state.z() - 27.0) < 1e-8);
    CHECK(tr.event_time < 5.0);
}

TEST_CASE("hopf threshold closed form vs bisection") {
    CHECK(hopf_threshold(10.0, 8.0 / 3.0) == doctest::Approx(470.0 / 19.0).epsilon(1e-14));
    CHECK(std::abs(hopf_threshold(10.0, 8.0 / 3.0) - hopf_threshold_bisection(10.0, 8.0 / 3.0)) <
          1e-6);
    CHECK_THROWS(hopf_threshold(2.0, 8.0 / 3.0));
}

TEST_CASE("miss distance is small near the known connection point") {
    const LorenzParams p{10.16728945, 30.86808747, 8.0 / 3.0};
    const auto m = miss_distance(p);
    REQUIRE(m.has_value());
    CHECK(m->miss.norm() < 1e-5);
}

TEST_CASE("tpoint search from the standard start") {
    const auto res = find_tpoint(LorenzParams{10.0, 30.0, 8.0 / 3.0});
    CHECK(res.converged);
    CHECK(res.residual < 1e-6);
    CHECK(std::abs(res.params.rho - 30.87) < 0.05);
    CHECK(std::abs(res.params.sigma - 10.17) < 0.05);
}

TEST_CASE("trefoil assembly produces a closed symmetric polyline") {
    const auto tp = find_tpoint(LorenzParams{10.0, 30.0, 8.0 / 3.0});
    const auto poly = assemble_trefoil(tp.params);
    REQUIRE(poly.closed);
    REQUIRE(poly.points.size() > 100);
    CHECK((poly.points.front() - poly.points.back()).norm() < 1e-12);
    // refuses parameters far from the connection
    CHECK_THROWS_AS(assemble_trefoil(LorenzParams{}), std::runtime_error);
}
