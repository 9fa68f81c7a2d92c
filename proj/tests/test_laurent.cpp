#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trefoil/laurent.hpp"

using namespace trefoil;

TEST_CASE("arithmetic and printing") {
    const Laurent t = Laurent::monomial(1, 1);
    const Laurent p = t * t - t + Laurent(BigInt(1));
    CHECK(p.str() == "t^2 - t + 1");
    CHECK(p.eval(2) == 3);
    CHECK(p.eval_at_one() == 1);
    CHECK(p.low_degree() == 0);
    CHECK(p.high_degree() == 2);
    CHECK(p.is_palindromic());
    const Laurent q = Laurent::monomial(3, -2) + t;  // 3 t^-2 + t
    CHECK(q.coeff(-2) == 3);
    CHECK(q.coeff(1) == 1);
    CHECK((q - q).is_zero());
}

TEST_CASE("exact division") {
    const Laurent t = Laurent::monomial(1, 1);
    const Laurent one(BigInt(1));
    const Laurent num = (t * t - one) * (t + one);
    const auto d = num.divided_by(t + one);
    REQUIRE(d.has_value());
    CHECK(*d == t * t - one);
    CHECK(!(t * t - one).divided_by(t - Laurent(BigInt(2))).has_value());
}

TEST_CASE("alexander normalization") {
    const Laurent t = Laurent::monomial(1, 1);
    const Laurent raw = Laurent::monomial(-1, -3) * (t * t - t + Laurent(BigInt(1)));
    CHECK(raw.alexander_normalized().str() == "t^2 - t + 1");
}

TEST_CASE("bareiss determinant") {
    CHECK(det_bareiss({{BigInt(1), BigInt(2)}, {BigInt(3), BigInt(4)}}) == -2);
    CHECK(det_bareiss({{BigInt(0), BigInt(1)}, {BigInt(1), BigInt(0)}}) == -1);  // row swap
    // singular
    CHECK(det_bareiss({{BigInt(1), BigInt(2)}, {BigInt(2), BigInt(4)}}) == 0);
    // 3x3 with known value 1*(1*1-0) - 2*(0-0) + 3*(0-0) fixture
    CHECK(det_bareiss({{BigInt(2), BigInt(0), BigInt(1)},
                       {BigInt(1), BigInt(3), BigInt(-1)},
                       {BigInt(0), BigInt(5), BigInt(4)}}) == 2 * (12 + 5) - 0 + 1 * 5);
}

TEST_CASE("laurent determinant via interpolation") {
    const Laurent t = Laurent::monomial(1, 1);
    const Laurent one(BigInt(1));
    // [[t, 1], [1, t^-1]] is singular
    CHECK(det_laurent({{t, one}, {one, Laurent::monomial(1, -1)}}).is_zero());
    // [[1-t, t], [t, 1-t]] -> (1-t)^2 - t^2 = 1 - 2t
    const Laurent d = det_laurent({{one - t, t}, {t, one - t}});
    CHECK(d == one - Laurent(BigInt(2)) * t);
    // negative powers factored per row: det [[t^-1, 1], [1, 2t]] = 2 - 1 = 1
    const Laurent two(BigInt(2));
    CHECK(det_laurent({{Laurent::monomial(1, -1), one}, {one, two * t}}) == one);
}
