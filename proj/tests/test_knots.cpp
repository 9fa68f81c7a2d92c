#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "trefoil/knots.hpp"

using namespace trefoil;

TEST_CASE("lorenz words") {
    CHECK(LorenzWord("LR").is_primitive());
    CHECK(!LorenzWord("LRLR").is_primitive());
    CHECK(LorenzWord("LLL").is_primitive() == false);  // proper power of L
    CHECK(!LorenzWord("RRR").is_mixed());
    CHECK(LorenzWord("RLL").cyclic_normal_form().symbols == "LLR");
    CHECK_THROWS(LorenzWord("LXR"));
    CHECK_THROWS(LorenzWord(""));
    CHECK(primitive_mixed_classes(6).size() == 21);
    // every class is primitive, mixed, in normal form, and distinct
    std::set<std::string> seen;
    for (const auto& w : primitive_mixed_classes(6)) {
        CHECK(w.is_primitive());
        CHECK(w.is_mixed());
        CHECK(w.cyclic_normal_form().symbols == w.symbols);
        seen.insert(w.symbols);
    }
    CHECK(seen.size() == 21);
}

TEST_CASE("word matrices") {
    const IMat2 m = word_to_matrix(LorenzWord("LR"));
    CHECK(m(0, 0) == 1);
    CHECK(m(0, 1) == 1);
    CHECK(m(1, 0) == 1);
    CHECK(m(1, 1) == 2);
    CHECK(word_to_matrix(LorenzWord("LLR")).determinant() == 1);
    // trace grows with word length; conjugate words share the trace
    CHECK(word_to_matrix(LorenzWord("RLL")).trace() == word_to_matrix(LorenzWord("LLR")).trace());
}

TEST_CASE("lorenz braids") {
    // LR closes to the unknot on two strands
    const Braid b = lorenz_braid(LorenzWord("LR"));
    CHECK(b.closure_is_knot());
    CHECK(genus_positive_braid(b) == 0);
    CHECK(alexander_from_braid(b).str() == "1");
    // all period-3 orbits are unknotted; the trefoil appears at period 5
    for (const char* w : {"LLR", "LRR"}) {
        const Braid t = lorenz_braid(LorenzWord(w));
        CHECK(t.closure_is_knot());
        CHECK(genus_positive_braid(t) == 0);
        CHECK(alexander_from_braid(t).str() == "1");
    }
    for (const char* w : {"LLRLR", "LRLRR"}) {
        const Braid t = lorenz_braid(LorenzWord(w));
        CHECK(t.closure_is_knot());
        CHECK(genus_positive_braid(t) == 1);
        CHECK(alexander_from_braid(t).str() == "t^2 - t + 1");
    }
    CHECK_THROWS(lorenz_braid(LorenzWord("LRLR")));
}

TEST_CASE("alexander polynomials of torus braids") {
    // sigma_1^3 -> trefoil, sigma_1^5 -> cinquefoil
    CHECK(alexander_from_braid(Braid{2, {1, 1, 1}}).str() == "t^2 - t + 1");
    CHECK(alexander_from_braid(Braid{2, {1, 1, 1, 1, 1}}).str() == "t^4 - t^3 + t^2 - t + 1");
    // (sigma_1 sigma_2)^4 -> T(3,4), genus 3
    const Braid t34{3, {1, 2, 1, 2, 1, 2, 1, 2}};
    CHECK(genus_positive_braid(t34) == 3);
    CHECK(alexander_from_braid(t34).is_palindromic());
}

TEST_CASE("braid diagrams agree with burau") {
    for (const Braid& b : {Braid{2, {1, 1, 1}}, Braid{2, {1, 1, 1, 1, 1}},
                           Braid{3, {1, 2, 1, 2, 1, 2, 1, 2}}}) {
        const auto d = diagram_from_braid(b);
        d.validate();
        CHECK(alexander_from_diagram(d) == alexander_from_braid(b));
    }
}

TEST_CASE("seifert smoothing") {
    // closure of sigma_1^c on two strands has 2 Seifert circles
    for (int c : {3, 5, 7}) {
        Braid b{2, std::vector<int>(c, 1)};
        const auto d = diagram_from_braid(b);
        CHECK(seifert_circle_count(d) == 2);
        CHECK(seifert_genus(d) == (c - 1) / 2);
        CHECK(seifert_genus(d) == genus_positive_braid(b));
    }
}

TEST_CASE("diagram from an explicit trefoil curve") {
    // the standard (2,3) torus parametrization
    Polyline3 poly;
    const int N = 400;
    for (int k = 0; k <= N; ++k) {
        const double t = 2 * 3.14159265358979323846 * k / N;
        poly.points.emplace_back(std::sin(t) + 2 * std::sin(2 * t),
                                 std::cos(t) - 2 * std::cos(2 * t), -std::sin(3 * t));
    }
    poly.closed = true;
    for (std::uint64_t seed : {1ull, 7ull, 42ull}) {
        const auto d = polyline_to_diagram(poly, seed);
        d.validate();
        CHECK(alexander_from_diagram(d).str() == "t^2 - t + 1");
    }
}
