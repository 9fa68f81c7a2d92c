#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "trefoil/laurent.hpp"
#include "trefoil/lorenz.hpp"  // Polyline3

// Lorenz words, their PSL(2,Z) matrices and template braids, knot diagrams
// from 3D polylines, and the Alexander polynomial by two independent routes
// (reduced Burau on braids, Alexander's crossing matrix on diagrams).

namespace trefoil {

// --- Lorenz words ---------------------------------------------------------

struct LorenzWord {
    std::string symbols;  // over {L, R}, nonempty

    explicit LorenzWord(std::string s);
    int size() const { return static_cast<int>(symbols.size()); }
    bool is_primitive() const;    // not a proper power
    bool is_mixed() const;        // contains both letters
    LorenzWord cyclic_normal_form() const;  // lexicographically least rotation
    friend bool operator==(const LorenzWord&, const LorenzWord&) = default;
};

// All primitive words containing both letters, up to cyclic rotation,
// 2 <= |w| <= max_len; each in cyclic normal form.
std::vector<LorenzWord> primitive_mixed_classes(int max_len);

using IMat2 = Eigen::Matrix<std::int64_t, 2, 2>;

// Product over letters of L = [[1,0],[1,1]], R = [[1,1],[0,1]].
IMat2 word_to_matrix(const LorenzWord& w);

// --- braids ---------------------------------------------------------------

struct Braid {
    int strands = 1;
    std::vector<int> word;  // positive generators, 1-based: k means sigma_k

    std::vector<int> permutation() const;  // 0-based, start position -> end
    bool closure_is_knot() const;          // permutation is an n-cycle
};

// Positive permutation braid of the Lorenz-template orbit of w
// (rotations ordered lexicographically; shift map acts).  Throws on
// non-primitive words.
Braid lorenz_braid(const LorenzWord& w);

Laurent alexander_from_braid(const Braid& b);  // reduced Burau determinant

// Bennequin: g = (c - n + 1)/2 for positive braid knots.
int genus_positive_braid(const Braid& b);

// --- diagrams -------------------------------------------------------------

struct DiagramCrossing {
    int over = 0, under_in = 0, under_out = 0;  // arc labels
    int sign = +1;
};

struct KnotDiagram {
    std::vector<DiagramCrossing> crossings;
    int narcs = 0;
    // curve parameters of the over/under passes, for Seifert smoothing
    std::vector<std::pair<double, double>> pass_params;

    void validate() const;  // throws std::runtime_error on inconsistent labels
    std::string pd_json() const;
};

// Raw crossing seen along the closed curve: parameters of the two passes.
struct RawCrossing {
    double t_over, t_under;
    int sign;
};

// Arc assignment + Reidemeister-I reduction of kinks.
KnotDiagram build_diagram(std::vector<RawCrossing> raw);

// Generic projection of a closed polyline.  Retries random directions until
// the projection has no tangencies, near-triple points, or depth ties
// (tolerance 1e-9); throws "degenerate curve" after 100 attempts.
KnotDiagram polyline_to_diagram(const Polyline3& c, std::uint64_t seed = 0,
                                const Vec3* preferred_direction = nullptr);

// Planar diagram of the braid closure (left strand passes over).
KnotDiagram diagram_from_braid(const Braid& b);

Laurent alexander_from_diagram(const KnotDiagram& d);

// Seifert's algorithm on the diagram: circle count after oriented smoothing.
int seifert_circle_count(const KnotDiagram& d);
// (c - s + 1)/2; the independent genus oracle.
int seifert_genus(const KnotDiagram& d);

// --- the Ghys coding check ------------------------------------------------

struct GhysReport {
    LorenzWord word;
    std::string modular_itinerary;  // from the periodic geodesic of M_w
    std::string model_itinerary;    // from the geometric-model orbit
    bool agree = false;
    Braid braid;
    int genus = 0;
    Laurent alexander;
};

class Representation;  // modular.hpp
struct CrossSection;

// Runs the three codings of a primitive mixed word against each other and
// attaches the knot certificate of the template braid.
GhysReport ghys_word_check(const LorenzWord& w, const Representation& rep,
                           const CrossSection& section);

}  // namespace trefoil
