#pragma once

#include <array>
#include <string>
#include <vector>

// Piecewise-affine one-parameter family on the square R = [-1,1]^2: an
// expanding interval map in x driving a contracting skew product in y.
// r < 0 gives a transitive attractor, r = 0 the boundary connection, r > 0 a
// "fake" horseshoe (both foliation orientations preserved).

namespace trefoil {

struct ModelParams {
    double r = 0.0;
    double nu = 0.3;     // vertical contraction
    double delta = 0.6;  // vertical offset

    double mu() const;  // slope 2 + r + min(0, r)
    void validate() const;  // throws std::domain_error on bad ranges
};

enum class PointStatus { alive, escaped_right_sink, escaped_left_sink, on_discontinuity };

struct ReturnMapPoint {
    double x = 0.0;
    double y = 0.0;
    PointStatus status = PointStatus::alive;
};

enum class Regime { lorenz_attractor, boundary_heteroclinic, fake_horseshoe, unresolved };

struct RegimeReport {
    Regime regime = Regime::unresolved;
    int sinks = 0, sources = 0, saddles = 0, nontrivial_classes = 0;
    std::string detail;                 // human-readable witness summary
    std::array<double, 2> failing_interval{0, 0};  // set when unresolved
};

struct HorseshoeData {
    std::array<double, 2> right_rect_x;  // [gap, 1]
    std::array<double, 2> left_rect_x;   // [-1, -gap]
    std::array<std::array<int, 2>, 2> transitions;  // all-ones for r > 0
    bool preserves_unstable_orientation = false;
    bool preserves_stable_orientation = false;
    double entropy_estimate = 0.0;  // lap-number growth rate
};

struct KneadingData {
    std::string plus, minus;   // itineraries of f_r(0+), f_r(0-)
    int escape_step = -1;      // -1 when the orbit stays in R
    bool truncated = false;    // orbit hit the discontinuity exactly
};

// One-sided interval map; x = 0 is the discontinuity (use return_map for the
// status-tracking version).  Throws std::domain_error on x = 0 or |x| > 1.
double interval_map(double x, const ModelParams& mp);

ReturnMapPoint return_map(const ReturnMapPoint& pt, const ModelParams& mp);

RegimeReport classify_regime(const ModelParams& mp, int depth = 12);

HorseshoeData horseshoe_markov(const ModelParams& mp, int entropy_depth = 16);

// Unique periodic survivor point with the given itinerary (r > 0 full shift),
// found by iterating the contracting inverse branches.
ReturnMapPoint periodic_orbit_from_word(const std::string& w, const ModelParams& mp);

// Forward itinerary (L/R) of an alive point; stops early on escape.
std::string model_itinerary(ReturnMapPoint pt, const ModelParams& mp, int n);

KneadingData kneading(const ModelParams& mp, int n);

// Number of monotone branches of f_r^n restricted to points surviving n steps.
long lap_number(const ModelParams& mp, int n);

}  // namespace trefoil
