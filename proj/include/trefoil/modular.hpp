#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trefoil/hyperbolic.hpp"

// Geodesic flow on the deformed modular orbifold: the (2,3)-representation
// family with a funnel of boundary length l, the cross-section rectangle on
// l0, theta-angle bounds, the first-return map and its L/R coding.

namespace trefoil {

class Representation {
public:
    // Solves (1D root-find, tol 1e-12) for the deformation with
    // |tr(ab)| = 2 cosh(l/2); l = 0 gives the standard modular pair.
    explicit Representation(double l);

    double funnel_length() const { return l_; }
    double deformation() const { return s_; }
    const Mat2& a() const { return a_; }       // order 2, fixes q
    const Mat2& b() const { return b_; }       // order 3, fixes p
    Mat2 b_inv() const;
    Mat2 h() const;                            // a*b, the boundary class
    Complex cone_p() const;
    Complex cone_q() const { return {0.0, 1.0}; }

    // Deformed Lorenz letters: R -> a b, L -> a b^{-1}.
    Mat2 letter_matrix(char c) const;
    Mat2 word_matrix(const std::string& w) const;

private:
    double l_, s_;
    Mat2 a_, b_;
};

struct CrossSection {
    GeodesicLine l0, l1, l2;   // l1 = b l0, l2 = b^2 l0
    bool trimmed = false;      // false when l = 0 (ideal endpoints)
    double x_lo = 0.0, x_hi = 0.0;  // arclength trim, measured from q
    GeodesicLine h0, h1;       // corner geodesics, oriented to cross l0 upward
    Mat2 h0_elem = Mat2::Identity(), h1_elem = Mat2::Identity();
};

CrossSection section_geometry(const Representation& rep);

// Interior point of l0 at signed arclength x from q.
Complex section_base_point(const CrossSection& sec, double x);

struct SectionPoint {
    double x = 0.0;
    double theta = 0.0;  // in (0, pi), measured from the l0 tangent
};

struct ThetaBoundsSample {
    double theta0_s, theta0_u, theta1_s, theta1_u;
};
// Requires a trimmed section (l > 0) and x inside the trim.
ThetaBoundsSample theta_bounds(const CrossSection& sec, double x);
// The open band (max(t0s, t1u), min(t0u, t1s)) of non-wandering angles.
std::pair<double, double> core_band(const CrossSection& sec, double x);

enum class ReturnStatus { ok, wandering, degenerate, lost };

struct ReturnStep {
    ReturnStatus status = ReturnStatus::lost;
    SectionPoint point;
    char letter = '?';  // 'R' = crossed l1, 'L' = crossed l2
    double time = 0.0;
    Mat2 reidentification = Mat2::Identity();
};

// Throws std::domain_error for l = 0 (non-compact section).
ReturnStep first_return(const Representation& rep, const CrossSection& sec,
                        const SectionPoint& pt, double tmax = 50.0);

struct ItineraryResult {
    std::string word;
    double total_time = 0.0;
    bool ok = false;
    ReturnStatus fail_status = ReturnStatus::ok;
    SectionPoint last;
};
ItineraryResult itinerary(const Representation& rep, const CrossSection& sec,
                          SectionPoint pt, int n);

// Conjugates M through the group (breadth-first over generators) until some
// conjugate's axis crosses l0 inside the core band; the crossing is the seed
// of the periodic section orbit.
std::optional<SectionPoint> seed_from_axis(const Representation& rep,
                                           const CrossSection& sec, const Mat2& M,
                                           int cap = 20000);

// Backward endpoints of group translates of h whose axes cross l0 inside the
// core band; each defines an unstable leaf of the section.
std::vector<double> sample_leaf_endpoints(const Representation& rep,
                                          const CrossSection& sec, int count);

struct TwoLeafReport {
    bool ok = false;
    int clusters = 0;
    int sampled = 0;          // in-band sample points that returned
    double max_dispersion = 0.0;  // backward-endpoint spread within clusters
    bool orientation_preserved = false;
    std::string detail;
};
// Samples m points on the unstable leaf with the given backward endpoint and
// checks that the return image is exactly two leaves.
TwoLeafReport verify_two_leaf_image(const Representation& rep, const CrossSection& sec,
                                    double leaf_endpoint, int m = 64);

}  // namespace trefoil
