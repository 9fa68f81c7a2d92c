#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

// Upper half-plane model of H^2 and PSL(2,R) acting by Mobius maps.
// Matrices are kept in SL(2,R) (det 1) and compared projectively (M ~ -M).

namespace trefoil {

using Mat2 = Eigen::Matrix2d;
using Complex = std::complex<double>;

// A point of the ideal boundary R u {inf}.  Parabolic fixed points are kept
// exact by tagging infinity instead of storing a large float.
struct IdealPoint {
    double x = 0.0;
    bool inf = false;

    static IdealPoint infinity() { return {0.0, true}; }
    static IdealPoint at(double v) { return {v, false}; }
    friend bool operator==(const IdealPoint&, const IdealPoint&) = default;
};

inline bool approx_equal(const IdealPoint& a, const IdealPoint& b, double tol = 1e-7) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return std::abs(a.x - b.x) <= tol * std::max(1.0, std::abs(a.x));
}

// Oriented geodesic: u is the backward endpoint, v the forward one.
struct GeodesicLine {
    IdealPoint u, v;
    GeodesicLine reversed() const { return {v, u}; }
};

// Unit tangent vector to H^2, stored as the group element g moving the
// standard frame (base i, pointing up) onto it.
struct Frame {
    Mat2 g = Mat2::Identity();
};

// --- SL(2)/PSL(2) basics -------------------------------------------------

Mat2 mat2(double a, double b, double c, double d);
Mat2 inverse_unimodular(const Mat2& m);       // adjugate; assumes det 1
Mat2 renormalize_det(const Mat2& m);          // rescale so det = 1
Mat2 proj_normalize(const Mat2& m);           // first nonzero entry > 0
bool proj_equal(const Mat2& a, const Mat2& b, double tol = 1e-10);

double mat_trace(const Mat2& m);

// Standard generators of PSL(2,Z).
Mat2 gen_S();  // order 2, fixes i
Mat2 gen_T();  // z -> z + 1

// --- Mobius action -------------------------------------------------------

Complex mobius_apply(const Mat2& m, Complex z);
IdealPoint mobius_apply(const Mat2& m, const IdealPoint& p);
GeodesicLine mobius_apply(const Mat2& m, const GeodesicLine& l);

// --- frames and the geodesic flow ---------------------------------------

// g * diag(e^{t/2}, e^{-t/2}); rejects |t| > 700 (exp overflow).
Frame geodesic_flow(const Frame& f, double t);

Complex frame_base(const Frame& f);
double frame_angle(const Frame& f);           // direction angle at the base point
Frame frame_at(Complex z, double angle);
GeodesicLine frame_geodesic(const Frame& f);  // oriented along the flow direction

// --- geodesic lines ------------------------------------------------------

// Unoriented geodesic through two interior points (orientation z1 -> z2).
GeodesicLine geodesic_through(Complex z1, Complex z2);
// Geodesic through z with initial direction angle phi, oriented forward.
GeodesicLine geodesic_from(Complex z, double phi);

// Direction angle at z of the geodesic heading toward ideal point w.
double direction_toward(Complex z, const IdealPoint& w);

// Time coordinate of (the projection of) z along the oriented line.
double line_progress(const GeodesicLine& l, Complex z);
Complex line_point_at(const GeodesicLine& l, double t);
std::optional<Complex> line_intersect(const GeodesicLine& a, const GeodesicLine& b);

// Signed side function: > 0 on one side of the line, < 0 on the other,
// = 0 on the line; Mobius-invariant sign pattern (used for event bisection).
double line_side(const GeodesicLine& l, Complex z);

double hyperbolic_distance(Complex z1, Complex z2);

// --- hyperbolic elements -------------------------------------------------

bool is_hyperbolic(const Mat2& m, double tol = 0.0);
// 2*arccosh(|tr|/2); throws std::domain_error unless |tr| > 2.
double closed_geodesic_length(const Mat2& m);
// Axis of a hyperbolic element, oriented (repelling -> attracting).
GeodesicLine axis(const Mat2& m);

// --- fundamental domains -------------------------------------------------

struct Reduction {
    Complex z;
    Mat2 word;  // z = word * input
};

// Classical reduction into {|Re| <= 1/2, |z| >= 1} for PSL(2,Z).
// Throws std::runtime_error after 10^4 moves (non-discrete input).
Reduction reduce_to_fundamental_domain(Complex z);

// Dirichlet-domain reduction for a deformed group: nearest translate of z to
// the base point over words of length <= max_len in the given generators.
Reduction reduce_dirichlet(Complex z, const std::vector<Mat2>& generators,
                           Complex base_point, int max_len = 12);

// Dispatches on the generator list: the standard pair uses the closed-form
// two-move loop, anything else the Dirichlet fallback.
Reduction reduce_to_fundamental_domain(Complex z, const std::vector<Mat2>& generators);

}  // namespace trefoil
