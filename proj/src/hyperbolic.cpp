#include "trefoil/hyperbolic.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace trefoil {

namespace {
constexpr double kInfCutoff = 1e12;  // Mobius images beyond this collapse to inf

double norm_angle(double a) {
    while (a <= -M_PI) a += 2 * M_PI;
    while (a > M_PI) a -= 2 * M_PI;
    return a;
}
}  // namespace

Mat2 mat2(double a, double b, double c, double d) {
    Mat2 m;
    m << a, b, c, d;
    return m;
}

Mat2 inverse_unimodular(const Mat2& m) {
    return mat2(m(1, 1), -m(0, 1), -m(1, 0), m(0, 0));
}

Mat2 renormalize_det(const Mat2& m) {
    const double det = m.determinant();
    if (!(det > 0))
        throw std::domain_error("renormalize_det: determinant not positive");
    return m / std::sqrt(det);
}

Mat2 proj_normalize(const Mat2& m) {
    const double entries[4] = {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
    for (double e : entries) {
        if (std::abs(e) > 1e-14) return e > 0 ? Mat2(m) : Mat2(-m);
    }
    return m;
}

bool proj_equal(const Mat2& a, const Mat2& b, double tol) {
    return (proj_normalize(a) - proj_normalize(b)).cwiseAbs().maxCoeff() <= tol;
}

double mat_trace(const Mat2& m) { return m(0, 0) + m(1, 1); }

Mat2 gen_S() { return mat2(0, -1, 1, 0); }
Mat2 gen_T() { return mat2(1, 1, 0, 1); }

Complex mobius_apply(const Mat2& m, Complex z) {
    const Complex den = m(1, 0) * z + m(1, 1);
    return (m(0, 0) * z + m(0, 1)) / den;
}

IdealPoint mobius_apply(const Mat2& m, const IdealPoint& p) {
    if (p.inf) {
        if (std::abs(m(1, 0)) < 1e-300) return IdealPoint::infinity();
        return IdealPoint::at(m(0, 0) / m(1, 0));
    }
    const double den = m(1, 0) * p.x + m(1, 1);
    if (den == 0.0) return IdealPoint::infinity();
    const double v = (m(0, 0) * p.x + m(0, 1)) / den;
    if (std::abs(v) > kInfCutoff) return IdealPoint::infinity();
    return IdealPoint::at(v);
}

GeodesicLine mobius_apply(const Mat2& m, const GeodesicLine& l) {
    return {mobius_apply(m, l.u), mobius_apply(m, l.v)};
}

Frame geodesic_flow(const Frame& f, double t) {
    if (std::abs(t) > 700.0)
        throw std::domain_error("geodesic_flow: |t| too large (exp overflow)");
    const double e = std::exp(t / 2);
    Mat2 d = mat2(e, 0, 0, 1 / e);
    return Frame{renormalize_det(f.g * d)};
}

Complex frame_base(const Frame& f) { return mobius_apply(f.g, Complex(0, 1)); }

double frame_angle(const Frame& f) {
    const Complex den = f.g(1, 0) * Complex(0, 1) + f.g(1, 1);
    const Complex v = Complex(0, 1) / (den * den);
    return std::atan2(v.imag(), v.real());
}

Frame frame_at(Complex z, double angle) {
    const double y = z.imag();
    if (!(y > 0)) throw std::domain_error("frame_at: base point not in H^2");
    const double sy = std::sqrt(y);
    Mat2 tr = mat2(sy, z.real() / sy, 0, 1 / sy);
    const double th = (angle - M_PI / 2) / 2;
    Mat2 rot = mat2(std::cos(th), std::sin(th), -std::sin(th), std::cos(th));
    return Frame{tr * rot};
}

GeodesicLine frame_geodesic(const Frame& f) {
    return geodesic_from(frame_base(f), frame_angle(f));
}

GeodesicLine geodesic_through(Complex z1, Complex z2) {
    const double x1 = z1.real(), y1 = z1.imag(), x2 = z2.real(), y2 = z2.imag();
    if (std::abs(x1 - x2) < 1e-13 * std::max(1.0, std::abs(x1))) {
        // vertical line; oriented by increasing Im toward inf
        if (y2 > y1) return {IdealPoint::at(x1), IdealPoint::infinity()};
        return {IdealPoint::infinity(), IdealPoint::at(x1)};
    }
    const double c = (x1 * x1 + y1 * y1 - x2 * x2 - y2 * y2) / (2 * (x1 - x2));
    const double r = std::abs(z1 - Complex(c, 0));
    GeodesicLine l{IdealPoint::at(c - r), IdealPoint::at(c + r)};
    if (line_progress(l, z2) < line_progress(l, z1)) return l.reversed();
    return l;
}

GeodesicLine geodesic_from(Complex z, double phi) {
    const double x = z.real(), y = z.imag();
    const double c = std::cos(phi);
    if (std::abs(c) < 1e-15) {
        if (std::sin(phi) > 0) return {IdealPoint::at(x), IdealPoint::infinity()};
        return {IdealPoint::infinity(), IdealPoint::at(x)};
    }
    const double c0 = x + y * std::tan(phi);
    const double r = std::abs(z - Complex(c0, 0));
    // tangent along the circle: +-i(z - c0); pick the sign matching phi
    const Complex tang = Complex(0, 1) * (z - Complex(c0, 0));
    const double dot = tang.real() * c + tang.imag() * std::sin(phi);
    // counterclockwise motion (psi increasing) heads toward the endpoint c0 - r
    if (dot > 0) return {IdealPoint::at(c0 + r), IdealPoint::at(c0 - r)};
    return {IdealPoint::at(c0 - r), IdealPoint::at(c0 + r)};
}

double direction_toward(Complex z, const IdealPoint& w) {
    const double x = z.real(), y = z.imag();
    if (w.inf) return M_PI / 2;
    if (std::abs(w.x - x) < 1e-13 * std::max(1.0, std::abs(x))) return -M_PI / 2;
    const double c0 = (x * x + y * y - w.x * w.x) / (2 * (x - w.x));
    Complex tang = Complex(0, 1) * (z - Complex(c0, 0));
    tang /= std::abs(tang);
    const double r = std::abs(z - Complex(c0, 0));
    // counterclockwise motion (tang = i(z-c0)/|.|) heads toward endpoint c0 - r
    const double e1 = c0 + r, e2 = c0 - r;
    const Complex dir = (std::abs(e2 - w.x) < std::abs(e1 - w.x)) ? tang : -tang;
    return std::atan2(dir.imag(), dir.real());
}

double line_progress(const GeodesicLine& l, Complex z) {
    if (l.v.inf) return std::log(z.imag());
    if (l.u.inf) return -std::log(z.imag());
    const Complex w = (z - Complex(l.u.x, 0)) / (z - Complex(l.v.x, 0));
    return std::log(std::abs(w));
}

Complex line_point_at(const GeodesicLine& l, double t) {
    if (l.v.inf) return Complex(l.u.x, std::exp(t));
    if (l.u.inf) return Complex(l.v.x, std::exp(-t));
    Complex w(0, -std::exp(t));
    Complex z = (Complex(l.u.x, 0) - Complex(l.v.x, 0) * w) / (1.0 - w);
    if (z.imag() < 0) {
        w = -w;
        z = (Complex(l.u.x, 0) - Complex(l.v.x, 0) * w) / (1.0 - w);
    }
    return z;
}

double line_side(const GeodesicLine& l, Complex z) {
    if (l.u.inf || l.v.inf) {
        const double x0 = l.u.inf ? l.v.x : l.u.x;
        return z.real() - x0;
    }
    const double c = (l.u.x + l.v.x) / 2;
    const double r = std::abs(l.u.x - l.v.x) / 2;
    return std::norm(z - Complex(c, 0)) - r * r;
}

std::optional<Complex> line_intersect(const GeodesicLine& a, const GeodesicLine& b) {
    const bool va = a.u.inf || a.v.inf;
    const bool vb = b.u.inf || b.v.inf;
    if (va && vb) return std::nullopt;
    if (va || vb) {
        const double x = va ? (a.u.inf ? a.v.x : a.u.x) : (b.u.inf ? b.v.x : b.u.x);
        const GeodesicLine& circ = va ? b : a;
        const double c = (circ.u.x + circ.v.x) / 2;
        const double r = std::abs(circ.u.x - circ.v.x) / 2;
        const double d2 = r * r - (x - c) * (x - c);
        if (d2 <= 0) return std::nullopt;
        return Complex(x, std::sqrt(d2));
    }
    const double ca = (a.u.x + a.v.x) / 2, ra = std::abs(a.u.x - a.v.x) / 2;
    const double cb = (b.u.x + b.v.x) / 2, rb = std::abs(b.u.x - b.v.x) / 2;
    if (std::abs(cb - ca) < 1e-14 * std::max(1.0, std::abs(ca))) return std::nullopt;
    const double x = (ra * ra - rb * rb + cb * cb - ca * ca) / (2 * (cb - ca));
    const double y2 = ra * ra - (x - ca) * (x - ca);
    if (y2 <= 0) return std::nullopt;
    return Complex(x, std::sqrt(y2));
}

double hyperbolic_distance(Complex z1, Complex z2) {
    const double num = std::norm(z1 - z2);
    return std::acosh(1.0 + num / (2 * z1.imag() * z2.imag()));
}

bool is_hyperbolic(const Mat2& m, double tol) {
    return std::abs(mat_trace(m)) > 2.0 + tol;
}

double closed_geodesic_length(const Mat2& m) {
    const double tr = std::abs(mat_trace(m));
    if (!(tr > 2.0))
        throw std::domain_error("closed_geodesic_length: element not hyperbolic");
    return 2.0 * std::acosh(tr / 2.0);
}

GeodesicLine axis(const Mat2& m) {
    const double tr = mat_trace(m);
    if (!(std::abs(tr) > 2.0)) throw std::domain_error("axis: element not hyperbolic");
    const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    const double disc = std::sqrt(tr * tr - 4.0);
    const double l1 = (tr + disc) / 2, l2 = (tr - disc) / 2;  // eigenvalues
    if (std::abs(c) < 1e-14) {
        const IdealPoint other =
            std::abs(d - a) > 1e-14 ? IdealPoint::at(b / (d - a)) : IdealPoint::infinity();
        // inf is attracting iff |a| > |d|
        if (std::abs(a) > std::abs(d)) return {other, IdealPoint::infinity()};
        return {IdealPoint::infinity(), other};
    }
    const double x1 = (l1 - d) / c, x2 = (l2 - d) / c;
    if (std::abs(l1) > std::abs(l2)) return {IdealPoint::at(x2), IdealPoint::at(x1)};
    return {IdealPoint::at(x1), IdealPoint::at(x2)};
}

Reduction reduce_to_fundamental_domain(Complex z) {
    if (!(z.imag() > 0))
        throw std::domain_error("reduce_to_fundamental_domain: Im z <= 0");
    Mat2 w = Mat2::Identity();
    const Mat2 S = gen_S();
    for (int iter = 0; iter < 10000; ++iter) {
        const double n = std::round(z.real());
        if (n != 0.0) {
            z -= n;
            w = mat2(1, -n, 0, 1) * w;
        }
        if (std::norm(z) < 1.0 - 1e-15) {
            z = mobius_apply(S, z);
            w = S * w;
            continue;
        }
        return {z, renormalize_det(w)};
    }
    throw std::runtime_error("reduce_to_fundamental_domain: iteration cap hit");
}

Reduction reduce_dirichlet(Complex z, const std::vector<Mat2>& generators,
                           Complex base_point, int max_len) {
    std::vector<Mat2> gens;
    for (const Mat2& g : generators) {
        gens.push_back(g);
        gens.push_back(inverse_unimodular(g));
    }
    Mat2 best = Mat2::Identity();
    double best_d = hyperbolic_distance(z, base_point);
    // breadth-first over words, keeping only improving prefixes (greedy beam)
    std::deque<Mat2> frontier{Mat2::Identity()};
    std::vector<Mat2> seen{Mat2::Identity()};
    for (int len = 0; len < max_len && !frontier.empty(); ++len) {
        std::deque<Mat2> next;
        while (!frontier.empty()) {
            Mat2 w = frontier.front();
            frontier.pop_front();
            for (const Mat2& g : gens) {
                Mat2 w2 = renormalize_det(g * w);
                bool dup = false;
                for (const Mat2& s : seen)
                    if (proj_equal(s, w2, 1e-9)) { dup = true; break; }
                if (dup) continue;
                seen.push_back(w2);
                const double d = hyperbolic_distance(mobius_apply(w2, z), base_point);
                if (d < best_d - 1e-13) {
                    best_d = d;
                    best = w2;
                }
                if (d < hyperbolic_distance(mobius_apply(w, z), base_point) + 2.0)
                    next.push_back(w2);
                if (seen.size() > 20000)
                    throw std::runtime_error("reduce_dirichlet: search blow-up");
            }
        }
        frontier = std::move(next);
    }
    return {mobius_apply(best, z), best};
}

Reduction reduce_to_fundamental_domain(Complex z, const std::vector<Mat2>& generators) {
    if (generators.size() == 2 &&
        ((proj_equal(generators[0], gen_T()) && proj_equal(generators[1], gen_S())) ||
         (proj_equal(generators[0], gen_S()) && proj_equal(generators[1], gen_T()))))
        return reduce_to_fundamental_domain(z);
    return reduce_dirichlet(z, generators, Complex(0, 2));
}

}  // namespace trefoil
