#include "trefoil/modular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

namespace trefoil {

namespace {

double norm_angle(double a) {
    while (a <= -M_PI) a += 2 * M_PI;
    while (a > M_PI) a -= 2 * M_PI;
    return a;
}

Mat2 conj_by(const Mat2& m, const Mat2& w) { return w * m * inverse_unimodular(w); }

// hashable projective key: normalize by the largest-magnitude entry
std::array<long long, 4> proj_key(const Mat2& m, double scale = 1e6) {
    double mx = 0.0;
    double piv = 1.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (std::abs(m(i, j)) > mx) { mx = std::abs(m(i, j)); piv = m(i, j); }
    return {llround(m(0, 0) / piv * scale), llround(m(0, 1) / piv * scale),
            llround(m(1, 0) / piv * scale), llround(m(1, 1) / piv * scale)};
}

double key_coord(const IdealPoint& p) {
    if (p.inf || std::abs(p.x) > 1e9) return 1e18;
    return p.x;
}

bool same_unoriented(const GeodesicLine& a, const GeodesicLine& b) {
    const double au = key_coord(a.u), av = key_coord(a.v);
    const double bu = key_coord(b.u), bv = key_coord(b.v);
    auto close = [](double p, double q) { return std::abs(p - q) < 1e-7; };
    return (close(au, bu) && close(av, bv)) || (close(au, bv) && close(av, bu));
}

}  // namespace

Representation::Representation(double l) : l_(l) {
    if (!(l >= 0.0)) throw std::domain_error("funnel length must be >= 0");
    a_ = mat2(0, -1, 1, 0);
    // deform b0 = S T by conjugation with diag(e^{s/2}, e^{-s/2}); the target
    // |tr(ab)| = 2 cosh(l/2) is hit by a 1D root-find in s
    const double target = std::cosh(l / 2.0);
    auto f = [&](double s) { return std::cosh(s) - target; };
    double lo = 0.0, hi = std::max(1.0, l);
    while (f(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    s_ = 0.5 * (lo + hi);
    if (std::abs(f(s_)) > 1e-10) throw std::runtime_error("deformation root-find failed");
    b_ = mat2(0, -std::exp(s_), std::exp(-s_), 1);
}

Mat2 Representation::b_inv() const { return inverse_unimodular(b_); }
Mat2 Representation::h() const { return a_ * b_; }
Complex Representation::cone_p() const {
    return std::exp(s_) * Complex(std::cos(2 * M_PI / 3), std::sin(2 * M_PI / 3));
}

Mat2 Representation::letter_matrix(char c) const {
    if (c == 'R') return a_ * b_;
    if (c == 'L') return a_ * b_inv();
    throw std::domain_error("letter must be L or R");
}

Mat2 Representation::word_matrix(const std::string& w) const {
    if (w.empty()) throw std::domain_error("empty word");
    Mat2 m = Mat2::Identity();
    for (char c : w) m = m * letter_matrix(c);
    return renormalize_det(m);
}

Complex section_base_point(const CrossSection& sec, double x) {
    const double t0 = line_progress(sec.l0, Complex(0, 1));
    return line_point_at(sec.l0, t0 + x);
}

namespace {

// angle at (x on l0), measured from the l0 tangent, toward ideal point w
// (or away from it); in (0, 2pi]
double theta_of(const CrossSection& sec, double x, const IdealPoint& w, bool away = false) {
    const Complex z = section_base_point(sec, x);
    const double phi_l0 = direction_toward(z, sec.l0.v);
    double phi = direction_toward(z, w);
    if (away) phi += M_PI;
    double th = norm_angle(phi - phi_l0);
    if (th < 0) th += 2 * M_PI;
    return th;
}

struct AxisCrossing {
    double x;
    GeodesicLine ax;
    Mat2 elem;
};

// conjugates of h (over generator words up to `depth`) whose axes meet l0
std::vector<AxisCrossing> boundary_crossings(const Representation& rep,
                                             const CrossSection& sec, int depth = 8) {
    const std::vector<Mat2> gens{rep.a(), rep.b(), rep.b_inv()};
    std::map<std::array<long long, 4>, bool> seen;
    std::vector<Mat2> words{Mat2::Identity()};
    std::deque<Mat2> frontier{Mat2::Identity()};
    seen[proj_key(Mat2::Identity())] = true;
    for (int d = 0; d < depth; ++d) {
        std::deque<Mat2> next;
        for (const Mat2& w : frontier) {
            for (const Mat2& g : gens) {
                const Mat2 w2 = renormalize_det(g * w);
                auto k = proj_key(w2, 1e8);
                if (seen.count(k)) continue;
                seen[k] = true;
                words.push_back(w2);
                next.push_back(w2);
            }
        }
        frontier = std::move(next);
    }
    std::vector<AxisCrossing> out;
    std::vector<GeodesicLine> seen_ax;
    const double t_q = line_progress(sec.l0, Complex(0, 1));
    for (const Mat2& w : words) {
        const Mat2 m = conj_by(rep.h(), w);
        if (!is_hyperbolic(m, 1e-12)) continue;
        const GeodesicLine ax = axis(m);
        bool dup = false;
        for (const auto& s : seen_ax)
            if (same_unoriented(s, ax)) { dup = true; break; }
        if (dup) continue;
        seen_ax.push_back(ax);
        const auto zx = line_intersect(sec.l0, ax);
        if (!zx) continue;
        out.push_back({line_progress(sec.l0, *zx) - t_q, ax, m});
    }
    return out;
}

}  // namespace

CrossSection section_geometry(const Representation& rep) {
    CrossSection sec;
    const Complex p = rep.cone_p(), q = rep.cone_q();
    const GeodesicLine pq = geodesic_through(p, q);
    const double phi_pq = direction_toward(q, pq.v);
    double phi0 = phi_pq + M_PI / 2;
    {
        // orient l0 so that the cone point p lies on its left
        const Complex d(std::cos(phi0), std::sin(phi0));
        const Complex pqv = p - q;
        if (d.real() * pqv.imag() - d.imag() * pqv.real() < 0) phi0 = phi_pq - M_PI / 2;
    }
    sec.l0 = geodesic_from(q, phi0);
    sec.l1 = mobius_apply(rep.b(), sec.l0);
    sec.l2 = mobius_apply(rep.b() * rep.b(), sec.l0);
    if (rep.funnel_length() == 0.0) {
        sec.trimmed = false;
        return sec;
    }
    auto crossings = boundary_crossings(rep, sec);
    const AxisCrossing* hi = nullptr;
    const AxisCrossing* lo = nullptr;
    for (const auto& c : crossings) {
        if (c.x > 1e-9 && (!hi || c.x < hi->x)) hi = &c;
        if (c.x < -1e-9 && (!lo || c.x > lo->x)) lo = &c;
    }
    if (!hi || !lo) throw std::runtime_error("section trim: no boundary lifts found");
    auto orient_up = [&](GeodesicLine ax, double x) {
        const Complex z = section_base_point(sec, x);
        const double th =
            norm_angle(direction_toward(z, ax.v) - direction_toward(z, sec.l0.v));
        return th < 0 ? ax.reversed() : ax;
    };
    sec.trimmed = true;
    sec.x_hi = hi->x;
    sec.x_lo = lo->x;
    sec.h0 = orient_up(hi->ax, hi->x);
    sec.h0_elem = hi->elem;
    sec.h1 = orient_up(lo->ax, lo->x);
    sec.h1_elem = lo->elem;
    return sec;
}

ThetaBoundsSample theta_bounds(const CrossSection& sec, double x) {
    if (!sec.trimmed) throw std::domain_error("theta_bounds needs a trimmed section");
    if (!(x > sec.x_lo && x < sec.x_hi)) throw std::domain_error("x outside the trim");
    return {theta_of(sec, x, sec.h0.v), theta_of(sec, x, sec.h0.u, true),
            theta_of(sec, x, sec.h1.v), theta_of(sec, x, sec.h1.u, true)};
}

std::pair<double, double> core_band(const CrossSection& sec, double x) {
    const auto tb = theta_bounds(sec, x);
    return {std::max(tb.theta0_s, tb.theta1_u), std::min(tb.theta0_u, tb.theta1_s)};
}

ReturnStep first_return(const Representation& rep, const CrossSection& sec,
                        const SectionPoint& pt, double tmax) {
    if (rep.funnel_length() == 0.0)
        throw std::domain_error("first_return: section is non-compact at l = 0");
    ReturnStep out;
    if (!(pt.theta > 0.0 && pt.theta < M_PI) || !(pt.x > sec.x_lo && pt.x < sec.x_hi)) {
        out.status = ReturnStatus::degenerate;
        return out;
    }
    const Complex z = section_base_point(sec, pt.x);
    const double phi = direction_toward(z, sec.l0.v) + pt.theta;
    const GeodesicLine orbit = geodesic_from(z, phi);
    const double t0 = line_progress(orbit, z);

    struct Cand {
        double t;
        int kind;  // 0 = l1, 1 = l2, 2 = boundary lift
        Complex zx;
    };
    std::vector<Cand> cands;
    const double trim_span = std::max(std::abs(sec.x_lo), std::abs(sec.x_hi));

    auto refine = [&](const GeodesicLine& line, double t_guess) {
        // bisection on the Mobius-invariant side function (grazing-safe)
        double lo = t_guess - 1e-6, hi = t_guess + 1e-6;
        const double s_lo = line_side(line, line_point_at(orbit, t0 + lo));
        const double s_hi = line_side(line, line_point_at(orbit, t0 + hi));
        if (std::signbit(s_lo) == std::signbit(s_hi)) return t_guess;
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            const double sm = line_side(line, line_point_at(orbit, t0 + mid));
            (std::signbit(sm) == std::signbit(s_lo) ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };

    const Mat2 b2 = renormalize_det(rep.b() * rep.b());
    const std::array<std::pair<GeodesicLine, Mat2>, 2> images{
        std::make_pair(sec.l1, rep.b()), std::make_pair(sec.l2, b2)};
    for (int i = 0; i < 2; ++i) {
        const auto& [line, base] = images[i];
        const auto zx = line_intersect(orbit, line);
        if (!zx) continue;
        double t = line_progress(orbit, *zx) - t0;
        if (t <= 1e-10) continue;
        t = refine(line, t);
        const Complex qi = mobius_apply(base, Complex(0, 1));
        const double xi = line_progress(line, *zx) - line_progress(line, qi);
        // beyond the trimmed segment of l_i the orbit is already in the funnel
        cands.push_back({t, std::abs(xi) <= trim_span + 1e-9 ? i : 2, *zx});
    }
    // the three boundary lifts around D3
    std::vector<GeodesicLine> lifts;
    auto add_lift = [&](const GeodesicLine& l) {
        for (const auto& s : lifts)
            if (same_unoriented(s, l)) return;
        lifts.push_back(l);
    };
    add_lift(sec.h0);
    add_lift(sec.h1);
    for (const Mat2& m : {rep.b(), b2}) {
        add_lift(mobius_apply(m, sec.h0));
        add_lift(mobius_apply(m, sec.h1));
    }
    for (const auto& l : lifts) {
        const auto zx = line_intersect(orbit, l);
        if (!zx) continue;
        const double t = line_progress(orbit, *zx) - t0;
        if (t > 1e-10) cands.push_back({t, 2, *zx});
    }
    if (cands.empty()) {
        out.status = ReturnStatus::lost;
        return out;
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.t < b.t; });
    const Cand& first = cands.front();
    if (first.t > tmax) throw std::runtime_error("first_return: tmax exceeded");
    if (first.kind == 2) {
        out.status = ReturnStatus::wandering;
        out.time = first.t;
        return out;
    }
    // reidentify: undo the b-rotation, then flip by a if the angle came out
    // negative (i.e. the frame points out of the surface side)
    const Mat2 g_rot = first.kind == 0 ? rep.b_inv() : renormalize_det(rep.b_inv() * rep.b_inv());
    const double phix = direction_toward(first.zx, orbit.v);
    const Frame g = frame_at(first.zx, phix);
    const Frame g2{renormalize_det(g_rot * g.g)};
    const Frame g3{renormalize_det(rep.a() * g2.g)};
    const double t_q = line_progress(sec.l0, Complex(0, 1));
    auto section_coords = [&](const Frame& fr) -> SectionPoint {
        const Complex zz = frame_base(fr);
        const double xx = line_progress(sec.l0, zz) - t_q;
        const double tt = norm_angle(frame_angle(fr) - direction_toward(zz, sec.l0.v));
        return {xx, tt};
    };
    SectionPoint p3 = section_coords(g3);
    out.letter = first.kind == 0 ? 'R' : 'L';
    out.time = first.t;
    if (p3.theta > 0.0) {
        out.status = ReturnStatus::ok;
        out.point = p3;
        out.reidentification = renormalize_det(rep.a() * g_rot);
        return out;
    }
    SectionPoint p2 = section_coords(g2);
    if (p2.theta > 0.0) {
        out.status = ReturnStatus::ok;
        out.point = p2;
        out.reidentification = g_rot;
        return out;
    }
    out.status = ReturnStatus::lost;
    return out;
}

ItineraryResult itinerary(const Representation& rep, const CrossSection& sec,
                          SectionPoint pt, int n) {
    ItineraryResult res;
    for (int k = 0; k < n; ++k) {
        const ReturnStep step = first_return(rep, sec, pt);
        if (step.status != ReturnStatus::ok) {
            res.fail_status = step.status;
            res.last = pt;
            return res;
        }
        res.word.push_back(step.letter);
        res.total_time += step.time;
        pt = step.point;
    }
    res.ok = true;
    res.last = pt;
    return res;
}

namespace {

// breadth-first over conjugating words; calls visit(conjugated M) until it
// returns true or the cap is reached
template <typename F>
void conjugate_search(const Representation& rep, const Mat2& m, int cap, F&& visit) {
    const std::vector<Mat2> gens{rep.a(), rep.b(), rep.b_inv()};
    std::map<std::array<long long, 4>, bool> seen;
    std::deque<Mat2> queue{Mat2::Identity()};
    seen[proj_key(Mat2::Identity())] = true;
    while (!queue.empty() && static_cast<int>(seen.size()) <= cap) {
        const Mat2 w = queue.front();
        queue.pop_front();
        if (visit(conj_by(m, w))) return;
        for (const Mat2& g : gens) {
            const Mat2 w2 = renormalize_det(g * w);
            auto k = proj_key(w2);
            if (seen.count(k)) continue;
            seen[k] = true;
            queue.push_back(w2);
        }
    }
}

std::optional<SectionPoint> axis_section_point(const CrossSection& sec, const Mat2& mc) {
    if (!is_hyperbolic(mc, 1e-9)) return std::nullopt;
    const GeodesicLine ax = axis(mc);
    const auto zx = line_intersect(sec.l0, ax);
    if (!zx) return std::nullopt;
    const double x = line_progress(sec.l0, *zx) - line_progress(sec.l0, Complex(0, 1));
    if (!(x > sec.x_lo && x < sec.x_hi)) return std::nullopt;
    const double th = theta_of(sec, x, ax.v);
    if (!(th > 0.0 && th < M_PI)) return std::nullopt;
    const auto band = core_band(sec, x);
    if (!(band.first < th && th < band.second)) return std::nullopt;
    return SectionPoint{x, th};
}

}  // namespace

std::optional<SectionPoint> seed_from_axis(const Representation& rep,
                                           const CrossSection& sec, const Mat2& m,
                                           int cap) {
    std::optional<SectionPoint> found;
    conjugate_search(rep, m, cap, [&](const Mat2& mc) {
        auto sp = axis_section_point(sec, mc);
        if (sp) found = sp;
        return found.has_value();
    });
    return found;
}

std::vector<double> sample_leaf_endpoints(const Representation& rep,
                                          const CrossSection& sec, int count) {
    // backward endpoints of in-band periodic geodesics: each spans a leaf
    std::vector<double> out;
    std::vector<std::string> words;
    for (int len = 2; len <= 8 && static_cast<int>(words.size()) < 4 * count; ++len)
        for (int bits = 1; bits < (1 << len) - 1; ++bits) {
            std::string w;
            for (int k = len - 1; k >= 0; --k) w.push_back((bits >> k) & 1 ? 'R' : 'L');
            words.push_back(w);
        }
    for (const auto& w : words) {
        const auto sp = seed_from_axis(rep, sec, rep.word_matrix(w), 4000);
        if (!sp) continue;
        const Complex z = section_base_point(sec, sp->x);
        const GeodesicLine g = geodesic_from(z, direction_toward(z, sec.l0.v) + sp->theta);
        if (g.u.inf || std::abs(g.u.x) > 1e9) continue;
        bool dup = false;
        for (double u : out)
            if (std::abs(u - g.u.x) < 1e-7) dup = true;
        if (dup) continue;
        out.push_back(g.u.x);
        if (static_cast<int>(out.size()) >= count) break;
    }
    return out;
}

TwoLeafReport verify_two_leaf_image(const Representation& rep, const CrossSection& sec,
                                    double leaf_endpoint, int m) {
    TwoLeafReport rep_out;
    const IdealPoint a_pt = IdealPoint::at(leaf_endpoint);
    struct Image {
        double x_src, x_img, endpoint;
        char letter;
    };
    std::vector<Image> images;
    for (int k = 0; k < m; ++k) {
        const double x = sec.x_lo + (sec.x_hi - sec.x_lo) * (k + 0.5) / m;
        const double th = theta_of(sec, x, a_pt, true);
        if (!(th > 0.0 && th < M_PI)) continue;
        const auto band = core_band(sec, x);
        if (!(band.first < th && th < band.second)) continue;
        const ReturnStep step = first_return(rep, sec, {x, th});
        if (step.status != ReturnStatus::ok) continue;
        const Complex z = section_base_point(sec, step.point.x);
        const double phi = direction_toward(z, sec.l0.v) + step.point.theta;
        const GeodesicLine g = geodesic_from(z, phi);
        if (g.u.inf) continue;
        images.push_back({x, step.point.x, g.u.x, step.letter});
    }
    rep_out.sampled = static_cast<int>(images.size());
    if (images.size() <= 1) {
        rep_out.ok = images.size() == 1;  // degenerate single sample: no assertion
        rep_out.clusters = static_cast<int>(images.size());
        rep_out.detail = "too few in-band samples for the cluster assertion";
        return rep_out;
    }
    double disp = 0.0;
    bool monotone = true;
    int clusters = 0;
    for (char letter : {'R', 'L'}) {
        std::vector<Image> grp;
        for (const auto& im : images)
            if (im.letter == letter) grp.push_back(im);
        if (grp.empty()) continue;
        ++clusters;
        double lo = grp.front().endpoint, hi = lo;
        for (const auto& im : grp) {
            lo = std::min(lo, im.endpoint);
            hi = std::max(hi, im.endpoint);
        }
        disp = std::max(disp, hi - lo);
        std::sort(grp.begin(), grp.end(),
                  [](const Image& p, const Image& q) { return p.x_src < q.x_src; });
        for (size_t i = 1; i < grp.size(); ++i)
            if (grp[i].x_img <= grp[i - 1].x_img) monotone = false;
    }
    rep_out.clusters = clusters;
    rep_out.max_dispersion = disp;
    rep_out.orientation_preserved = monotone;
    rep_out.ok = clusters == 2 && disp < 1e-8 && monotone;
    if (!rep_out.ok) rep_out.detail = "two-leaf property violated";
    return rep_out;
}

}  // namespace trefoil
