#include "trefoil/geometric_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace trefoil {

double ModelParams::mu() const { return 2.0 + r + std::min(0.0, r); }

void ModelParams::validate() const {
    if (!(r >= -0.25 && r <= 0.25)) throw std::domain_error("r outside [-1/4, 1/4]");
    if (!(nu > 0.0 && nu < 0.5)) throw std::domain_error("nu outside (0, 1/2)");
    if (!(nu + delta <= 1.0 && delta - nu >= 0.0))
        throw std::domain_error("need nu + delta <= 1 and delta >= nu");
}

double interval_map(double x, const ModelParams& mp) {
    if (x == 0.0) throw std::domain_error("interval_map at the discontinuity x = 0");
    if (std::abs(x) > 1.0) throw std::domain_error("interval_map outside [-1, 1]");
    const double m = mp.mu();
    return x > 0.0 ? m * x - 1.0 - mp.r : -(m * (-x) - 1.0 - mp.r);
}

ReturnMapPoint return_map(const ReturnMapPoint& pt, const ModelParams& mp) {
    if (pt.status != PointStatus::alive) return pt;
    if (pt.x == 0.0) return {pt.x, pt.y, PointStatus::on_discontinuity};
    ReturnMapPoint out;
    out.x = interval_map(pt.x, mp);
    out.y = mp.nu * pt.y + (pt.x > 0.0 ? mp.delta : -mp.delta);
    if (out.x > 1.0) out.status = PointStatus::escaped_right_sink;
    else if (out.x < -1.0) out.status = PointStatus::escaped_left_sink;
    return out;
}

namespace {

struct Interval {
    double a, b;  // a < b
};

// Forward image of intervals under f_r, split at the discontinuity and
// clipped to [-1,1]; drops pieces that escape entirely.
std::vector<Interval> step_intervals(const std::vector<Interval>& in, const ModelParams& mp) {
    std::vector<Interval> out;
    auto push = [&](double lo, double hi) {
        lo = std::max(lo, -1.0);
        hi = std::min(hi, 1.0);
        if (hi - lo > 1e-14) out.push_back({lo, hi});
    };
    for (const auto& iv : in) {
        std::vector<Interval> halves;
        if (iv.a < 0.0 && iv.b > 0.0) {
            halves.push_back({iv.a, 0.0});
            halves.push_back({0.0, iv.b});
        } else {
            halves.push_back(iv);
        }
        for (const auto& h : halves) {
            if (h.b <= 0.0) {
                // decreasing side handled via oddness: f is increasing there too
                const double fa = h.a == -1.0 ? -interval_map(1.0, mp) : interval_map(h.a, mp);
                const double fb = h.b == 0.0 ? -(-1.0 - mp.r) : interval_map(h.b, mp);
                push(fa, fb);
            } else {
                const double fa = h.a == 0.0 ? -1.0 - mp.r : interval_map(h.a, mp);
                const double fb = interval_map(h.b, mp);
                push(fa, fb);
            }
        }
    }
    // merge overlaps to keep the list small
    std::sort(out.begin(), out.end(), [](const Interval& p, const Interval& q) { return p.a < q.a; });
    std::vector<Interval> merged;
    for (const auto& iv : out) {
        if (!merged.empty() && iv.a <= merged.back().b + 1e-12)
            merged.back().b = std::max(merged.back().b, iv.b);
        else
            merged.push_back(iv);
    }
    return merged;
}

bool covers(const std::vector<Interval>& set, double lo, double hi, double tol) {
    double reach = lo;
    for (const auto& iv : set) {
        if (iv.a > reach + tol) break;
        reach = std::max(reach, iv.b);
    }
    return reach >= hi - tol;
}

}  // namespace

RegimeReport classify_regime(const ModelParams& mp, int depth) {
    mp.validate();
    if (depth > 24) throw std::domain_error("classify_regime: depth > 24");
    RegimeReport rep;
    const double m = mp.mu();
    if (mp.r < 0.0) {
        // trapping: one-sided limits and endpoints all land strictly inside
        const double tip = -1.0 - mp.r, base = interval_map(1.0, mp);
        if (!(std::abs(tip) < 1.0 && std::abs(base) < 1.0)) {
            rep.detail = "trapping check failed";
            return rep;
        }
        // locally eventually onto over the dyadic cover at the given depth
        const long n = 1L << depth;
        const double core_lo = tip, core_hi = -tip;
        for (long k = 0; k < 2 * n; ++k) {
            const double a = -1.0 + k / static_cast<double>(n);
            std::vector<Interval> set{{a, a + 1.0 / n}};
            bool ok = false;
            for (int it = 0; it < 400; ++it) {
                if (covers(set, core_lo, core_hi, 1e-9)) { ok = true; break; }
                set = step_intervals(set, mp);
                if (set.empty()) break;
            }
            if (!ok) {
                rep.regime = Regime::unresolved;
                rep.failing_interval = {a, a + 1.0 / n};
                rep.detail = "dyadic interval never covered the core";
                return rep;
            }
        }
        rep.regime = Regime::lorenz_attractor;
        rep.sinks = 2;
        rep.sources = 1;
        rep.saddles = 0;
        rep.nontrivial_classes = 1;
        std::ostringstream os;
        os << "trapping + locally-eventually-onto at depth " << depth
           << "; branch fixed points x = +-" << (1.0 + mp.r) / (m - 1.0)
           << " are attractor-internal";
        rep.detail = os.str();
        return rep;
    }
    if (mp.r == 0.0) {
        const double tip = interval_map(1e-300, mp);  // f_0(0+) limit
        if (tip != -1.0 || interval_map(1.0, mp) != 1.0) {
            rep.detail = "exact corner identities failed";
            return rep;
        }
        rep.regime = Regime::boundary_heteroclinic;
        rep.sinks = 2;
        rep.sources = 1;
        rep.saddles = 2;
        rep.nontrivial_classes = 1;
        rep.detail = "f_0(0+) = -1 and f_0(0-) = +1 exactly: W^u(sigma) lands on the corner orbits";
        return rep;
    }
    // r > 0
    const double gap = mp.r / m;
    if (!(interval_map(gap, mp) == -1.0 || std::abs(interval_map(gap, mp) + 1.0) < 1e-12)) {
        rep.detail = "gap endpoint mismatch";
        return rep;
    }
    if (!(interval_map(0.5 * gap, mp) < -1.0)) {
        rep.detail = "gap interior fails to escape";
        return rep;
    }
    if (std::abs(interval_map(1.0, mp) - 1.0) > 1e-12) {
        rep.detail = "right branch is not onto";
        return rep;
    }
    rep.regime = Regime::fake_horseshoe;
    rep.sinks = 2;
    rep.sources = 1;
    rep.saddles = 2;
    rep.nontrivial_classes = 1;
    std::ostringstream os;
    os << "escape gap (-" << gap << ", " << gap
       << "); both branches map their survivor intervals onto [-1,1]";
    rep.detail = os.str();
    return rep;
}

long lap_number(const ModelParams& mp, int n) {
    mp.validate();
    const double gap = mp.r > 0.0 ? mp.r / mp.mu() : 0.0;
    std::vector<Interval> branches;
    if (1.0 - gap > 1e-14) {
        branches.push_back({-1.0, -gap});
        branches.push_back({gap, 1.0});
    }
    for (int step = 1; step < n; ++step) {
        std::vector<Interval> next;
        for (const auto& br : branches) {
            const double fa = interval_map(br.a == 0.0 ? 1e-300 : br.a, mp);
            const double fb = interval_map(br.b == 0.0 ? -1e-300 : br.b, mp);
            const double lo = std::min(fa, fb), hi = std::max(fa, fb);
            // intersect the image with the two survivor sides
            const double l1 = std::max(lo, -1.0), h1 = std::min(hi, -gap);
            if (h1 - l1 > 1e-13) next.push_back({l1, h1});
            const double l2 = std::max(lo, gap), h2 = std::min(hi, 1.0);
            if (h2 - l2 > 1e-13) next.push_back({l2, h2});
        }
        branches = std::move(next);
    }
    return static_cast<long>(branches.size());
}

HorseshoeData horseshoe_markov(const ModelParams& mp, int entropy_depth) {
    mp.validate();
    if (!(mp.r > 0.0)) throw std::domain_error("horseshoe_markov needs r > 0");
    const double m = mp.mu();
    const double gap = mp.r / m;
    HorseshoeData h;
    h.right_rect_x = {gap, 1.0};
    h.left_rect_x = {-1.0, -gap};
    // each branch image is all of [-1,1], so it crosses both rectangles
    const double right_lo = interval_map(gap, mp), right_hi = interval_map(1.0, mp);
    const bool full = right_lo <= -1.0 + 1e-12 && right_hi >= 1.0 - 1e-12;
    for (auto& row : h.transitions) row = {full ? 1 : 0, full ? 1 : 0};
    h.preserves_unstable_orientation = m > 0.0;   // f' = mu on both branches
    h.preserves_stable_orientation = mp.nu > 0.0;
    h.entropy_estimate = std::log(static_cast<double>(lap_number(mp, entropy_depth))) / entropy_depth;
    return h;
}

ReturnMapPoint periodic_orbit_from_word(const std::string& w, const ModelParams& mp) {
    mp.validate();
    if (w.empty()) throw std::domain_error("empty word");
    for (char c : w)
        if (c != 'L' && c != 'R') throw std::domain_error("word letters must be L or R");
    const double m = mp.mu();
    // inverse branches of f_r are contractions with ratio 1/mu
    auto inv = [&](char c, double z) {
        return c == 'R' ? (z + 1.0 + mp.r) / m : (z - 1.0 - mp.r) / m;
    };
    double x = 0.0;
    for (int it = 0; it < 20000; ++it) {
        double z = x;
        for (auto c = w.rbegin(); c != w.rend(); ++c) z = inv(*c, z);
        if (std::abs(z - x) < 1e-12) { x = z; break; }
        x = z;
    }
    // one more pass to land exactly on the itinerary's starting branch
    {
        double z = x;
        for (auto c = w.rbegin(); c != w.rend(); ++c) z = inv(*c, z);
        x = z;
    }
    // y-coordinate: iterate the vertical contraction around the cycle
    std::vector<double> xs{x};
    for (size_t k = 1; k < w.size(); ++k) xs.push_back(interval_map(xs.back(), mp));
    double y = 0.0;
    for (int rep = 0; rep < 2000; ++rep) {
        const double y0 = y;
        for (size_t k = 0; k < w.size(); ++k) y = mp.nu * y + (xs[k] > 0.0 ? mp.delta : -mp.delta);
        if (std::abs(y - y0) < 1e-13 && rep > 0) break;
    }
    return {x, y, PointStatus::alive};
}

std::string model_itinerary(ReturnMapPoint pt, const ModelParams& mp, int n) {
    std::string s;
    for (int k = 0; k < n; ++k) {
        if (pt.status != PointStatus::alive || pt.x == 0.0) break;
        s.push_back(pt.x > 0.0 ? 'R' : 'L');
        pt = return_map(pt, mp);
    }
    return s;
}

KneadingData kneading(const ModelParams& mp, int n) {
    mp.validate();
    if (n > 64) throw std::domain_error("kneading: n > 64");
    KneadingData kd;
    double x = -1.0 - mp.r;  // f_r(0+)
    for (int k = 0; k < n; ++k) {
        if (std::abs(x) > 1.0) { kd.escape_step = k; break; }
        if (x == 0.0) { kd.truncated = true; break; }
        kd.plus.push_back(x > 0.0 ? 'R' : 'L');
        x = interval_map(x, mp);
    }
    for (char c : kd.plus) kd.minus.push_back(c == 'L' ? 'R' : 'L');
    return kd;
}

}  // namespace trefoil
