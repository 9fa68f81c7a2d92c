// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.

#include <cmath>
#include <cstdio>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "trefoil/geometric_model.hpp"
#include "trefoil/hyperbolic.hpp"
#include "trefoil/knots.hpp"
#include "trefoil/lorenz.hpp"
#include "trefoil/modular.hpp"

using namespace trefoil;

namespace {

int failures = 0;

void report(int k, const char* name, bool ok, const std::string& note = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", k, name,
                note.empty() ? "" : " -- ", note.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

}  // namespace

int main() {
    // 1. heteroclinic-connection point recovery from (rho, sigma) = (30, 10)
    TPointResult tp;
    try {
        tp = find_tpoint(LorenzParams{10.0, 30.0, 8.0 / 3.0});
        const bool ok = tp.converged && tp.residual < 1e-6 &&
                        std::abs(tp.params.rho - 30.87) < 0.05 &&
                        std::abs(tp.params.sigma - 10.17) < 0.05;
        char buf[128];
        std::snprintf(buf, sizeof buf, "rho=%.8f sigma=%.8f residual=%.3e", tp.params.rho,
                      tp.params.sigma, tp.residual);
        report(1, "connection-point recovery", ok, buf);
    } catch (const std::exception& e) {
        report(1, "connection-point recovery", false, e.what());
        tp.converged = false;
    }

    // 2. trefoil certification, two radii x three projections
    {
        bool ok = tp.converged;
        std::string note;
        const Laurent want({BigInt(1), BigInt(-1), BigInt(1)}, 0);
        try {
            for (double R : {500.0, 1000.0}) {
                TrefoilOptions to;
                to.r_inf = R;
                const Polyline3 poly = assemble_trefoil(tp.params, to);
                for (std::uint64_t seed : {1, 2, 3}) {
                    const auto d = polyline_to_diagram(poly, seed);
                    const Laurent a = alexander_from_diagram(d);
                    if (!(a == want)) {
                        ok = false;
                        note = "R=" + std::to_string(R) + " got " + a.str();
                    }
                }
            }
            if (ok) note = "t^2 - t + 1 at R in {500, 1000}, 3 projections each";
        } catch (const std::exception& e) {
            ok = false;
            note = e.what();
        }
        report(2, "trefoil certification", ok, note);
    }

    // 3. origin eigenvalue ordering at (10, 28, 8/3)
    {
        const auto os = eigen_origin(LorenzParams{});
        const bool ok = os.ordering_ok && os.lambda2 == -8.0 / 3.0 &&
                        std::abs(os.lambda1 - 11.8277) < 1e-3 &&
                        std::abs(os.lambda3 + 22.8277) < 1e-3;
        report(3, "origin eigenvalue ordering", ok);
    }

    // 4. Hopf threshold: closed form vs bisection
    {
        const double cf = hopf_threshold(10.0, 8.0 / 3.0);
        const double bi = hopf_threshold_bisection(10.0, 8.0 / 3.0);
        const bool ok = std::abs(cf - 470.0 / 19.0) < 1e-12 && std::abs(cf - bi) < 1e-6;
        char buf[96];
        std::snprintf(buf, sizeof buf, "closed=%.10f bisection=%.10f", cf, bi);
        report(4, "Hopf threshold cross-check", ok, buf);
    }

    // 5. fake horseshoe at r = 0.1
    {
        bool ok = true;
        std::string note;
        ModelParams mp;
        mp.r = 0.1;
        const auto h = horseshoe_markov(mp, 16);
        for (int i : {0, 1})
            for (int j : {0, 1}) ok = ok && h.transitions[i][j] == 1;
        ok = ok && h.preserves_unstable_orientation && h.preserves_stable_orientation;
        ok = ok && std::abs(h.entropy_estimate - std::log(2.0)) < 0.01;
        // all 2^8 itineraries realized by distinct periodic orbits
        std::set<long long> xs;
        for (int mask = 0; mask < 256; ++mask) {
            std::string w;
            for (int b = 0; b < 8; ++b) w += (mask >> b & 1) ? 'R' : 'L';
            const auto p = periodic_orbit_from_word(w, mp);
            if (model_itinerary(p, mp, 8) != w) ok = false;
            xs.insert(std::llround(p.x * 1e12));
        }
        ok = ok && xs.size() == 256;
        // regime flips at r = 0
        ModelParams lo = mp, mid = mp, hi = mp;
        lo.r = -1e-6;
        mid.r = 0.0;
        hi.r = 1e-6;
        ok = ok && classify_regime(lo).regime == Regime::lorenz_attractor &&
             classify_regime(mid).regime == Regime::boundary_heteroclinic &&
             classify_regime(hi).regime == Regime::fake_horseshoe;
        char buf[96];
        std::snprintf(buf, sizeof buf, "entropy=%.6f orbits=%zu", h.entropy_estimate, xs.size());
        report(5, "fake horseshoe data", ok, buf);
    }

    // 6. word agreement across all primitive mixed classes, |w| <= 6, l = 0.5
    {
        Representation rep(0.5);
        const auto sec = section_geometry(rep);
        const auto classes = primitive_mixed_classes(6);
        std::vector<char> agree(classes.size(), 0);
        std::mutex mu;
        size_t next = 0;
        auto worker = [&]() {
            for (;;) {
                size_t i;
                {
                    std::lock_guard<std::mutex> lk(mu);
                    if (next >= classes.size()) return;
                    i = next++;
                }
                try {
                    const auto g = ghys_word_check(classes[i], rep, sec);
                    agree[i] = g.agree ? 1 : 0;
                } catch (...) {
                    agree[i] = 0;
                }
            }
        };
        std::vector<std::thread> pool;
        const unsigned nt = std::max(1u, std::thread::hardware_concurrency());
        for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        size_t good = 0;
        for (char a : agree) good += a;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%zu/%zu classes agree", good, classes.size());
        report(6, "modular-model word agreement", good == classes.size(), buf);
    }

    // 7. two-leaf return property, 10 leaves at each l in {0.3, 0.6, 1.0}
    {
        bool ok = true;
        double worst = 0.0;
        for (double l : {0.3, 0.6, 1.0}) {
            Representation rep(l);
            const auto sec = section_geometry(rep);
            const auto leaves = sample_leaf_endpoints(rep, sec, 10);
            if (leaves.size() < 10) {
                ok = false;
                continue;
            }
            for (int i = 0; i < 10; ++i) {
                const auto r = verify_two_leaf_image(rep, sec, leaves[i]);
                ok = ok && r.ok && r.clusters == 2 && r.max_dispersion < 1e-8;
                worst = std::max(worst, r.max_dispersion);
            }
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "max dispersion %.3e", worst);
        report(7, "two-leaf return images", ok, buf);
    }

    // 8. oracle equivalence: Burau vs crossing-matrix on small positive braid
    //    knots, and the genus formula vs Seifert's algorithm
    {
        bool ok = true;
        long checked = 0;
        for (int n = 2; n <= 5 && ok; ++n) {
            std::vector<int> w;
            // enumerate positive words of length c <= 8 over sigma_1..sigma_{n-1}
            const int g = n - 1;
            for (int c = n - 1; c <= 8 && ok; ++c) {
                std::vector<int> idx(c, 0);
                for (;;) {
                    Braid b{n, {}};
                    b.word.reserve(c);
                    bool uses_all = true;
                    std::vector<char> used(g, 0);
                    for (int i = 0; i < c; ++i) {
                        b.word.push_back(idx[i] + 1);
                        used[idx[i]] = 1;
                    }
                    for (int k = 0; k < g; ++k) uses_all = uses_all && used[k];
                    if (uses_all && b.closure_is_knot()) {
                        ++checked;
                        const auto d = diagram_from_braid(b);
                        if (!(alexander_from_diagram(d) == alexander_from_braid(b))) {
                            ok = false;
                            break;
                        }
                    }
                    int i = c - 1;
                    while (i >= 0 && idx[i] == g - 1) idx[i--] = 0;
                    if (i < 0) break;
                    ++idx[i];
                }
            }
        }
        for (int k = 1; k <= 4 && ok; ++k) {
            Braid b{2, std::vector<int>(2 * k + 1, 1)};
            ok = ok && genus_positive_braid(b) == seifert_genus(diagram_from_braid(b));
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%ld braid knots cross-checked", checked);
        report(8, "Alexander/genus oracle equivalence", ok, buf);
    }

    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
    return failures == 0 ? 0 : 1;
}
