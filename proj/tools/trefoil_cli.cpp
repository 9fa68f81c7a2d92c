// Command-line surface: reproducible runs of the individual modules with
// INI-style config files, flag overrides, CSV artifacts and JSON summaries.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "trefoil/geometric_model.hpp"
#include "trefoil/hyperbolic.hpp"
#include "trefoil/knots.hpp"
#include "trefoil/lorenz.hpp"
#include "trefoil/modular.hpp"

using json = nlohmann::ordered_json;
using namespace trefoil;

namespace {

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int fail_json(const std::string& what) {
    emit(json{{"status", "fail"}, {"error", what}});
    return 1;
}

json laurent_json(const Laurent& p) {
    json coeffs = json::array();
    const Laurent n = p.alexander_normalized();
    for (const auto& c : n.coeffs()) coeffs.push_back(c.convert_to<long long>());
    if (coeffs.empty()) coeffs.push_back(0);
    return coeffs;
}

void write_trajectory_csv(const std::string& path, const Trajectory& tr) {
    std::ofstream f(path);
    f << "t,x,y,z\n";
    f.precision(17);
    for (const auto& s : tr.samples) f << s[0] << "," << s[1] << "," << s[2] << "," << s[3] << "\n";
}

void write_polyline_csv(const std::string& path, const Polyline3& p) {
    std::ofstream f(path);
    f << "x,y,z\n";
    f.precision(17);
    for (const auto& v : p.points) f << v.x() << "," << v.y() << "," << v.z() << "\n";
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::lorenz_attractor: return "lorenz_attractor";
        case Regime::boundary_heteroclinic: return "boundary_heteroclinic";
        case Regime::fake_horseshoe: return "fake_horseshoe";
        default: return "unresolved";
    }
}

// --- selftest suites (per-module invariant spot checks) -------------------

int selftest_lorenz() {
    const LorenzParams cl;
    const auto os = eigen_origin(cl);
    if (!os.ordering_ok) return fail_json("origin eigenvalue ordering");
    if (std::abs(hopf_threshold(10, 8.0 / 3) - hopf_threshold_bisection(10, 8.0 / 3)) > 1e-6)
        return fail_json("hopf cross-check");
    const Vec3 c = c_plus(cl);
    if (lorenz_field(c, cl).norm() > 1e-12) return fail_json("C+ not an equilibrium");
    // equivariance under (x,y,z) -> (-x,-y,z)
    const Vec3 s(1.3, -0.7, 5.0);
    const Vec3 f1 = lorenz_field(s, cl), f2 = lorenz_field(Vec3(-s.x(), -s.y(), s.z()), cl);
    if ((Vec3(-f1.x(), -f1.y(), f1.z()) - f2).norm() > 1e-14) return fail_json("equivariance");
    emit(json{{"status", "ok"}, {"module", "lorenz"}});
    return 0;
}

int selftest_model() {
    ModelParams mp;
    mp.r = 0.1;
    for (double x : {0.3, 0.77, 0.11})
        if (std::abs(interval_map(-x, mp) + interval_map(x, mp)) > 1e-15)
            return fail_json("odd symmetry");
    if (std::abs(periodic_orbit_from_word("R", mp).y - 6.0 / 7.0) > 1e-12)
        return fail_json("corner orbit");
    for (const char* w : {"RL", "RRL", "RLLR"}) {
        const auto p = periodic_orbit_from_word(w, mp);
        const std::string it = model_itinerary(p, mp, static_cast<int>(std::string(w).size()));
        if (it != w) return fail_json(std::string("round trip ") + w);
    }
    emit(json{{"status", "ok"}, {"module", "geometric-model"}});
    return 0;
}

int selftest_modular(double l) {
    Representation rep(l > 0 ? l : 0.5);
    const auto sec = section_geometry(rep);
    for (double f : {-0.8, -0.3, 0.2, 0.7}) {
        const auto tb = theta_bounds(sec, f * sec.x_hi);
        if (!(tb.theta0_s < tb.theta0_u && tb.theta1_s > tb.theta1_u))
            return fail_json("theta bound inequalities");
    }
    const Mat2 m = rep.word_matrix("RL");
    const auto seed = seed_from_axis(rep, sec, m);
    if (!seed) return fail_json("no seed for RL");
    const auto it = itinerary(rep, sec, *seed, 4);
    if (!it.ok || it.word != "RLRL") return fail_json("RL itinerary");
    if (std::abs(it.total_time - 2 * closed_geodesic_length(m)) > 1e-8)
        return fail_json("return time vs geodesic length");
    emit(json{{"status", "ok"}, {"module", "modular-flow"}});
    return 0;
}

int selftest_knots() {
    if (alexander_from_braid(Braid{2, {1, 1, 1}}).str() != "t^2 - t + 1")
        return fail_json("sigma1^3 Alexander");
    const auto d = diagram_from_braid(Braid{2, {1, 1, 1}});
    if (alexander_from_diagram(d) != alexander_from_braid(Braid{2, {1, 1, 1}}))
        return fail_json("cross-method trefoil");
    if (genus_positive_braid(Braid{2, {1, 1, 1, 1, 1}}) != 2) return fail_json("genus");
    const IMat2 m = word_to_matrix(LorenzWord("LR"));
    if (m(0, 0) != 1 || m(0, 1) != 1 || m(1, 0) != 1 || m(1, 1) != 2)
        return fail_json("LR matrix");
    emit(json{{"status", "ok"}, {"module", "knots"}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trefoil: Lorenz / modular-flow dynamics and knot certification"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI-style key=value config; flags override");

    bool selftest = false;

    // ---- tpoint-find
    auto* sc_tp = app.add_subcommand("tpoint-find", "two-parameter heteroclinic search");
    double rho0 = 30.0, sigma0 = 10.0, beta = 8.0 / 3.0, tp_tol = 1e-9, integ_tol = 1e-10;
    std::string tp_log;
    sc_tp->add_option("--rho0", rho0);
    sc_tp->add_option("--sigma0", sigma0);
    sc_tp->add_option("--beta", beta);
    sc_tp->add_option("--tol", tp_tol);
    sc_tp->add_option("--integ-tol", integ_tol);
    sc_tp->add_option("--log", tp_log, "JSON search log path");
    sc_tp->add_flag("--selftest", selftest);

    // ---- trefoil-certify
    auto* sc_tc = app.add_subcommand("trefoil-certify", "assemble and certify the closed curve");
    double tc_rho = 0.0, tc_sigma = 0.0;
    std::vector<double> radii{500.0, 1000.0};
    int projections = 3;
    std::uint64_t seed = 1;
    std::string tc_out;
    sc_tc->add_option("--rho", tc_rho, "T-point rho (0 = search from (30,10))");
    sc_tc->add_option("--sigma", tc_sigma);
    sc_tc->add_option("--radii", radii);
    sc_tc->add_option("--projections", projections);
    sc_tc->add_option("--seed", seed);
    sc_tc->add_option("--out", tc_out, "polyline CSV path");
    sc_tc->add_flag("--selftest", selftest);

    // ---- lorenz-orbit
    auto* sc_lo = app.add_subcommand("lorenz-orbit", "integrate one trajectory");
    double lx = 1, ly = 1, lz = 1, lT = 10, lo_tol = 1e-10, lo_sigma = 10, lo_rho = 28,
           lo_beta = 8.0 / 3.0;
    std::string lo_out;
    sc_lo->add_option("--x", lx);
    sc_lo->add_option("--y", ly);
    sc_lo->add_option("--z", lz);
    sc_lo->add_option("--T", lT);
    sc_lo->add_option("--tol", lo_tol);
    sc_lo->add_option("--sigma", lo_sigma);
    sc_lo->add_option("--rho", lo_rho);
    sc_lo->add_option("--beta", lo_beta);
    sc_lo->add_option("--out", lo_out, "trajectory CSV path");
    sc_lo->add_flag("--selftest", selftest);

    // ---- model-*
    double mr = 0.1, mnu = 0.3, mdelta = 0.6;
    int mdepth = 12;
    std::string mword = "RL";
    auto* sc_mc = app.add_subcommand("model-classify", "regime of the affine family");
    sc_mc->add_option("--r", mr);
    sc_mc->add_option("--nu", mnu);
    sc_mc->add_option("--delta", mdelta);
    sc_mc->add_option("--depth", mdepth);
    sc_mc->add_flag("--selftest", selftest);
    auto* sc_mh = app.add_subcommand("model-horseshoe", "Markov data of the fake horseshoe");
    sc_mh->add_option("--r", mr);
    sc_mh->add_option("--nu", mnu);
    sc_mh->add_option("--delta", mdelta);
    sc_mh->add_option("--depth", mdepth);
    sc_mh->add_flag("--selftest", selftest);
    auto* sc_mo = app.add_subcommand("model-orbit", "periodic orbit from a word");
    sc_mo->add_option("--word", mword);
    sc_mo->add_option("--r", mr);
    sc_mo->add_option("--nu", mnu);
    sc_mo->add_option("--delta", mdelta);
    sc_mo->add_flag("--selftest", selftest);

    // ---- modular-*
    double ml = 0.5, mx = 0.0, mtheta = 0.0;
    int mn = 10, msamples = 0;
    std::string mod_word, mod_csv;
    auto* sc_mr = app.add_subcommand("modular-return", "one first-return step or a sampled grid");
    sc_mr->add_option("--l", ml);
    sc_mr->add_option("--x", mx);
    sc_mr->add_option("--theta", mtheta);
    sc_mr->add_option("--samples", msamples, "sample a grid instead of one point");
    sc_mr->add_option("--out", mod_csv, "return-map CSV path");
    sc_mr->add_flag("--selftest", selftest);
    auto* sc_mi = app.add_subcommand("modular-itinerary", "itinerary of a section point or word seed");
    sc_mi->add_option("--l", ml);
    sc_mi->add_option("--word", mod_word, "seed from the axis of M_word");
    sc_mi->add_option("--x", mx);
    sc_mi->add_option("--theta", mtheta);
    sc_mi->add_option("--n", mn);
    sc_mi->add_flag("--selftest", selftest);

    // ---- knot-from-word / ghys-check / sweep
    std::string kword = "LR";
    auto* sc_kw = app.add_subcommand("knot-from-word", "Lorenz braid, genus, Alexander");
    sc_kw->add_option("--word", kword);
    sc_kw->add_flag("--selftest", selftest);
    auto* sc_gc = app.add_subcommand("ghys-check", "three-way coding agreement for one word");
    sc_gc->add_option("--word", kword);
    sc_gc->add_option("--l", ml);
    sc_gc->add_flag("--selftest", selftest);
    auto* sc_sw = app.add_subcommand("sweep", "ghys-check across all primitive mixed classes");
    int sw_maxlen = 6, sw_threads = static_cast<int>(std::thread::hardware_concurrency());
    sc_sw->add_option("--max-len", sw_maxlen);
    sc_sw->add_option("--l", ml);
    sc_sw->add_option("--threads", sw_threads);
    sc_sw->add_flag("--selftest", selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sc_tp->parsed()) {
            if (selftest) return selftest_lorenz();
            const auto res = find_tpoint({sigma0, rho0, beta}, tp_tol, integ_tol);
            json hist = json::array();
            for (double r : res.residual_history) hist.push_back(r);
            if (!tp_log.empty()) {
                std::ofstream f(tp_log);
                f << json{{"history", hist}}.dump(2) << "\n";
            }
            emit(json{{"status", "ok"},
                      {"rho", res.params.rho},
                      {"sigma", res.params.sigma},
                      {"beta", res.params.beta},
                      {"residual", res.residual},
                      {"iterations", res.iterations},
                      {"history", hist}});
            return 0;
        }
        if (sc_tc->parsed()) {
            if (selftest) return selftest_lorenz();
            LorenzParams p{tc_sigma, tc_rho, beta};
            if (tc_rho == 0.0 || tc_sigma == 0.0)
                p = find_tpoint({10.0, 30.0, 8.0 / 3.0}).params;
            json runs = json::array();
            bool all_trefoil = true;
            const Laurent want({BigInt(1), BigInt(-1), BigInt(1)}, 0);
            for (double R : radii) {
                TrefoilOptions to;
                to.r_inf = R;
                const Polyline3 poly = assemble_trefoil(p, to);
                if (!tc_out.empty() && R == radii.front()) write_polyline_csv(tc_out, poly);
                for (int k = 0; k < projections; ++k) {
                    const auto d = polyline_to_diagram(poly, seed + k);
                    const Laurent alex = alexander_from_diagram(d);
                    all_trefoil = all_trefoil && alex == want;
                    runs.push_back(json{{"radius", R},
                                        {"projection_seed", seed + k},
                                        {"crossings", d.crossings.size()},
                                        {"alexander", laurent_json(alex)}});
                }
            }
            emit(json{{"status", all_trefoil ? "ok" : "fail"},
                      {"rho", p.rho},
                      {"sigma", p.sigma},
                      {"runs", runs}});
            return all_trefoil ? 0 : 1;
        }
        if (sc_lo->parsed()) {
            if (selftest) return selftest_lorenz();
            IntegrateOptions io;
            io.tol = lo_tol;
            const auto tr = integrate(Vec3(lx, ly, lz), {lo_sigma, lo_rho, lo_beta}, lT, io);
            if (!lo_out.empty()) write_trajectory_csv(lo_out, tr);
            emit(json{{"status", "ok"},
                      {"steps", tr.stats.accepted},
                      {"rejected", tr.stats.rejected},
                      {"max_error", tr.stats.max_error},
                      {"final", {tr.final_state.x(), tr.final_state.y(), tr.final_state.z()}}});
            return 0;
        }
        if (sc_mc->parsed()) {
            if (selftest) return selftest_model();
            ModelParams mp{mr, mnu, mdelta};
            const auto rep = classify_regime(mp, mdepth);
            const bool ok = rep.regime != Regime::unresolved;
            emit(json{{"status", ok ? "ok" : "unresolved"},
                      {"regime", regime_name(rep.regime)},
                      {"sinks", rep.sinks},
                      {"sources", rep.sources},
                      {"saddles", rep.saddles},
                      {"nontrivial_classes", rep.nontrivial_classes},
                      {"detail", rep.detail}});
            return ok ? 0 : 1;
        }
        if (sc_mh->parsed()) {
            if (selftest) return selftest_model();
            ModelParams mp{mr, mnu, mdelta};
            const auto h = horseshoe_markov(mp, std::max(mdepth, 4));
            emit(json{{"status", "ok"},
                      {"transitions",
                       {{h.transitions[0][0], h.transitions[0][1]},
                        {h.transitions[1][0], h.transitions[1][1]}}},
                      {"preserves_unstable_orientation", h.preserves_unstable_orientation},
                      {"preserves_stable_orientation", h.preserves_stable_orientation},
                      {"entropy_estimate", h.entropy_estimate},
                      {"right_rect_x", {h.right_rect_x[0], h.right_rect_x[1]}},
                      {"left_rect_x", {h.left_rect_x[0], h.left_rect_x[1]}}});
            return 0;
        }
        if (sc_mo->parsed()) {
            if (selftest) return selftest_model();
            ModelParams mp{mr, mnu, mdelta};
            const auto p = periodic_orbit_from_word(mword, mp);
            emit(json{{"status", "ok"},
                      {"word", mword},
                      {"x", p.x},
                      {"y", p.y},
                      {"itinerary", model_itinerary(p, mp, 2 * static_cast<int>(mword.size()))}});
            return 0;
        }
        if (sc_mr->parsed()) {
            if (selftest) return selftest_modular(ml);
            Representation rep(ml);
            const auto sec = section_geometry(rep);
            if (msamples > 0) {
                std::ofstream f;
                if (!mod_csv.empty()) {
                    f.open(mod_csv);
                    f << "x,theta,x2,theta2,letter,time\n";
                    f.precision(17);
                }
                json rows = json::array();
                for (int i = 0; i < msamples; ++i) {
                    const double x = sec.x_lo + (sec.x_hi - sec.x_lo) * (i + 0.5) / msamples;
                    const auto band = core_band(sec, x);
                    const double th = 0.5 * (band.first + band.second);
                    const auto step = first_return(rep, sec, {x, th});
                    if (step.status != ReturnStatus::ok) continue;
                    if (f.is_open())
                        f << x << "," << th << "," << step.point.x << "," << step.point.theta
                          << "," << step.letter << "," << step.time << "\n";
                    rows.push_back(json{{"x", x},
                                        {"theta", th},
                                        {"x2", step.point.x},
                                        {"theta2", step.point.theta},
                                        {"letter", std::string(1, step.letter)},
                                        {"time", step.time}});
                }
                emit(json{{"status", "ok"}, {"samples", rows}});
                return 0;
            }
            const auto step = first_return(rep, sec, {mx, mtheta});
            const char* st = step.status == ReturnStatus::ok ? "ok"
                             : step.status == ReturnStatus::wandering ? "wandering"
                             : step.status == ReturnStatus::degenerate ? "degenerate"
                                                                       : "lost";
            emit(json{{"status", st},
                      {"x", step.point.x},
                      {"theta", step.point.theta},
                      {"letter", std::string(1, step.letter)},
                      {"time", step.time}});
            return step.status == ReturnStatus::ok ? 0 : 1;
        }
        if (sc_mi->parsed()) {
            if (selftest) return selftest_modular(ml);
            Representation rep(ml);
            const auto sec = section_geometry(rep);
            SectionPoint pt{mx, mtheta};
            if (!mod_word.empty()) {
                const auto seedpt = seed_from_axis(rep, sec, rep.word_matrix(mod_word));
                if (!seedpt) return fail_json("no axis seed found for word");
                pt = *seedpt;
                if (mn == 10) mn = 2 * static_cast<int>(mod_word.size());
            }
            const auto it = itinerary(rep, sec, pt, mn);
            emit(json{{"status", it.ok ? "ok" : "fail"},
                      {"itinerary", it.word},
                      {"total_time", it.total_time},
                      {"x", pt.x},
                      {"theta", pt.theta}});
            return it.ok ? 0 : 1;
        }
        if (sc_kw->parsed()) {
            if (selftest) return selftest_knots();
            const LorenzWord w(kword);
            const Braid b = lorenz_braid(w);
            json bw = json::array();
            for (int g : b.word) bw.push_back(g);
            emit(json{{"status", "ok"},
                      {"word", w.symbols},
                      {"strands", b.strands},
                      {"braid", bw},
                      {"genus", genus_positive_braid(b)},
                      {"alexander", laurent_json(alexander_from_braid(b))}});
            return 0;
        }
        if (sc_gc->parsed()) {
            if (selftest) return selftest_knots();
            Representation rep(ml);
            const auto sec = section_geometry(rep);
            const auto g = ghys_word_check(LorenzWord(kword), rep, sec);
            emit(json{{"status", g.agree ? "ok" : "fail"},
                      {"word", g.word.symbols},
                      {"modular_itinerary", g.modular_itinerary},
                      {"model_itinerary", g.model_itinerary},
                      {"agree", g.agree},
                      {"genus", g.genus},
                      {"alexander", laurent_json(g.alexander)}});
            return g.agree ? 0 : 1;
        }
        if (sc_sw->parsed()) {
            if (selftest) return selftest_knots();
            Representation rep(ml);
            const auto sec = section_geometry(rep);
            const auto classes = primitive_mixed_classes(sw_maxlen);
            std::vector<json> results(classes.size());
            std::vector<bool> agree(classes.size(), false);
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
                    const auto g = ghys_word_check(classes[i], rep, sec);
                    results[i] = json{{"word", g.word.symbols},
                                      {"agree", g.agree},
                                      {"genus", g.genus},
                                      {"alexander", laurent_json(g.alexander)}};
                    agree[i] = g.agree;
                }
            };
            std::vector<std::thread> pool;
            for (int t = 0; t < std::max(1, sw_threads); ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
            bool all = true;
            json rows = json::array();
            for (size_t i = 0; i < classes.size(); ++i) {
                all = all && agree[i];
                rows.push_back(results[i]);
            }
            emit(json{{"status", all ? "ok" : "fail"},
                      {"classes", classes.size()},
                      {"l", ml},
                      {"results", rows}});
            return all ? 0 : 1;
        }
    } catch (const std::exception& e) {
        return fail_json(e.what());
    }
    return 2;
}
