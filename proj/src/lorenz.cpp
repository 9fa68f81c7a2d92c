#include "trefoil/lorenz.hpp"

#include <cmath>
#include <stdexcept>

namespace trefoil {

void LorenzParams::validate() const {
    if (!(sigma > 0.0 && rho > 0.0 && beta > 0.0))
        throw std::domain_error("Lorenz parameters must be positive");
}

Vec3 lorenz_field(const Vec3& s, const LorenzParams& p) {
    return {p.sigma * (s.y() - s.x()), s.x() * (p.rho - s.z()) - s.y(),
            s.x() * s.y() - p.beta * s.z()};
}

Eigen::Matrix3d lorenz_jacobian(const Vec3& s, const LorenzParams& p) {
    Eigen::Matrix3d j;
    j << -p.sigma, p.sigma, 0.0,
         p.rho - s.z(), -1.0, -s.x(),
         s.y(), s.x(), -p.beta;
    return j;
}

Vec3 c_plus(const LorenzParams& p) {
    const double r = std::sqrt(p.beta * (p.rho - 1.0));
    return {r, r, p.rho - 1.0};
}

std::vector<Vec3> equilibria(const LorenzParams& p) {
    std::vector<Vec3> out{Vec3::Zero()};
    if (p.rho > 1.0) {
        const Vec3 c = c_plus(p);
        out.push_back(c);
        out.push_back({-c.x(), -c.y(), c.z()});
    }
    return out;
}

OriginSpectrum eigen_origin(const LorenzParams& p) {
    OriginSpectrum s;
    const double d = std::sqrt((p.sigma + 1.0) * (p.sigma + 1.0) + 4.0 * p.sigma * (p.rho - 1.0));
    s.lambda1 = 0.5 * (-(p.sigma + 1.0) + d);
    s.lambda2 = -p.beta;
    s.lambda3 = 0.5 * (-(p.sigma + 1.0) - d);
    s.ordering_ok = s.lambda3 < s.lambda2 && s.lambda2 < 0.0 &&
                    0.0 < s.lambda1 + s.lambda2 && s.lambda1 + s.lambda2 < s.lambda1;
    return s;
}

FocusSpectrum eigen_cplus(const LorenzParams& p) {
    if (p.rho <= 1.0) throw std::domain_error("C+ requires rho > 1");
    FocusSpectrum out;
    Eigen::EigenSolver<Eigen::Matrix3d> es(lorenz_jacobian(c_plus(p), p));
    int real_idx = -1;
    double best_im = 1e300;
    for (int i = 0; i < 3; ++i) {
        const double im = std::abs(es.eigenvalues()[i].imag());
        if (im < best_im) { best_im = im; real_idx = i; }
    }
    out.real_eig = es.eigenvalues()[real_idx].real();
    for (int i = 0; i < 3; ++i) {
        if (i == real_idx) continue;
        if (es.eigenvalues()[i].imag() > 0.0) out.pair = es.eigenvalues()[i];
    }
    Eigen::Vector3cd v = es.eigenvectors().col(real_idx);
    out.real_eigvec = v.real().normalized();
    out.saddle_focus = out.real_eig < 0.0 && out.pair.real() > 0.0 && out.pair.imag() != 0.0;
    return out;
}

// --- Dormand-Prince 5(4) --------------------------------------------------

namespace {

struct Dp5Step {
    Vec3 y5;      // 5th-order solution
    double err;   // scaled error estimate
};

Dp5Step dp5_step(const Vec3& y, const Vec3& k1, double h, const LorenzParams& p,
                 double rtol, double atol, Vec3* k_last) {
    const Vec3 k2 = lorenz_field(y + h * (k1 / 5.0), p);
    const Vec3 k3 = lorenz_field(y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2), p);
    const Vec3 k4 = lorenz_field(y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3), p);
    const Vec3 k5 = lorenz_field(
        y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 + 64448.0 / 6561.0 * k3 -
                 212.0 / 729.0 * k4), p);
    const Vec3 k6 = lorenz_field(
        y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 + 46732.0 / 5247.0 * k3 +
                 49.0 / 176.0 * k4 - 5103.0 / 18656.0 * k5), p);
    const Vec3 y5 = y + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 -
                             2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6);
    const Vec3 k7 = lorenz_field(y5, p);
    const Vec3 y4 = y + h * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 + 393.0 / 640.0 * k4 -
                             92097.0 / 339200.0 * k5 + 187.0 / 2100.0 * k6 + k7 / 40.0);
    double err = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
        const double e = (y5[i] - y4[i]) / sc;
        err += e * e;
    }
    if (k_last) *k_last = k7;
    return {y5, std::sqrt(err / 3.0)};
}

// Plain adaptive propagation over a fixed signed duration (used by the event
// bisection; no recording, no events).
Vec3 dp5_prop(Vec3 y, double dt, const LorenzParams& p, double rtol, double atol) {
    if (dt == 0.0) return y;
    const double dir = dt > 0.0 ? 1.0 : -1.0;
    double t = 0.0;
    double h = dir * std::min(0.01, std::abs(dt));
    Vec3 k1 = lorenz_field(y, p);
    while (dir * (dt - t) > 1e-15) {
        if (dir * (t + h) > dir * dt) h = dt - t;
        Vec3 k_last;
        const Dp5Step st = dp5_step(y, k1, h, p, rtol, atol, &k_last);
        if (st.err <= 1.0) {
            t += h;
            y = st.y5;
            k1 = k_last;
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(st.err, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
        if (std::abs(h) < 1e-14) throw std::runtime_error("integrator step underflow");
    }
    return y;
}

}  // namespace

Trajectory integrate(const Vec3& y0, const LorenzParams& p, double T,
                     const IntegrateOptions& opt) {
    p.validate();
    if (!(opt.tol >= 1e-13 && opt.tol <= 1e-6))
        throw std::domain_error("integrate: tol outside [1e-13, 1e-6]");
    const double rtol = opt.tol, atol = opt.tol * 1e-2;
    const double dir = T >= 0.0 ? 1.0 : -1.0;

    Trajectory traj;
    Vec3 y = y0;
    double t = 0.0;
    if (opt.record) traj.samples.push_back({t, y.x(), y.y(), y.z()});
    std::vector<double> ev(opt.events.size());
    for (size_t k = 0; k < opt.events.size(); ++k) ev[k] = opt.events[k](t, y);

    double h = dir * std::min(opt.max_step, 1e-3);
    Vec3 k1 = lorenz_field(y, p);
    while (dir * (T - t) > 1e-14) {
        if (std::abs(h) > opt.max_step) h = dir * opt.max_step;
        if (dir * (t + h) > dir * T) h = T - t;
        Vec3 k_last;
        const Dp5Step st = dp5_step(y, k1, h, p, rtol, atol, &k_last);
        if (st.err > 1.0) {
            ++traj.stats.rejected;
            h *= std::clamp(0.9 * std::pow(st.err, -0.2), 0.2, 1.0);
            if (std::abs(h) < 1e-14) throw std::runtime_error("integrator step underflow");
            continue;
        }
        const double t_new = t + h;
        const Vec3 y_new = st.y5;
        ++traj.stats.accepted;
        traj.stats.max_error = std::max(traj.stats.max_error, st.err * rtol);

        // event check on the accepted step
        int hit = -1;
        double g_new = 0.0;
        for (size_t k = 0; k < opt.events.size(); ++k) {
            const double g = opt.events[k](t_new, y_new);
            if (ev[k] != 0.0 && g != 0.0 && std::signbit(g) != std::signbit(ev[k])) {
                hit = static_cast<int>(k);
                g_new = g;
                break;
            }
            ev[k] = g;
        }
        if (hit >= 0) {
            // bisect the crossing time inside [t, t_new]
            double lo = 0.0, hi = t_new - t;
            double g_lo = ev[hit];
            (void)g_lo;
            (void)g_new;
            for (int it = 0; it < 80 && std::abs(hi - lo) > 1e-13 * std::max(1.0, std::abs(t)); ++it) {
                const double mid = 0.5 * (lo + hi);
                const Vec3 ym = dp5_prop(y, mid, p, rtol, atol);
                const double gm = opt.events[hit](t + mid, ym);
                if (gm == 0.0 || std::signbit(gm) == std::signbit(ev[hit])) lo = mid;
                else hi = mid;
            }
            const double tc = t + 0.5 * (lo + hi);
            const Vec3 yc = dp5_prop(y, 0.5 * (lo + hi), p, rtol, atol);
            traj.event_hit = true;
            traj.event_index = hit;
            traj.event_time = tc;
            traj.event_state = yc;
            traj.final_state = yc;
            traj.final_time = tc;
            if (opt.record) traj.samples.push_back({tc, yc.x(), yc.y(), yc.z()});
            return traj;
        }
        t = t_new;
        y = y_new;
        k1 = k_last;
        if (opt.record) traj.samples.push_back({t, y.x(), y.y(), y.z()});
        h *= std::clamp(0.9 * std::pow(std::max(st.err, 1e-10), -0.2), 0.2, 5.0);
    }
    traj.final_state = y;
    traj.final_time = t;
    return traj;
}

// --- separatrices ---------------------------------------------------------

Vec3 unstable_direction(const LorenzParams& p) {
    Eigen::EigenSolver<Eigen::Matrix3d> es(lorenz_jacobian(Vec3::Zero(), p));
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;
    Vec3 v = es.eigenvectors().col(best).real().normalized();
    if (v.x() < 0.0) v = -v;
    return v;
}

Trajectory unstable_separatrix(const LorenzParams& p, int branch, double eps,
                               double T, const IntegrateOptions& opt) {
    if (!(eps >= 1e-9 && eps <= 1e-5)) throw std::domain_error("eps outside [1e-9, 1e-5]");
    const Vec3 seed = static_cast<double>(branch) * eps * unstable_direction(p);
    return integrate(seed, p, T, opt);
}

Trajectory stable_separatrix_cplus(const LorenzParams& p, int sign, double eps,
                                   double T, const IntegrateOptions& opt) {
    const FocusSpectrum fs = eigen_cplus(p);
    if (!fs.saddle_focus)
        throw std::runtime_error("wrong regime: C+ spectrum is not saddle-focus");
    const Vec3 seed = c_plus(p) + static_cast<double>(sign) * eps * fs.real_eigvec;
    return integrate(seed, p, -std::abs(T), opt);
}

std::optional<MissResult> miss_distance(const LorenzParams& p, double eps, double tol) {
    const double plane = p.rho - 1.0;
    IntegrateOptions uo;
    uo.tol = tol;
    uo.record = false;
    uo.events = {[plane](double, const Vec3& s) { return s.z() - plane; }};
    const Trajectory u = unstable_separatrix(p, +1, eps, 30.0, uo);
    if (!u.event_hit) return std::nullopt;

    std::optional<MissResult> best;
    for (int sgn : {+1, -1}) {
        IntegrateOptions so;
        so.tol = tol;
        so.record = false;
        so.events = {[plane](double, const Vec3& s) { return s.z() - plane; },
                     [](double, const Vec3& s) { return s.norm() - 300.0; }};
        const Trajectory sb = stable_separatrix_cplus(p, sgn, eps, 30.0, so);
        if (!sb.event_hit || sb.event_index != 0) continue;
        // branch(+) of W^u(0) lands on C-; compare against the mirror image
        // of the backward W^s(C+) crossing, i.e. the W^s(C-) crossing.
        Eigen::Vector2d m(u.event_state.x() + sb.event_state.x(),
                          u.event_state.y() + sb.event_state.y());
        if (!best || m.norm() < best->miss.norm())
            best = MissResult{m, sgn, u.event_time, sb.event_time};
    }
    return best;
}

TPointResult find_tpoint(const LorenzParams& initial, double tol, double integ_tol) {
    if (!(initial.rho >= 28.0 && initial.rho <= 34.0 && initial.sigma >= 9.0 &&
          initial.sigma <= 12.0))
        throw std::domain_error("initial guess outside the search basin");
    TPointResult out;
    out.params = initial;
    Eigen::Vector2d pvec(initial.rho, initial.sigma);
    auto eval = [&](const Eigen::Vector2d& q) -> std::optional<Eigen::Vector2d> {
        LorenzParams lp{q[1], q[0], initial.beta};
        auto m = miss_distance(lp, 1e-7, integ_tol);
        if (!m) return std::nullopt;
        return m->miss;
    };
    for (int it = 0; it < 100; ++it) {
        auto r0 = eval(pvec);
        if (!r0) throw std::runtime_error("miss evaluation failed during the search");
        const double res = r0->norm();
        out.residual_history.push_back(res);
        out.iterations = it;
        if (res < tol) {
            out.converged = true;
            break;
        }
        Eigen::Matrix2d J;
        for (int j = 0; j < 2; ++j) {
            const double h = 1e-7 * std::max(1.0, std::abs(pvec[j]));
            Eigen::Vector2d q = pvec;
            q[j] += h;
            auto rj = eval(q);
            if (!rj) throw std::runtime_error("miss evaluation failed in the Jacobian");
            J.col(j) = (*rj - *r0) / h;
        }
        const Eigen::Vector2d step = J.colPivHouseholderQr().solve(*r0);
        double lam = 1.0;
        while (lam > 1e-4) {
            auto rn = eval(pvec - lam * step);
            if (rn && rn->norm() < res) break;
            lam *= 0.5;
        }
        pvec -= lam * step;
    }
    if (!out.converged) throw std::runtime_error("T-point search did not converge");
    out.params = {pvec[1], pvec[0], initial.beta};
    out.residual = out.residual_history.back();
    return out;
}

double hopf_threshold(double sigma, double beta) {
    if (!(sigma > beta + 1.0)) throw std::domain_error("hopf_threshold needs sigma > beta + 1");
    return sigma * (sigma + beta + 3.0) / (sigma - beta - 1.0);
}

double hopf_threshold_bisection(double sigma, double beta, double tol) {
    if (!(sigma > beta + 1.0)) throw std::domain_error("hopf_threshold needs sigma > beta + 1");
    auto re_pair = [&](double rho) {
        return eigen_cplus({sigma, rho, beta}).pair.real();
    };
    double lo = 1.0 + 1e-9, hi = 2.0;
    while (re_pair(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9) throw std::runtime_error("no Hopf crossing found");
    }
    while (hi - lo > tol * std::max(1.0, lo)) {
        const double mid = 0.5 * (lo + hi);
        (re_pair(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// --- closed curve through the sphere --------------------------------------

namespace {

Vec3 mirror_xy(const Vec3& v) { return {-v.x(), -v.y(), v.z()}; }

// points on the sphere |v| = R joined along the great circle, endpoints included
std::vector<Vec3> great_arc(const Vec3& a, const Vec3& b, double R, int n) {
    const Vec3 ua = a.normalized(), ub = b.normalized();
    const double ang = std::acos(std::clamp(ua.dot(ub), -1.0, 1.0));
    std::vector<Vec3> out;
    if (ang < 1e-12) return {a, b};
    for (int k = 0; k <= n; ++k) {
        const double s = ang * k / n;
        const Vec3 v = (std::sin(ang - s) * ua + std::sin(s) * ub) / std::sin(ang);
        out.push_back(R * v.normalized());
    }
    return out;
}

}  // namespace

Polyline3 assemble_trefoil(const LorenzParams& p, const TrefoilOptions& opt) {
    auto m = miss_distance(p, opt.eps, opt.tol);
    if (!m || m->miss.norm() >= 1e-6)
        throw std::runtime_error("not at T-point: residual miss too large");

    const Vec3 cminus = mirror_xy(c_plus(p));
    IntegrateOptions io;
    io.tol = opt.tol;
    io.max_step = opt.max_step;
    io.record = true;
    io.events = {[&](double, const Vec3& s) { return (s - cminus).norm() - opt.truncate; }};
    const Trajectory arc = unstable_separatrix(p, +1, opt.eps, 60.0, io);
    if (!arc.event_hit)
        throw std::runtime_error("not at T-point: separatrix never reached C-");

    std::vector<Vec3> arc1;
    arc1.emplace_back(0.0, 0.0, 0.0);
    for (const auto& s : arc.samples) arc1.emplace_back(s[1], s[2], s[3]);

    // exit ray: continue the arrival motion straight through C- out to the sphere
    const Vec3 dir = lorenz_field(arc.event_state, p).normalized();
    // solve |C- + s dir| = R for s > 0
    const double bq = cminus.dot(dir);
    const double cq = cminus.squaredNorm() - opt.r_inf * opt.r_inf;
    const double s_exit = -bq + std::sqrt(bq * bq - cq);
    const Vec3 e1 = cminus + s_exit * dir;
    const Vec3 e2 = mirror_xy(e1);
    const Vec3 p_inf(0.0, 0.0, -opt.r_inf);

    Polyline3 out;
    auto append = [&](const std::vector<Vec3>& pts) {
        for (const auto& v : pts) {
            if (!out.points.empty() && (out.points.back() - v).norm() < 1e-12) continue;
            out.points.push_back(v);
        }
    };
    append(arc1);                           // origin -> near C-
    {
        std::vector<Vec3> seg;              // C- -> sphere exit
        for (int k = 0; k <= opt.closure_samples; ++k)
            seg.push_back(cminus + (s_exit * k / opt.closure_samples) * dir);
        append(seg);
    }
    append(great_arc(e1, p_inf, opt.r_inf, opt.closure_samples));
    append(great_arc(p_inf, e2, opt.r_inf, opt.closure_samples));
    {
        std::vector<Vec3> seg;              // sphere entry -> C+
        const Vec3 cpl = c_plus(p);
        for (int k = opt.closure_samples; k >= 0; --k)
            seg.push_back(cpl + (s_exit * k / opt.closure_samples) * mirror_xy(dir));
        append(seg);
    }
    {
        std::vector<Vec3> back;             // C+ -> origin (mirror of arc1, reversed)
        for (auto it = arc1.rbegin(); it != arc1.rend(); ++it) back.push_back(mirror_xy(*it));
        append(back);
    }
    if ((out.points.front() - out.points.back()).norm() > 1e-12)
        out.points.push_back(out.points.front());
    out.closed = true;
    return out;
}

}  // namespace trefoil
