#include "trefoil/knots.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "trefoil/geometric_model.hpp"
#include "trefoil/modular.hpp"

namespace trefoil {

// --- Lorenz words ---------------------------------------------------------

LorenzWord::LorenzWord(std::string s) : symbols(std::move(s)) {
    if (symbols.empty()) throw std::domain_error("empty Lorenz word");
    for (char c : symbols)
        if (c != 'L' && c != 'R') throw std::domain_error("Lorenz word letters must be L or R");
}

bool LorenzWord::is_primitive() const {
    // w is a proper power iff it occurs in w+w at an offset 0 < k < |w|
    const std::string dbl = symbols + symbols;
    return dbl.find(symbols, 1) == symbols.size();
}

bool LorenzWord::is_mixed() const {
    return symbols.find('L') != std::string::npos && symbols.find('R') != std::string::npos;
}

LorenzWord LorenzWord::cyclic_normal_form() const {
    std::string best = symbols;
    std::string rot = symbols;
    for (size_t k = 1; k < symbols.size(); ++k) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    return LorenzWord(best);
}

std::vector<LorenzWord> primitive_mixed_classes(int max_len) {
    std::vector<LorenzWord> out;
    for (int len = 2; len <= max_len; ++len) {
        for (int bits = 1; bits < (1 << len) - 1; ++bits) {
            std::string w;
            for (int k = len - 1; k >= 0; --k) w.push_back((bits >> k) & 1 ? 'R' : 'L');
            LorenzWord lw(w);
            if (!lw.is_primitive()) continue;
            if (lw.cyclic_normal_form().symbols != w) continue;  // one per class
            out.push_back(lw);
        }
    }
    return out;
}

IMat2 word_to_matrix(const LorenzWord& w) {
    IMat2 L, R, m;
    L << 1, 0, 1, 1;
    R << 1, 1, 0, 1;
    m.setIdentity();
    for (char c : w.symbols) m = m * (c == 'L' ? L : R);
    return m;
}

// --- braids ---------------------------------------------------------------

std::vector<int> Braid::permutation() const {
    std::vector<int> p(strands);
    std::iota(p.begin(), p.end(), 0);
    // p[i] = position where the strand starting at i currently sits
    std::vector<int> pos(strands);
    std::iota(pos.begin(), pos.end(), 0);  // pos[slot] = strand id
    for (int g : word) {
        if (g < 1 || g >= strands) throw std::domain_error("braid generator out of range");
        std::swap(pos[g - 1], pos[g]);
    }
    std::vector<int> perm(strands);
    for (int slot = 0; slot < strands; ++slot) perm[pos[slot]] = slot;
    return perm;
}

bool Braid::closure_is_knot() const {
    const auto p = permutation();
    int k = 0, cnt = 0;
    do {
        k = p[k];
        ++cnt;
    } while (k != 0 && cnt <= strands);
    return cnt == strands;
}

Braid lorenz_braid(const LorenzWord& w) {
    if (!w.is_primitive()) throw std::domain_error("lorenz_braid: word is not primitive");
    const int n = w.size();
    if (n == 1) return Braid{1, {}};
    // itinerary order of the template: both branches increasing, so plain
    // lexicographic order on the rotations
    std::vector<std::string> rot(n);
    for (int j = 0; j < n; ++j) rot[j] = w.symbols.substr(j) + w.symbols.substr(0, j);
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return rot[a] < rot[b]; });
    std::vector<int> rank(n);
    for (int r = 0; r < n; ++r) rank[idx[r]] = r;
    // orbit permutation: the shift map on rotations
    std::vector<int> perm(n);
    for (int j = 0; j < n; ++j) perm[rank[j]] = rank[(j + 1) % n];
    // positive permutation braid via bubble sort (each pair crosses once)
    Braid b;
    b.strands = n;
    std::vector<int> cur(n);
    std::iota(cur.begin(), cur.end(), 0);  // cur[slot] = strand id
    bool moved = true;
    while (moved) {
        moved = false;
        for (int s = 0; s + 1 < n; ++s) {
            if (perm[cur[s]] > perm[cur[s + 1]]) {
                std::swap(cur[s], cur[s + 1]);
                b.word.push_back(s + 1);
                moved = true;
            }
        }
    }
    return b;
}

namespace {

// reduced Burau matrix of sigma_i in B_n, (n-1)x(n-1) over Laurent
std::vector<std::vector<Laurent>> burau_gen(int i, int n) {
    const int m = n - 1;
    std::vector<std::vector<Laurent>> g(m, std::vector<Laurent>(m));
    for (int r = 0; r < m; ++r) g[r][r] = Laurent(BigInt(1));
    const Laurent t = Laurent::monomial(1, 1);
    const Laurent mt = Laurent::monomial(-1, 1);
    const int r = i - 1;  // 0-based row of the generator
    g[r][r] = mt;
    if (r > 0) g[r][r - 1] = t;
    if (r + 1 < m) g[r][r + 1] = Laurent(BigInt(1));
    return g;
}

std::vector<std::vector<Laurent>> mat_mul(const std::vector<std::vector<Laurent>>& a,
                                          const std::vector<std::vector<Laurent>>& b) {
    const int m = static_cast<int>(a.size());
    std::vector<std::vector<Laurent>> c(m, std::vector<Laurent>(m));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
            if (a[i][k].is_zero()) continue;
            for (int j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

}  // namespace

Laurent alexander_from_braid(const Braid& b) {
    if (!b.closure_is_knot())
        throw std::domain_error("alexander_from_braid: closure is not a knot");
    const int n = b.strands;
    if (n == 1) return Laurent(BigInt(1));
    const int m = n - 1;
    std::vector<std::vector<Laurent>> burau(m, std::vector<Laurent>(m));
    for (int i = 0; i < m; ++i) burau[i][i] = Laurent(BigInt(1));
    for (int g : b.word) burau = mat_mul(burau, burau_gen(g, n));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Laurent v = -burau[i][j];
            if (i == j) v += Laurent(BigInt(1));
            burau[i][j] = v;
        }
    const Laurent det = det_laurent(burau);
    // Delta(t) = det(I - Burau) * (1 - t) / (1 - t^n)
    std::vector<BigInt> den_c(n + 1);
    den_c[0] = 1;
    den_c[n] = -1;  // 1 - t^n
    Laurent num = det * (Laurent(BigInt(1)) - Laurent::monomial(1, 1));
    auto q = num.divided_by(Laurent(den_c, 0));
    if (!q) throw std::logic_error("Burau determinant not divisible by 1 - t^n");
    return q->alexander_normalized();
}

int genus_positive_braid(const Braid& b) {
    const int c = static_cast<int>(b.word.size());
    const int e = c - b.strands + 1;
    if (e % 2 != 0) throw std::domain_error("genus: c - n + 1 odd (closure is not a knot)");
    return e / 2;
}

// --- diagrams -------------------------------------------------------------

void KnotDiagram::validate() const {
    std::vector<int> in_cnt(narcs, 0), out_cnt(narcs, 0);
    for (const auto& c : crossings) {
        if (c.over < 0 || c.over >= narcs || c.under_in < 0 || c.under_in >= narcs ||
            c.under_out < 0 || c.under_out >= narcs)
            throw std::runtime_error("inconsistent PD code: arc label out of range");
        ++in_cnt[c.under_in];
        ++out_cnt[c.under_out];
    }
    if (!crossings.empty())
        for (int a = 0; a < narcs; ++a)
            if (in_cnt[a] != 1 || out_cnt[a] != 1)
                throw std::runtime_error("inconsistent PD code: arc labels unbalanced");
}

std::string KnotDiagram::pd_json() const {
    std::ostringstream os;
    os << "{\"narcs\":" << narcs << ",\"crossings\":[";
    for (size_t i = 0; i < crossings.size(); ++i) {
        const auto& c = crossings[i];
        if (i) os << ",";
        os << "{\"arcs\":[" << c.under_in << "," << c.over << "," << c.under_out << ","
           << c.over << "],\"sign\":" << c.sign << "}";
    }
    os << "]}";
    return os.str();
}

KnotDiagram build_diagram(std::vector<RawCrossing> raw) {
    // Reidemeister I: remove crossings whose two passes are adjacent along
    // the curve (no other pass in between, cyclically)
    bool reduced = true;
    while (reduced && !raw.empty()) {
        reduced = false;
        std::vector<std::pair<double, int>> passes;  // (param, crossing)
        for (int i = 0; i < static_cast<int>(raw.size()); ++i) {
            passes.push_back({raw[i].t_over, i});
            passes.push_back({raw[i].t_under, i});
        }
        std::sort(passes.begin(), passes.end());
        const int np = static_cast<int>(passes.size());
        for (int k = 0; k < np; ++k) {
            if (passes[k].second == passes[(k + 1) % np].second) {
                raw.erase(raw.begin() + passes[k].second);
                reduced = true;
                break;
            }
        }
    }
    KnotDiagram d;
    if (raw.empty()) {
        d.narcs = 1;
        return d;
    }
    std::vector<double> unders;
    for (const auto& c : raw) unders.push_back(c.t_under);
    std::sort(unders.begin(), unders.end());
    const int na = static_cast<int>(unders.size());
    auto arc_of = [&](double param) {
        // arc k ends at unders[k]; it covers (unders[k-1], unders[k]]
        for (int k = 0; k < na; ++k)
            if (param <= unders[k]) return k;
        return 0;
    };
    for (const auto& c : raw) {
        const int k = static_cast<int>(std::lower_bound(unders.begin(), unders.end(), c.t_under) -
                                       unders.begin());
        d.crossings.push_back({arc_of(c.t_over), k, (k + 1) % na, c.sign});
        d.pass_params.push_back({c.t_over, c.t_under});
    }
    d.narcs = na;
    d.validate();
    return d;
}

KnotDiagram polyline_to_diagram(const Polyline3& c, std::uint64_t seed,
                                const Vec3* preferred_direction) {
    if (!c.closed) throw std::domain_error("polyline_to_diagram: curve must be closed");
    std::vector<Vec3> P(c.points.begin(), c.points.end());
    if (!P.empty() && (P.front() - P.back()).norm() < 1e-12) P.pop_back();
    const int n = static_cast<int>(P.size());
    if (n < 3) throw std::domain_error("polyline too short");
    for (int i = 0; i < n; ++i)
        if ((P[i] - P[(i + 1) % n]).norm() < 1e-12)
            throw std::domain_error("consecutive duplicate points");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    const double tol = 1e-9;
    for (int attempt = 0; attempt < 100; ++attempt) {
        Vec3 dd;
        if (preferred_direction && attempt == 0) dd = preferred_direction->normalized();
        else {
            dd = Vec3(gauss(rng), gauss(rng), gauss(rng));
            if (dd.norm() < 1e-6) continue;
            dd.normalize();
        }
        Vec3 a(1, 0, 0);
        if (std::abs(dd.dot(a)) > 0.9) a = Vec3(0, 1, 0);
        const Vec3 e1 = dd.cross(a).normalized();
        const Vec3 e2 = dd.cross(e1);
        std::vector<Eigen::Vector2d> U(n);
        std::vector<double> W(n);
        for (int i = 0; i < n; ++i) {
            U[i] = {P[i].dot(e1), P[i].dot(e2)};
            W[i] = P[i].dot(dd);
        }
        std::vector<RawCrossing> raw;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (j == (i + 1) % n || i == (j + 1) % n) continue;
                const Eigen::Vector2d d1 = U[(i + 1) % n] - U[i];
                const Eigen::Vector2d d2 = U[(j + 1) % n] - U[j];
                const double den = d1.x() * d2.y() - d1.y() * d2.x();
                if (std::abs(den) < 1e-14) continue;
                const Eigen::Vector2d rp = U[j] - U[i];
                const double s1 = (rp.x() * d2.y() - rp.y() * d2.x()) / den;
                const double s2 = (rp.x() * d1.y() - rp.y() * d1.x()) / den;
                if (!(s1 >= 0 && s1 < 1 && s2 >= 0 && s2 < 1)) continue;
                if (std::min({s1, 1 - s1, s2, 1 - s2}) < tol) { ok = false; break; }
                const double w1 = W[i] + s1 * (W[(i + 1) % n] - W[i]);
                const double w2 = W[j] + s2 * (W[(j + 1) % n] - W[j]);
                if (std::abs(w1 - w2) < tol) { ok = false; break; }
                // sign from cross(tangent_over, tangent_under)
                const double cross = d1.x() * d2.y() - d1.y() * d2.x();
                RawCrossing rc;
                if (w1 > w2) {
                    rc = {i + s1, j + s2, cross > 0 ? +1 : -1};
                } else {
                    rc = {j + s2, i + s1, cross > 0 ? -1 : +1};
                }
                raw.push_back(rc);
            }
        }
        if (!ok) continue;
        return build_diagram(std::move(raw));
    }
    throw std::runtime_error("degenerate curve: no generic projection found");
}

KnotDiagram diagram_from_braid(const Braid& b) {
    if (!b.closure_is_knot())
        throw std::domain_error("diagram_from_braid: closure is not a knot");
    const int n = b.strands;
    const int c = static_cast<int>(b.word.size());
    if (c == 0) {
        KnotDiagram d;
        d.narcs = 1;
        return d;
    }
    // walk the closure as one closed curve and assign each crossing pass a
    // global order parameter; sigma_k: left strand (position k) passes over
    struct Pass {
        int crossing;
        bool over;
    };
    // visits[p] = passes of the strand running top->bottom from position p
    std::vector<std::vector<Pass>> visits(n);
    std::vector<int> pos(n);  // pos[slot] = index of the strand that started there
    std::iota(pos.begin(), pos.end(), 0);
    std::vector<int> strand_at(n);
    std::iota(strand_at.begin(), strand_at.end(), 0);
    for (int k = 0; k < c; ++k) {
        const int g = b.word[k];  // crossing between slots g-1, g
        const int left = strand_at[g - 1], right = strand_at[g];
        visits[left].push_back({k, true});
        visits[right].push_back({k, false});
        std::swap(strand_at[g - 1], strand_at[g]);
    }
    std::vector<int> end_pos(n);  // where each strand exits at the bottom
    for (int slot = 0; slot < n; ++slot) end_pos[strand_at[slot]] = slot;
    // traverse: top p -> bottom end_pos[p] -> closure to top end_pos[p] -> ...
    std::vector<RawCrossing> raw(c, RawCrossing{0, 0, +1});
    std::vector<bool> over_set(c, false), under_set(c, false);
    double param = 0.0;
    int p = 0;
    for (int piece = 0; piece < n; ++piece) {
        for (const Pass& ps : visits[p]) {
            if (ps.over) { raw[ps.crossing].t_over = param; over_set[ps.crossing] = true; }
            else { raw[ps.crossing].t_under = param; under_set[ps.crossing] = true; }
            param += 1.0;
        }
        p = end_pos[p];
    }
    for (int k = 0; k < c; ++k)
        if (!over_set[k] || !under_set[k])
            throw std::logic_error("braid traversal missed a crossing");
    return build_diagram(std::move(raw));
}

Laurent alexander_from_diagram(const KnotDiagram& d) {
    d.validate();
    if (d.crossings.empty()) return Laurent(BigInt(1));
    const int nc = static_cast<int>(d.crossings.size());
    // Alexander's crossing matrix (Fox derivative rows), one row dropped
    std::vector<std::vector<Laurent>> m(nc, std::vector<Laurent>(d.narcs));
    const Laurent one(BigInt(1));
    const Laurent t = Laurent::monomial(1, 1);
    for (int r = 0; r < nc; ++r) {
        const auto& c = d.crossings[r];
        if (c.sign > 0) {
            m[r][c.over] += one - t;
            m[r][c.under_in] += t;
            m[r][c.under_out] += -one;
        } else {
            m[r][c.over] += t - one;
            m[r][c.under_in] += one;
            m[r][c.under_out] += -t;
        }
    }
    std::vector<std::vector<Laurent>> sub(nc - 1, std::vector<Laurent>(nc - 1));
    for (int i = 0; i + 1 < nc; ++i)
        for (int j = 0; j + 1 < d.narcs; ++j) sub[i][j] = m[i][j];
    return det_laurent(sub).alexander_normalized();
}

int seifert_circle_count(const KnotDiagram& d) {
    if (d.crossings.empty()) return 1;
    if (d.pass_params.size() != d.crossings.size())
        throw std::runtime_error("diagram lacks pass parameters for Seifert smoothing");
    const int c = static_cast<int>(d.crossings.size());
    // 2c passes split the curve into 2c segments; oriented smoothing joins
    // in_over->out_under and in_under->out_over at each crossing
    std::vector<std::pair<double, std::pair<int, bool>>> passes;  // param -> (crossing, over?)
    for (int k = 0; k < c; ++k) {
        passes.push_back({d.pass_params[k].first, {k, true}});
        passes.push_back({d.pass_params[k].second, {k, false}});
    }
    std::sort(passes.begin(), passes.end());
    const int np = 2 * c;
    // segment k runs from pass k to pass k+1 (cyclic); for each crossing find
    // incoming/outgoing segments of each pass
    std::vector<int> in_over(c), out_over(c), in_under(c), out_under(c);
    for (int k = 0; k < np; ++k) {
        const auto [cr, over] = passes[k].second;
        const int seg_in = (k + np - 1) % np;
        const int seg_out = k;
        if (over) { in_over[cr] = seg_in; out_over[cr] = seg_out; }
        else { in_under[cr] = seg_in; out_under[cr] = seg_out; }
    }
    std::vector<int> next(np);
    for (int k = 0; k < c; ++k) {
        next[in_over[k]] = out_under[k];
        next[in_under[k]] = out_over[k];
    }
    std::vector<bool> used(np, false);
    int circles = 0;
    for (int s = 0; s < np; ++s) {
        if (used[s]) continue;
        ++circles;
        int k = s;
        while (!used[k]) {
            used[k] = true;
            k = next[k];
        }
    }
    return circles;
}

int seifert_genus(const KnotDiagram& d) {
    const int c = static_cast<int>(d.crossings.size());
    const int s = seifert_circle_count(d);
    const int e = c - s + 1;
    if (e % 2 != 0) throw std::runtime_error("Seifert genus: parity violation");
    return e / 2;
}

// --- Ghys check -----------------------------------------------------------

namespace {

bool cyclic_equal(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return false;
    const std::string dbl = a + a;
    return dbl.find(b) != std::string::npos;
}

}  // namespace

GhysReport ghys_word_check(const LorenzWord& w, const Representation& rep,
                           const CrossSection& section) {
    if (!w.is_mixed()) throw std::domain_error("ghys_word_check needs a mixed word");
    if (!(rep.funnel_length() > 0.0)) throw std::domain_error("ghys_word_check needs l > 0");
    GhysReport out{w, "", "", false, Braid{}, 0, Laurent()};

    const Mat2 mw = rep.word_matrix(w.symbols);
    const auto seed = seed_from_axis(rep, section, mw);
    if (seed) {
        const auto it = itinerary(rep, section, *seed, w.size());
        if (it.ok) out.modular_itinerary = it.word;
    }
    ModelParams mp;
    mp.r = 0.1;
    const ReturnMapPoint orbit = periodic_orbit_from_word(w.symbols, mp);
    out.model_itinerary = model_itinerary(orbit, mp, w.size());

    out.agree = !out.modular_itinerary.empty() &&
                cyclic_equal(out.modular_itinerary, w.symbols) &&
                cyclic_equal(out.model_itinerary, w.symbols);

    out.braid = lorenz_braid(w);
    out.genus = genus_positive_braid(out.braid);
    out.alexander = alexander_from_braid(out.braid);
    return out;
}

}  // namespace trefoil
