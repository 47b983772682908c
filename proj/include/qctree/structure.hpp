#pragma once

// Branch points, heights, tiles and their boundaries, and exhaustive or
// sampled verification of the uniform branching properties.

#include "qctree/metric.hpp"
#include "qctree/parallel.hpp"
#include "qctree/report.hpp"

#include <random>
#include <set>

namespace qctree {

// All words of length <= n over {1..m}, by length then lexicographically.
inline std::vector<Word> words_up_to(std::size_t n, std::size_t m)
{
    std::uint64_t total = 0;
    for (std::size_t k = 0; k <= n; ++k) total += guarded_count(m, k);
    if (total > kEnumerationGuard) throw DomainError("enumeration exceeds the guard of 10^7 words");
    std::vector<Word> out;
    out.push_back({});
    for (std::size_t k = 1; k <= n; ++k) {
        auto level = words_of_length(k, m);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

// [u 1 2^inf]
inline PointCode branch_code(const Word& u) { return PointCode(concat(u, {1}), {2}); }

struct BranchPoint {
    Word stem;
    PointCode code;
    Rational height_h;    // diameter-based height a(3) Delta(u)
    Rational height_new;  // farthest-point height a(3) Delta(u)
};

inline void require_branching_alphabet(const Weight& a)
{
    if (a.size() < 3) throw DomainError("branch points need an alphabet of size at least 3");
}

// One branch point per stem of length <= n, in stem order.
inline std::vector<BranchPoint> branch_points(std::size_t n, const Weight& a)
{
    require_branching_alphabet(a);
    std::vector<BranchPoint> out;
    std::set<PointCode> seen;
    for (Word& u : words_up_to(n, a.size())) {
        PointCode code = canonicalize(branch_code(u));
        if (!seen.insert(code).second) continue;
        const Rational h = a(3) * delta(u, a);
        out.push_back({std::move(u), std::move(code), h, h});
    }
    return out;
}

// Boundary points of the tile T_w: those of [w1^inf], [w2^inf] whose canonical
// form is v 1 2^inf with |v| < |w|.
inline std::set<PointCode> tile_boundary(const Word& w)
{
    std::set<PointCode> out;
    for (Letter c : {Letter{1}, Letter{2}}) {
        const PointCode p = canonicalize(PointCode(w, {c}));
        if (p.period() == Word{2} && !p.prefix().empty() && p.prefix().back() == 1 &&
            p.prefix().size() - 1 < w.size()) {
            out.insert(p);
        }
    }
    return out;
}

struct Tile {
    Word word;
    Rational diameter;
    std::set<PointCode> boundary;
};

inline Tile tile(const Word& w, const Weight& a)
{
    check_letters(w, a.size());
    return {w, delta(w, a), tile_boundary(w)};
}

struct NeighborTile {
    Word word;
    Rational ratio;  // Delta(w) / Delta(u)
    bool within_bounds = false;
};

// Same-level tiles meeting T_w. A boundary point [v 1 2^inf] lies in exactly
// the tiles whose words are prefixes of v 1 2^inf or v j 1^inf (j >= 2).
inline std::vector<NeighborTile> neighbor_tiles(const Word& w, const Weight& a)
{
    if (w.empty()) throw DomainError("neighbor tiles need a word of length at least 1");
    const std::size_t m = a.size();
    check_letters(w, m);
    const std::size_t k = w.size();
    std::set<Word> found;
    for (const PointCode& p : tile_boundary(w)) {
        Word v = p.prefix();
        v.pop_back();
        found.insert(PointCode(concat(v, {1}), {2}).truncate(k));
        for (Letter j = 2; j <= m; ++j) found.insert(PointCode(concat(v, {j}), {1}).truncate(k));
    }
    found.erase(w);
    const Rational min_a = a(static_cast<Letter>(m));
    const Rational lower = 2 * min_a;
    const Rational upper = 1 / lower;
    std::vector<NeighborTile> out;
    for (const Word& u : found) {
        const Rational ratio = delta(w, a) / delta(u, a);
        out.push_back({u, ratio, lower <= ratio && ratio <= upper});
    }
    return out;
}

struct SeparationReport {
    std::uint64_t pairs = 0;
    Rational min_ratio;  // min of d / ((1/2) min(Delta(v), Delta(w)))
    Word witness_v;
    Word witness_w;
    Rational witness_distance;
    Rational witness_bound;
    bool pass = true;
};

namespace detail {

struct PairExtreme {
    bool set = false;
    Rational ratio;
    std::size_t i = 0;
    std::size_t j = 0;
    Rational distance;
    Rational bound;
};

// Minimum over stem pairs i < j of d(p_i, p_j) / (factor * min(Delta)).
inline PairExtreme tightest_separation(const std::vector<Word>& stems, const Weight& a, const Rational& factor)
{
    std::vector<PointCode> codes;
    std::vector<Rational> deltas;
    for (const Word& s : stems) {
        codes.push_back(branch_code(s));
        deltas.push_back(delta(s, a));
    }
    std::vector<PairExtreme> rows(stems.size());
    parallel_for(stems.size(), [&](std::size_t i) {
        PairExtreme best;
        for (std::size_t j = i + 1; j < stems.size(); ++j) {
            const Rational d = distance_exact(codes[i], codes[j], a);
            const Rational bound = factor * (deltas[i] < deltas[j] ? deltas[i] : deltas[j]);
            const Rational ratio = d / bound;
            if (!best.set || ratio < best.ratio) best = {true, ratio, i, j, d, bound};
        }
        rows[i] = std::move(best);
    });
    PairExtreme best;
    for (auto& r : rows) {
        if (r.set && (!best.set || r.ratio < best.ratio)) best = std::move(r);
    }
    return best;
}

}  // namespace detail

// Exhaustive check of d(p, q) >= (1/2) min(Delta(v), Delta(w)) over distinct
// stems of length <= n.
inline SeparationReport verify_separation(std::size_t n, const Weight& a)
{
    require_branching_alphabet(a);
    const auto stems = words_up_to(n, a.size());
    SeparationReport report;
    report.pairs = static_cast<std::uint64_t>(stems.size()) * (stems.size() - 1) / 2;
    const auto best = detail::tightest_separation(stems, a, Rational(1, 2));
    if (best.set) {
        report.min_ratio = best.ratio;
        report.witness_v = stems[best.i];
        report.witness_w = stems[best.j];
        report.witness_distance = best.distance;
        report.witness_bound = best.bound;
        report.pass = best.ratio >= 1;
    }
    return report;
}

// Random code prefix * period^inf with |prefix| <= max_prefix and
// 1 <= |period| <= max_period, canonicalized.
template <class Rng>
PointCode random_point_code(Rng& rng, std::size_t m, std::size_t max_prefix, std::size_t max_period)
{
    std::uniform_int_distribution<Letter> letter(1, static_cast<Letter>(m));
    std::uniform_int_distribution<std::size_t> pre_len(0, max_prefix);
    std::uniform_int_distribution<std::size_t> per_len(1, std::max<std::size_t>(1, max_period));
    Word prefix(pre_len(rng));
    Word period(per_len(rng));
    for (auto& l : prefix) l = letter(rng);
    for (auto& l : period) l = letter(rng);
    return canonicalize(PointCode(prefix, period));
}

// Checks for T^{m,a} up to level n:
//  separation: d(p, q) >= min(H(p), H(q)) with H = a(3) Delta, reported constant a(3);
//  growth: branch heights d(p, [w j 2^inf]) = a(j) Delta(w) and their spread
//          h_3 / h_m <= a(3) / a(m);
//  density: for sampled distinct points the gate [u 1 2^inf] of their common
//           prefix u lies on their arc and Delta(u) >= d(x, y), constant a(3).
inline std::vector<CheckResult> verify_uniform_branching(std::size_t n, const Weight& a,
                                                         std::size_t samples = 200,
                                                         std::uint64_t seed = 20240601)
{
    require_branching_alphabet(a);
    const std::size_t m = a.size();
    const auto stems = words_up_to(n, m);
    const Rational a3 = a(3);
    std::vector<CheckResult> out;

    {
        CheckResult c{"separation", a3, "", true};
        const auto best = detail::tightest_separation(stems, a, a3);
        if (best.set) {
            c.pass = best.ratio >= 1;
            c.witness = "stems [" + format_word(stems[best.i]) + "] and [" + format_word(stems[best.j]) +
                        "]: d = " + format_rational(best.distance) + ", min H = " + format_rational(best.bound);
        }
        out.push_back(std::move(c));
    }

    {
        const Rational allowed = a3 / a(static_cast<Letter>(m));
        CheckResult c{"growth", 0, "", true};
        std::vector<std::pair<bool, Rational>> rows(stems.size());
        std::vector<std::string> bad(stems.size());
        parallel_for(stems.size(), [&](std::size_t s) {
            const Word& w = stems[s];
            const PointCode p = branch_code(w);
            Rational hmax, hmin;
            bool ok = true;
            for (Letter j = 3; j <= m; ++j) {
                const Rational h = distance_exact(p, PointCode(concat(w, {j}), {2}), a);
                if (h != a(j) * delta(w, a)) {
                    ok = false;
                    bad[s] = "height of branch " + std::to_string(j) + " at stem [" + format_word(w) + "] is " +
                             format_rational(h);
                }
                if (j == 3) hmax = h;
                hmin = h;
            }
            rows[s] = {ok, hmax / hmin};
        });
        std::size_t arg = 0;
        for (std::size_t s = 0; s < stems.size(); ++s) {
            if (!rows[s].first) {
                c.pass = false;
                c.witness = bad[s];
            }
            if (rows[s].second > c.constant) {
                c.constant = rows[s].second;
                arg = s;
            }
        }
        if (c.pass) {
            c.pass = c.constant <= allowed;
            c.witness = "stem [" + format_word(stems[arg]) + "]: h_3 / h_" + std::to_string(m) + " = " +
                        format_rational(c.constant);
        }
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"density", a3, "", true};
        std::mt19937_64 rng(seed);
        Rational worst = -1;
        for (std::size_t s = 0; s < samples; ++s) {
            const PointCode x = random_point_code(rng, m, n, 2);
            const PointCode y = random_point_code(rng, m, n, 2);
            if (x == y) continue;
            std::size_t k = 0;
            while (x.at(k) == y.at(k)) ++k;
            const Word u = x.truncate(k);
            const PointCode g = branch_code(u);
            const Rational d = distance_exact(x, y, a);
            const Rational ratio = d / delta(u, a);
            const bool on_arc = distance_exact(x, g, a) + distance_exact(g, y, a) == d;
            if (!on_arc || ratio > 1) {
                c.pass = false;
                c.witness = "points " + format_point_code(x) + " and " + format_point_code(y) +
                            (on_arc ? ": d exceeds Delta(u)" : ": gate not on arc");
                break;
            }
            if (ratio > worst) {
                worst = ratio;
                c.witness = "points " + format_point_code(x) + " and " + format_point_code(y) + ": d / Delta(u) = " +
                            format_rational(ratio);
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

// max over p in `from` of min over q in `to` of d(p, q).
inline Rational asymmetric_excess(const std::vector<PointCode>& from, const std::vector<PointCode>& to,
                                  const Weight& a)
{
    if (to.empty()) throw DomainError("target point set is empty");
    std::vector<Rational> row(from.size());
    parallel_for(from.size(), [&](std::size_t i) {
        Rational best = -1;
        for (const PointCode& q : to) {
            const Rational d = distance_exact(from[i], q, a);
            if (best < 0 || d < best) best = d;
            if (best == 0) break;
        }
        row[i] = best;
    });
    Rational out = 0;
    for (const auto& r : row) {
        if (r > out) out = r;
    }
    return out;
}

inline std::vector<PointCode> branch_codes(const std::vector<BranchPoint>& points)
{
    std::vector<PointCode> out;
    for (const auto& p : points) out.push_back(p.code);
    return out;
}

}  // namespace qctree
