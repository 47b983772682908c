#pragma once

// Exact distances between eventually periodic points and level-n chain
// approximations of those distances.

#include "qctree/graphs.hpp"

#include <map>
#include <numeric>

namespace qctree {

struct ChainApproximation {
    Rational value;
    std::size_t level = 0;
    // Delta(w)(1 + 2^(|w| - n)) for the longest common prefix w of the truncations.
    std::optional<Rational> same_tile_bound;
};

// Sum of Delta over the vertices of arc(x(n), y(n)). An upper bound for the
// distance that converges to it as n grows.
inline ChainApproximation chain_length(const PointCode& x, const PointCode& y, std::size_t n, const Weight& a)
{
    if (n < 1) throw DomainError("chain level must be at least 1");
    x.check_alphabet(a.size());
    y.check_alphabet(a.size());
    const Word xn = x.truncate(n);
    const Word yn = y.truncate(n);
    ArcWeightSum sum(a);
    ChainApproximation out;
    out.level = n;
    out.value = sum(xn, yn);
    const std::size_t p = detail::common_prefix_length(xn, yn);
    const Word w(xn.begin(), xn.begin() + static_cast<std::ptrdiff_t>(p));
    Rational twos = 1;
    for (std::size_t i = p; i < n; ++i) twos /= 2;
    out.same_tile_bound = delta(w, a) * (1 + twos);
    return out;
}

namespace detail {

// d(x, [c^inf]) for any code x (canonical or not), by the one-letter
// recurrences. The state is (position reduced into the period, target); a
// repeated state closes the linear equation X = A X + B.
inline Rational boundary_distance_any(const PointCode& x, Letter target, const Weight& a)
{
    const std::size_t pre = x.prefix().size();
    const std::size_t per = x.period().size();
    // answer = mult * X_state + add
    Rational mult = 1;
    Rational add = 0;
    std::map<std::pair<std::size_t, Letter>, std::pair<Rational, Rational>> seen;
    const Rational half(1, 2);
    for (std::size_t pos = 0;; ++pos) {
        const std::size_t reduced = pos < pre ? pos : pre + (pos - pre) % per;
        const auto key = std::make_pair(reduced, target);
        if (pos >= pre) {
            if (auto it = seen.find(key); it != seen.end()) {
                const auto& [m0, c0] = it->second;
                const Rational fixed = (add - c0) / (m0 - mult);
                return m0 * fixed + c0;
            }
            seen.emplace(key, std::make_pair(mult, add));
        }
        const Letter b = x.at(pos);
        const Rational ab = a(b);
        if (target == 1) {
            if (b != 1) add += mult * half;
        } else {
            if (b == 1) {
                add += mult * half;
            } else if (b >= 3) {
                add += mult * half;
                target = 1;
            }
        }
        mult *= ab;
    }
}

// g(z) for z = k z'': a(1) d(z'', [2^inf]) if k = 1, else a(k) d(z'', [1^inf]).
inline Rational gate_distance(const PointCode& z, const Weight& a)
{
    const Letter k = z.at(0);
    const PointCode rest = z.shifted(1);
    return a(k) * boundary_distance_any(rest, k == 1 ? 2 : 1, a);
}

}  // namespace detail

// Exact d(x, [c^inf]) for canonical x and c in {1, 2}.
inline Rational boundary_distance(const PointCode& x, Letter c, const Weight& a)
{
    if (c != 1 && c != 2) throw DomainError("boundary target must be 1 or 2");
    if (!is_canonical(x)) throw DomainError("boundary_distance needs a canonical code, got " + format_point_code(x));
    x.check_alphabet(a.size());
    return detail::boundary_distance_any(x, c, a);
}

// Exact distance between two eventually periodic points.
inline Rational distance_exact(const PointCode& x0, const PointCode& y0, const Weight& a)
{
    x0.check_alphabet(a.size());
    y0.check_alphabet(a.size());
    const PointCode x = canonicalize(x0);
    const PointCode y = canonicalize(y0);
    if (x == y) return 0;
    // Distinct normal forms differ within this many letters.
    const std::size_t bound = std::max(x.prefix().size(), y.prefix().size()) +
                              std::lcm(x.period().size(), y.period().size());
    Rational scale = 1;
    std::size_t k = 0;
    while (x.at(k) == y.at(k)) {
        scale *= a(x.at(k));
        if (++k > bound) throw DomainError("internal error: distinct codes never separate");
    }
    return scale * (detail::gate_distance(x.shifted(k), a) + detail::gate_distance(y.shifted(k), a));
}

}  // namespace qctree
