#pragma once

// The combinatorial trees G_k on words of length k. The graphs are never
// materialized: adjacency is a closed-form pattern test and arcs are built by
// recursive routing through the gate edge between first-letter subtrees.

#include "qctree/core.hpp"

#include <map>
#include <numeric>

namespace qctree {

namespace detail {

inline void check_same_length(const Word& w, const Word& u)
{
    if (w.size() != u.size()) {
        throw DomainError("words must have equal length (" + std::to_string(w.size()) + " vs " +
                          std::to_string(u.size()) + ")");
    }
}

// True iff s = 1 2^(|s|-1).
inline bool is_one_then_twos(const Word& s, std::size_t from)
{
    if (from >= s.size() || s[from] != 1) return false;
    for (std::size_t i = from + 1; i < s.size(); ++i) {
        if (s[i] != 2) return false;
    }
    return true;
}

// True iff s = i 1^(|s|-1) with i >= 2.
inline bool is_letter_then_ones(const Word& s, std::size_t from)
{
    if (from >= s.size() || s[from] < 2) return false;
    for (std::size_t i = from + 1; i < s.size(); ++i) {
        if (s[i] != 1) return false;
    }
    return true;
}

// The vertex of the first-letter subtree c at which G_k leaves that subtree:
// 1 2^(k-1) for c = 1, and c 1^(k-1) otherwise.
inline Word port(Letter c, std::size_t k)
{
    Word w(k, c == 1 ? 2 : 1);
    w[0] = c;
    return w;
}

inline std::size_t common_prefix_length(const Word& w, const Word& u)
{
    std::size_t p = 0;
    while (p < w.size() && p < u.size() && w[p] == u[p]) ++p;
    return p;
}

}  // namespace detail

// {w, u} is an edge of G_k iff, after stripping the longest common prefix v,
// the remainders are v i 1^l and v 1 2^l with i >= 2.
inline bool adjacent(const Word& w, const Word& u)
{
    detail::check_same_length(w, u);
    if (w == u) return false;
    const std::size_t p = detail::common_prefix_length(w, u);
    return (detail::is_one_then_twos(w, p) && detail::is_letter_then_ones(u, p)) ||
           (detail::is_one_then_twos(u, p) && detail::is_letter_then_ones(w, p));
}

// All neighbors of w in G_{|w|} over {1..m}, lexicographically sorted.
inline std::vector<Word> neighbors(const Word& w, std::size_t m)
{
    if (w.empty()) throw DomainError("neighbors needs a nonempty word");
    check_letters(w, m);
    std::vector<Word> out;
    for (std::size_t p = 0; p < w.size(); ++p) {
        if (detail::is_one_then_twos(w, p)) {
            for (Letter i = 2; i <= m; ++i) {
                Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
                u.push_back(i);
                u.resize(w.size(), 1);
                out.push_back(std::move(u));
            }
        } else if (detail::is_letter_then_ones(w, p)) {
            Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
            u.push_back(1);
            u.resize(w.size(), 2);
            out.push_back(std::move(u));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline void arc_into(Word& prefix, const Word& w, const Word& u, std::size_t from, std::vector<Word>& out)
{
    const std::size_t k = w.size() - from;
    std::size_t p = 0;
    while (p < k && w[from + p] == u[from + p]) ++p;
    if (p == k) {
        Word v = prefix;
        v.insert(v.end(), w.begin() + static_cast<std::ptrdiff_t>(from), w.end());
        out.push_back(std::move(v));
        return;
    }
    const std::size_t base = prefix.size();
    prefix.insert(prefix.end(), w.begin() + static_cast<std::ptrdiff_t>(from),
                  w.begin() + static_cast<std::ptrdiff_t>(from + p));
    const std::size_t rest = k - p;
    const Letter i = w[from + p];
    const Letter j = u[from + p];
    const Word tail_w(w.begin() + static_cast<std::ptrdiff_t>(from + p), w.end());
    const Word tail_u(u.begin() + static_cast<std::ptrdiff_t>(from + p), u.end());
    arc_into(prefix, tail_w, port(i, rest), 0, out);
    if (i != 1 && j != 1) {
        Word gate = prefix;
        const Word g = port(1, rest);
        gate.insert(gate.end(), g.begin(), g.end());
        out.push_back(std::move(gate));
    }
    arc_into(prefix, port(j, rest), tail_u, 0, out);
    prefix.resize(base);
}

}  // namespace detail

// The unique simple path from w to u in G_{|w|}, endpoints included.
inline std::vector<Word> arc(const Word& w, const Word& u)
{
    detail::check_same_length(w, u);
    std::vector<Word> out;
    Word prefix;
    detail::arc_into(prefix, w, u, 0, out);
    return out;
}

// Sum of Delta over the vertices of arc(w, u), without listing the arc.
class ArcWeightSum {
public:
    explicit ArcWeightSum(const Weight& a) : a_(a) {}

    Rational operator()(const Word& w, const Word& u)
    {
        detail::check_same_length(w, u);
        return sum(w, u);
    }

private:
    Rational sum(const Word& w, const Word& u)
    {
        if (w == u) return delta(w, a_);
        const std::size_t p = detail::common_prefix_length(w, u);
        if (p > 0) {
            const Word w2(w.begin() + static_cast<std::ptrdiff_t>(p), w.end());
            const Word u2(u.begin() + static_cast<std::ptrdiff_t>(p), u.end());
            return delta(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p)), a_) * sum(w2, u2);
        }
        const auto key = std::make_pair(w, u);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const std::size_t k = w.size();
        const Letter i = w[0];
        const Letter j = u[0];
        Rational total = sum(w, detail::port(i, k)) + sum(detail::port(j, k), u);
        if (i != 1 && j != 1) total += delta(detail::port(1, k), a_);
        memo_.emplace(key, total);
        return total;
    }

    const Weight& a_;
    std::map<std::pair<Word, Word>, Rational> memo_;
};

// Number of vertices of arc(w, u), without listing the arc.
inline std::uint64_t arc_vertex_count(const Word& w, const Word& u)
{
    detail::check_same_length(w, u);
    std::map<std::pair<Word, Word>, std::uint64_t> memo;
    auto count = [&](auto&& self, const Word& x, const Word& y) -> std::uint64_t {
        if (x == y) return 1;
        const std::size_t p = detail::common_prefix_length(x, y);
        if (p > 0) {
            return self(self, Word(x.begin() + static_cast<std::ptrdiff_t>(p), x.end()),
                        Word(y.begin() + static_cast<std::ptrdiff_t>(p), y.end()));
        }
        const auto key = std::make_pair(x, y);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        const std::size_t k = x.size();
        std::uint64_t total = self(self, x, detail::port(x[0], k)) + self(self, detail::port(y[0], k), y);
        if (x[0] != 1 && y[0] != 1) total += 1;
        memo.emplace(key, total);
        return total;
    };
    return count(count, w, u);
}

struct TreeStructureReport {
    std::size_t level = 0;
    std::size_t m = 0;
    std::uint64_t vertices = 0;
    std::uint64_t edges = 0;
    bool connected = false;
    bool pass = false;
};

inline constexpr std::uint64_t kEnumerationGuard = 10'000'000;

// m^k, or throws DomainError when it exceeds the enumeration guard.
inline std::uint64_t guarded_count(std::size_t m, std::size_t k, std::uint64_t guard = kEnumerationGuard)
{
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (n > guard / m) {
            throw DomainError("enumeration of " + std::to_string(m) + "^" + std::to_string(k) +
                              " words exceeds the guard m^k <= " + std::to_string(guard));
        }
        n *= m;
    }
    return n;
}

// Enumerates G_k over {1..m} through the closed-form neighbor rule and checks
// that it is a tree: m^k - 1 edges and connected.
inline TreeStructureReport verify_tree_structure(std::size_t k, std::size_t m)
{
    if (k < 1) throw DomainError("level must be at least 1");
    if (m < 2) throw DomainError("alphabet size must be at least 2");
    const std::uint64_t n = guarded_count(m, k);
    TreeStructureReport report;
    report.level = k;
    report.m = m;
    report.vertices = n;

    auto index_of = [&](const Word& w) {
        std::uint64_t idx = 0;
        for (Letter l : w) idx = idx * m + (l - 1);
        return idx;
    };
    std::vector<std::uint64_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint64_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::uint64_t components = n;
    for (const Word& w : words_of_length(k, m)) {
        const std::uint64_t iw = index_of(w);
        for (const Word& u : neighbors(w, m)) {
            const std::uint64_t iu = index_of(u);
            if (iu <= iw) continue;
            ++report.edges;
            const auto rw = find(iw);
            const auto ru = find(iu);
            if (rw != ru) {
                parent[rw] = ru;
                --components;
            }
        }
    }
    report.connected = components == 1;
    report.pass = report.connected && report.edges == n - 1;
    return report;
}

}  // namespace qctree
