#pragma once

// Finite geodesic trees with exact edge lengths, geodesic gluing, the three
// transforms that raise a tree to uniform growth, uniform valence m and
// attached scaled copies of T^{m,a}, and verification of the branching
// properties on finite trees.

#include "qctree/metric.hpp"
#include "qctree/report.hpp"
#include "qctree/structure.hpp"

#include <map>
#include <tuple>
#include <unordered_map>

namespace qctree {

class FiniteGeodesicTree {
public:
    enum class Role { Isolated, Leaf, Double, Branch };

    struct Edge {
        std::size_t u;
        std::size_t v;
        Rational length;
    };

    std::size_t add_vertex(const std::string& id)
    {
        if (id.empty()) throw DomainError("vertex identifiers must be nonempty");
        if (index_.count(id)) throw DomainError("duplicate vertex '" + id + "'");
        index_.emplace(id, ids_.size());
        ids_.push_back(id);
        adjacency_.emplace_back();
        return ids_.size() - 1;
    }

    void add_edge(const std::string& a, const std::string& b, const Rational& length)
    {
        if (length <= 0) throw DomainError("edge " + a + " - " + b + " must have positive length");
        const std::size_t u = index(a);
        const std::size_t v = index(b);
        if (u == v) throw DomainError("loop at vertex '" + a + "'");
        adjacency_[u].push_back(edges_.size());
        adjacency_[v].push_back(edges_.size());
        Rational canonical = length;
        canonical.canonicalize();
        edges_.push_back({u, v, std::move(canonical)});
    }

    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& vertices() const { return ids_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::string& id(std::size_t i) const { return ids_.at(i); }
    bool has_vertex(const std::string& id) const { return index_.count(id) > 0; }

    std::size_t index(const std::string& id) const
    {
        auto it = index_.find(id);
        if (it == index_.end()) throw DomainError("unknown vertex '" + id + "'");
        return it->second;
    }

    std::size_t degree(std::size_t i) const { return adjacency_.at(i).size(); }

    Role role(std::size_t i) const
    {
        switch (degree(i)) {
        case 0: return Role::Isolated;
        case 1: return Role::Leaf;
        case 2: return Role::Double;
        default: return Role::Branch;
        }
    }

    bool is_branch(std::size_t i) const { return degree(i) >= 3; }

    // (neighbor, edge length) pairs of vertex i
    std::vector<std::pair<std::size_t, Rational>> neighbors(std::size_t i) const
    {
        std::vector<std::pair<std::size_t, Rational>> out;
        for (std::size_t e : adjacency_.at(i)) {
            const Edge& ed = edges_[e];
            out.push_back({ed.u == i ? ed.v : ed.u, ed.length});
        }
        return out;
    }

    // Throws DomainError unless the graph is a nonempty tree.
    void validate() const
    {
        if (ids_.empty()) throw DomainError("tree has no vertices");
        if (edges_.size() + 1 != ids_.size()) {
            throw DomainError("a tree on " + std::to_string(ids_.size()) + " vertices needs " +
                              std::to_string(ids_.size() - 1) + " edges, found " + std::to_string(edges_.size()));
        }
        std::vector<bool> seen(ids_.size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (const auto& [v, len] : neighbors(u)) {
                (void)len;
                if (!seen[v]) {
                    seen[v] = true;
                    ++count;
                    stack.push_back(v);
                }
            }
        }
        if (count != ids_.size()) throw DomainError("tree is not connected");
    }

    // Distances from vertex i to every vertex.
    std::vector<Rational> distances_from(std::size_t i) const
    {
        std::vector<Rational> dist(ids_.size());
        std::vector<bool> seen(ids_.size(), false);
        std::vector<std::size_t> stack{i};
        seen[i] = true;
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (const auto& [v, len] : neighbors(u)) {
                if (!seen[v]) {
                    seen[v] = true;
                    dist[v] = dist[u] + len;
                    stack.push_back(v);
                }
            }
        }
        return dist;
    }

    // The same tree with every edge length multiplied by `factor`.
    FiniteGeodesicTree scaled(const Rational& factor) const
    {
        if (factor <= 0) throw DomainError("scale factor must be positive");
        FiniteGeodesicTree t = *this;
        for (auto& e : t.edges_) e.length *= factor;
        return t;
    }

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

// A single segment "base" - "tip" of the given length.
inline FiniteGeodesicTree segment_tree(const Rational& length)
{
    FiniteGeodesicTree t;
    t.add_vertex("base");
    t.add_vertex("tip");
    t.add_edge("base", "tip", length);
    return t;
}

inline Rational tree_distance(const FiniteGeodesicTree& t, const std::string& x, const std::string& y)
{
    return t.distances_from(t.index(x))[t.index(y)];
}

// One component of T minus p, seen from p.
struct Branch {
    std::size_t neighbor = 0;       // vertex adjacent to p inside the branch
    Rational height;                // max distance from p to a point of the branch
    std::size_t farthest_leaf = 0;  // leaf realizing the height, smallest identifier on ties
    Rational diameter;              // diameter of the closure of the branch
};

// The branches at p, ordered by nonincreasing height (ties by the identifier
// of the adjacent vertex).
inline std::vector<Branch> branches(const FiniteGeodesicTree& t, std::size_t p)
{
    std::vector<Branch> out;
    for (const auto& [start, len] : t.neighbors(p)) {
        // vertices of this component with their distance from p
        std::vector<std::pair<std::size_t, Rational>> members{{p, 0}};
        std::vector<std::tuple<std::size_t, std::size_t, Rational>> stack{{start, p, len}};
        while (!stack.empty()) {
            auto [u, from, d] = stack.back();
            stack.pop_back();
            members.push_back({u, d});
            for (const auto& [v, l] : t.neighbors(u)) {
                if (v != from) stack.push_back({v, u, d + l});
            }
        }
        Branch b;
        b.neighbor = start;
        b.farthest_leaf = start;
        b.height = 0;
        for (const auto& [v, d] : members) {
            if (d > b.height || (d == b.height && v != p && t.id(v) < t.id(b.farthest_leaf))) {
                b.height = d;
                b.farthest_leaf = v;
            }
        }
        // second sweep from the farthest point of the closure
        std::vector<std::tuple<std::size_t, std::size_t, Rational>> sweep{{b.farthest_leaf, b.farthest_leaf, 0}};
        std::vector<bool> inside(t.size(), false);
        for (const auto& [v, d] : members) inside[v] = true;
        b.diameter = 0;
        while (!sweep.empty()) {
            auto [u, from, d] = sweep.back();
            sweep.pop_back();
            if (d > b.diameter) b.diameter = d;
            for (const auto& [v, l] : t.neighbors(u)) {
                if (v != from && inside[v] && !(u == p && v != start)) sweep.push_back({v, u, d + l});
            }
        }
        out.push_back(std::move(b));
    }
    std::stable_sort(out.begin(), out.end(), [&](const Branch& x, const Branch& y) {
        if (x.height != y.height) return x.height > y.height;
        return t.id(x.neighbor) < t.id(y.neighbor);
    });
    return out;
}

// Heights of the branches at p, nonincreasing. The third entry is h_T(p).
inline std::vector<Rational> branch_heights(const FiniteGeodesicTree& t, const std::string& p)
{
    const std::size_t i = t.index(p);
    if (t.degree(i) < 3) throw DomainError("vertex '" + p + "' is not a branch point");
    std::vector<Rational> out;
    for (const auto& b : branches(t, i)) out.push_back(b.height);
    return out;
}

struct Attachment {
    std::string x;          // vertex of the base tree
    FiniteGeodesicTree y;   // tree to glue
    std::string y_vertex;   // vertex of y identified with x
};

struct GluingSpec {
    std::vector<Attachment> attachments;
};

// Where a vertex of a glued tree came from: piece -1 is the base tree, piece
// i >= 0 is attachment i.
struct Origin {
    int piece = -1;
    std::string id;
};

struct GlueResult {
    FiniteGeodesicTree tree;
    std::vector<Origin> origin;  // indexed like tree.vertices()
};

// Disjoint union of X and the attached trees with each y_i identified to x_i.
// Vertices of X keep their identifiers; a vertex v of Y_i becomes "v@x_i",
// primed until unique.
inline GlueResult geodesic_glue_traced(const FiniteGeodesicTree& X, const GluingSpec& spec)
{
    X.validate();
    GlueResult r;
    r.tree = X;
    for (const auto& id : X.vertices()) r.origin.push_back({-1, id});
    for (std::size_t i = 0; i < spec.attachments.size(); ++i) {
        const Attachment& at = spec.attachments[i];
        X.index(at.x);
        at.y.validate();
        at.y.index(at.y_vertex);
        std::unordered_map<std::string, std::string> renamed;
        renamed[at.y_vertex] = at.x;
        for (const auto& v : at.y.vertices()) {
            if (v == at.y_vertex) continue;
            std::string name = v + "@" + at.x;
            while (r.tree.has_vertex(name)) name += "'";
            r.tree.add_vertex(name);
            r.origin.push_back({static_cast<int>(i), v});
            renamed[v] = name;
        }
        for (const auto& e : at.y.edges()) {
            r.tree.add_edge(renamed.at(at.y.id(e.u)), renamed.at(at.y.id(e.v)), e.length);
        }
    }
    return r;
}

inline FiniteGeodesicTree geodesic_glue(const FiniteGeodesicTree& X, const GluingSpec& spec)
{
    return geodesic_glue_traced(X, spec).tree;
}

// The gluing pseudometric evaluated from the pieces:
//   both in X: d_X;  both in Y_i: d_{Y_i};
//   z in X, w in Y_i: d_X(z, x_i) + d_{Y_i}(y_i, w);
//   z in Y_i, w in Y_j (i != j): d_{Y_i}(z, y_i) + d_X(x_i, x_j) + d_{Y_j}(y_j, w).
inline Rational glued_distance(const FiniteGeodesicTree& X, const GluingSpec& spec, const Origin& z, const Origin& w)
{
    auto piece = [&](int i) -> const FiniteGeodesicTree& { return spec.attachments.at(static_cast<std::size_t>(i)).y; };
    auto root = [&](int i) -> const std::string& { return spec.attachments.at(static_cast<std::size_t>(i)).y_vertex; };
    auto base = [&](int i) -> const std::string& { return spec.attachments.at(static_cast<std::size_t>(i)).x; };
    if (z.piece < 0 && w.piece < 0) return tree_distance(X, z.id, w.id);
    if (z.piece == w.piece) return tree_distance(piece(z.piece), z.id, w.id);
    if (z.piece < 0) return tree_distance(X, z.id, base(w.piece)) + tree_distance(piece(w.piece), root(w.piece), w.id);
    if (w.piece < 0) return tree_distance(piece(z.piece), z.id, root(z.piece)) + tree_distance(X, base(z.piece), w.id);
    return tree_distance(piece(z.piece), z.id, root(z.piece)) + tree_distance(X, base(z.piece), base(w.piece)) +
           tree_distance(piece(w.piece), root(w.piece), w.id);
}

// Segments that bring every branch point to uniform growth. At a branch point
// p of valence >= 4 with h = h_T(p) and i_p the last index whose branch height
// equals h, each later branch B_j receives a segment of length h - h(p, B_j) at
// its farthest leaf. A leaf chosen by several (p, j) receives one segment of
// the largest requested length.
inline GluingSpec step1_plan(const FiniteGeodesicTree& t)
{
    t.validate();
    std::map<std::string, Rational> request;
    for (std::size_t p = 0; p < t.size(); ++p) {
        if (t.degree(p) < 4) continue;
        const auto br = branches(t, p);
        const Rational h = br[2].height;
        std::size_t ip = 2;
        while (ip + 1 < br.size() && br[ip + 1].height == h) ++ip;
        for (std::size_t j = ip + 1; j < br.size(); ++j) {
            const std::string& q = t.id(br[j].farthest_leaf);
            const Rational length = h - br[j].height;
            auto it = request.find(q);
            if (it == request.end()) {
                request.emplace(q, length);
            } else if (length > it->second) {
                it->second = length;
            }
        }
    }
    GluingSpec spec;
    for (const auto& [q, length] : request) spec.attachments.push_back({q, segment_tree(length), "base"});
    return spec;
}

inline FiniteGeodesicTree step1_uniform_growth(const FiniteGeodesicTree& t)
{
    return geodesic_glue(t, step1_plan(t));
}

// Segments that make every branch point m-valent: a branch point of valence
// n_p in 3..m-1 receives m - n_p segments of length h(p, B_{n_p}).
inline GluingSpec step2_plan(const FiniteGeodesicTree& t, std::size_t m)
{
    t.validate();
    GluingSpec spec;
    for (std::size_t p = 0; p < t.size(); ++p) {
        const std::size_t n = t.degree(p);
        if (n < 3) continue;
        if (n > m) {
            throw DomainError("branch point '" + t.id(p) + "' has valence " + std::to_string(n) + " > m = " +
                              std::to_string(m));
        }
        if (n == m) continue;
        const Rational length = branches(t, p).back().height;
        for (std::size_t k = n; k < m; ++k) spec.attachments.push_back({t.id(p), segment_tree(length), "base"});
    }
    return spec;
}

inline FiniteGeodesicTree step2_uniform_valence(const FiniteGeodesicTree& t, std::size_t m)
{
    return geodesic_glue(t, step2_plan(t, m));
}

// The depth-d skeleton of T^{m,a}: vertices are the classes of w1^inf and
// w2^inf for |w| = d (named by their canonical codes), and each w contributes
// the edge between them, of length d([w1^inf], [w2^inf]).
inline FiniteGeodesicTree truncated_tree_skeleton(const Weight& a, std::size_t depth)
{
    if (depth < 1) throw DomainError("truncation depth must be at least 1");
    const std::size_t m = a.size();
    guarded_count(m, depth, 1'000'000);
    FiniteGeodesicTree t;
    auto vertex = [&](const PointCode& code) {
        const std::string name = format_point_code(canonicalize(code));
        if (!t.has_vertex(name)) t.add_vertex(name);
        return name;
    };
    for (const Word& w : words_of_length(depth, m)) {
        const PointCode x(w, {1});
        const PointCode y(w, {2});
        const std::string u = vertex(x);
        const std::string v = vertex(y);
        t.add_edge(u, v, distance_exact(x, y, a));
    }
    t.validate();
    return t;
}

struct VertexLevel {
    std::string vertex;
    std::size_t level = 0;
};

// At each (v, n), with v a double point, glues m - 2 copies of the depth-d
// skeleton of T^{m,a} scaled by c * delta^n, each at the image of [1^inf].
inline FiniteGeodesicTree step3_attach(const FiniteGeodesicTree& t, const std::vector<VertexLevel>& vertex_levels,
                                       std::size_t m, const Weight& a, const Rational& delta_value,
                                       const Rational& c, std::size_t depth)
{
    t.validate();
    if (m < 3) throw DomainError("step 3 needs m >= 3");
    if (delta_value <= 0 || delta_value >= Rational(1, 3)) throw DomainError("delta must lie in (0, 1/3)");
    if (c <= 0) throw DomainError("c must be positive");
    if (depth < 1) throw DomainError("truncation depth must be at least 1");
    if (!a.is_infinite() && a.size() < m) throw DomainError("weight has fewer than m letters");
    for (const auto& vl : vertex_levels) {
        if (t.degree(t.index(vl.vertex)) != 2) {
            throw DomainError("vertex '" + vl.vertex + "' is not a double point");
        }
    }
    if (vertex_levels.empty()) return t;
    const FiniteGeodesicTree copy = truncated_tree_skeleton(a.truncated(m), depth);
    const std::string root = format_point_code(PointCode::constant(1));
    GluingSpec spec;
    for (const auto& vl : vertex_levels) {
        const FiniteGeodesicTree scaled = copy.scaled(c * power(delta_value, vl.level));
        for (std::size_t k = 0; k + 2 < m; ++k) spec.attachments.push_back({vl.vertex, scaled, root});
    }
    return geodesic_glue(t, spec);
}

// Stand-in for a decomposition vertex set (not the construction the gluing
// step is designed for): subdivides every edge at distances k * delta^n from
// its first endpoint, n = 1..max_level, and tags each new double point with
// the first level at which it appears.
inline std::pair<FiniteGeodesicTree, std::vector<VertexLevel>> spaced_vertex_levels(const FiniteGeodesicTree& t,
                                                                                    const Rational& delta_value,
                                                                                    std::size_t max_level,
                                                                                    std::size_t guard = 100'000)
{
    t.validate();
    if (delta_value <= 0 || delta_value >= 1) throw DomainError("delta must lie in (0, 1)");
    FiniteGeodesicTree out;
    for (const auto& v : t.vertices()) out.add_vertex(v);
    std::vector<VertexLevel> levels;
    std::size_t created = 0;
    for (const auto& e : t.edges()) {
        std::map<Rational, std::size_t> cuts;  // position -> level
        for (std::size_t n = 1; n <= max_level; ++n) {
            const Rational step = power(delta_value, n);
            for (Rational pos = step; pos < e.length; pos += step) {
                cuts.emplace(pos, n);
                if (++created > guard) throw DomainError("subdivision exceeds the guard of " + std::to_string(guard) + " points");
            }
        }
        std::string prev = t.id(e.u);
        Rational prev_pos = 0;
        for (const auto& [pos, level] : cuts) {
            std::string name = t.id(e.u) + "~" + t.id(e.v) + "@" + format_rational(pos);
            while (out.has_vertex(name)) name += "'";
            out.add_vertex(name);
            out.add_edge(prev, name, pos - prev_pos);
            levels.push_back({name, level});
            prev = name;
            prev_pos = pos;
        }
        out.add_edge(prev, t.id(e.v), e.length - prev_pos);
    }
    return {std::move(out), std::move(levels)};
}

struct TreeConstants {
    std::optional<Rational> separation;
    std::optional<Rational> growth;
    std::optional<Rational> density;
};

// Separation, growth and density of a finite tree measured with the heights
// h_T(p) (third-largest farthest-point branch height):
//   separation C = max over branch points p != q of min(h(p), h(q)) / d(p, q);
//   growth     C = max over branch points of h(p, B_3) / h(p, B_last);
//   density    C = max over point pairs of d(x, y) / max h(p), p a branch point
//                  on [x, y]. Pairs of vertices are used, and each end may also
//                  be taken as the limit of interior points of the first edge
//                  of the path (which drops that end as a branch point). Pairs
//                  whose arc has no branch point are counted as uncovered.
// A fourth check confirms h(p, B) <= diam B <= 2 h(p, B) for every branch and
// h_T(p) <= H_T(p) <= 2 h_T(p) with H_T the diameter-based height.
// Each check passes when its constant is within the supplied bound (or always,
// when no bound is supplied).
inline std::vector<CheckResult> verify_tree_properties(const FiniteGeodesicTree& t, const TreeConstants& bounds = {})
{
    t.validate();
    const std::size_t n = t.size();
    std::vector<std::size_t> bps;
    std::vector<Rational> h(n, -1);
    std::vector<std::vector<Branch>> br(n);
    for (std::size_t p = 0; p < n; ++p) {
        if (!t.is_branch(p)) continue;
        bps.push_back(p);
        br[p] = branches(t, p);
        h[p] = br[p][2].height;
    }
    std::vector<std::vector<Rational>> dist(n);
    for (std::size_t i = 0; i < n; ++i) dist[i] = t.distances_from(i);
    auto judge = [](CheckResult& c, const std::optional<Rational>& bound) {
        c.pass = !bound || c.constant <= *bound;
    };
    std::vector<CheckResult> out;

    {
        CheckResult c{"separation", 0, "no pair of branch points", true};
        for (std::size_t a = 0; a < bps.size(); ++a) {
            for (std::size_t b = a + 1; b < bps.size(); ++b) {
                const std::size_t p = bps[a], q = bps[b];
                const Rational ratio = (h[p] < h[q] ? h[p] : h[q]) / dist[p][q];
                if (ratio > c.constant) {
                    c.constant = ratio;
                    c.witness = t.id(p) + " and " + t.id(q) + ": min h / d = " + format_rational(ratio);
                }
            }
        }
        judge(c, bounds.separation);
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"growth", 0, "no branch points", true};
        for (std::size_t p : bps) {
            const Rational ratio = br[p][2].height / br[p].back().height;
            if (ratio > c.constant) {
                c.constant = ratio;
                c.witness = t.id(p) + ": h(p, B_3) / h(p, B_" + std::to_string(br[p].size()) + ") = " +
                            format_rational(ratio);
            }
        }
        judge(c, bounds.growth);
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"density", 0, "no branch points", true};
        std::uint64_t uncovered = 0;
        std::string worst;
        for (std::size_t x = 0; x < n && !bps.empty(); ++x) {
            // interior[y]: max h over branch points strictly between x and y
            std::vector<Rational> interior(n, -1);
            std::vector<std::size_t> hops(n, 0);
            std::vector<std::tuple<std::size_t, std::size_t>> stack{{x, x}};
            while (!stack.empty()) {
                auto [u, from] = stack.back();
                stack.pop_back();
                for (const auto& [v, len] : t.neighbors(u)) {
                    (void)len;
                    if (v == from) continue;
                    Rational m = interior[u];
                    if (u != x && h[u] > m) m = h[u];
                    interior[v] = m;
                    hops[v] = hops[u] + 1;
                    stack.push_back({v, u});
                }
            }
            for (std::size_t y = x + 1; y < n; ++y) {
                for (int variant = 0; variant < 4; ++variant) {
                    const bool keep_x = !(variant & 1);
                    const bool keep_y = !(variant & 2);
                    if ((!keep_x || !keep_y) && hops[y] < 1) continue;
                    Rational m = interior[y];
                    if (keep_x && h[x] > m) m = h[x];
                    if (keep_y && h[y] > m) m = h[y];
                    if (!keep_x && !keep_y && hops[y] == 1) m = -1;
                    if (m <= 0) {
                        ++uncovered;
                        continue;
                    }
                    const Rational ratio = dist[x][y] / m;
                    if (ratio > c.constant) {
                        c.constant = ratio;
                        worst = t.id(x) + (keep_x ? "" : " (interior limit)") + " and " + t.id(y) +
                                (keep_y ? "" : " (interior limit)") + ": d / max h = " + format_rational(ratio);
                    }
                }
            }
        }
        if (!bps.empty()) c.witness = worst + "; uncovered pairs: " + std::to_string(uncovered);
        judge(c, bounds.density);
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"height comparability", 0, "no branch points", true};
        for (std::size_t p : bps) {
            std::vector<Rational> diams;
            for (const auto& b : br[p]) {
                if (b.height > b.diameter || b.diameter > 2 * b.height) {
                    c.pass = false;
                    c.witness = "branch of " + t.id(p) + " at " + t.id(b.neighbor);
                }
                diams.push_back(b.diameter);
            }
            std::sort(diams.rbegin(), diams.rend());
            const Rational H = diams[2];
            if (H < h[p] || H > 2 * h[p]) {
                c.pass = false;
                c.witness = "heights at " + t.id(p);
            }
            const Rational ratio = H / h[p];
            if (ratio > c.constant) {
                c.constant = ratio;
                if (c.pass) c.witness = t.id(p) + ": H / h = " + format_rational(ratio);
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

// D = 3 (N - 2)(6 C + 1) + 7
inline std::uint64_t doubling_bound(std::uint64_t N, std::uint64_t C)
{
    if (N < 2) throw DomainError("doubling bound needs N >= 2");
    if (C < 1) throw DomainError("doubling bound needs C >= 1");
    return 3 * (N - 2) * (6 * C + 1) + 7;
}

}  // namespace qctree
