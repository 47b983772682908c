#pragma once

// Planar iterated function systems: the quasiconvex trees built from the maps
// psi_j and the Vicsek fractal. Skeletons, sampled Hausdorff distances,
// path lengths along skeletons, separation checks and figure export.
//
// Everything here is binary64; assertions made on these values carry explicit
// tolerances.

#include "qctree/core.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <queue>
#include <unordered_map>

namespace qctree {

using Complex = std::complex<double>;

// z -> scale * e^{i rotation} * (conjugate ? conj(z) : z) + translation
struct PlanarSimilarity {
    double scale = 1.0;
    double rotation = 0.0;
    Complex translation{0.0, 0.0};
    bool conjugate = false;

    Complex operator()(Complex z) const
    {
        if (conjugate) z = std::conj(z);
        return scale * std::polar(1.0, rotation) * z + translation;
    }
};

// (f o g)(z) = f(g(z))
inline PlanarSimilarity compose(const PlanarSimilarity& f, const PlanarSimilarity& g)
{
    PlanarSimilarity h;
    h.scale = f.scale * g.scale;
    h.conjugate = f.conjugate != g.conjugate;
    h.rotation = f.rotation + (f.conjugate ? -g.rotation : g.rotation);
    h.translation = f(g.translation);
    return h;
}

using IFS = std::vector<PlanarSimilarity>;

struct Segment {
    Complex a;
    Complex b;
    double length() const { return std::abs(b - a); }
};

inline Segment apply(const PlanarSimilarity& f, const Segment& s) { return {f(s.a), f(s.b)}; }

inline double csst_like_angle(std::size_t m) { return std::numbers::pi / (3.0 * static_cast<double>(m) - 3.0); }

// Weights a(1) = a(2) = 1/2 and a(j) = sin(theta) / 2 for j >= 3.
inline std::vector<double> csst_like_weights(std::size_t m)
{
    if (m < 3) throw DomainError("the planar tree needs m >= 3");
    std::vector<double> a(m, 0.5);
    for (std::size_t j = 3; j <= m; ++j) a[j - 1] = 0.5 * std::sin(csst_like_angle(m));
    return a;
}

// psi_1(z) = (conj(z) - 1/2) / 2, psi_2(z) = (z + 1/2) / 2 and
// psi_j(z) = a(j) e^{i (3j - 6) theta} (z + 1/2) for j = 3..m.
inline IFS csst_like_ifs(std::size_t m)
{
    const auto a = csst_like_weights(m);
    const double theta = csst_like_angle(m);
    IFS ifs;
    ifs.push_back({0.5, 0.0, Complex(-0.25, 0.0), true});
    ifs.push_back({0.5, 0.0, Complex(0.25, 0.0), false});
    for (std::size_t j = 3; j <= m; ++j) {
        const double rot = (3.0 * static_cast<double>(j) - 6.0) * theta;
        ifs.push_back({a[j - 1], rot, a[j - 1] * std::polar(1.0, rot) * 0.5, false});
    }
    return ifs;
}

// phi_1 .. phi_5 of the Vicsek fractal, all of scale 1/3.
inline IFS vicsek_ifs()
{
    const double s = 1.0 / 3.0;
    return {
        {s, 0.0, Complex(-2.0, -2.0) * s, false},
        {s, 0.0, Complex(-2.0, 2.0) * s, false},
        {s, 0.0, Complex(2.0, 2.0) * s, false},
        {s, 0.0, Complex(2.0, -2.0) * s, false},
        {s, 0.0, Complex(0.0, 0.0), false},
    };
}

// J_0 = [-1/2, 1/2]
inline std::vector<Segment> unit_segment() { return {{Complex(-0.5, 0.0), Complex(0.5, 0.0)}}; }

// The diagonals of [-1, 1]^2 as four half-diagonals from 0.
inline std::vector<Segment> vicsek_generators()
{
    return {
        {Complex(0, 0), Complex(-1, -1)},
        {Complex(0, 0), Complex(-1, 1)},
        {Complex(0, 0), Complex(1, 1)},
        {Complex(0, 0), Complex(1, -1)},
    };
}

// psi_w = psi_{w_1} o ... o psi_{w_k}
inline PlanarSimilarity word_map(const IFS& ifs, const Word& w)
{
    check_letters(w, ifs.size());
    PlanarSimilarity f;
    for (Letter l : w) f = compose(f, ifs[l - 1]);
    return f;
}

inline constexpr std::uint64_t kSegmentGuard = 10'000'000;

// All maps psi_w, |w| = n, in lexicographic word order.
inline std::vector<PlanarSimilarity> level_maps(const IFS& ifs, std::size_t n)
{
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (count > kSegmentGuard / std::max<std::size_t>(1, ifs.size())) {
            throw DomainError("skeleton exceeds the guard of 10^7 segments");
        }
        count *= ifs.size();
    }
    std::vector<PlanarSimilarity> maps{PlanarSimilarity{}};
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<PlanarSimilarity> next;
        next.reserve(maps.size() * ifs.size());
        for (const auto& f : ifs) {
            for (const auto& g : maps) next.push_back(compose(f, g));
        }
        maps = std::move(next);
    }
    return maps;
}

// Images of the generators under all length-n compositions; word order, with
// generators varying fastest.
inline std::vector<Segment> skeleton(const IFS& ifs, const std::vector<Segment>& generators, std::size_t n)
{
    const auto maps = level_maps(ifs, n);
    if (maps.size() * generators.size() > kSegmentGuard) throw DomainError("skeleton exceeds the guard of 10^7 segments");
    std::vector<Segment> out;
    out.reserve(maps.size() * generators.size());
    for (const auto& f : maps) {
        for (const auto& g : generators) out.push_back(apply(f, g));
    }
    return out;
}

// psi_w applied to the level-n skeleton: the skeleton of the tile of w.
inline std::vector<Segment> tile_skeleton(const IFS& ifs, const std::vector<Segment>& generators, const Word& w,
                                          std::size_t n)
{
    const auto f = word_map(ifs, w);
    auto segs = skeleton(ifs, generators, n);
    for (auto& s : segs) s = apply(f, s);
    return segs;
}

// Points along each segment at step length / subdivisions, endpoints included.
inline std::vector<Complex> sample_points(const std::vector<Segment>& segments, std::size_t subdivisions = 16)
{
    std::vector<Complex> out;
    out.reserve(segments.size() * (subdivisions + 1));
    for (const auto& s : segments) {
        for (std::size_t i = 0; i <= subdivisions; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(subdivisions);
            out.push_back(s.a + t * (s.b - s.a));
        }
    }
    return out;
}

// Uniform grid over a point set answering nearest-point queries.
class PointGrid {
public:
    explicit PointGrid(const std::vector<Complex>& points) : points_(points)
    {
        if (points_.empty()) throw DomainError("point set is empty");
        double minx = points_[0].real(), maxx = minx, miny = points_[0].imag(), maxy = miny;
        for (const auto& p : points_) {
            minx = std::min(minx, p.real());
            maxx = std::max(maxx, p.real());
            miny = std::min(miny, p.imag());
            maxy = std::max(maxy, p.imag());
        }
        const double extent = std::max({maxx - minx, maxy - miny, 1e-12});
        const double per_side = std::max(1.0, std::sqrt(static_cast<double>(points_.size())));
        cell_ = extent / per_side;
        for (std::size_t i = 0; i < points_.size(); ++i) cells_[key(points_[i])].push_back(i);
    }

    double nearest_distance(Complex z) const
    {
        const auto [cx, cy] = cell_of(z);
        double best = std::numeric_limits<double>::infinity();
        for (long long r = 0;; ++r) {
            for (long long dx = -r; dx <= r; ++dx) {
                for (long long dy = -r; dy <= r; ++dy) {
                    if (std::max(std::llabs(dx), std::llabs(dy)) != r) continue;
                    auto it = cells_.find(pack(cx + dx, cy + dy));
                    if (it == cells_.end()) continue;
                    for (std::size_t i : it->second) best = std::min(best, std::abs(points_[i] - z));
                }
            }
            // every unvisited cell is at least r * cell_ away
            if (best <= static_cast<double>(r) * cell_) return best;
        }
    }

private:
    std::pair<long long, long long> cell_of(Complex z) const
    {
        return {static_cast<long long>(std::floor(z.real() / cell_)),
                static_cast<long long>(std::floor(z.imag() / cell_))};
    }
    static std::uint64_t pack(long long x, long long y)
    {
        return (static_cast<std::uint64_t>(x) << 32) ^ (static_cast<std::uint64_t>(y) & 0xffffffffULL);
    }
    std::uint64_t key(Complex z) const
    {
        const auto [x, y] = cell_of(z);
        return pack(x, y);
    }

    const std::vector<Complex>& points_;
    double cell_ = 1.0;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

// sup over a in A of the distance from a to B.
inline double directed_hausdorff(const std::vector<Complex>& A, const std::vector<Complex>& B)
{
    if (A.empty() || B.empty()) throw DomainError("Hausdorff distance needs nonempty point sets");
    const PointGrid grid(B);
    double out = 0.0;
    for (const auto& p : A) out = std::max(out, grid.nearest_distance(p));
    return out;
}

// Symmetric Hausdorff distance between finite point sets.
inline double hausdorff_distance(const std::vector<Complex>& A, const std::vector<Complex>& B)
{
    return std::max(directed_hausdorff(A, B), directed_hausdorff(B, A));
}

// Hausdorff distance between segment unions, sampled at step length / 16.
inline double hausdorff_distance(const std::vector<Segment>& A, const std::vector<Segment>& B)
{
    return hausdorff_distance(sample_points(A), sample_points(B));
}

// Segment endpoints merged within `tol`, with the segments as weighted edges.
class SegmentGraph {
public:
    explicit SegmentGraph(const std::vector<Segment>& segments, double tol = 1e-9) : tol_(tol)
    {
        for (const auto& s : segments) {
            const std::size_t u = node(s.a);
            const std::size_t v = node(s.b);
            const double len = s.length();
            adj_[u].push_back({v, len});
            adj_[v].push_back({u, len});
        }
    }

    std::size_t size() const { return nodes_.size(); }
    const std::vector<Complex>& nodes() const { return nodes_; }
    const std::vector<std::pair<std::size_t, double>>& edges_of(std::size_t i) const { return adj_[i]; }

    // Index of the node within tol of z, if any.
    std::optional<std::size_t> find(Complex z) const
    {
        const auto [cx, cy] = cell_of(z);
        for (long long dx = -1; dx <= 1; ++dx) {
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = cells_.find(pack(cx + dx, cy + dy));
                if (it == cells_.end()) continue;
                for (std::size_t i : it->second) {
                    if (std::abs(nodes_[i] - z) <= tol_) return i;
                }
            }
        }
        return std::nullopt;
    }

    // Shortest-path distances from a node (Dijkstra).
    std::vector<double> distances_from(std::size_t source) const
    {
        std::vector<double> dist(nodes_.size(), std::numeric_limits<double>::infinity());
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
        dist[source] = 0.0;
        queue.push({0.0, source});
        while (!queue.empty()) {
            const auto [d, u] = queue.top();
            queue.pop();
            if (d > dist[u]) continue;
            for (const auto& [v, w] : adj_[u]) {
                if (d + w < dist[v]) {
                    dist[v] = d + w;
                    queue.push({dist[v], v});
                }
            }
        }
        return dist;
    }

private:
    std::size_t node(Complex z)
    {
        if (auto i = find(z)) return *i;
        nodes_.push_back(z);
        adj_.emplace_back();
        cells_[pack(cell_of(z).first, cell_of(z).second)].push_back(nodes_.size() - 1);
        return nodes_.size() - 1;
    }
    std::pair<long long, long long> cell_of(Complex z) const
    {
        return {static_cast<long long>(std::floor(z.real() / tol_)), static_cast<long long>(std::floor(z.imag() / tol_))};
    }
    static std::uint64_t pack(long long x, long long y)
    {
        return (static_cast<std::uint64_t>(x) << 32) ^ (static_cast<std::uint64_t>(y) & 0xffffffffULL);
    }

    double tol_;
    std::vector<Complex> nodes_;
    std::vector<std::vector<std::pair<std::size_t, double>>> adj_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

// Length of the shortest path from `from` to `to` along the segments; infinity
// when either point is not an endpoint or the two are not connected.
inline double geodesic_length(const std::vector<Segment>& segments, Complex from, Complex to)
{
    const SegmentGraph g(segments);
    const auto s = g.find(from);
    const auto t = g.find(to);
    if (!s || !t) return std::numeric_limits<double>::infinity();
    return g.distances_from(*s)[*t];
}

// Largest total length of a coarse segment not covered by fine segments lying
// on it (both fine endpoints within tol of the coarse segment).
inline double nesting_defect(const std::vector<Segment>& coarse, const std::vector<Segment>& fine, double tol = 1e-12)
{
    if (fine.empty()) {
        double out = 0.0;
        for (const auto& s : coarse) out = std::max(out, s.length());
        return out;
    }
    double cell = 0.0;
    for (const auto& s : fine) cell = std::max(cell, s.length());
    cell = std::max(cell, 1e-12);
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells;
    auto pack = [](long long x, long long y) {
        return (static_cast<std::uint64_t>(x) << 32) ^ (static_cast<std::uint64_t>(y) & 0xffffffffULL);
    };
    for (std::size_t i = 0; i < fine.size(); ++i) {
        const Complex mid = 0.5 * (fine[i].a + fine[i].b);
        cells[pack(static_cast<long long>(std::floor(mid.real() / cell)),
                   static_cast<long long>(std::floor(mid.imag() / cell)))]
            .push_back(i);
    }
    double worst = 0.0;
    for (const auto& s : coarse) {
        const Complex dir = s.b - s.a;
        const double len = std::abs(dir);
        const long long x0 = static_cast<long long>(std::floor(std::min(s.a.real(), s.b.real()) / cell)) - 1;
        const long long x1 = static_cast<long long>(std::floor(std::max(s.a.real(), s.b.real()) / cell)) + 1;
        const long long y0 = static_cast<long long>(std::floor(std::min(s.a.imag(), s.b.imag()) / cell)) - 1;
        const long long y1 = static_cast<long long>(std::floor(std::max(s.a.imag(), s.b.imag()) / cell)) + 1;
        std::vector<std::pair<double, double>> cover;
        // parameter (along the segment, in length units) and distance off the line
        auto project = [&](Complex z) {
            const Complex rel = (z - s.a) * std::conj(dir) / len;
            return std::make_pair(rel.real(), std::fabs(rel.imag()));
        };
        for (long long cx = x0; cx <= x1; ++cx) {
            for (long long cy = y0; cy <= y1; ++cy) {
                auto it = cells.find(pack(cx, cy));
                if (it == cells.end()) continue;
                for (std::size_t i : it->second) {
                    const auto [ta, da] = project(fine[i].a);
                    const auto [tb, db] = project(fine[i].b);
                    if (da > tol || db > tol) continue;
                    if (std::min(ta, tb) < -tol || std::max(ta, tb) > len + tol) continue;
                    cover.push_back({std::min(ta, tb), std::max(ta, tb)});
                }
            }
        }
        std::sort(cover.begin(), cover.end());
        double reach = 0.0;
        double gap = 0.0;
        for (const auto& [lo, hi] : cover) {
            if (lo > reach + tol) gap += lo - reach;
            reach = std::max(reach, hi);
        }
        if (reach < len - tol) gap += len - reach;
        worst = std::max(worst, gap);
    }
    return worst;
}

// Diameter of a finite point set via its convex hull.
inline double point_set_diameter(std::vector<Complex> pts)
{
    if (pts.size() < 2) return 0.0;
    std::sort(pts.begin(), pts.end(), [](Complex p, Complex q) {
        return p.real() < q.real() || (p.real() == q.real() && p.imag() < q.imag());
    });
    auto cross = [](Complex o, Complex a, Complex b) {
        return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
    };
    std::vector<Complex> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k > 1 ? k - 1 : k);
    double d = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        for (std::size_t j = i + 1; j < hull.size(); ++j) d = std::max(d, std::abs(hull[i] - hull[j]));
    }
    if (hull.size() == 1) d = std::abs(pts.front() - pts.back());
    return d;
}

inline double segments_diameter(const std::vector<Segment>& segments)
{
    std::vector<Complex> pts;
    for (const auto& s : segments) {
        pts.push_back(s.a);
        pts.push_back(s.b);
    }
    return point_set_diameter(std::move(pts));
}

// Diameters of the closures of the components left after removing the
// endpoint p from the segment union, in nonincreasing order.
inline std::vector<double> branch_diameters(const std::vector<Segment>& segments, Complex p)
{
    const SegmentGraph g(segments);
    const auto center = g.find(p);
    if (!center) throw DomainError("point is not a skeleton vertex");
    std::vector<long> component(g.size(), -1);
    std::vector<std::vector<Complex>> members;
    for (const auto& [start, len] : g.edges_of(*center)) {
        (void)len;
        if (component[start] >= 0) continue;
        const long id = static_cast<long>(members.size());
        members.push_back({p});
        std::vector<std::size_t> stack{start};
        component[start] = id;
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            members.back().push_back(g.nodes()[u]);
            for (const auto& [v, w] : g.edges_of(u)) {
                (void)w;
                if (v == *center || component[v] >= 0) continue;
                component[v] = id;
                stack.push_back(v);
            }
        }
    }
    std::vector<double> out;
    for (auto& pts : members) out.push_back(point_set_diameter(std::move(pts)));
    std::sort(out.rbegin(), out.rend());
    return out;
}

struct SeparationResult {
    double min_distance = std::numeric_limits<double>::infinity();
    double min_ratio = std::numeric_limits<double>::infinity();  // distance / max distance to the gate
    Letter tile_i = 0;
    Letter tile_j = 0;
    double threshold = 0.0;
    bool pass = false;
};

// Minimum distance between sampled points of distinct first-letter tiles
// psi_i(J_{n-1}), psi_j(J_{n-1}). With a gate point, samples within 1e-6 of it
// are dropped and the distance is normalized by the larger gate distance; the
// check passes iff that ratio is at least `threshold`. Without a gate, the raw
// minimum distance is compared against `threshold`.
inline SeparationResult separation_check(const IFS& ifs, const std::vector<Segment>& generators, std::size_t n,
                                         std::optional<Complex> gate, double threshold,
                                         std::vector<std::pair<Letter, Letter>> pairs = {})
{
    if (n < 1) throw DomainError("separation depth must be at least 1");
    const auto base = skeleton(ifs, generators, n - 1);
    std::vector<std::vector<Complex>> tiles;
    for (const auto& f : ifs) {
        std::vector<Segment> segs;
        for (const auto& s : base) segs.push_back(apply(f, s));
        auto pts = sample_points(segs);
        if (gate) {
            std::erase_if(pts, [&](Complex z) { return std::abs(z - *gate) < 1e-6; });
        }
        tiles.push_back(std::move(pts));
    }
    if (pairs.empty()) {
        for (Letter i = 1; i <= ifs.size(); ++i) {
            for (Letter j = i + 1; j <= ifs.size(); ++j) pairs.push_back({i, j});
        }
    }
    SeparationResult r;
    r.threshold = threshold;
    for (const auto& [i, j] : pairs) {
        const auto& A = tiles.at(i - 1);
        const auto& B = tiles.at(j - 1);
        if (gate) {
            for (const auto& x : A) {
                for (const auto& y : B) {
                    const double d = std::abs(x - y);
                    const double ratio = d / std::max(std::abs(x - *gate), std::abs(y - *gate));
                    if (ratio < r.min_ratio) {
                        r.min_ratio = ratio;
                        r.tile_i = i;
                        r.tile_j = j;
                    }
                    r.min_distance = std::min(r.min_distance, d);
                }
            }
        } else {
            const PointGrid grid(B);
            for (const auto& x : A) {
                const double d = grid.nearest_distance(x);
                if (d < r.min_distance) {
                    r.min_distance = d;
                    r.tile_i = i;
                    r.tile_j = j;
                }
            }
        }
    }
    r.pass = gate ? r.min_ratio >= threshold : r.min_distance >= threshold;
    return r;
}

// Largest ratio of skeleton path distance to Euclidean distance over pairs of
// sampled skeleton vertices: an empirical lower bound for the bi-Lipschitz
// constant between the two metrics.
inline double path_to_euclidean_ratio(const std::vector<Segment>& segments, std::size_t sources = 8)
{
    const SegmentGraph g(segments);
    if (g.size() < 2) return 1.0;
    double worst = 1.0;
    const std::size_t step = std::max<std::size_t>(1, g.size() / std::max<std::size_t>(1, sources));
    for (std::size_t s = 0; s < g.size(); s += step) {
        const auto dist = g.distances_from(s);
        for (std::size_t t = 0; t < g.size(); ++t) {
            const double e = std::abs(g.nodes()[s] - g.nodes()[t]);
            if (t == s || e < 1e-12 || !std::isfinite(dist[t])) continue;
            worst = std::max(worst, dist[t] / e);
        }
    }
    return worst;
}

// Branch height 3^{-|u|} / sqrt(2) assigned to the branch point [u 5^inf] of the
// Vicsek fractal.
inline double vicsek_branch_height(const Word& u)
{
    check_letters(u, 5);
    return std::pow(3.0, -static_cast<double>(u.size())) / std::sqrt(2.0);
}

namespace detail {

inline std::string format_coordinate(double v)
{
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

inline std::ofstream open_output(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

}  // namespace detail

// SVG with one <line> per segment; the viewBox is the bounding box grown by 5%
// of its larger side on each side. The imaginary axis points up.
inline void render_svg(const std::vector<Segment>& segments, const std::string& path)
{
    auto out = detail::open_output(path);
    double minx = 0, maxx = 1, miny = 0, maxy = 1;
    if (!segments.empty()) {
        minx = maxx = segments[0].a.real();
        miny = maxy = -segments[0].a.imag();
        for (const auto& s : segments) {
            for (const auto& z : {s.a, s.b}) {
                minx = std::min(minx, z.real());
                maxx = std::max(maxx, z.real());
                miny = std::min(miny, -z.imag());
                maxy = std::max(maxy, -z.imag());
            }
        }
    }
    const double margin = 0.05 * std::max({maxx - minx, maxy - miny, 1e-12});
    const double width = maxx - minx + 2 * margin;
    const double height = maxy - miny + 2 * margin;
    using detail::format_coordinate;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_coordinate(minx - margin) << ' '
        << format_coordinate(miny - margin) << ' ' << format_coordinate(width) << ' ' << format_coordinate(height)
        << "\">\n";
    out << "<g stroke=\"black\" stroke-width=\"" << format_coordinate(std::max(width, height) / 1000.0)
        << "\" stroke-linecap=\"round\">\n";
    for (const auto& s : segments) {
        out << "<line x1=\"" << format_coordinate(s.a.real()) << "\" y1=\"" << format_coordinate(-s.a.imag())
            << "\" x2=\"" << format_coordinate(s.b.real()) << "\" y2=\"" << format_coordinate(-s.b.imag())
            << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

// CSV with header x1,y1,x2,y2 and one row per segment, 12 significant digits.
inline void export_csv(const std::vector<Segment>& segments, const std::string& path)
{
    auto out = detail::open_output(path);
    using detail::format_coordinate;
    out << "x1,y1,x2,y2\n";
    for (const auto& s : segments) {
        out << format_coordinate(s.a.real()) << ',' << format_coordinate(s.a.imag()) << ','
            << format_coordinate(s.b.real()) << ',' << format_coordinate(s.b.imag()) << '\n';
    }
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace qctree
