// Acceptance run: one PASS/FAIL line per criterion, with the measured values
// and wall time. Exit status 0 iff every criterion passes.

#include "gluing_corpus.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace qctree;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int digits = 6)
{
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

// Runs one criterion; the budget is part of the criterion.
bool criterion(int number, const std::string& title, double budget_seconds, const std::function<Outcome()>& body)
{
    const auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = seconds_since(start);
    const bool in_budget = elapsed < budget_seconds;
    const bool pass = o.pass && in_budget;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << number << ". " << title << ": " << o.detail << " ["
              << fmt(elapsed, 3) << " s, budget " << fmt(budget_seconds) << " s"
              << (in_budget ? "" : ", over budget") << "]" << std::endl;
    return pass;
}

std::vector<Weight> weights_up_to_six()
{
    std::vector<Weight> out;
    for (std::size_t m = 2; m <= 6; ++m) {
        for (auto& a : oracle::weight_profiles(m)) out.push_back(std::move(a));
    }
    out.push_back(Weight::geometric_tail({Rational(1, 2), Rational(1, 2)}, Rational(1, 2), 6));
    return out;
}

Outcome anchor_distance()
{
    const PointCode ones = PointCode::constant(1);
    const PointCode twos = PointCode::constant(2);
    Outcome o;
    double slowest = 0.0;
    std::size_t count = 0;
    for (const Weight& a : weights_up_to_six()) {
        const auto start = Clock::now();
        const Rational d = distance_exact(ones, twos, a);
        slowest = std::max(slowest, seconds_since(start));
        ++count;
        if (d != 1) {
            o.pass = false;
            o.detail = "d = " + format_rational(d) + " for m = " + std::to_string(a.size());
            return o;
        }
    }
    o.pass = slowest < 1e-3;
    o.detail = "d = 1/1 for all " + std::to_string(count) + " weights, slowest call " + fmt(slowest * 1e3, 3) + " ms";
    return o;
}

Outcome branch_distance_formula()
{
    std::size_t checked = 0;
    for (std::size_t m = 2; m <= 4; ++m) {
        for (const Weight& a : oracle::weight_profiles(m)) {
            for (const Word& u : words_up_to(3, m)) {
                for (Letter i = 1; i <= m; ++i) {
                    const Word ui = concat(u, {i});
                    const Rational d = distance_exact(branch_code(u), branch_code(ui), a);
                    ++checked;
                    if (d != Rational(1, 2) * delta(ui, a)) {
                        return {false, "stem [" + format_word(u) + "], i = " + std::to_string(i) + ": d = " +
                                           format_rational(d)};
                    }
                }
            }
        }
    }
    return {true, std::to_string(checked) + " exact equalities"};
}

Outcome separation_bound()
{
    std::string detail;
    bool pass = true;
    for (std::size_t m = 3; m <= 4; ++m) {
        const auto profiles = oracle::weight_profiles(m);
        for (std::size_t k = 0; k < 2; ++k) {
            const auto r = verify_separation(3, profiles[k]);
            pass = pass && r.pass;
            detail += (detail.empty() ? "" : "; ") + std::string("m = ") + std::to_string(m) + " profile " +
                      std::to_string(k) + ": " + std::to_string(r.pairs) + " pairs, min ratio " +
                      format_rational(r.min_ratio);
        }
    }
    return {pass, detail};
}

Outcome graph_structure()
{
    for (std::size_t m = 2; m <= 4; ++m) {
        for (std::size_t k = 1; k <= 4; ++k) {
            const auto rep = verify_tree_structure(k, m);
            const std::size_t mk = static_cast<std::size_t>(std::pow(m, k));
            if (!rep.pass || rep.vertices != mk || rep.edges != mk - 1) {
                return {false, "structure of G_" + std::to_string(k) + " for m = " + std::to_string(m)};
            }
            const auto edges = oracle::inductive_edges(k, m);
            std::set<oracle::Edge> closed_form;
            const auto words = words_of_length(k, m);
            for (std::size_t i = 0; i < words.size(); ++i) {
                for (std::size_t j = i + 1; j < words.size(); ++j) {
                    if (adjacent(words[i], words[j])) closed_form.insert(oracle::ordered(words[i], words[j]));
                }
            }
            if (closed_form != edges) {
                return {false, "closed form differs from E_" + std::to_string(k) + " for m = " + std::to_string(m)};
            }
            if (arc(Word(k, 1), Word(k, 2)).size() != (std::size_t{1} << k)) {
                return {false, "|arc(1^k, 2^k)| != 2^k at k = " + std::to_string(k)};
            }
            std::size_t longest = 0;
            for (const Word& w : words) {
                for (const Word& u : words) longest = std::max(longest, arc_vertex_count(w, u));
            }
            // the longest arc needs the letter 3, absent when m = 2
            const std::size_t expected = m >= 3 ? (std::size_t{1} << k) + 1 : (std::size_t{1} << k);
            if (longest != expected) {
                return {false, "longest arc " + std::to_string(longest) + " at k = " + std::to_string(k) +
                                   ", m = " + std::to_string(m)};
            }
        }
    }
    return {true, "k <= 4, m in 2..4: m^k vertices, m^k - 1 edges, connected, E_k matches, "
                  "longest arc 2^k + 1 (m >= 3), |arc(1^k, 2^k)| = 2^k"};
}

Outcome chain_convergence()
{
    std::mt19937_64 rng(5150);
    const Weight a = Weight::uniform(3);
    const Rational limit = power(Rational(1, 2), 20);
    Rational worst = 0;
    std::size_t pairs = 0;
    while (pairs < 50) {
        const PointCode x = random_point_code(rng, 3, 3, 3);
        const PointCode y = random_point_code(rng, 3, 3, 3);
        if (x == y) continue;
        ++pairs;
        const Rational gap = chain_length(x, y, 30, a).value - distance_exact(x, y, a);
        if (gap < 0) return {false, "chain below exact distance for " + format_point_code(x) + ", " + format_point_code(y)};
        if (gap > worst) worst = gap;
    }
    return {worst < limit, "50 pairs, largest gap " + fmt(worst.get_d(), 4) + " (limit 2^-20 = " +
                               fmt(limit.get_d(), 4) + ")"};
}

Outcome moran_exponents()
{
    const double s2 = moran_dimension(2, Weight::uniform(2)).exponent;
    const double s4 = moran_dimension(4, Weight::uniform(4)).exponent;
    const double s3 = moran_dimension(3, Weight::uniform(3)).exponent;
    const Weight tail = Weight::geometric_tail({Rational(1, 2), Rational(1, 2)}, Rational(1, 2), 16);
    const auto cert = dimension_bound_infinity(tail, 1.5);
    const bool pass = std::fabs(s2 - 1) <= 1e-10 && std::fabs(s4 - 2) <= 1e-10 &&
                      std::fabs(s3 - std::log(3.0) / std::log(2.0)) <= 1e-10 && cert.certified;
    return {pass, "s(2) = " + fmt(s2, 15) + ", s(4) = " + fmt(s4, 15) + ", s(3) = " + fmt(s3, 15) +
                      ", sum a(j)^1.5 <= " + fmt(cert.total, 12) + (cert.certified ? " < 1" : " not < 1")};
}

Outcome skeleton_isometry()
{
    double worst_length = 0.0;
    double worst_nesting = 0.0;
    for (std::size_t m = 3; m <= 5; ++m) {
        const IFS ifs = csst_like_ifs(m);
        auto previous = skeleton(ifs, unit_segment(), 0);
        for (std::size_t n = 0; n <= 6; ++n) {
            const double len = geodesic_length(previous, Complex(-0.5, 0), Complex(0.5, 0));
            worst_length = std::max(worst_length, std::fabs(len - 1.0));
            if (n == 6) break;
            auto next = skeleton(ifs, unit_segment(), n + 1);
            worst_nesting = std::max(worst_nesting, nesting_defect(previous, next));
            previous = std::move(next);
        }
    }
    return {worst_length <= 1e-9 && worst_nesting <= 1e-12,
            "max |length - 1| = " + fmt(worst_length, 3) + " (tol 1e-9), max uncovered length " +
                fmt(worst_nesting, 3) + " (tol 1e-12)"};
}

Outcome vicsek()
{
    const IFS f = vicsek_ifs();
    const auto gens = vicsek_generators();
    double diam_error = 0.0;
    double measured_ratio = 0.0;
    for (std::size_t n = 0; n <= 5; ++n) {
        for (const Word& w : {Word(n, 1), Word(n, 5)}) {
            const double measured = segments_diameter(tile_skeleton(f, gens, w, 1));
            const double target = std::sqrt(2.0) * std::pow(3.0, -static_cast<double>(n));
            diam_error = std::max(diam_error, std::fabs(measured - target));
            measured_ratio = measured / target;
        }
    }
    double formula_error = 0.0;
    double height_error = 0.0;
    const auto segs = skeleton(f, gens, 3);
    for (const Word& u : words_up_to(3, 5)) {
        const double target = std::pow(3.0, -static_cast<double>(u.size())) / std::sqrt(2.0);
        formula_error = std::max(formula_error, std::fabs(vicsek_branch_height(u) - target));
        // [u 5^inf] with u ending in 5 is the point of a shorter stem
        if (!u.empty() && u.back() == 5) continue;
        const auto diam = branch_diameters(segs, word_map(f, u)(Complex(0, 0)));
        height_error = std::max(height_error, std::fabs(diam.at(3) - target));
    }
    const bool pass = diam_error <= 1e-9 && formula_error <= 1e-9 && height_error <= 1e-9;
    return {pass, "tile diameter error " + fmt(diam_error, 4) + " (measured / target = " + fmt(measured_ratio, 12) +
                      "), formula height error " + fmt(formula_error, 3) + ", measured fourth-branch diameter error " +
                      fmt(height_error, 4) + " (tol 1e-9)"};
}

// Five-case check of one gluing on `samples` random vertex pairs.
bool five_cases_hold(const FiniteGeodesicTree& X, const GluingSpec& spec, std::mt19937_64& rng, std::size_t samples)
{
    const auto r = geodesic_glue_traced(X, spec);
    std::uniform_int_distribution<std::size_t> pick(0, r.tree.size() - 1);
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t x = pick(rng);
        const std::size_t y = pick(rng);
        if (tree_distance(r.tree, r.tree.id(x), r.tree.id(y)) != glued_distance(X, spec, r.origin[x], r.origin[y])) {
            return false;
        }
    }
    return true;
}

Outcome gluing_pipeline()
{
    std::mt19937_64 rng(99);
    std::size_t index = 0;
    std::size_t glued = 0;
    for (const auto& t : corpus::trees(20, 40, 20240601)) {
        const auto r = corpus::run_pipeline(t);
        const std::string where = "tree " + std::to_string(index++) + ": ";
        if (!r.tree_shape || !r.m_valent || !r.equal_heights_beyond_two || !r.heights_kept ||
            !r.heights_not_decreased) {
            return {false, where + r.failure};
        }
        const auto checks = verify_tree_properties(r.after_step2, {std::nullopt, Rational(1), std::nullopt});
        if (!checks[1].pass) return {false, where + "growth " + checks[1].witness};
        if (!five_cases_hold(t, step1_plan(t), rng, 100) ||
            !five_cases_hold(r.after_step1, step2_plan(r.after_step1, r.m), rng, 100)) {
            return {false, where + "gluing metric differs from the five cases"};
        }
        glued += r.after_step2.size() - t.size();
    }
    return {true, "20 trees: m-valent, growth constant 1, equal heights beyond index 2, heights kept, "
                  "|E| = |V| - 1, five-case metric on 100 pairs per step (" +
                      std::to_string(glued) + " vertices added)"};
}

Outcome hausdorff_nesting()
{
    std::string detail;
    bool pass = true;
    for (const Weight& a5 : oracle::weight_profiles(5)) {
        const Weight a3 = a5.truncated(3);
        const auto big = branch_codes(branch_points(4, a5));
        const auto small = branch_codes(branch_points(4, a3));
        const Rational excess = asymmetric_excess(big, small, a5);
        const Rational bound = std::max(a5(4), a5(5)) + power(Rational(1, 2), 4);
        pass = pass && excess <= bound;
        detail += (detail.empty() ? "" : "; ") + std::string("excess ") + format_rational(excess) + " <= " +
                  format_rational(bound);
    }
    return {pass, detail};
}

}  // namespace

int main()
{
    std::cout << "qctree acceptance (threads: " << thread_count() << ")" << std::endl;
    bool all = true;
    all &= criterion(1, "exact distance anchor d([1^inf], [2^inf]) = 1", 1.0, anchor_distance);
    all &= criterion(2, "branch-distance formula (1/2) Delta(ui)", 5.0, branch_distance_formula);
    all &= criterion(3, "separation bound (1/2) min Delta", 30.0, separation_bound);
    all &= criterion(4, "graph structure of G_k", 60.0, graph_structure);
    all &= criterion(5, "chain convergence at n = 30", 30.0, chain_convergence);
    all &= criterion(6, "Moran exponents and infinite-alphabet certificate", 1.0, moran_exponents);
    all &= criterion(7, "planar skeleton isometry and nesting", 60.0, skeleton_isometry);
    all &= criterion(8, "Vicsek tile diameters sqrt(2) 3^-n and branch heights 3^-|u| / sqrt(2)", 10.0, vicsek);
    all &= criterion(9, "gluing pipeline step 1 then step 2", 60.0, gluing_pipeline);
    all &= criterion(10, "Hausdorff nesting of T^3 in T^5 at level 4", 60.0, hausdorff_nesting);
    std::cout << (all ? "all criteria pass" : "some criteria fail") << std::endl;
    return all ? 0 : 1;
}
