#pragma once

// Random finite trees shared by the gluing tests and the acceptance binary.

#include "qctree/qctree.hpp"

#include <random>

namespace qctree::corpus {

// A random tree on n vertices "v0".."v{n-1}": vertex i > 0 hangs from a
// uniformly chosen earlier vertex, with edge length k/8 for k in 1..8.
inline FiniteGeodesicTree random_tree(std::mt19937_64& rng, std::size_t n)
{
    FiniteGeodesicTree t;
    std::uniform_int_distribution<int> eighths(1, 8);
    for (std::size_t i = 0; i < n; ++i) {
        t.add_vertex("v" + std::to_string(i));
        if (i == 0) continue;
        std::uniform_int_distribution<std::size_t> parent(0, i - 1);
        t.add_edge("v" + std::to_string(parent(rng)), "v" + std::to_string(i), Rational(eighths(rng), 8));
    }
    return t;
}

inline std::size_t max_degree(const FiniteGeodesicTree& t)
{
    std::size_t out = 0;
    for (std::size_t i = 0; i < t.size(); ++i) out = std::max(out, t.degree(i));
    return out;
}

// The corpus: `count` trees with 2..max_vertices vertices and at least one
// branch point.
inline std::vector<FiniteGeodesicTree> trees(std::size_t count, std::size_t max_vertices, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size(6, max_vertices);
    std::vector<FiniteGeodesicTree> out;
    while (out.size() < count) {
        FiniteGeodesicTree t = random_tree(rng, size(rng));
        if (max_degree(t) >= 3) out.push_back(std::move(t));
    }
    return out;
}

struct PipelineReport {
    FiniteGeodesicTree after_step1;
    FiniteGeodesicTree after_step2;
    std::size_t m = 0;
    bool m_valent = true;
    bool equal_heights_beyond_two = true;  // after step 1, at every branch point of valence >= 4
    bool heights_kept = true;              // step 2 keeps the step-1 heights at pre-existing branch points
    bool heights_not_decreased = true;     // step 1 never lowers a branch height
    bool tree_shape = true;                // |E| = |V| - 1 and connected after each step
    std::string failure;
};

// Step 1 then step 2 with m the largest valence (at least 3), and the
// postconditions of both steps.
inline PipelineReport run_pipeline(const FiniteGeodesicTree& t)
{
    PipelineReport r;
    r.m = std::max<std::size_t>(3, max_degree(t));
    r.after_step1 = step1_uniform_growth(t);
    r.after_step2 = step2_uniform_valence(r.after_step1, r.m);
    for (const auto* tree : {&r.after_step1, &r.after_step2}) {
        try {
            tree->validate();
        } catch (const DomainError& e) {
            r.tree_shape = false;
            r.failure = e.what();
        }
    }
    for (std::size_t p = 0; p < t.size(); ++p) {
        if (!t.is_branch(p)) continue;
        const std::string& id = t.id(p);
        const auto before = branch_heights(t, id);
        const auto mid = branch_heights(r.after_step1, id);
        const auto after = branch_heights(r.after_step2, id);
        for (std::size_t j = 0; j < before.size(); ++j) {
            if (mid[j] < before[j]) {
                r.heights_not_decreased = false;
                r.failure = "step 1 lowered a height at " + id;
            }
        }
        for (std::size_t j = 2; j < mid.size(); ++j) {
            if (mid[j] != mid[2]) {
                r.equal_heights_beyond_two = false;
                r.failure = "unequal heights beyond index 2 at " + id + ": " + format_rational(mid[j]) + " vs " +
                            format_rational(mid[2]);
            }
        }
        for (std::size_t j = 0; j < mid.size(); ++j) {
            if (after[j] != mid[j]) {
                r.heights_kept = false;
                r.failure = "step 2 changed a height at " + id;
            }
        }
    }
    for (std::size_t p = 0; p < r.after_step2.size(); ++p) {
        if (r.after_step2.is_branch(p) && r.after_step2.degree(p) != r.m) {
            r.m_valent = false;
            r.failure = "valence " + std::to_string(r.after_step2.degree(p)) + " at " + r.after_step2.id(p);
        }
    }
    return r;
}

}  // namespace qctree::corpus
