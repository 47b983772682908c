#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace qctree;

namespace {

PointCode code(const std::string& s) { return parse_point_code(s); }

Weight weight_413()
{
    return Weight::finite({Rational(1, 2), Rational(1, 2), Rational(1, 4)});
}

Rational two_to_minus(unsigned k)
{
    return power(Rational(1, 2), k);
}

PointCode with_prefix(const Word& w, const PointCode& x)
{
    return PointCode(concat(w, x.prefix()), x.period());
}

}  // namespace

TEST(ChainLength, Examples)
{
    const Weight a = Weight::uniform(3);
    for (std::size_t n : {1, 2, 5, 17, 30}) {
        EXPECT_EQ(chain_length(code("(1)"), code("(2)"), n, a).value, 1);
    }
    const PointCode x = code("3,1,(2,3)");
    for (std::size_t n : {1, 4, 9}) {
        EXPECT_EQ(chain_length(x, x, n, weight_413()).value, delta(x.truncate(n), weight_413()));
    }
    EXPECT_EQ(chain_length(code("3,(1)"), code("(2)"), 1, a).value, Rational(3, 2));
    EXPECT_EQ(chain_length(code("3,(1)"), code("(2)"), 2, a).value, Rational(1));
    EXPECT_EQ(chain_length(code("3,(1)"), code("(2)"), 3, a).value, Rational(3, 4));
    EXPECT_EQ(distance_exact(code("3,(1)"), code("(2)"), a), Rational(1, 2));
    EXPECT_THROW(chain_length(x, x, 0, a), DomainError);
}

TEST(BoundaryDistance, Examples)
{
    const Weight a = Weight::uniform(3);
    EXPECT_EQ(boundary_distance(code("(2)"), 1, a), 1);
    EXPECT_EQ(boundary_distance(code("1,(2)"), 2, a), Rational(1, 2));
    EXPECT_EQ(boundary_distance(code("(3)"), 1, weight_413()), Rational(2, 3));
    EXPECT_THROW(boundary_distance(code("3,(1)"), 1, a), DomainError);
    EXPECT_THROW(boundary_distance(code("(2)"), 3, a), DomainError);
}

TEST(BoundaryDistance, DerivedValueAgainstChainLimit)
{
    const Weight a = weight_413();
    const Rational chain = chain_length(code("(3)"), code("(1)"), 30, a).value;
    EXPECT_GE(chain, Rational(2, 3));
    EXPECT_LT(chain - Rational(2, 3), two_to_minus(25));
}

TEST(BoundaryDistance, RecurrencesAgainstChainLimit)
{
    std::mt19937_64 rng(21);
    for (const Weight& a : oracle::weight_profiles(4)) {
        for (int t = 0; t < 40; ++t) {
            const PointCode x = random_point_code(rng, 4, 3, 3);
            for (Letter c : {Letter{1}, Letter{2}}) {
                const Rational exact = boundary_distance(x, c, a);
                const Rational chain = chain_length(x, PointCode::constant(c), 30, a).value;
                EXPECT_GE(chain, exact);
                EXPECT_LT(chain - exact, two_to_minus(20)) << format_point_code(x) << " to " << c;
            }
        }
    }
}

TEST(DistanceExact, Examples)
{
    for (const Weight& a : oracle::weight_profiles(4)) {
        EXPECT_EQ(distance_exact(code("(1)"), code("(2)"), a), 1);
    }
    std::mt19937_64 rng(22);
    for (const Weight& a : oracle::weight_profiles(4)) {
        for (int t = 0; t < 50; ++t) {
            const Word u = oracle::random_word(rng, rng() % 4, 4);
            const Letter i = 1 + static_cast<Letter>(rng() % 4);
            const Rational d = distance_exact(branch_code(u), branch_code(concat(u, {i})), a);
            EXPECT_EQ(d, Rational(1, 2) * delta(concat(u, {i}), a));
        }
    }
    const Weight a = Weight::uniform(3);
    EXPECT_EQ(distance_exact(code("1,1,(2)"), code("(1)"), a), Rational(1, 4));
    const Rational chain = chain_length(code("1,1,(2)"), code("(1)"), 30, a).value;
    EXPECT_LT(chain - Rational(1, 4), two_to_minus(25));
}

TEST(DistanceExact, MetricAxioms)
{
    std::mt19937_64 rng(23);
    for (const Weight& a : oracle::weight_profiles(4)) {
        for (int t = 0; t < 150; ++t) {
            const PointCode x = random_point_code(rng, 4, 3, 2);
            const PointCode y = random_point_code(rng, 4, 3, 2);
            const PointCode z = random_point_code(rng, 4, 3, 2);
            const Rational dxy = distance_exact(x, y, a);
            EXPECT_EQ(dxy, distance_exact(y, x, a));
            EXPECT_EQ(dxy == 0, point_equals(x, y));
            EXPECT_LE(dxy, distance_exact(x, z, a) + distance_exact(z, y, a));
            EXPECT_LE(dxy, 1);
        }
    }
}

TEST(DistanceExact, Scaling)
{
    std::mt19937_64 rng(24);
    for (const Weight& a : oracle::weight_profiles(5)) {
        for (int t = 0; t < 100; ++t) {
            const PointCode x = random_point_code(rng, 5, 3, 3);
            const PointCode y = random_point_code(rng, 5, 3, 3);
            const Letter i = 1 + static_cast<Letter>(rng() % 5);
            EXPECT_EQ(distance_exact(with_prefix({i}, x), with_prefix({i}, y), a), a(i) * distance_exact(x, y, a));
        }
    }
}

TEST(ChainLength, UpperBoundAndConvergence)
{
    std::mt19937_64 rng(25);
    for (const Weight& a : oracle::weight_profiles(3)) {
        for (int t = 0; t < 40; ++t) {
            const PointCode x = random_point_code(rng, 3, 3, 3);
            const PointCode y = random_point_code(rng, 3, 3, 3);
            const Rational exact = distance_exact(x, y, a);
            for (std::size_t n : {1, 3, 8}) EXPECT_GE(chain_length(x, y, n, a).value, exact);
            const Rational gap = chain_length(x, y, 30, a).value - exact;
            EXPECT_GE(gap, 0);
            EXPECT_LT(gap, two_to_minus(20)) << format_point_code(x) << " / " << format_point_code(y);
        }
    }
}

TEST(ChainLength, SameTileBound)
{
    std::mt19937_64 rng(26);
    for (const Weight& a : oracle::weight_profiles(4)) {
        for (int t = 0; t < 100; ++t) {
            const Word w = oracle::random_word(rng, rng() % 4, 4);
            const PointCode x = with_prefix(w, random_point_code(rng, 4, 3, 2));
            const PointCode y = with_prefix(w, random_point_code(rng, 4, 3, 2));
            const std::size_t n = w.size() + 1 + rng() % 6;
            const auto chain = chain_length(x, y, n, a);
            ASSERT_TRUE(chain.same_tile_bound.has_value());
            EXPECT_LE(chain.value, *chain.same_tile_bound);
            EXPECT_LE(chain.value, delta(w, a) * (1 + two_to_minus(static_cast<unsigned>(n - w.size()))));
        }
    }
}

TEST(DistanceExact, TileDiameter)
{
    std::mt19937_64 rng(27);
    for (const Weight& a : oracle::weight_profiles(4)) {
        for (int t = 0; t < 60; ++t) {
            const Word w = oracle::random_word(rng, rng() % 4, 4);
            EXPECT_EQ(distance_exact(PointCode(w, {1}), PointCode(w, {2}), a), delta(w, a));
            for (int s = 0; s < 5; ++s) {
                const PointCode x = with_prefix(w, random_point_code(rng, 4, 3, 2));
                const PointCode y = with_prefix(w, random_point_code(rng, 4, 3, 2));
                EXPECT_LE(distance_exact(x, y, a), delta(w, a));
            }
        }
    }
}

TEST(DistanceExact, AdditiveThroughGate)
{
    std::mt19937_64 rng(28);
    const PointCode gate = code("1,(2)");
    for (const Weight& a : oracle::weight_profiles(4)) {
        for (int t = 0; t < 100; ++t) {
            const Letter i = 1 + static_cast<Letter>(rng() % 4);
            Letter j = 1 + static_cast<Letter>(rng() % 4);
            if (j == i) j = j % 4 + 1;
            const PointCode x = with_prefix({i}, random_point_code(rng, 4, 3, 2));
            const PointCode y = with_prefix({j}, random_point_code(rng, 4, 3, 2));
            EXPECT_EQ(distance_exact(x, y, a), distance_exact(x, gate, a) + distance_exact(gate, y, a));
        }
    }
}

TEST(DistanceExact, InfiniteAlphabetTruncation)
{
    const Weight a = Weight::geometric_tail({Rational(1, 2), Rational(1, 2)}, Rational(1, 2), 8);
    EXPECT_EQ(distance_exact(code("(1)"), code("(2)"), a), 1);
    // d([8^inf], [1^inf]) = X solves X = a(8) X + 1/2
    const Rational x = Rational(1, 2) / (1 - a(8));
    EXPECT_EQ(distance_exact(code("(1)"), code("(8)"), a), Rational(1, 2) + a(8) * x);
    EXPECT_THROW(distance_exact(code("(1)"), code("(9)"), a), DomainError);
}
