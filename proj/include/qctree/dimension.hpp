#pragma once

// The Moran function Psi(t) = a(1)^t + ... + a(m)^t, its root Psi(s) = 1, and a
// certified test of Psi_infinity(s) < 1 for weights with a geometric tail.

#include "qctree/core.hpp"

#include <cmath>

namespace qctree {

inline double psi(std::size_t m, const Weight& a, double t)
{
    if (!(t > 0)) throw DomainError("psi needs t > 0");
    double sum = 0.0;
    for (Letter i = 1; i <= m; ++i) sum += std::pow(a.value(i), t);
    return sum;
}

struct MoranSolution {
    double exponent = 0.0;
    double residual = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    int iterations = 0;
};

// Bisection for Psi(s) = 1 on [1, 1 + log m / log 2]: at most 64 halvings,
// stopping early once the midpoint no longer splits the bracket. Throws when
// the final residual exceeds tol.
inline MoranSolution moran_dimension(std::size_t m, const Weight& a, double tol = 1e-12)
{
    if (m < 2) throw DomainError("alphabet size must be at least 2");
    if (!a.is_infinite() && m > a.size()) throw DomainError("weight has fewer than m letters");
    MoranSolution s;
    s.lo = 1.0;
    s.hi = 1.0 + std::log(static_cast<double>(m)) / std::log(2.0);
    for (; s.iterations < 64; ++s.iterations) {
        const double mid = 0.5 * (s.lo + s.hi);
        if (mid <= s.lo || mid >= s.hi) break;
        if (psi(m, a, mid) >= 1.0) {
            s.lo = mid;
        } else {
            s.hi = mid;
        }
    }
    s.exponent = 0.5 * (s.lo + s.hi);
    s.residual = std::fabs(psi(m, a, s.exponent) - 1.0);
    if (s.residual > tol) {
        throw DomainError("Moran bisection residual " + std::to_string(s.residual) + " exceeds tolerance");
    }
    return s;
}

struct DimensionCertificate {
    bool certified = false;
    double partial_sum = 0.0;  // sum over the explicit letters
    double tail_bound = 0.0;   // bound for the remaining letters (0 for finite alphabets)
    double total = 0.0;
};

// Whether sum_j a(j)^s < 1 over the whole alphabet. For a geometric tail
// a(j) = a(k) r^(j-k), j > k, the tail sum is a(k)^s r^s / (1 - r^s). The total
// is compared against 1 with a margin covering the floating point rounding.
inline DimensionCertificate dimension_bound_infinity(const Weight& a, double s)
{
    if (!(s > 0)) throw DomainError("exponent s must be positive");
    DimensionCertificate c;
    const auto& head = a.head();
    for (const auto& v : head) c.partial_sum += std::pow(v.get_d(), s);
    if (a.is_infinite()) {
        const double r = std::pow(a.tail_ratio()->get_d(), s);
        if (!(r < 1.0)) throw DomainError("tail is not boundable: ratio^s >= 1");
        c.tail_bound = std::pow(head.back().get_d(), s) * r / (1.0 - r);
    }
    c.total = c.partial_sum + c.tail_bound;
    const double margin = 64 * 1e-16 * static_cast<double>(head.size() + 2);
    c.certified = c.total + margin < 1.0;
    return c;
}

}  // namespace qctree
