#pragma once

// Words over a finite (or truncated infinite) alphabet, weights, eventually
// periodic point codes and the diameter function.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qctree {

using Rational = mpq_class;
using Letter = std::uint32_t;
using Word = std::vector<Letter>;

// Raised when an argument is outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

// Parses "p/q" or "p". Throws DomainError on malformed input or zero denominator.
inline Rational parse_rational(const std::string& text)
{
    std::string t;
    for (char ch : text) {
        if (ch != ' ' && ch != '\t') t.push_back(ch);
    }
    const auto valid = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i >= s.size()) return false;
        return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    const auto slash = t.find('/');
    const std::string num = t.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!valid(num) || !valid(den)) throw DomainError("malformed rational: '" + text + "'");
    mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
    mpz_class d(den[0] == '+' ? den.substr(1) : den, 10);
    if (d == 0) throw DomainError("zero denominator in rational: '" + text + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

// Always "p/q", including integers ("1/1").
inline std::string format_rational(const Rational& r)
{
    Rational c = r;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Fixed-point decimal rendering with the given number of places.
inline std::string format_decimal(const Rational& r, int places = 12)
{
    mpz_class scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    Rational scaled = r * scale;
    // round half away from zero
    mpz_class num = scaled.get_num();
    mpz_class den = scaled.get_den();
    const bool negative = num < 0;
    if (negative) num = -num;
    mpz_class q = (2 * num + den) / (2 * den);
    std::string digits = q.get_str();
    if (static_cast<int>(digits.size()) <= places) {
        digits.insert(0, static_cast<std::size_t>(places + 1 - static_cast<int>(digits.size())), '0');
    }
    std::string out = digits.substr(0, digits.size() - static_cast<std::size_t>(places));
    if (places > 0) out += "." + digits.substr(digits.size() - static_cast<std::size_t>(places));
    return (negative && q != 0 ? "-" : "") + out;
}

inline Rational power(const Rational& base, std::size_t exponent)
{
    Rational result = 1;
    for (std::size_t i = 0; i < exponent; ++i) result *= base;
    return result;
}

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

// A nonincreasing weight a with a(1) = a(2) = 1/2 and 0 < a(i) <= 1/2.
//
// Finite alphabets store a(1..m). Infinite alphabets store an explicit head
// a(1..k) and a geometric tail a(j) = a(k) * r^(j-k) for j > k; every
// enumeration over an infinite alphabet stops at the truncation cap.
class Weight {
public:
    static Weight finite(std::vector<Rational> values)
    {
        Weight w;
        w.values_ = std::move(values);
        w.validate();
        return w;
    }

    static Weight uniform(std::size_t m)
    {
        return finite(std::vector<Rational>(m, Rational(1, 2)));
    }

    static Weight geometric_tail(std::vector<Rational> head, Rational ratio, std::size_t cap)
    {
        Weight w;
        w.values_ = std::move(head);
        w.tail_ratio_ = std::move(ratio);
        w.cap_ = cap;
        w.validate();
        return w;
    }

    bool is_infinite() const { return tail_ratio_.has_value(); }

    // Alphabet size used for enumeration: m, or the truncation cap.
    std::size_t size() const { return is_infinite() ? cap_ : values_.size(); }

    const std::vector<Rational>& head() const { return values_; }
    const std::optional<Rational>& tail_ratio() const { return tail_ratio_; }

    // a(i), 1-based.
    Rational operator()(Letter i) const
    {
        if (i == 0) throw DomainError("letter 0 is outside the alphabet");
        if (i <= values_.size()) return values_[i - 1];
        if (!is_infinite()) {
            throw DomainError("letter " + std::to_string(i) + " exceeds alphabet size " +
                              std::to_string(values_.size()));
        }
        return values_.back() * power(*tail_ratio_, i - values_.size());
    }

    double value(Letter i) const { return (*this)(i).get_d(); }

    // The weight restricted to the letters 1..m.
    Weight truncated(std::size_t m) const
    {
        std::vector<Rational> v;
        for (Letter i = 1; i <= m; ++i) v.push_back((*this)(i));
        return finite(std::move(v));
    }

private:
    void validate()
    {
        for (auto& v : values_) v.canonicalize();
        if (tail_ratio_) tail_ratio_->canonicalize();
        if (values_.size() < 2) throw DomainError("a weight needs at least the letters 1 and 2");
        if (values_[0] != Rational(1, 2) || values_[1] != Rational(1, 2)) {
            throw DomainError("a weight must satisfy a(1) = a(2) = 1/2");
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (values_[i] <= 0 || values_[i] > Rational(1, 2)) {
                throw DomainError("weight a(" + std::to_string(i + 1) + ") must lie in (0, 1/2]");
            }
            if (i > 0 && values_[i] > values_[i - 1]) {
                throw DomainError("weight must be nonincreasing at index " + std::to_string(i + 1));
            }
        }
        if (tail_ratio_) {
            if (*tail_ratio_ <= 0 || *tail_ratio_ >= 1) {
                throw DomainError("tail ratio must lie in (0, 1)");
            }
            if (cap_ < 2) throw DomainError("truncation cap must be at least 2");
        }
    }

    std::vector<Rational> values_;
    std::optional<Rational> tail_ratio_;
    std::size_t cap_ = 0;
};

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

inline void check_letters(const Word& w, std::size_t m)
{
    for (Letter l : w) {
        if (l == 0 || l > m) {
            throw DomainError("letter " + std::to_string(l) + " outside alphabet {1.." +
                              std::to_string(m) + "}");
        }
    }
}

// Delta(w) = a(i_1) * ... * a(i_k); Delta(empty) = 1.
inline Rational delta(const Word& w, const Weight& a)
{
    Rational r = 1;
    for (Letter l : w) r *= a(l);
    return r;
}

inline Word repeat(Letter letter, std::size_t count) { return Word(count, letter); }

inline Word concat(Word u, const Word& v)
{
    u.insert(u.end(), v.begin(), v.end());
    return u;
}

// All words of length k over {1..m} in lexicographic order.
inline std::vector<Word> words_of_length(std::size_t k, std::size_t m)
{
    std::vector<Word> out;
    Word w(k, 1);
    while (true) {
        out.push_back(w);
        std::size_t i = k;
        while (i > 0 && w[i - 1] == m) {
            w[i - 1] = 1;
            --i;
        }
        if (i == 0) break;
        ++w[i - 1];
    }
    return out;
}

// Comma-separated letters; the empty string is the empty word.
inline std::string format_word(const Word& w)
{
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s;
}

inline Word parse_word(const std::string& text)
{
    Word w;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        token.erase(std::remove_if(token.begin(), token.end(), [](char c) { return c == ' '; }),
                    token.end());
        if (token.empty()) {
            if (text.find_first_not_of(' ') == std::string::npos) break;
            throw DomainError("empty letter in word '" + text + "'");
        }
        if (!std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw DomainError("malformed letter '" + token + "' in word '" + text + "'");
        }
        const unsigned long v = std::stoul(token);
        if (v == 0) throw DomainError("letters start at 1 in word '" + text + "'");
        w.push_back(static_cast<Letter>(v));
    }
    return w;
}

// ---------------------------------------------------------------------------
// Point codes
// ---------------------------------------------------------------------------

// An eventually periodic infinite word prefix * period^infinity, kept in normal
// form: the period is minimal and the prefix never ends with the last letter of
// the period (such a letter is rolled into the period by rotation).
class PointCode {
public:
    PointCode(Word prefix, Word period) : prefix_(std::move(prefix)), period_(std::move(period))
    {
        if (period_.empty()) throw DomainError("point code needs a nonempty period");
        for (Letter l : prefix_) {
            if (l == 0) throw DomainError("letters start at 1");
        }
        for (Letter l : period_) {
            if (l == 0) throw DomainError("letters start at 1");
        }
        normalize();
    }

    // c^infinity
    static PointCode constant(Letter c) { return PointCode({}, {c}); }

    const Word& prefix() const { return prefix_; }
    const Word& period() const { return period_; }

    Letter at(std::size_t i) const
    {
        if (i < prefix_.size()) return prefix_[i];
        return period_[(i - prefix_.size()) % period_.size()];
    }

    // The length-n truncation x(n).
    Word truncate(std::size_t n) const
    {
        Word w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = at(i);
        return w;
    }

    // The code with its first k letters removed.
    PointCode shifted(std::size_t k) const
    {
        if (k <= prefix_.size()) return PointCode(Word(prefix_.begin() + static_cast<std::ptrdiff_t>(k), prefix_.end()), period_);
        const std::size_t r = (k - prefix_.size()) % period_.size();
        Word rotated(period_.begin() + static_cast<std::ptrdiff_t>(r), period_.end());
        rotated.insert(rotated.end(), period_.begin(), period_.begin() + static_cast<std::ptrdiff_t>(r));
        return PointCode({}, rotated);
    }

    // u * x
    PointCode prepended(const Word& u) const { return PointCode(concat(u, prefix_), period_); }

    void check_alphabet(std::size_t m) const
    {
        check_letters(prefix_, m);
        check_letters(period_, m);
    }

    friend bool operator==(const PointCode&, const PointCode&) = default;
    friend auto operator<=>(const PointCode& x, const PointCode& y)
    {
        if (auto c = x.prefix_ <=> y.prefix_; c != 0) return c;
        return x.period_ <=> y.period_;
    }

private:
    void normalize()
    {
        const std::size_t n = period_.size();
        for (std::size_t d = 1; d < n; ++d) {
            if (n % d) continue;
            bool periodic = true;
            for (std::size_t i = d; i < n && periodic; ++i) periodic = period_[i] == period_[i - d];
            if (periodic) {
                period_.resize(d);
                break;
            }
        }
        while (!prefix_.empty() && prefix_.back() == period_.back()) {
            prefix_.pop_back();
            std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
        }
    }

    Word prefix_;
    Word period_;
};

// Rewrites u*j*1^inf (j >= 2) to u*1*2^inf; every other code is returned as is.
// The result is the unique representative of the equivalence class.
inline PointCode canonicalize(const PointCode& x)
{
    if (x.period() == Word{1} && !x.prefix().empty() && x.prefix().back() >= 2) {
        Word u = x.prefix();
        u.back() = 1;
        return PointCode(std::move(u), {2});
    }
    return x;
}

inline bool is_canonical(const PointCode& x) { return canonicalize(x) == x; }

inline bool point_equals(const PointCode& x, const PointCode& y)
{
    return canonicalize(x) == canonicalize(y);
}

// Text syntax: "1,1,2,(3)" is 112 * 3^inf, "(1)" is 1^inf, "1,(2,3)" is 1 * (23)^inf.
inline PointCode parse_point_code(const std::string& text)
{
    const auto open = text.find('(');
    const auto close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open ||
        text.find_first_not_of(" \t", close + 1) != std::string::npos) {
        throw DomainError("point code needs a parenthesized period: '" + text + "'");
    }
    std::string head = text.substr(0, open);
    while (!head.empty() && (head.back() == ' ' || head.back() == ',')) head.pop_back();
    const Word prefix = parse_word(head);
    const Word period = parse_word(text.substr(open + 1, close - open - 1));
    if (period.empty()) throw DomainError("empty period in point code '" + text + "'");
    return PointCode(prefix, period);
}

inline std::string format_point_code(const PointCode& x)
{
    std::string s = format_word(x.prefix());
    if (!s.empty()) s += ',';
    return s + "(" + format_word(x.period()) + ")";
}

}  // namespace qctree
