#pragma once

// Exact Laurent polynomials in a formal real parameter q with
// arbitrary-precision integer coefficients.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <utility>

namespace qnc {

using BigInt = boost::multiprecision::cpp_int;

/// Element of Z[q, q^-1].  Zero coefficients are never stored, so two
/// polynomials are equal iff their term maps are equal.
class LaurentPoly {
public:
    using Terms = std::map<int, BigInt>;

    LaurentPoly() = default;
    LaurentPoly(long long c) { add_term(0, BigInt(c)); }  // NOLINT: implicit scalar
    LaurentPoly(const BigInt& c) { add_term(0, c); }      // NOLINT

    static LaurentPoly monomial(const BigInt& c, int exponent)
    {
        LaurentPoly r;
        r.add_term(exponent, c);
        return r;
    }
    static LaurentPoly q_power(int exponent) { return monomial(1, exponent); }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    BigInt coeff(int exponent) const
    {
        auto it = terms_.find(exponent);
        return it == terms_.end() ? BigInt(0) : it->second;
    }
    int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    void add_term(int exponent, const BigInt& c)
    {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(exponent, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o)
    {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o)
    {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    LaurentPoly& operator*=(const LaurentPoly& o)
    {
        *this = *this * o;
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(const LaurentPoly& a)
    {
        LaurentPoly r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    /// Multiplication by q^shift.
    LaurentPoly shifted(int shift) const
    {
        if (shift == 0) return *this;
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e + shift, c);
        return r;
    }

    /// Substitution q -> q^factor (factor > 0).
    LaurentPoly rescaled(int factor) const
    {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e * factor, c);
        return r;
    }

    double evaluate(double q) const
    {
        long double acc = 0.0L;
        for (const auto& [e, c] : terms_)
            acc += c.convert_to<long double>() * std::pow(static_cast<long double>(q), e);
        return static_cast<double>(acc);
    }

    /// Sum of |c| q^e; bounds the rounding of evaluate().
    double evaluate_abs(double q) const
    {
        long double acc = 0.0L;
        for (const auto& [e, c] : terms_)
            acc += abs(c).convert_to<long double>() * std::pow(static_cast<long double>(q), e);
        return static_cast<double>(acc);
    }

    /// Canonical text form with ascending exponents, e.g. "q^-1 + 1 - 2*q^2".
    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            BigInt mag = abs(c);
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            if (e == 0) {
                os << mag;
                continue;
            }
            if (mag != 1) os << mag << "*";
            os << "q";
            if (e != 1) os << "^" << e;
        }
        return os.str();
    }

private:
    Terms terms_;
};

inline LaurentPoly pow(const LaurentPoly& base, unsigned n)
{
    LaurentPoly result = 1;
    LaurentPoly b = base;
    while (n) {
        if (n & 1U) result *= b;
        n >>= 1U;
        if (n) b *= b;
    }
    return result;
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

}  // namespace qnc
