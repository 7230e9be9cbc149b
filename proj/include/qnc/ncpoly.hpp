#pragma once

// Elements of the coordinate algebra of the quantum 3-sphere, stored in the
// PBW basis
//
//     e_{p,r,s} = z0^p z1^r z1s^s          (p >= 0)
//     e_{p,r,s} = z1^r z1s^s z0s^{-p}      (p <  0)
//
// with exact Laurent-polynomial coefficients.  Products are computed from
// closed-form commutation formulas; the letter-level rewriting engine in
// rewrite.hpp is an independent route to the same normal forms.

#include "qnc/error.hpp"
#include "qnc/laurent.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qnc {

struct Monomial {
    int p = 0;  ///< z0 exponent; negative means (z0s)^{-p}
    int r = 0;  ///< z1 exponent
    int s = 0;  ///< z1s exponent

    auto operator<=>(const Monomial&) const = default;
};

/// Weighted charge p k + (r - s) l.  A monomial lies in the degree-n
/// spectral subspace for the (k,l) circle action iff its charge is -n k l.
constexpr int charge(const Monomial& m, int k, int l) noexcept { return m.p * k + (m.r - m.s) * l; }

constexpr Monomial star(const Monomial& m) noexcept { return Monomial{-m.p, m.s, m.r}; }

inline constexpr std::size_t kDefaultMaxTerms = 1'000'000;

class NCPoly {
public:
    using Terms = std::map<Monomial, LaurentPoly>;

    NCPoly() = default;
    NCPoly(const LaurentPoly& scalar) { add_term(Monomial{}, scalar); }  // NOLINT
    NCPoly(long long scalar) : NCPoly(LaurentPoly(scalar)) {}             // NOLINT

    static NCPoly basis(const Monomial& m, const LaurentPoly& c = 1)
    {
        NCPoly x;
        x.add_term(m, c);
        return x;
    }
    static NCPoly z0() { return basis({1, 0, 0}); }
    static NCPoly z0s() { return basis({-1, 0, 0}); }
    static NCPoly z1() { return basis({0, 1, 0}); }
    static NCPoly z1s() { return basis({0, 0, 1}); }
    /// b = z1 z1s, which equals z1s z1.
    static NCPoly b() { return basis({0, 1, 1}); }

    void add_term(const Monomial& m, const LaurentPoly& c)
    {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    LaurentPoly coeff(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? LaurentPoly{} : it->second;
    }

    NCPoly& operator+=(const NCPoly& o)
    {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    NCPoly& operator-=(const NCPoly& o)
    {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    NCPoly& operator*=(const LaurentPoly& c)
    {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }

    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator-(NCPoly a) { return a *= LaurentPoly(-1); }
    friend NCPoly operator*(NCPoly a, const LaurentPoly& c) { return a *= c; }
    friend NCPoly operator*(const LaurentPoly& c, NCPoly a) { return a *= c; }
    friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

namespace detail {

/// Coefficients (in b) of z0^a z0s^a = prod_{m=0}^{a-1} (1 - q^{2m} b).
inline std::vector<LaurentPoly> z0_z0s_product(int a)
{
    std::vector<LaurentPoly> poly{LaurentPoly(1)};
    for (int m = 0; m < a; ++m) {
        std::vector<LaurentPoly> next(poly.size() + 1);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j] += poly[j];
            next[j + 1] -= poly[j].shifted(2 * m);
        }
        poly = std::move(next);
    }
    return poly;
}

/// Coefficients (in b) of z0s^a z0^a = prod_{m=1}^{a} (1 - q^{-2m} b).
inline std::vector<LaurentPoly> z0s_z0_product(int a)
{
    std::vector<LaurentPoly> poly{LaurentPoly(1)};
    for (int m = 1; m <= a; ++m) {
        std::vector<LaurentPoly> next(poly.size() + 1);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j] += poly[j];
            next[j + 1] -= poly[j].shifted(-2 * m);
        }
        poly = std::move(next);
    }
    return poly;
}

/// Accumulates coeff * e_x * e_y into out.  Uses, with X = z1^r z1s^s and
/// t = r + s:
///   X z0^a     = q^{-a t} z0^a X
///   z0s^c X    = q^{-c t} X z0s^c
///   f(b) z0^a  = z0^a f(q^{-2a} b)
///   z0s^c f(b) = f(q^{-2c} b) z0s^c
inline void accumulate_basis_product(const Monomial& x, const Monomial& y, const LaurentPoly& coeff,
                                     NCPoly& out)
{
    const int tx = x.r + x.s;
    const int ty = y.r + y.s;
    const int R = x.r + y.r;
    const int S = x.s + y.s;
    const int T = R + S;

    if (x.p >= 0 && y.p >= 0) {
        out.add_term({x.p + y.p, R, S}, coeff.shifted(-y.p * tx));
        return;
    }
    if (x.p <= 0 && y.p <= 0) {
        out.add_term({x.p + y.p, R, S}, coeff.shifted(x.p * ty));
        return;
    }
    if (x.p > 0) {
        // z0^a X z0s^c = q^{c T} z0^a z0s^c X
        const int a = x.p;
        const int c = -y.p;
        if (a >= c) {
            const auto poly = z0_z0s_product(c);
            for (std::size_t j = 0; j < poly.size(); ++j) {
                const int jj = static_cast<int>(j);
                out.add_term({a - c, R + jj, S + jj}, coeff * poly[j].shifted(c * T));
            }
        } else {
            const auto poly = z0_z0s_product(a);
            for (std::size_t j = 0; j < poly.size(); ++j) {
                const int jj = static_cast<int>(j);
                out.add_term({a - c, R + jj, S + jj}, coeff * poly[j].shifted(a * T));
            }
        }
        return;
    }
    // x.p < 0 < y.p:  X1 z0s^c z0^a X2
    const int c = -x.p;
    const int a = y.p;
    if (c >= a) {
        const int e = c - a;
        const auto poly = z0s_z0_product(a);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            const int jj = static_cast<int>(j);
            out.add_term({-e, R + jj, S + jj}, coeff * poly[j].shifted(-2 * e * jj - e * ty));
        }
    } else {
        const int e = a - c;
        const auto poly = z0s_z0_product(c);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            const int jj = static_cast<int>(j);
            out.add_term({e, R + jj, S + jj}, coeff * poly[j].shifted(-e * (tx + 2 * jj)));
        }
    }
}

}  // namespace detail

/// Product in normal form.  Throws ResourceError once the accumulated
/// result exceeds max_terms monomials.
inline NCPoly multiply(const NCPoly& x, const NCPoly& y, std::size_t max_terms = kDefaultMaxTerms)
{
    NCPoly out;
    for (const auto& [mx, cx] : x.terms()) {
        for (const auto& [my, cy] : y.terms()) {
            detail::accumulate_basis_product(mx, my, cx * cy, out);
            if (out.size() > max_terms)
                throw ResourceError("NCPoly product exceeds " + std::to_string(max_terms) + " monomials");
        }
    }
    return out;
}

inline NCPoly operator*(const NCPoly& x, const NCPoly& y) { return multiply(x, y); }

inline NCPoly power(const NCPoly& x, unsigned n)
{
    NCPoly result = 1;
    for (unsigned i = 0; i < n; ++i) result = multiply(result, x);
    return result;
}

/// Involution.  q is a real parameter, so coefficients are fixed.
inline NCPoly star(const NCPoly& x)
{
    NCPoly out;
    for (const auto& [m, c] : x.terms()) out.add_term(star(m), c);
    return out;
}

/// Keeps the monomials of charge -n k l.
inline NCPoly spectral_projection(const NCPoly& x, int n, int k, int l)
{
    NCPoly out;
    for (const auto& [m, c] : x.terms())
        if (charge(m, k, l) == -n * k * l) out.add_term(m, c);
    return out;
}

/// True iff every monomial has charge divisible by d k l, i.e. x lies in
/// the coordinate algebra of the lens space L_q(dlk; k, l).
inline bool lens_membership(const NCPoly& x, int k, int l, int d)
{
    if (d < 1) throw DomainError("lens_membership: d must be >= 1");
    const int modulus = d * k * l;
    for (const auto& [m, c] : x.terms())
        if (charge(m, k, l) % modulus != 0) return false;
    return true;
}

/// Common charge of all monomials, or nullopt if x is not homogeneous.
/// The zero element is reported with charge 0.
inline std::optional<int> homogeneous_charge(const NCPoly& x, int k, int l)
{
    std::optional<int> result;
    for (const auto& [m, c] : x.terms()) {
        const int ch = charge(m, k, l);
        if (result && *result != ch) return std::nullopt;
        result = ch;
    }
    return result.value_or(0);
}

/// The basis element with z0s^{-p} leftmost, z0s^{-p} z1^r z1s^s, which
/// equals q^{p(r+s)} e_{p,r,s} for p < 0 and e_{p,r,s} otherwise.
inline NCPoly leftmost_basis_element(const Monomial& m)
{
    return NCPoly::basis(m, LaurentPoly::q_power(m.p < 0 ? m.p * (m.r + m.s) : 0));
}

/// Canonical text: "z0^p z1^r z1s^s", p < 0 rendered as z0s^{-p}, unit as "1".
inline std::string to_string(const Monomial& m)
{
    std::ostringstream os;
    bool any = false;
    auto factor = [&](const char* name, int e) {
        if (e == 0) return;
        if (any) os << ' ';
        os << name << '^' << e;
        any = true;
    };
    if (m.p >= 0) factor("z0", m.p);
    factor("z1", m.r);
    factor("z1s", m.s);
    if (m.p < 0) factor("z0s", -m.p);
    return any ? os.str() : "1";
}

/// Canonical text "coeff * monomial + ..." in monomial order.
inline std::string to_string(const NCPoly& x)
{
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : x.terms()) {
        if (!first) os << " + ";
        first = false;
        os << '(' << c.to_string() << ") * " << to_string(m);
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const NCPoly& x) { return os << to_string(x); }

inline int checked_gcd(int k, int l)
{
    if (k < 1 || l < 1) throw DomainError("weights k, l must be positive");
    return std::gcd(k, l);
}

inline void require_coprime(int k, int l)
{
    if (checked_gcd(k, l) != 1)
        throw DomainError("weights k=" + std::to_string(k) + ", l=" + std::to_string(l) + " are not coprime");
}

}  // namespace qnc
