#pragma once

// Principal-bundle certificates for the weighted circle action on the
// quantum 3-sphere, their d-th powers and the associated line idempotents.

#include "qnc/error.hpp"
#include "qnc/laurent.hpp"
#include "qnc/ncpoly.hpp"
#include "qnc/rewrite.hpp"

#include <string>
#include <vector>

namespace qnc {

/// Univariate polynomial sum_j c[j] X^j with Laurent coefficients.
using UniPoly = std::vector<LaurentPoly>;

namespace detail {

inline UniPoly product_of_linear(const std::vector<LaurentPoly>& roots_coeff, int sign)
{
    // prod_i (1 + sign * roots_coeff[i] X)
    UniPoly poly{LaurentPoly(1)};
    for (const auto& c : roots_coeff) {
        UniPoly next(poly.size() + 1);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j] += poly[j];
            if (sign > 0) next[j + 1] += poly[j] * c;
            else next[j + 1] -= poly[j] * c;
        }
        poly = std::move(next);
    }
    return poly;
}

/// (1 - P(X)) / X for P with constant term 1.
inline UniPoly one_minus_over_x(const UniPoly& p)
{
    if (p.empty() || !(p[0] == LaurentPoly(1))) throw InternalError("one_minus_over_x: constant term is not 1");
    UniPoly out;
    for (std::size_t j = 1; j < p.size(); ++j) out.push_back(-p[j]);
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

}  // namespace detail

/// F(X) = (1 - prod_{m=1}^l (1 - q^{-2m} X)) / X.
inline UniPoly poly_F(int l)
{
    if (l < 1) throw DomainError("poly_F: l must be >= 1");
    std::vector<LaurentPoly> c;
    for (int m = 1; m <= l; ++m) c.push_back(LaurentPoly::q_power(-2 * m));
    return detail::one_minus_over_x(detail::product_of_linear(c, -1));
}

/// F~(X) = (1 - prod_{m=0}^{l-1} (1 - q^{2m} X)) / X.
inline UniPoly poly_Ftilde(int l)
{
    if (l < 1) throw DomainError("poly_Ftilde: l must be >= 1");
    std::vector<LaurentPoly> c;
    for (int m = 0; m < l; ++m) c.push_back(LaurentPoly::q_power(2 * m));
    return detail::one_minus_over_x(detail::product_of_linear(c, -1));
}

/// G(X) = (1 - (1 - X)^k) / X.
inline UniPoly poly_G(int k)
{
    if (k < 1) throw DomainError("poly_G: k must be >= 1");
    return detail::one_minus_over_x(detail::product_of_linear(std::vector<LaurentPoly>(k, LaurentPoly(1)), -1));
}

/// p(x) by Horner's rule in the algebra.
inline NCPoly evaluate(const UniPoly& p, const NCPoly& x)
{
    NCPoly acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = multiply(acc, x);
        acc += NCPoly(*it);
    }
    return acc;
}

inline std::string to_string(const UniPoly& p, std::string_view var = "X")
{
    std::string out;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + p[j].to_string() + ")";
        if (j > 0) out += "*" + std::string(var) + (j > 1 ? "^" + std::to_string(j) : "");
    }
    return out.empty() ? "0" : out;
}

struct BundleCertificate {
    int k = 1;
    int l = 1;
    int degree = 1;  ///< d for a d-th power certificate
    std::vector<NCPoly> xi;
    std::vector<NCPoly> eta;
    std::vector<NCPoly> alpha;
    std::vector<NCPoly> beta;
};

inline BundleCertificate bundle_generators(int k, int l)
{
    require_coprime(k, l);
    const auto uk = static_cast<unsigned>(k);
    const auto ul = static_cast<unsigned>(l);
    const NCPoly b = NCPoly::b();
    const NCPoly z1k = power(NCPoly::z1(), uk);
    const NCPoly z1sk = power(NCPoly::z1s(), uk);
    const NCPoly z0l = power(NCPoly::z0(), ul);
    const NCPoly z0sl = power(NCPoly::z0s(), ul);

    BundleCertificate c;
    c.k = k;
    c.l = l;
    c.xi = {multiply(z1sk, power(evaluate(poly_F(l), b), uk)),
            multiply(z0sl, evaluate(poly_G(k), multiply(z0l, z0sl)))};
    c.eta = {z1k, z0l};
    c.alpha = {multiply(z1k, power(evaluate(poly_Ftilde(l), b), uk)),
               multiply(z0l, evaluate(poly_G(k), multiply(z0sl, z0l)))};
    c.beta = {z1sk, z0sl};
    return c;
}

inline NCPoly sum_xi_eta(const BundleCertificate& c)
{
    if (c.xi.size() != c.eta.size()) throw DomainError("certificate: xi/eta size mismatch");
    NCPoly s;
    for (std::size_t j = 0; j < c.xi.size(); ++j) s += multiply(c.xi[j], c.eta[j]);
    return s;
}

inline NCPoly sum_alpha_beta(const BundleCertificate& c)
{
    if (c.alpha.size() != c.beta.size()) throw DomainError("certificate: alpha/beta size mismatch");
    NCPoly s;
    for (std::size_t i = 0; i < c.alpha.size(); ++i) s += multiply(c.alpha[i], c.beta[i]);
    return s;
}

inline bool verify_partition_of_unity(const BundleCertificate& c)
{
    const NCPoly one = 1;
    return sum_xi_eta(c) == one && sum_alpha_beta(c) == one;
}

/// True iff xi, beta sit in charge -d k l and eta, alpha in charge +d k l.
inline bool verify_charges(const BundleCertificate& c)
{
    const int target = c.degree * c.k * c.l;
    auto all = [&](const std::vector<NCPoly>& v, int ch) {
        for (const auto& x : v) {
            if (x.is_zero()) continue;
            const auto h = homogeneous_charge(x, c.k, c.l);
            if (!h || *h != ch) return false;
        }
        return true;
    };
    return all(c.xi, -target) && all(c.eta, target) && all(c.alpha, target) && all(c.beta, -target);
}

/// xi_J = xi_{j1} ... xi_{jd}, eta_J = eta_{jd} ... eta_{j1}, likewise for
/// alpha_I and beta_I.  Multi-indices are enumerated lexicographically.
inline BundleCertificate power_certificate(const BundleCertificate& c, int d)
{
    if (d < 1) throw DomainError("power_certificate: d must be >= 1");
    auto expand = [d](const std::vector<NCPoly>& left, const std::vector<NCPoly>& right,
                      std::vector<NCPoly>& out_left, std::vector<NCPoly>& out_right) {
        const std::size_t n = left.size();
        std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
        while (true) {
            NCPoly l = 1;
            NCPoly r = 1;
            for (std::size_t t = 0; t < idx.size(); ++t) {
                l = multiply(l, left[idx[t]]);
                r = multiply(r, right[idx[idx.size() - 1 - t]]);
            }
            out_left.push_back(std::move(l));
            out_right.push_back(std::move(r));
            std::size_t pos = idx.size();
            while (pos > 0 && ++idx[pos - 1] == n) idx[--pos] = 0;
            if (pos == 0) break;
        }
    };
    BundleCertificate out;
    out.k = c.k;
    out.l = c.l;
    out.degree = c.degree * d;
    expand(c.xi, c.eta, out.xi, out.eta);
    expand(c.alpha, c.beta, out.alpha, out.beta);
    return out;
}

using NCMatrix = std::vector<std::vector<NCPoly>>;

inline NCMatrix matmul(const NCMatrix& x, const NCMatrix& y)
{
    const std::size_t n = x.size();
    const std::size_t inner = y.size();
    const std::size_t m = inner ? y[0].size() : 0;
    NCMatrix out(n, std::vector<NCPoly>(m));
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].size() != inner) throw DomainError("matmul: shape mismatch");
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t t = 0; t < inner; ++t) out[i][j] += multiply(x[i][t], y[t][j]);
    }
    return out;
}

/// E_{ij} = eta_i xi_j for sign +1, beta_i alpha_j for sign -1.
inline NCMatrix line_idempotent(const BundleCertificate& c, int sign)
{
    if (sign != 1 && sign != -1) throw DomainError("line_idempotent: sign must be +1 or -1");
    const auto& left = sign > 0 ? c.eta : c.beta;
    const auto& right = sign > 0 ? c.xi : c.alpha;
    NCMatrix e(left.size(), std::vector<NCPoly>(right.size()));
    for (std::size_t i = 0; i < left.size(); ++i)
        for (std::size_t j = 0; j < right.size(); ++j) e[i][j] = multiply(left[i], right[j]);
    return e;
}

inline bool is_idempotent(const NCMatrix& e) { return matmul(e, e) == e; }

/// Coefficient of Y^m in prod_{i=1}^l (1 + q^{2(i-1)} Y), divided by q^{m(m-1)}.
inline LaurentPoly q_binomial(int l, int m)
{
    if (l < 0 || m < 0 || m > l) throw DomainError("q_binomial: need 0 <= m <= l");
    std::vector<LaurentPoly> c;
    for (int i = 1; i <= l; ++i) c.push_back(LaurentPoly::q_power(2 * (i - 1)));
    const UniPoly gen = detail::product_of_linear(c, +1);
    return gen[static_cast<std::size_t>(m)].shifted(-m * (m - 1));
}

/// sum_m (-1)^m q^{m(m-1)} {l,m} (1 - q^{-2ml}) b^m.
inline NCPoly commutator_expansion(int l)
{
    NCPoly out;
    for (int m = 0; m <= l; ++m) {
        LaurentPoly c = q_binomial(l, m).shifted(m * (m - 1)) * (LaurentPoly(1) - LaurentPoly::q_power(-2 * m * l));
        if (m % 2) c = -c;
        out.add_term({0, m, m}, c);
    }
    return out;
}

namespace detail {

inline Word repeat(Letter x, int n) { return Word(static_cast<std::size_t>(n), x); }

/// prod over the given exponents e of (1 - q^e b), expanded in b.
inline NCPoly b_product(const std::vector<int>& exponents)
{
    NCPoly out = 1;
    for (int e : exponents) out = multiply(out, NCPoly(1) - NCPoly::basis({0, 1, 1}, LaurentPoly::q_power(e)));
    return out;
}

}  // namespace detail

/// [z0^l, z0s^l] via the rewriting engine against the q-binomial sum.
inline bool commutator_expansion_check(int l)
{
    if (l < 1) throw DomainError("commutator_expansion_check: l must be >= 1");
    const Word fwd = concat(detail::repeat(Letter::z0, l), detail::repeat(Letter::z0s, l));
    const Word bwd = concat(detail::repeat(Letter::z0s, l), detail::repeat(Letter::z0, l));
    const NCPoly lhs = normal_form(fwd) - normal_form(bwd);
    const NCPoly via_multiply = multiply(power(NCPoly::z0(), l), power(NCPoly::z0s(), l)) -
                                multiply(power(NCPoly::z0s(), l), power(NCPoly::z0(), l));
    const NCPoly rhs = commutator_expansion(l);
    return lhs == rhs && via_multiply == rhs;
}

/// z0s^l z0^l = prod_{m=1}^l (1 - q^{-2m} b), z0^l z0s^l = prod_{m=0}^{l-1}
/// (1 - q^{2m} z1s z1) and z0 b = q^2 b z0, all through the rewriting engine.
inline bool wq_commutation_check(int l)
{
    if (l < 1) throw DomainError("wq_commutation_check: l must be >= 1");
    std::vector<int> lower, upper;
    for (int m = 1; m <= l; ++m) lower.push_back(-2 * m);
    for (int m = 0; m < l; ++m) upper.push_back(2 * m);

    const NCPoly sz = normal_form(concat(detail::repeat(Letter::z0s, l), detail::repeat(Letter::z0, l)));
    const NCPoly zs = normal_form(concat(detail::repeat(Letter::z0, l), detail::repeat(Letter::z0s, l)));

    // (1 - q^{2m} z1s z1) with z1s z1 taken through the rewriter as well.
    NCPoly upper_prod = 1;
    for (int e : upper) {
        WordPoly factor;
        add_term(factor, {}, 1);
        add_term(factor, {Letter::z1s, Letter::z1}, -LaurentPoly::q_power(e));
        upper_prod = multiply(upper_prod, normal_form(factor));
    }

    WordPoly pull;
    add_term(pull, {Letter::z0, Letter::z1, Letter::z1s}, 1);
    add_term(pull, {Letter::z1, Letter::z1s, Letter::z0}, -LaurentPoly::q_power(2));

    return sz == detail::b_product(lower) && zs == upper_prod && normal_form(pull).is_zero();
}

struct IdentityCheck {
    std::string name;
    bool passed = false;
};

/// Defining identities of the weighted projective line subalgebra with
/// a = z0^l z1s^k and b = z1 z1s, checked through both the closed-form
/// product and the rewriting engine.
inline std::vector<IdentityCheck> verify_wq_relations(int k, int l)
{
    require_coprime(k, l);
    using L = Letter;
    const Word a = concat(detail::repeat(L::z0, l), detail::repeat(L::z1s, k));
    const Word as = star(a);
    const Word b = {L::z1, L::z1s};

    std::vector<int> lower, upper;
    for (int m = 1; m <= l; ++m) lower.push_back(-2 * m);
    for (int m = 0; m < l; ++m) upper.push_back(2 * m);
    const NCPoly bk = NCPoly::basis({0, k, k});

    const NCPoly A = product_of_letters(a);
    const NCPoly As = product_of_letters(as);
    const NCPoly B = NCPoly::b();

    std::vector<IdentityCheck> out;
    {
        const NCPoly lhs = normal_form(concat(b, a));
        const NCPoly rhs = normal_form(concat(a, b), LaurentPoly::q_power(-2 * l));
        const NCPoly lhs_m = multiply(B, A);
        const NCPoly rhs_m = multiply(A, B) * LaurentPoly::q_power(-2 * l);
        out.push_back({"wq.ba=q^-2l.ab", lhs == rhs && lhs_m == rhs_m && lhs == lhs_m});
    }
    {
        const NCPoly rhs = multiply(bk, detail::b_product(upper)) * LaurentPoly::q_power(2 * k * l);
        out.push_back({"wq.aa*", normal_form(concat(a, as)) == rhs && multiply(A, As) == rhs});
    }
    {
        const NCPoly rhs = multiply(bk, detail::b_product(lower));
        out.push_back({"wq.a*a", normal_form(concat(as, a)) == rhs && multiply(As, A) == rhs});
    }
    {
        const NCPoly bb = B;
        out.push_back({"wq.b=b*", star(bb) == bb && normal_form(b) == bb});
    }
    return out;
}

}  // namespace qnc
