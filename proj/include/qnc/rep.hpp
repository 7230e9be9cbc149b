#pragma once

// Truncated representations pi_s of the quantum weighted projective line
// on l^2(N_0), diagonal functional calculus and the projection P.
//
// Every matrix entry comes from a closed form written in integer
// exponents of q.  Differences such as 1 - q^{2j} are exactly zero when
// j = 0, which keeps the boundary entries of a and P exact.

#include "qnc/error.hpp"
#include "qnc/ncpoly.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace qnc {

struct RepParams {
    int k = 1;
    int l = 1;
    int s = 1;
    double q = 0.5;
    int N = 128;

    void validate() const
    {
        require_coprime(k, l);
        if (s < 1 || s > l) throw DomainError("RepParams: s must lie in 1..l");
        if (!(q > 0.0 && q < 1.0)) throw DomainError("RepParams: q must lie in (0,1)");
        if (N < 8) throw DomainError("RepParams: N must be >= 8");
    }

    /// Residual checks skip the last guard() indices.
    int guard() const noexcept { return std::max(2 * l, 2 * k); }
    /// Exponent e_p with pi_s(b) e_p = q^{2 e_p} e_p.
    int level(int p) const noexcept { return s + l * p; }
};

struct TruncOp {
    Eigen::MatrixXd m;
    int band_offset = 0;  ///< nonzero entries sit at (i, i + band_offset)
    std::string provenance;
};

/// q^e for integer e.
inline double qpow(double q, int e) { return std::pow(q, e); }

/// 1 - q^{2j}; exactly zero at j = 0.
inline double one_minus_q2(double q, int j) { return j == 0 ? 0.0 : 1.0 - qpow(q, 2 * j); }

namespace detail {

/// F(q^{2e}) = sum_{m=1}^l q^{-2m} prod_{i=1}^{m-1} (1 - q^{2(e-i)}).
inline double F_at_level(double q, int l, int e)
{
    double sum = 0.0, prod = 1.0;
    for (int m = 1; m <= l; ++m) {
        sum += qpow(q, -2 * m) * prod;
        prod *= one_minus_q2(q, e - m);
    }
    return sum;
}

/// 1 - prod_{m=1}^l (1 - q^{2(e-m)}), which equals q^{2e} F(q^{2e}).
inline double bF_at_level(double q, int l, int e)
{
    double sum = 0.0, prod = 1.0;
    for (int m = 1; m <= l; ++m) {
        sum += qpow(q, 2 * (e - m)) * prod;
        prod *= one_minus_q2(q, e - m);
    }
    return sum;
}

/// Y_e = prod_{m=0}^{l-1} (1 - q^{2(e+m)}).
inline double Y_at_level(double q, int l, int e)
{
    double prod = 1.0;
    for (int m = 0; m < l; ++m) prod *= one_minus_q2(q, e + m);
    return prod;
}

/// 1 - Y_e = sum_{m=0}^{l-1} q^{2(e+m)} prod_{i<m} (1 - q^{2(e+i)}).
inline double one_minus_Y_at_level(double q, int l, int e)
{
    double sum = 0.0, prod = 1.0;
    for (int m = 0; m < l; ++m) {
        sum += qpow(q, 2 * (e + m)) * prod;
        prod *= one_minus_q2(q, e + m);
    }
    return sum;
}

/// G(Y) = sum_{j<k} (1 - Y)^j, in terms of u = 1 - Y.
inline double G_from_one_minus(double u, int k)
{
    double sum = 0.0, pw = 1.0;
    for (int j = 0; j < k; ++j) {
        sum += pw;
        pw *= u;
    }
    return sum;
}

inline double checked_root(double radicand, double exponent, const char* what)
{
    if (radicand < -1e-13) throw InternalError(std::string("negative radicand in ") + what);
    return std::pow(std::max(radicand, 0.0), exponent);
}

/// Weight of a on e_p: q^{k e_p} prod_{m=1}^l sqrt(1 - q^{2(e_p - m)}).
inline double a_weight(const RepParams& rp, int p)
{
    const int e = rp.level(p);
    double w = qpow(rp.q, rp.k * e);
    for (int m = 1; m <= rp.l; ++m) w *= checked_root(one_minus_q2(rp.q, e - m), 0.5, "rep_a");
    return w;
}

}  // namespace detail

inline TruncOp rep_b(const RepParams& rp)
{
    rp.validate();
    TruncOp op{Eigen::MatrixXd::Zero(rp.N, rp.N), 0, "b"};
    for (int p = 0; p < rp.N; ++p) op.m(p, p) = qpow(rp.q, 2 * rp.level(p));
    return op;
}

/// a e_p = w_p e_{p-1}, a e_0 = 0.
inline TruncOp rep_a(const RepParams& rp)
{
    rp.validate();
    TruncOp op{Eigen::MatrixXd::Zero(rp.N, rp.N), 1, "a"};
    for (int p = 1; p < rp.N; ++p) op.m(p - 1, p) = detail::a_weight(rp, p);
    return op;
}

inline TruncOp adjoint(const TruncOp& x)
{
    return TruncOp{x.m.transpose(), -x.band_offset, x.provenance + "*"};
}

/// Letters of the weighted projective line words.  chi selects the
/// eigenspace of b with eigenvalue q^{2e}.
struct WqLetter {
    enum class Kind { a, a_star, b, p, chi };
    Kind kind = Kind::a;
    int index = 0;  ///< r for p_r, e for chi_e
};

struct WqWord {
    double prefactor = 1.0;
    std::vector<WqLetter> letters;
};

/// Parses e.g. "a* a", "0.5 * b b p2", "chi3 a".  Tokens: a, a*, b, p<r>,
/// chi<e>; an optional leading "<number> *" sets the prefactor.
inline WqWord parse_wq_word(std::string_view text)
{
    WqWord w;
    std::istringstream is{std::string(text)};
    std::vector<std::string> toks;
    for (std::string t; is >> t;) toks.push_back(t);
    std::size_t i = 0;
    if (toks.size() >= 2 && toks[1] == "*") {
        try {
            std::size_t used = 0;
            w.prefactor = std::stod(toks[0], &used);
            if (used != toks[0].size()) throw DomainError("bad prefactor");
        } catch (const std::exception&) {
            throw DomainError("malformed prefactor '" + toks[0] + "'");
        }
        i = 2;
    }
    auto parse_index = [](const std::string& tok, std::size_t skip) {
        const std::string digits = tok.substr(skip);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw DomainError("malformed letter '" + tok + "'");
        return std::stoi(digits);
    };
    for (; i < toks.size(); ++i) {
        const std::string& t = toks[i];
        using K = WqLetter::Kind;
        if (t == "a") w.letters.push_back({K::a, 0});
        else if (t == "a*") w.letters.push_back({K::a_star, 0});
        else if (t == "b") w.letters.push_back({K::b, 0});
        else if (t.rfind("chi", 0) == 0) w.letters.push_back({K::chi, parse_index(t, 3)});
        else if (t.rfind('p', 0) == 0) w.letters.push_back({K::p, parse_index(t, 1)});
        else throw DomainError("malformed letter '" + t + "'");
    }
    return w;
}

inline TruncOp eval_letter(const RepParams& rp, const WqLetter& x)
{
    using K = WqLetter::Kind;
    switch (x.kind) {
    case K::a: return rep_a(rp);
    case K::a_star: return adjoint(rep_a(rp));
    case K::b: return rep_b(rp);
    case K::p: {
        if (x.index < 0 || x.index > rp.l) throw DomainError("p_r: r must lie in 0..l");
        TruncOp op{Eigen::MatrixXd::Zero(rp.N, rp.N), 0, "p" + std::to_string(x.index)};
        if (x.index == 0) op.m.setIdentity();
        else if (x.index == rp.s) op.m(0, 0) = 1.0;
        return op;
    }
    case K::chi: {
        TruncOp op{Eigen::MatrixXd::Zero(rp.N, rp.N), 0, "chi" + std::to_string(x.index)};
        const int diff = x.index - rp.s;
        if (diff >= 0 && diff % rp.l == 0 && diff / rp.l < rp.N) op.m(diff / rp.l, diff / rp.l) = 1.0;
        return op;
    }
    }
    throw InternalError("eval_letter: unknown letter");
}

inline TruncOp eval_word(const RepParams& rp, const WqWord& w)
{
    rp.validate();
    TruncOp out{Eigen::MatrixXd::Identity(rp.N, rp.N), 0, ""};
    for (const auto& x : w.letters) {
        const TruncOp g = eval_letter(rp, x);
        out.m = out.m * g.m;
        out.band_offset += g.band_offset;
        if (!out.provenance.empty()) out.provenance += ' ';
        out.provenance += g.provenance;
    }
    out.m *= w.prefactor;
    if (out.provenance.empty()) out.provenance = "1";
    return out;
}

struct XiDiagonals {
    Eigen::VectorXd xi1;  ///< F(b)^{k/2}
    Eigen::VectorXd xi0;  ///< G(z0^l z0s^l)^{1/2}
};

inline XiDiagonals xi_diagonals(const RepParams& rp)
{
    rp.validate();
    XiDiagonals d{Eigen::VectorXd(rp.N), Eigen::VectorXd(rp.N)};
    for (int p = 0; p < rp.N; ++p) {
        const int e = rp.level(p);
        d.xi1(p) = detail::checked_root(detail::F_at_level(rp.q, rp.l, e), 0.5 * rp.k, "xi1");
        const double u = detail::one_minus_Y_at_level(rp.q, rp.l, e);
        d.xi0(p) = detail::checked_root(detail::G_from_one_minus(u, rp.k), 0.5, "xi0");
    }
    return d;
}

/// Diagonal data of P at index p.
struct ProjectionDiagonal {
    double p11 = 0.0;          ///< (b F(b))^k
    double p22_minus_one = 0;  ///< -(1 - Y)^k
};

inline ProjectionDiagonal projection_diagonal(const RepParams& rp, int p)
{
    const int e = rp.level(p);
    return {std::pow(detail::bF_at_level(rp.q, rp.l, e), rp.k),
            -std::pow(detail::one_minus_Y_at_level(rp.q, rp.l, e), rp.k)};
}

/// 2N x 2N block matrix [[xi1 b^k xi1, xi1 a* xi0], [xi0 a xi1, xi0 Y xi0]].
inline TruncOp build_projection(const RepParams& rp)
{
    rp.validate();
    const XiDiagonals xi = xi_diagonals(rp);
    const int n = rp.N;
    TruncOp P{Eigen::MatrixXd::Zero(2 * n, 2 * n), 0, "P"};
    for (int p = 0; p < n; ++p) {
        const ProjectionDiagonal d = projection_diagonal(rp, p);
        P.m(p, p) = d.p11;
        P.m(n + p, n + p) = 1.0 + d.p22_minus_one;
    }
    for (int p = 1; p < n; ++p) {
        const double v = xi.xi1(p) * detail::a_weight(rp, p) * xi.xi0(p - 1);
        P.m(p, n + p - 1) = v;  // xi1 a* xi0
        P.m(n + p - 1, p) = v;  // xi0 a xi1
    }
    return P;
}

/// Schur-test bound sqrt(max column sum * max row sum) >= operator norm.
inline double norm_bound(const Eigen::MatrixXd& m)
{
    if (m.size() == 0) return 0.0;
    const Eigen::MatrixXd a = m.cwiseAbs();
    return std::sqrt(a.colwise().sum().maxCoeff() * a.rowwise().sum().maxCoeff());
}

/// Norm bound of m restricted to rows/columns in [0, keep) of each of the
/// blocks x blocks square blocks of size block.
inline double guarded_norm(const Eigen::MatrixXd& m, int block, int keep, int blocks = 1)
{
    if (keep <= 0) return 0.0;
    std::vector<int> idx;
    for (int b = 0; b < blocks; ++b)
        for (int i = 0; i < keep; ++i) idx.push_back(b * block + i);
    Eigen::MatrixXd sub(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(idx[i], idx[j]);
    return norm_bound(sub);
}

inline double projection_defect(const RepParams& rp)
{
    const TruncOp P = build_projection(rp);
    const Eigen::MatrixXd d = P.m * P.m - P.m;
    return guarded_norm(d, rp.N, rp.N - rp.guard(), 2);
}

struct Residual {
    std::string name;
    double value = 0.0;
};

/// Residuals of the defining relations of the weighted projective line
/// on the guarded block.  Right-hand sides are closed forms in exponents.
inline std::vector<Residual> relation_residuals(const RepParams& rp)
{
    rp.validate();
    const int n = rp.N;
    const int keep = n - rp.guard();
    const double q = rp.q;
    const Eigen::MatrixXd A = rep_a(rp).m;
    const Eigen::MatrixXd B = rep_b(rp).m;
    const Eigen::MatrixXd As = A.transpose();

    Eigen::MatrixXd aas_rhs = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd asa_rhs = Eigen::MatrixXd::Zero(n, n);
    for (int p = 0; p < n; ++p) {
        const int e = rp.level(p);
        double up = qpow(q, 2 * rp.k * rp.l + 2 * rp.k * e);
        for (int m = 0; m < rp.l; ++m) up *= one_minus_q2(q, e + m);
        aas_rhs(p, p) = up;
        double low = qpow(q, 2 * rp.k * e);
        for (int m = 1; m <= rp.l; ++m) low *= one_minus_q2(q, e - m);
        asa_rhs(p, p) = low;
    }

    std::vector<Residual> out;
    out.push_back({"ba-q^-2l.ab", guarded_norm(B * A - qpow(q, -2 * rp.l) * (A * B), n, keep)});
    out.push_back({"aa*", guarded_norm(A * As - aas_rhs, n, keep)});
    out.push_back({"a*a", guarded_norm(As * A - asa_rhs, n, keep)});
    Eigen::MatrixXd Bj = Eigen::MatrixXd::Identity(n, n);
    for (int j = 1; j <= 4; ++j) {
        Bj = Bj * B;
        const Eigen::MatrixXd lhs = A * Bj;
        const Eigen::MatrixXd rhs = qpow(q, 2 * rp.l * j) * (Bj * A);
        out.push_back({"pull-through.b^" + std::to_string(j), guarded_norm(lhs - rhs, n, keep)});
    }
    return out;
}

/// Row-major CSV with a "rows,cols" header line.
inline void write_csv(std::ostream& os, const TruncOp& op)
{
    os << op.m.rows() << ',' << op.m.cols() << '\n';
    os.precision(17);
    for (Eigen::Index i = 0; i < op.m.rows(); ++i) {
        for (Eigen::Index j = 0; j < op.m.cols(); ++j) os << (j ? "," : "") << op.m(i, j);
        os << '\n';
    }
}

/// int64 rows, int64 cols, then row-major doubles in host byte order.
inline void write_binary(std::ostream& os, const TruncOp& op)
{
    const std::int64_t dims[2] = {op.m.rows(), op.m.cols()};
    os.write(reinterpret_cast<const char*>(dims), sizeof dims);
    for (Eigen::Index i = 0; i < op.m.rows(); ++i)
        for (Eigen::Index j = 0; j < op.m.cols(); ++j) {
            const double v = op.m(i, j);
            os.write(reinterpret_cast<const char*>(&v), sizeof v);
        }
}

}  // namespace qnc
