#pragma once

// Faithful representation of the quantum 3-sphere on l^2(N_0 x Z),
// evaluated sparsely on basis vectors.  Used as a numerical oracle for
// the rewriting engine.
//
//   z1  e_{n,j} = q^{n+1} e_{n,j+1}
//   z1s e_{n,j} = q^{n+1} e_{n,j-1}
//   z0  e_{n,j} = sqrt(1 - q^{2n}) e_{n-1,j}
//   z0s e_{n,j} = sqrt(1 - q^{2(n+1)}) e_{n+1,j}

#include "qnc/error.hpp"
#include "qnc/ncpoly.hpp"
#include "qnc/rewrite.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qnc {

class SphereRep {
public:
    struct State {
        int n = 0;
        int j = 0;
        auto operator<=>(const State&) const = default;
    };
    using Vector = std::map<State, double>;

    SphereRep(double q, int n_max, int j_max) : q_(q), n_max_(n_max), j_max_(j_max)
    {
        if (!(q > 0.0 && q < 1.0)) throw DomainError("SphereRep: q must lie in (0,1)");
        if (n_max < 1 || j_max < 1) throw DomainError("SphereRep: grid must be nonempty");
    }

    double q() const noexcept { return q_; }
    int n_max() const noexcept { return n_max_; }
    int j_max() const noexcept { return j_max_; }

    bool in_grid(const State& s) const noexcept
    {
        return s.n >= 0 && s.n <= n_max_ && s.j >= -j_max_ && s.j <= j_max_;
    }

    /// Applies one letter in place.  Returns false when the image is zero
    /// or leaves the truncated grid.
    bool apply(Letter x, State& st, double& weight) const
    {
        switch (x) {
        case Letter::z1: weight *= std::pow(q_, st.n + 1); st.j += 1; break;
        case Letter::z1s: weight *= std::pow(q_, st.n + 1); st.j -= 1; break;
        case Letter::z0:
            if (st.n == 0) return false;
            weight *= std::sqrt(1.0 - std::pow(q_, 2 * st.n));
            st.n -= 1;
            break;
        case Letter::z0s:
            weight *= std::sqrt(1.0 - std::pow(q_, 2 * (st.n + 1)));
            st.n += 1;
            break;
        }
        return in_grid(st);
    }

    /// w e_st, letters acting right to left.
    void accumulate(const Word& w, double coeff, State st, Vector& out) const
    {
        double weight = coeff;
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            if (!apply(*it, st, weight)) return;
        out[st] += weight;
    }

    Vector evaluate(const WordPoly& x, const State& st) const
    {
        Vector out;
        for (const auto& [w, c] : x) accumulate(w, c.evaluate(q_), st, out);
        return out;
    }

    Vector evaluate(const NCPoly& x, const State& st) const { return evaluate(to_word_poly(x), st); }

    /// Columns whose images under any word of length <= reach stay inside
    /// the grid, so truncation never enters.
    std::vector<State> guarded_states(int reach) const
    {
        std::vector<State> out;
        for (int n = 0; n <= n_max_ - reach; ++n)
            for (int j = -j_max_ + reach; j <= j_max_ - reach; ++j) out.push_back({n, j});
        return out;
    }

    /// max over guarded columns and rows of |x - y| entrywise.
    double max_difference(const WordPoly& x, const WordPoly& y, int reach) const
    {
        double worst = 0.0;
        for (const auto& st : guarded_states(reach)) {
            Vector vx = evaluate(x, st);
            for (const auto& [t, v] : evaluate(y, st)) vx[t] -= v;
            for (const auto& [t, v] : vx) worst = std::max(worst, std::abs(v));
        }
        return worst;
    }

    /// Residuals of the defining relations with a one-letter guard band.
    std::vector<std::pair<std::string, double>> relation_residuals() const
    {
        std::vector<std::pair<std::string, double>> out;
        for (const auto& rel : sphere_relations()) out.emplace_back(rel.name, max_difference(rel.lhs, rel.rhs, 2));
        return out;
    }

    /// Self-test of the construction: all relations below 1e-12.
    bool self_test(double tol = 1e-12) const
    {
        for (const auto& [name, r] : relation_residuals())
            if (!(r < tol)) return false;
        return true;
    }

    /// Eigenvalues q^{2n+2} of z1 z1s, n = 0..n_max.
    std::vector<double> b_spectrum() const
    {
        std::vector<double> out;
        for (int n = 0; n <= n_max_; ++n) out.push_back(std::pow(q_, 2 * n + 2));
        return out;
    }

private:
    double q_;
    int n_max_;
    int j_max_;
};

inline std::size_t max_word_length(const WordPoly& x)
{
    std::size_t len = 0;
    for (const auto& [w, c] : x) len = std::max(len, w.size());
    return len;
}

inline std::size_t max_word_length(const NCPoly& x)
{
    std::size_t len = 0;
    for (const auto& [m, c] : x.terms())
        len = std::max(len, static_cast<std::size_t>(std::abs(m.p) + m.r + m.s));
    return len;
}

/// Entrywise distance between w and its normal form in the sphere
/// representation on columns that never meet the truncation edge.
inline double oracle_discrepancy(const SphereRep& rep, const Word& w, const NCPoly& nf)
{
    WordPoly lhs;
    add_term(lhs, w, 1);
    const WordPoly rhs = to_word_poly(nf);
    const int reach = static_cast<int>(std::max(w.size(), max_word_length(nf))) + 1;
    return rep.max_difference(lhs, rhs, reach);
}

}  // namespace qnc
