#pragma once

// Exact integer matrices, Smith normal form, finitely generated abelian
// groups and the reduced Gysin sequences for quantum lens spaces.

#include "qnc/error.hpp"
#include "qnc/laurent.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace qnc {

/// int64 with overflow checks; throws ResourceError on overflow.  Lets the
/// exhaustive small-matrix sweeps run without arbitrary precision.
class Checked64 {
public:
    constexpr Checked64() = default;
    constexpr Checked64(std::int64_t v) : v_(v) {}  // NOLINT: implicit

    constexpr std::int64_t get() const noexcept { return v_; }

    friend Checked64 operator+(Checked64 a, Checked64 b)
    {
        std::int64_t r;
        if (__builtin_add_overflow(a.v_, b.v_, &r)) overflow();
        return r;
    }
    friend Checked64 operator-(Checked64 a, Checked64 b)
    {
        std::int64_t r;
        if (__builtin_sub_overflow(a.v_, b.v_, &r)) overflow();
        return r;
    }
    friend Checked64 operator*(Checked64 a, Checked64 b)
    {
        std::int64_t r;
        if (__builtin_mul_overflow(a.v_, b.v_, &r)) overflow();
        return r;
    }
    friend Checked64 operator/(Checked64 a, Checked64 b)
    {
        if (b.v_ == 0 || (a.v_ == std::numeric_limits<std::int64_t>::min() && b.v_ == -1)) overflow();
        return a.v_ / b.v_;
    }
    friend Checked64 operator%(Checked64 a, Checked64 b)
    {
        if (b.v_ == 0) overflow();
        if (b.v_ == -1) return 0;
        return a.v_ % b.v_;
    }
    friend Checked64 operator-(Checked64 a) { return Checked64(0) - a; }
    Checked64& operator+=(Checked64 o) { return *this = *this + o; }
    Checked64& operator-=(Checked64 o) { return *this = *this - o; }
    Checked64& operator*=(Checked64 o) { return *this = *this * o; }
    friend auto operator<=>(Checked64, Checked64) = default;
    friend bool operator==(Checked64, Checked64) = default;
    friend std::ostream& operator<<(std::ostream& os, Checked64 x) { return os << x.v_; }

private:
    [[noreturn]] static void overflow() { throw ResourceError("int64 overflow in exact integer arithmetic"); }
    std::int64_t v_ = 0;
};

inline Checked64 abs(Checked64 x) { return x < Checked64(0) ? -x : x; }

template <class Int>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, Int(0))
    {
        if (rows < 0 || cols < 0) throw DomainError("Matrix: negative dimension");
    }
    Matrix(std::initializer_list<std::initializer_list<long long>> rows)
    {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_) throw DomainError("Matrix: ragged initializer");
            for (long long v : r) data_.push_back(Int(v));
        }
    }

    static Matrix identity(int n)
    {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = Int(1);
        return m;
    }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    Int& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Int& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    void swap_rows(int a, int b)
    {
        if (a == b) return;
        for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(int a, int b)
    {
        if (a == b) return;
        for (int i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row dst += f * row src
    void add_row(int dst, int src, const Int& f)
    {
        for (int j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
    }
    /// col dst += f * col src
    void add_col(int dst, int src, const Int& f)
    {
        for (int i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
    }
    void negate_row(int i)
    {
        for (int j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_) throw DomainError("Matrix product: shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int t = 0; t < a.cols_; ++t) {
                const Int& x = a(i, t);
                if (x == Int(0)) continue;
                for (int j = 0; j < b.cols_; ++j) c(i, j) += x * b(t, j);
            }
        return c;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("Matrix difference: shape mismatch");
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
        return c;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("Matrix sum: shape mismatch");
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
        return c;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Int> data_;
};

using IntMatrix = Matrix<BigInt>;

template <class Int>
Matrix<Int> transpose(const Matrix<Int>& a)
{
    Matrix<Int> t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

template <class Int>
Matrix<Int> matrix_power(const Matrix<Int>& m, int d)
{
    if (m.rows() != m.cols()) throw DomainError("matrix_power: matrix must be square");
    if (d < 0) throw DomainError("matrix_power: exponent must be >= 0");
    Matrix<Int> result = Matrix<Int>::identity(m.rows());
    Matrix<Int> base = m;
    while (d) {
        if (d & 1) result = result * base;
        d >>= 1;
        if (d) base = base * base;
    }
    return result;
}

/// Determinant by fraction-free (Bareiss) elimination.
template <class Int>
Int determinant(Matrix<Int> a)
{
    if (a.rows() != a.cols()) throw DomainError("determinant: matrix must be square");
    const int n = a.rows();
    if (n == 0) return Int(1);
    Int sign(1), prev(1);
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == Int(0)) {
            int r = k + 1;
            while (r < n && a(r, k) == Int(0)) ++r;
            if (r == n) return Int(0);
            a.swap_rows(k, r);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

template <class Int>
struct SmithForm {
    Matrix<Int> U;  ///< rows x rows, unimodular
    Matrix<Int> D;  ///< rows x cols, diagonal, d_1 | d_2 | ..., zeros last
    Matrix<Int> V;  ///< cols x cols, unimodular
    int rank = 0;
};

namespace detail {

template <class Int>
Int abs_value(const Int& x)
{
    return x < Int(0) ? Int(0) - x : x;
}

}  // namespace detail

/// U A V = D.  Pivot: smallest nonzero |entry| in the trailing block, ties
/// broken by lowest row then lowest column.  The result is re-verified
/// exactly (product and unimodularity), InternalError on mismatch.
template <class Int>
SmithForm<Int> smith_normal_form(const Matrix<Int>& A)
{
    const int m = A.rows();
    const int n = A.cols();
    SmithForm<Int> f{Matrix<Int>::identity(m), A, Matrix<Int>::identity(n), 0};
    Matrix<Int>& D = f.D;
    const Int zero(0);

    int t = 0;
    for (; t < std::min(m, n); ++t) {
        bool found = false;
        while (true) {
            int pi = -1, pj = -1;
            Int best(0);
            for (int i = t; i < m; ++i)
                for (int j = t; j < n; ++j) {
                    if (D(i, j) == zero) continue;
                    const Int v = detail::abs_value(D(i, j));
                    if (pi < 0 || v < best) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) break;
            found = true;
            D.swap_rows(t, pi);
            f.U.swap_rows(t, pi);
            D.swap_cols(t, pj);
            f.V.swap_cols(t, pj);

            bool dirty = false;
            for (int i = t + 1; i < m; ++i) {
                if (D(i, t) == zero) continue;
                const Int qt = D(i, t) / D(t, t);
                D.add_row(i, t, -qt);
                f.U.add_row(i, t, -qt);
                dirty = dirty || D(i, t) != zero;
            }
            for (int j = t + 1; j < n; ++j) {
                if (D(t, j) == zero) continue;
                const Int qt = D(t, j) / D(t, t);
                D.add_col(j, t, -qt);
                f.V.add_col(j, t, -qt);
                dirty = dirty || D(t, j) != zero;
            }
            if (dirty) continue;

            int bad = -1;
            for (int i = t + 1; i < m && bad < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != zero) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            D.add_row(t, bad, Int(1));
            f.U.add_row(t, bad, Int(1));
        }
        if (!found) break;
        if (D(t, t) < zero) {
            D.negate_row(t);
            f.U.negate_row(t);
        }
    }
    f.rank = t;

    if (!(f.U * A * f.V == D)) throw InternalError("smith_normal_form: U A V != D");
    if (detail::abs_value(determinant(f.U)) != Int(1) || detail::abs_value(determinant(f.V)) != Int(1))
        throw InternalError("smith_normal_form: transform is not unimodular");
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && D(i, j) != zero) throw InternalError("smith_normal_form: D is not diagonal");
    for (int i = 0; i + 1 < f.rank; ++i)
        if (D(i + 1, i + 1) % D(i, i) != zero) throw InternalError("smith_normal_form: divisibility chain broken");
    return f;
}

/// Z^rank + Z/t_1 + ... with t_i >= 2 and t_i | t_{i+1}.
struct AbelianGroup {
    int rank = 0;
    std::vector<BigInt> torsion;

    static AbelianGroup free(int r) { return AbelianGroup{r, {}}; }

    /// Canonical form from arbitrary cyclic orders (0 means Z).
    static AbelianGroup from_cyclic(int rank, const std::vector<BigInt>& orders)
    {
        IntMatrix d(static_cast<int>(orders.size()), static_cast<int>(orders.size()));
        for (std::size_t i = 0; i < orders.size(); ++i) d(static_cast<int>(i), static_cast<int>(i)) = orders[i];
        const auto f = smith_normal_form(d);
        AbelianGroup g{rank, {}};
        g.rank += d.rows() - f.rank;
        for (int i = 0; i < f.rank; ++i)
            if (f.D(i, i) >= 2) g.torsion.push_back(f.D(i, i));
        return g;
    }

    BigInt torsion_order() const
    {
        BigInt o = 1;
        for (const auto& t : torsion) o *= t;
        return o;
    }

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

inline std::string to_string(const AbelianGroup& g)
{
    std::ostringstream os;
    bool any = false;
    if (g.rank == 1) {
        os << "Z";
        any = true;
    } else if (g.rank > 1) {
        os << "Z^" << g.rank;
        any = true;
    }
    for (const auto& t : g.torsion) {
        os << (any ? " ⊕ " : "") << "Z/" << t;
        any = true;
    }
    return any ? os.str() : "0";
}

inline std::ostream& operator<<(std::ostream& os, const AbelianGroup& g) { return os << to_string(g); }

template <class Int>
AbelianGroup cokernel(const Matrix<Int>& A)
{
    const auto f = smith_normal_form(A);
    AbelianGroup g{A.rows() - f.rank, {}};
    for (int i = 0; i < f.rank; ++i) {
        const Int d = f.D(i, i);
        if (d > Int(1)) {
            if constexpr (std::is_same_v<Int, Checked64>) g.torsion.emplace_back(d.get());
            else g.torsion.emplace_back(d);
        }
    }
    return g;
}

template <class Int>
int kernel_rank(const Matrix<Int>& A)
{
    return A.cols() - smith_normal_form(A).rank;
}

/// Z-basis of ker A: the trailing columns of V.
template <class Int>
std::vector<std::vector<Int>> kernel_basis(const Matrix<Int>& A)
{
    const auto f = smith_normal_form(A);
    std::vector<std::vector<Int>> basis;
    for (int j = f.rank; j < A.cols(); ++j) {
        std::vector<Int> v;
        for (int i = 0; i < A.cols(); ++i) v.push_back(f.V(i, j));
        basis.push_back(std::move(v));
    }
    return basis;
}

/// M = I + N0 with N0 = ones in column 0, rows 1..l.
inline IntMatrix closed_form_M(int l)
{
    if (l < 1) throw DomainError("closed_form_M: l must be >= 1");
    IntMatrix m = IntMatrix::identity(l + 1);
    for (int i = 1; i <= l; ++i) m(i, 0) = 1;
    return m;
}

struct KGroups {
    AbelianGroup K0;
    AbelianGroup K1;
    AbelianGroup K0_hom;
    AbelianGroup K1_hom;
    /// Z-basis of ker(1 - (M^t)^d), the free part of K^0.
    std::vector<std::vector<BigInt>> K0_hom_basis;

    bool same_groups(const KGroups& o) const
    {
        return K0 == o.K0 && K1 == o.K1 && K0_hom == o.K0_hom && K1_hom == o.K1_hom;
    }
};

/// K_0 = coker(1 - M^d), K_1 = ker(1 - M^d), K^0 = ker(1 - (M^t)^d),
/// K^1 = coker(1 - (M^t)^d).
inline KGroups gysin_kgroups(const IntMatrix& M, int d)
{
    if (M.rows() != M.cols()) throw DomainError("gysin_kgroups: M must be square");
    if (d < 1) throw DomainError("gysin_kgroups: d must be >= 1");
    const IntMatrix I = IntMatrix::identity(M.rows());
    const IntMatrix A = I - matrix_power(M, d);
    const IntMatrix At = I - matrix_power(transpose(M), d);
    KGroups g;
    g.K0 = cokernel(A);
    g.K1 = AbelianGroup::free(kernel_rank(A));
    g.K0_hom = AbelianGroup::free(kernel_rank(At));
    g.K1_hom = cokernel(At);
    g.K0_hom_basis = kernel_basis(At);
    return g;
}

/// K_0 = Z^l + Z/d, K_1 = Z^l, K^0 = Z^l, K^1 = Z/d + Z^l.
inline KGroups expected_kgroups(int l, int d)
{
    if (l < 1 || d < 1) throw DomainError("expected_kgroups: l, d must be >= 1");
    KGroups g;
    std::vector<BigInt> tor;
    if (d >= 2) tor.emplace_back(d);
    g.K0 = AbelianGroup{l, tor};
    g.K1 = AbelianGroup::free(l);
    g.K0_hom = AbelianGroup::free(l);
    g.K1_hom = AbelianGroup{l, tor};
    return g;
}

}  // namespace qnc
