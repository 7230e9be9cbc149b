#pragma once

// Certified traces and the index pairing matrix between the Fredholm
// modules F_s and the projections p_r over the weighted projective line.

#include "qnc/bundle.hpp"
#include "qnc/certified.hpp"
#include "qnc/error.hpp"
#include "qnc/kth.hpp"
#include "qnc/rep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace qnc {

inline constexpr int kDefaultTruncation = 300;

/// Ratio used for traces decaying like q^{2lp}: q^{2l} plus a quarter of
/// the gap to 1, absorbing the subleading corrections at finite p.
inline double decay_ratio_2l(double q, int l)
{
    const double r = std::pow(q, 2 * l);
    return r + (1.0 - r) / 4.0;
}

/// sum_p q^{s+lp}, the trace of pi_s(b)^{1/2}; closed form q^s / (1 - q^l).
inline CertifiedReal lemma_trace(int l, int s, double q, int N = kDefaultTruncation)
{
    if (l < 1 || s < 1 || s > l) throw DomainError("lemma_trace: need 1 <= s <= l");
    return certified_trace(std::function<double(int)>([=](int p) { return qpow(q, s + l * p); }), N, std::pow(q, l));
}

inline double lemma_trace_closed_form(int l, int s, double q) { return std::pow(q, s) / (1.0 - std::pow(q, l)); }

/// Tr pi_s([z0^l, z0s^l]) through the q-binomial expansion on the
/// eigenvalues of b.
inline CertifiedReal commutator_trace(int l, int s, double q, int N = kDefaultTruncation)
{
    if (l < 1 || s < 1 || s > l) throw DomainError("commutator_trace: need 1 <= s <= l");
    const NCPoly expansion = commutator_expansion(l);
    std::vector<double> c(static_cast<std::size_t>(l) + 1, 0.0), cabs(c);
    for (const auto& [m, coeff] : expansion.terms()) {
        c[static_cast<std::size_t>(m.r)] = coeff.evaluate(q);
        cabs[static_cast<std::size_t>(m.r)] = coeff.evaluate_abs(q);
    }
    const double eps = std::numeric_limits<double>::epsilon();
    auto term = [&](int p) {
        const int e = s + l * p;
        double v = 0.0, mag = 0.0;
        for (int m = 1; m <= l; ++m) {
            const double bm = qpow(q, 2 * m * e);
            v += c[m] * bm;
            mag += cabs[m] * bm;
        }
        return TraceTerm{v, 8.0 * (l + 2) * eps * mag};
    };
    return certified_trace(std::function<TraceTerm(int)>(term), N, decay_ratio_2l(q, l));
}

/// 1 - prod_{m=1}^l (1 - q^{2(s-m)}) == 1 in exact arithmetic.
inline bool commutator_exact_check(int l, int s)
{
    if (l < 1 || s < 1 || s > l) throw DomainError("commutator_exact_check: need 1 <= s <= l");
    LaurentPoly prod = 1;
    for (int m = 1; m <= l; ++m) prod *= LaurentPoly(1) - LaurentPoly::q_power(2 * (s - m));
    return LaurentPoly(1) - prod == LaurentPoly(1);
}

struct PairingEntry {
    CertifiedReal value;
    std::optional<long long> integer;
    std::string route;
};

/// <[F_s], [p_r]>.  s = 0 is the counit, exact.  For s >= 1 the trace of
/// pi_s(Psi p_r Psi^*) minus its scalar part is summed over the diagonal:
/// r = 0 gives P11 + (P22 - 1), r >= 1 gives P11 on the range of pi_s(p_r).
inline PairingEntry index_pairing(int k, int l, int s, int r, double q, int N = kDefaultTruncation)
{
    require_coprime(k, l);
    if (s < 0 || s > l || r < 0 || r > l) throw DomainError("index_pairing: need 0 <= s, r <= l");
    if (s == 0) {
        const double v = r == 0 ? 1.0 : 0.0;
        return {{v, 0.0}, static_cast<long long>(v), "counit"};
    }
    const RepParams rp{k, l, s, q, N};
    rp.validate();
    const double eps = std::numeric_limits<double>::epsilon();
    const double err_scale = 8.0 * (k + l) * eps;
    PairingEntry out;
    if (r == 0) {
        auto term = [&](int p) {
            const ProjectionDiagonal d = projection_diagonal(rp, p);
            return TraceTerm{d.p11 + d.p22_minus_one, err_scale * (std::abs(d.p11) + std::abs(d.p22_minus_one))};
        };
        out.value = certified_trace(std::function<TraceTerm(int)>(term), N, decay_ratio_2l(q, l));
        out.route = "trace P - diag(0,1)";
    } else {
        auto term = [&](int p) {
            const double proj = (r == s && p == 0) ? 1.0 : 0.0;
            const double v = proj * projection_diagonal(rp, p).p11;
            return TraceTerm{v, err_scale * std::abs(v)};
        };
        out.value = certified_trace(std::function<TraceTerm(int)>(term), N, decay_ratio_2l(q, l));
        out.route = "trace P11 p_r";
    }
    out.integer = certified_integer(out.value);
    return out;
}

struct PairingMatrix {
    int k = 1;
    int l = 1;
    double q = 0.5;
    int N = kDefaultTruncation;
    std::vector<std::vector<long long>> M;
    std::vector<std::vector<PairingEntry>> log;
    double max_bound = 0.0;
};

/// Number of worker threads: QNC_THREADS if set and positive, else the
/// hardware concurrency, never more than the work items.
inline int worker_threads(int items, int requested = 0)
{
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("QNC_THREADS")) n = std::atoi(env);
    }
    if (n <= 0) n = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    return std::clamp(n, 1, std::max(1, items));
}

/// All (l+1)^2 pairings, rows computed in parallel and stored by index.
/// Throws CertificationError if an entry cannot be rounded and
/// InternalError if the result differs from closed_form_M(l).
inline PairingMatrix pairing_matrix(int k, int l, double q, int N = kDefaultTruncation, int threads = 0)
{
    require_coprime(k, l);
    PairingMatrix pm;
    pm.k = k;
    pm.l = l;
    pm.q = q;
    pm.N = N;
    const int n = l + 1;
    pm.log.assign(static_cast<std::size_t>(n), std::vector<PairingEntry>(static_cast<std::size_t>(n)));
    RepParams{k, l, 1, q, N}.validate();
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));

    auto row = [&](int s) {
        try {
            for (int r = 0; r < n; ++r) pm.log[s][r] = index_pairing(k, l, s, r, q, N);
        } catch (...) {
            errors[s] = std::current_exception();
        }
    };
    const int workers = worker_threads(n, threads);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int s = w; s < n; s += workers) row(s);
        });
    for (auto& t : pool) t.join();

    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    pm.M.assign(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
    for (int s = 0; s < n; ++s)
        for (int r = 0; r < n; ++r) {
            const PairingEntry& e = pm.log[s][r];
            pm.max_bound = std::max(pm.max_bound, e.value.bound);
            if (!e.integer)
                throw CertificationError("pairing (s=" + std::to_string(s) + ", r=" + std::to_string(r) +
                                         ") not certified: value " + std::to_string(e.value.value) + ", bound " +
                                         std::to_string(e.value.bound) + "; increase N");
            pm.M[s][r] = *e.integer;
        }

    const IntMatrix closed = closed_form_M(l);
    for (int s = 0; s < n; ++s)
        for (int r = 0; r < n; ++r)
            if (BigInt(pm.M[s][r]) != closed(s, r))
                throw InternalError("pairing matrix differs from the closed form at (" + std::to_string(s) + ", " +
                                    std::to_string(r) + ")");
    return pm;
}

inline IntMatrix to_int_matrix(const std::vector<std::vector<long long>>& m)
{
    const int n = static_cast<int>(m.size());
    IntMatrix out(n, n ? static_cast<int>(m[0].size()) : 0);
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j) out(i, j) = m[i][j];
    return out;
}

}  // namespace qnc
