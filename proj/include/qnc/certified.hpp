#pragma once

// Traces of diagonal trace-class operators with rigorous error bounds.

#include "qnc/error.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace qnc {

struct CertifiedReal {
    double value = 0.0;
    double bound = 0.0;  ///< |exact - value| <= bound

    bool contains(double x) const { return std::abs(x - value) <= bound; }
};

inline constexpr double kCertifyThreshold = 0.25;

/// The unique integer within bound of value, provided
/// |value - round(value)| + bound < threshold (<= 0.5).
inline std::optional<long long> certified_integer(const CertifiedReal& x, double threshold = kCertifyThreshold)
{
    if (!std::isfinite(x.value) || !std::isfinite(x.bound) || x.bound < 0.0) return std::nullopt;
    const double r = std::nearbyint(x.value);
    if (std::abs(x.value - r) + x.bound < threshold) return static_cast<long long>(r);
    return std::nullopt;
}

/// A diagonal entry together with an absolute bound on its rounding error.
struct TraceTerm {
    double value = 0.0;
    double error = 0.0;
};

struct TraceOptions {
    int ratio_window = 10;  ///< K: trailing terms checked for geometric decay
    double ratio_slack = 1e-9;
    double underflow_floor = 1e-290;
};

namespace detail {

/// Neumaier's compensated summation.
class NeumaierSum {
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
        else comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace detail

/// sum_{p<N} t_p with bound = tail majorant |t_{N-1}| rho/(1-rho) plus
/// accumulated rounding.  The last K terms must decay with ratio <= rho;
/// otherwise CertificationError is thrown.
inline CertifiedReal certified_trace(const std::function<TraceTerm(int)>& term, int N, double rho,
                                     const TraceOptions& opt = {})
{
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("certified_trace: rho must lie in (0,1)");
    if (N < opt.ratio_window + 1) throw DomainError("certified_trace: N too small for the ratio test");
    std::vector<TraceTerm> t(static_cast<std::size_t>(N));
    detail::NeumaierSum sum;
    double abs_sum = 0.0;
    double term_err = 0.0;
    for (int p = 0; p < N; ++p) {
        t[p] = term(p);
        if (!std::isfinite(t[p].value)) throw CertificationError("certified_trace: non-finite term at p=" + std::to_string(p));
        sum.add(t[p].value);
        abs_sum += std::abs(t[p].value);
        term_err += t[p].error;
    }
    for (int p = N - opt.ratio_window; p + 1 < N; ++p) {
        const double cur = std::abs(t[p].value);
        const double next = std::abs(t[p + 1].value);
        if (next <= opt.underflow_floor) continue;
        if (next > rho * cur * (1.0 + opt.ratio_slack))
            throw CertificationError("certified_trace: decay not geometric with ratio " + std::to_string(rho) +
                                     " at N=" + std::to_string(N) + "; increase N");
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double last = std::max(std::abs(t[N - 1].value), opt.underflow_floor);
    const double tail = last * rho / (1.0 - rho);
    const double rounding = term_err + 2.0 * eps * abs_sum;
    return {sum.value(), tail + rounding};
}

/// Terms without their own error estimate get 4 eps |t_p|.
inline CertifiedReal certified_trace(const std::function<double(int)>& term, int N, double rho,
                                     const TraceOptions& opt = {})
{
    const double eps = std::numeric_limits<double>::epsilon();
    return certified_trace(
        std::function<TraceTerm(int)>([&term, eps](int p) {
            const double v = term(p);
            return TraceTerm{v, 4.0 * eps * std::abs(v)};
        }),
        N, rho, opt);
}

}  // namespace qnc
