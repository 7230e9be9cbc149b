#pragma once

// Gaussian binomials {n, k}_Q with Q = q^2 from the Pascal-type
// recurrence {n, k} = {n-1, k-1} + Q^k {n-1, k}.

#include "qnc/laurent.hpp"

#include <vector>

namespace qnc::oracle {

inline LaurentPoly gaussian_binomial_q2(int n, int k)
{
    if (k < 0 || k > n) return {};
    std::vector<std::vector<LaurentPoly>> t(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        t[i].resize(static_cast<std::size_t>(i) + 1);
        t[i][0] = 1;
        t[i][i] = 1;
        for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j].shifted(2 * j);
    }
    return t[n][k];
}

}  // namespace qnc::oracle
