#pragma once

#include <vector>

namespace nsrad {

/// LDL^T solve of a symmetric tridiagonal system with diagonal `diag` (size n)
/// and subdiagonal `off` (size n-1). `rhs` is overwritten with the solution.
/// Returns false on a non-positive pivot (matrix not positive definite).
inline bool solve_spd_tridiagonal(std::vector<double>& diag, const std::vector<double>& off,
                                  std::vector<double>& rhs) {
    const int n = static_cast<int>(diag.size());
    if (n == 0) return true;
    // In-place factorization: diag becomes D, l holds the unit-lower factor.
    std::vector<double> l(n > 1 ? n - 1 : 0);
    if (!(diag[0] > 0.0)) return false;
    for (int i = 1; i < n; ++i) {
        l[i - 1] = off[i - 1] / diag[i - 1];
        diag[i] -= l[i - 1] * off[i - 1];
        if (!(diag[i] > 0.0)) return false;
    }
    for (int i = 1; i < n; ++i) rhs[i] -= l[i - 1] * rhs[i - 1];
    for (int i = 0; i < n; ++i) rhs[i] /= diag[i];
    for (int i = n - 2; i >= 0; --i) rhs[i] -= l[i] * rhs[i + 1];
    return true;
}

}  // namespace nsrad
