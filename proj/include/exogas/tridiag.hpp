#pragma once

#include <cstddef>
#include <span>

namespace exogas {

// Thomas algorithm, no pivoting; callers assemble diagonally dominant
// systems. `lower[0]` and `upper[n-1]` are ignored. Overwrites rhs with the
// solution and scratches diag/upper.
inline void tridiag_solve_inplace(std::span<double> lower,
                                  std::span<double> diag,
                                  std::span<double> upper,
                                  std::span<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

}  // namespace exogas
