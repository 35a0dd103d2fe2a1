#pragma once

#include <string_view>

#include "fusalg/spectral/operators.hpp"

namespace fusalg {

enum class EigenMethod {
  Auto,         ///< Tridiagonal when the matrix has bandwidth ≤ 1, Lanczos otherwise
  Tridiagonal,  ///< Sturm-sequence bisection
  Lanczos,
  Power,        ///< power iteration on A + I
};

std::string_view to_string(EigenMethod m);
EigenMethod parse_eigen_method(std::string_view name);

struct EigenResult {
  double value = 0.0;
  int iterations = 0;
  EigenMethod method = EigenMethod::Auto;
  double residual = 0.0;  ///< a-posteriori error estimate
};

inline constexpr double kDefaultEigenTolerance = 1e-10;
inline constexpr int kDefaultEigenMaxIter = 100'000;

/// Largest eigenvalue of a symmetric matrix to absolute accuracy `tol`.
/// Throws NoConvergence when `max_iter` is exhausted.
EigenResult top_eigenvalue(const SparseMatrix& matrix, double tol = kDefaultEigenTolerance,
                           int max_iter = kDefaultEigenMaxIter, EigenMethod method = EigenMethod::Auto);

/// Requires op.self_adjoint (InvalidSpec otherwise).
EigenResult top_eigenvalue(const CompressedOperator& op, double tol = kDefaultEigenTolerance,
                           int max_iter = kDefaultEigenMaxIter, EigenMethod method = EigenMethod::Auto);

bool is_tridiagonal(const SparseMatrix& matrix);

}  // namespace fusalg
