#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "fusalg/core/ring_element.hpp"
#include "fusalg/core/window.hpp"

namespace fusalg {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Dirichlet compression of a convolution operator to a window. Entries are
/// stored in l-coordinates (orthonormal basis δ_α / d(α) of ℓ²(μ₀)) unless
/// the builder says otherwise; mass leaving the window is dropped.
struct CompressedOperator {
  Window window;
  SparseMatrix matrix;
  bool self_adjoint = false;
  /// Schur-test bound on the operator norm using the weights d(α); NaN when
  /// the test was not run or a weight overflowed.
  double norm_bound = 0.0;
};

/// l_ξ: δ_η ↦ (1/d(ξ)) Σ_α N^α_{ξ,η} δ_α, entry (α, η) = N^α_{ξ,η} / d(ξ).
CompressedOperator l_operator(const FusionRing& ring, const Label& xi, const Window& window);

/// Right-handed mirror of l_ξ: entry (α, η) = N^α_{η,ξ} / d(ξ).
CompressedOperator rho_operator(const FusionRing& ring, const Label& xi, const Window& window);

/// λ_{2,ξ} in the unnormalized Dirac basis of ℓ²(μ₀):
///   (λ_ξ f)(η) = Σ_α f(α) (δ_ξ̄ * δ_η)(α),
/// built from dirac_convolve. Conjugating by diag(d) gives l_operator.
CompressedOperator lambda_dirac_matrix(const FusionRing& ring, const Label& xi, const Window& window);

/// λ_{2,μ} = Σ_ξ μ(ξ) λ_{2,ξ}, returned in l-coordinates, with the Schur
/// norm bound filled in. Self-adjoint exactly when μ is symmetric.
CompressedOperator lambda_operator(const FusionRing& ring, const FiniteMeasure& mu, const Window& window);

/// Principal submatrix on the given (sorted, distinct) indices.
SparseMatrix principal_submatrix(const SparseMatrix& m, const std::vector<std::size_t>& indices);
CompressedOperator restrict_to(const CompressedOperator& op, const FusionRing& ring,
                               const std::vector<std::size_t>& indices);

/// Largest |A - Aᵀ| entry.
double asymmetry(const SparseMatrix& m);

/// Function on a window, normed in ℓ²(μ₀): ‖f‖² = Σ |f(α)|² d(α)².
struct WeightedVector {
  Window window;
  Eigen::VectorXcd entries;

  double norm() const;
  /// Indicator of the window scaled to unit norm.
  static WeightedVector normalized_indicator(const Window& window);
  /// Unit vector given in l-coordinates g = d·f.
  static WeightedVector from_l_coordinates(const Window& window, const Eigen::VectorXcd& g);
};

inline constexpr double kNormalizationTolerance = 1e-9;

/// ‖λ_{2,γ} f − f‖_{2,μ₀}. λ_γ f is evaluated on the window enlarged by one
/// fusion step with γ, so nothing is truncated. Throws NotNormalized unless
/// ‖f‖ = 1 ± 1e-9.
double almost_invariant_defect(const FusionRing& ring, const WeightedVector& f, const Label& gamma);

}  // namespace fusalg
