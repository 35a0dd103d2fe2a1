#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "fusalg/core/errors.hpp"

namespace fusalg {

/// Element of a direct sum of full matrix blocks.
using AlgebraElement = std::vector<Eigen::MatrixXcd>;

/// ⊕_i M_{n_i}(ℂ). C(X) for a finite X is |X| blocks of size 1.
class FiniteDimCStarAlgebra {
 public:
  explicit FiniteDimCStarAlgebra(std::vector<int> block_sizes);
  static FiniteDimCStarAlgebra commutative(int points);
  static FiniteDimCStarAlgebra matrix(int n);

  const std::vector<int>& block_sizes() const noexcept { return blocks_; }
  /// Complex dimension Σ n_i².
  Eigen::Index dimension() const noexcept { return dimension_; }

  AlgebraElement zero() const;
  AlgebraElement unit() const;
  /// Matrix units E^{(b)}_{jk}, block by block, column-major inside a block
  /// (the same order as to_vector).
  std::vector<AlgebraElement> basis() const;

  /// Throws AlgebraMismatch when the block shapes differ.
  void require(const AlgebraElement& a) const;

  /// Concatenation of the column-major vectorized blocks.
  Eigen::VectorXcd to_vector(const AlgebraElement& a) const;
  AlgebraElement from_vector(const Eigen::VectorXcd& v) const;

  friend bool operator==(const FiniteDimCStarAlgebra& a, const FiniteDimCStarAlgebra& b) {
    return a.blocks_ == b.blocks_;
  }

 private:
  std::vector<int> blocks_;
  Eigen::Index dimension_ = 0;
};

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(std::complex<double> s, const AlgebraElement& a);
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement adjoint(const AlgebraElement& a);
/// C*-norm: largest singular value over the blocks.
double norm(const AlgebraElement& a);

/// Seeded panel of random elements (entries uniform in the unit square).
std::vector<AlgebraElement> random_elements(const FiniteDimCStarAlgebra& algebra, int count, std::uint64_t seed);

inline constexpr double kPositivityFloor = -1e-10;
inline constexpr double kMassTolerance = 1e-12;

/// φ(a) = Σ_i tr(ρ_i a_i) with positive semidefinite densities ρ_i of total
/// trace one.
class State {
 public:
  /// Throws InvalidState when a block is not Hermitian, has an eigenvalue
  /// below −1e-10, or the total trace is not 1 ± 1e-12.
  State(const FiniteDimCStarAlgebra& algebra, std::vector<Eigen::MatrixXcd> densities);

  static State normalized_trace(const FiniteDimCStarAlgebra& algebra);
  /// Vector state a ↦ ⟨v, a_block v⟩ for a unit vector v in one block.
  static State vector_state(const FiniteDimCStarAlgebra& algebra, int block, const Eigen::VectorXcd& v);
  /// Point mass at a point of C(X) (block of size 1) or, generally, the
  /// vector state of the first basis vector of `block`.
  static State point_mass(const FiniteDimCStarAlgebra& algebra, int block);
  /// φ(a) = w · to_vector(a).
  static State from_dual(const FiniteDimCStarAlgebra& algebra, const Eigen::VectorXcd& w);

  std::complex<double> operator()(const AlgebraElement& a) const;
  const std::vector<Eigen::MatrixXcd>& densities() const noexcept { return densities_; }
  const FiniteDimCStarAlgebra& algebra() const noexcept { return algebra_; }
  Eigen::VectorXcd dual() const;
  /// Smallest eigenvalue over the blocks and total trace, as re-verified.
  double min_eigenvalue() const;
  double mass() const;

 private:
  FiniteDimCStarAlgebra algebra_;
  std::vector<Eigen::MatrixXcd> densities_;
};

/// Seeded random states; the panel mixes full-rank densities, diagonal
/// densities and normalized-trace mixtures so that invariant states occur.
std::vector<State> random_states(const FiniteDimCStarAlgebra& algebra, int count, std::uint64_t seed);

}  // namespace fusalg
