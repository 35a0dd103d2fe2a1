#pragma once

#include <complex>
#include <map>
#include <vector>

#include "fusalg/core/fusion_ring.hpp"

namespace fusalg {

using Complex = std::complex<double>;

/// Finitely supported element of the complexified ring, Σ c_α α. Zero
/// coefficients are never stored, so `support()` is exactly supp f.
class RingElement {
 public:
  RingElement() = default;

  static RingElement dirac(const Label& label, Complex coeff = 1.0);

  void add(const Label& label, Complex coeff);
  Complex operator[](const Label& label) const;

  const std::map<Label, Complex>& coeffs() const noexcept { return coeffs_; }
  std::vector<Label> support() const;
  bool is_zero() const noexcept { return coeffs_.empty(); }

  friend bool operator==(const RingElement&, const RingElement&) = default;

 private:
  std::map<Label, Complex> coeffs_;
};

/// Bilinear extension of fuse: (xy)_γ = Σ x_α y_β N^γ_{α,β}.
RingElement multiply(const FusionRing& ring, const RingElement& x, const RingElement& y);

/// Conjugate-linear involution: coefficients conjugated, labels mapped by conj.
RingElement involute(const FusionRing& ring, const RingElement& x);

using SparseWeights = std::map<Label, double>;

/// Weighted convolution of Dirac measures,
///   δ_ξ * δ_η = Σ_α d(α) / (d(ξ) d(η)) · N^α_{ξ,η} δ_α.
/// The weights sum to one by the dimension identity.
SparseWeights dirac_convolve(const FusionRing& ring, const Label& xi, const Label& eta);

inline constexpr double kProbabilityTolerance = 1e-12;

/// Finitely supported probability measure on the basis.
class FiniteMeasure {
 public:
  /// Validates labels, nonnegativity and total mass (NonProbability otherwise).
  FiniteMeasure(const FusionRing& ring, SparseWeights weights);

  static FiniteMeasure dirac(const FusionRing& ring, const Label& label);
  /// Uniform measure on the symmetric generating set.
  static FiniteMeasure uniform_generators(const FusionRing& ring);
  /// ½(δ_x + δ_x̄), or δ_x when x is self-conjugate.
  static FiniteMeasure symmetrized_dirac(const FusionRing& ring, const Label& label);

  const SparseWeights& weights() const noexcept { return weights_; }
  double operator[](const Label& label) const;
  bool is_symmetric() const noexcept { return symmetric_; }
  std::vector<Label> support() const;

 private:
  SparseWeights weights_;
  bool symmetric_ = false;
};

/// Bilinear extension of dirac_convolve to measures.
FiniteMeasure measure_convolve(const FusionRing& ring, const FiniteMeasure& mu,
                               const FiniteMeasure& nu);

}  // namespace fusalg
