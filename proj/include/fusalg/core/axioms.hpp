#pragma once

#include <span>
#include <string>
#include <vector>

#include "fusalg/core/fusion_ring.hpp"

namespace fusalg {

struct AxiomCheck {
  std::string axiom;
  bool passed = true;
  double worst_residual = 0.0;
  std::size_t evaluations = 0;
  /// Offending label tuples, first failures first (capped).
  std::vector<std::vector<Label>> failures;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool exact = false;  ///< integer dimensions, residuals computed exactly
  double tolerance = 0.0;

  bool all_passed() const;
  const AxiomCheck* find(const std::string& axiom) const;
};

inline constexpr double kRealAxiomTolerance = 1e-9;

/// Checks the fusion-algebra axioms on a finite probe (closed under conj
/// before checking):
///   unit         d(e) = 1, ē = e, e⊗α = α = α⊗e
///   involution   conj² = id, d(ᾱ) = d(α), conj(α⊗β) = β̄⊗ᾱ
///   dimension    d ≥ 1, Σ_γ N^γ_{α,β} d(γ) = d(α) d(β) on probe²
///   frobenius    N^γ_{α,β} = N^α_{γ,β̄} = N^β_{ᾱ,γ} on probe³
/// Frobenius is checked from every nonzero entry in both directions of the
/// two involutive relabelings, which covers every triple of the probe.
AxiomReport check_axioms(const FusionRing& ring, std::span<const Label> probe,
                         double tolerance = kRealAxiomTolerance);

}  // namespace fusalg
