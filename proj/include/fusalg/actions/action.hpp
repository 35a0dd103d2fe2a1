#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "fusalg/actions/algebra.hpp"
#include "fusalg/core/fusion_ring.hpp"

namespace fusalg {

/// Linear map on the algebra acting on to_vector(a).
using Superoperator = Eigen::MatrixXcd;

/// α: A → M_d(A), a ↦ [u_ij · a]; coefficients stored row-major (i, j).
struct AlphaMap {
  int dim = 1;
  std::vector<Superoperator> coefficients;

  const Superoperator& at(int i, int j) const { return coefficients[static_cast<std::size_t>(i * dim + j)]; }
};

/// χ(γ)·(−) for the generators (and their conjugates) of a fusion ring on a
/// finite-dimensional C*-algebra. χ(α) for other labels is derived through
/// χ(g)χ(β) = Σ_γ N^γ_{g,β} χ(γ), solving for the one unknown term along a
/// breadth-first order, and cached.
class ModuleAction {
 public:
  /// `char_ops` must cover every symmetric generator. Shapes are checked
  /// (AlgebraMismatch); axioms are not, see check_action_axioms.
  ModuleAction(RingPtr ring, FiniteDimCStarAlgebra algebra, std::map<Label, Superoperator> char_ops,
               std::map<Label, AlphaMap> alpha_maps = {}, std::string instance = "custom");

  ModuleAction(const ModuleAction& other);
  ModuleAction& operator=(const ModuleAction&) = delete;

  const FusionRing& ring() const noexcept { return *ring_; }
  const RingPtr& ring_ptr() const noexcept { return ring_; }
  const FiniteDimCStarAlgebra& algebra() const noexcept { return algebra_; }
  const std::string& instance() const noexcept { return instance_; }

  /// Throws InvalidLabel or UnreachableLabel.
  Superoperator char_op(const Label& alpha) const;
  AlgebraElement apply_char(const Label& alpha, const AlgebraElement& a) const;

  bool has_alpha_map(const Label& gamma) const { return alpha_maps_.contains(gamma); }
  /// Throws NoAlphaMap.
  const AlphaMap& alpha_map(const Label& gamma) const;

  /// Largest ‖χ(g)χ(β) − Σ N^γ_{g,β} χ(γ)‖ (Frobenius norm of superoperators)
  /// over symmetric generators g and β in the ball of the given radius,
  /// restricted to products that stay inside the ball.
  double relation_residual(int radius, std::size_t cap = 4096) const;

 private:
  void resolve(const Label& alpha) const;

  RingPtr ring_;
  FiniteDimCStarAlgebra algebra_;
  std::map<Label, AlphaMap> alpha_maps_;
  std::string instance_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<Label, Superoperator> cache_;
};

inline constexpr double kRelationTolerance = 1e-10;
inline constexpr int kRelationProbeRadius = 4;

/// σ_γ = id: χ(γ) = d(γ)·id; α(a) = I_{d(γ)} ⊗ a when d(γ) is an integer
/// (≤ 64), no alpha map otherwise.
ModuleAction make_trivial_action(RingPtr ring, const FiniteDimCStarAlgebra& algebra);

/// Group ring acting on C(X), X = {0..m−1}: (γ·f)(x) = f(γ⁻¹·x), where
/// permutations[γ][x] = γ·x is given for the ring's generators. Throws
/// InvalidSpec (not a group ring / not permutations) or
/// InconsistentRelations (probed relations fail).
ModuleAction make_permutation_action(RingPtr ring, int points, const std::map<Label, std::vector<int>>& permutations);

/// Group ring acting on M_m by T ↦ U_γ T U_γ*, with unitaries given for the
/// generators. Throws NotUnitary or InconsistentRelations.
ModuleAction make_conjugation_action(RingPtr ring, const std::map<Label, Eigen::MatrixXcd>& unitaries);

/// σ_{γ₁…γ_k}(a) = χ(γ₁)∘…∘χ(γ_k)(a) / Π d(γ_i); the empty word is the identity.
AlgebraElement cfa_apply(const ModuleAction& action, const std::vector<Label>& word, const AlgebraElement& a);

struct ResidualEntry {
  std::string name;
  double residual = 0.0;
  bool passed = true;
};

struct ActionAxiomReport {
  std::vector<ResidualEntry> entries;
  double tolerance = 0.0;
  std::size_t words = 0;
  std::size_t samples = 0;

  bool all_passed() const;
  const ResidualEntry* find(const std::string& name) const;
};

/// All words over the symmetric generators of length ≤ max_length.
std::vector<std::vector<Label>> generator_words(const FusionRing& ring, int max_length);

/// Residuals for linearity, unitality, contractivity (excess of ‖σ_w(a)‖
/// over ‖a‖), *-preservation, σ_e = id, composition
/// (σ_g ∘ σ_β = Σ_γ N^γ_{g,β} d(γ)/(d(g)d(β)) σ_γ on the word labels) and,
/// when present, alpha-map multiplicativity, *-preservation, unitality and
/// agreement Σ_i u_ii·a = χ(γ)·a.
ActionAxiomReport check_action_axioms(const ModuleAction& action, const std::vector<AlgebraElement>& samples,
                                      const std::vector<std::vector<Label>>& words, double tolerance = 1e-10);

/// max over matrix units a of |φ(χ(γ)·a) − d(γ)φ(a)| / d(γ).
double fa_invariance_defect(const ModuleAction& action, const State& phi, const Label& gamma);

/// max over matrix units a and i, j of |φ(u_ij·a) − δ_ij φ(a)|. NoAlphaMap
/// without an alpha map for γ.
double usual_invariance_defect(const ModuleAction& action, const State& phi, const Label& gamma);

/// Largest fa_invariance_defect over the symmetric generators.
double max_generator_defect(const ModuleAction& action, const State& phi);

}  // namespace fusalg
