#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fusalg/actions/action.hpp"
#include "fusalg/folner.hpp"
#include "fusalg/spectral/kesten.hpp"

namespace fusalg {

struct AveragingBound {
  Label generator;
  double measured = 0.0;  ///< max over matrix units a of |φ_F(χ(β)a) − d_β φ_F(a)| (‖a‖ = 1)
  double bound = 0.0;     ///< d_β |∂_β F|_w / |F|_w
  bool holds = true;      ///< measured ≤ bound + 1e-9
};

struct AveragingResult {
  State state;
  std::vector<AveragingBound> bounds;
  bool bounds_hold = true;
};

inline constexpr double kAveragingSlack = 1e-9;

/// φ_F(a) = (1/|F|_w) Σ_{α∈F} d_α φ(χ(α)·a). The result is re-validated as a
/// state. Throws UnreachableLabel when some χ(α) cannot be derived.
AveragingResult average_state(const ModuleAction& action, const State& phi, const FolnerSet& f);

struct SearchResult {
  State state;
  std::vector<double> trace;  ///< max generator defect of φ₀, then of each average
  int index = -1;             ///< set that succeeded; −1 when φ₀ already passes
};

/// Error carrying the defect trace of a failed invariant-state search.
class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& message, std::vector<double> trace)
      : Error(ErrorKind::NotConverged, message), trace_(std::move(trace)) {}
  const std::vector<double>& trace() const noexcept { return trace_; }

 private:
  std::vector<double> trace_;
};

/// First of φ₀, φ_{F_1}, φ_{F_2}, … whose max generator FA-defect is ≤ tol.
/// Throws NotConvergedError otherwise.
SearchResult invariant_state_search(const ModuleAction& action, const State& phi0,
                                    const std::vector<FolnerSet>& sets, double tol);

/// Finitely supported f = Σ δ_α ⊗ a_α in C_c(I) ⊗ A.
struct ActionVector {
  std::map<Label, AlgebraElement> entries;
};

/// ⟨f|g⟩_A = Σ_α f(α) g(α)*. Throws AlgebraMismatch.
AlgebraElement inner_A(const FiniteDimCStarAlgebra& algebra, const ActionVector& f, const ActionVector& g);

/// ‖f‖_{2,A} = ‖⟨f|f⟩_A‖^{1/2}.
double norm_2A(const FiniteDimCStarAlgebra& algebra, const ActionVector& f);

/// f *_σ g = Σ_{α,β} Σ_γ (N^γ_{α,β}/d(α)) δ_γ ⊗ a_α σ_α(b_β).
ActionVector twisted_convolve(const ModuleAction& action, const ActionVector& f, const ActionVector& g);

/// ξ = |F|_w^{-1/2} Σ_{α∈F} d(α) δ_α ⊗ 1.
ActionVector canonical_xi(const ModuleAction& action, const FolnerSet& f);

struct AmenabilityRow {
  int n = 0;
  double unit_residual = 0.0;        ///< ‖⟨ξ|ξ⟩_A − 1‖
  double central_residual = 0.0;     ///< max_{α, a} ‖ξ_α a − a ξ_α‖ over matrix units a
  std::vector<double> convolution;   ///< ‖δ_γ *_σ ξ − ξ‖_{2,A} per symmetric generator
  double max_convolution = 0.0;
  double tolerance = 0.0;
};

struct AmenabilityReport {
  std::vector<Label> generators;
  std::vector<AmenabilityRow> rows;
  bool passed = false;  ///< final max convolution residual ≤ final tolerance
};

/// Conditions (1)–(3) of an FA-Følner sequence for each ξ_n; `tolerances`
/// gives the condition-(3) threshold per n (the last entry is reused).
AmenabilityReport fa_amenability_check(const ModuleAction& action, const std::vector<ActionVector>& xi_sequence,
                                       const std::vector<double>& tolerances);

struct HarnessConfig {
  int folner_n_max = 50;
  std::size_t folner_cap = 200'000;
  double folner_tol = 0.15;       ///< "ratios vanish": decreasing and final max ratio ≤ this
  double invariant_tol = 1e-12;
  int kesten_radius = 8;          ///< vectors supported in B_R; compression on B_{R+1}
  int plateau_window = 2;
  double gap_tol = 0.01;
  std::optional<State> seed_state;
};

struct HarnessReport {
  std::string direction;  ///< "amenable", "non-amenable-evidence" or "inconclusive"
  FolnerProfile folner;
  bool ratios_vanish = false;

  // amenable direction
  std::optional<AmenabilityReport> fa_amenability;
  std::vector<double> invariant_trace;
  double invariant_defect = -1.0;
  bool invariant_found = false;
  std::optional<State> invariant_state;
  int invariant_index = -1;

  // spectral direction
  std::vector<KestenRow> kesten;
  std::optional<Verdict> verdict;
  double defect_lower_bound = 0.0;   ///< 1 − θ_{R+1}
  double canonical_defect = 0.0;     ///< measured max generator residual of ξ on B_R
  bool lower_bound_consistent = true;

  std::vector<std::string> notes;
};

/// Runs the amenable direction (canonical ξ_n, averaged invariant state)
/// when ball Følner ratios vanish, and spectral-gap evidence (defect lower
/// bound for ball-supported vectors) otherwise.
HarnessReport theorem_harness(const ModuleAction& action, const HarnessConfig& config = {});

}  // namespace fusalg
