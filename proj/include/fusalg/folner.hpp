#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "fusalg/core/window.hpp"

namespace fusalg {

/// Σ d(α)² over a finite set; exact in 128-bit integers when the ring has
/// integer dimensions and nothing overflows.
struct WeightedMass {
  double value = 0.0;
  bool exact = false;
  __int128 exact_value = 0;
};

WeightedMass weighted_mass(const FusionRing& ring, const std::vector<Label>& labels);

std::string int128_to_string(__int128 v);

class FolnerSet {
 public:
  /// Sorts canonically; rejects empty input and duplicates (InvalidSpec).
  FolnerSet(const FusionRing& ring, std::vector<Label> labels);
  static FolnerSet from_window(const FusionRing& ring, const Window& window);

  const std::vector<Label>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool contains(const Label& l) const { return members_.contains(l); }
  double weighted_card() const noexcept { return mass_.value; }
  const WeightedMass& mass() const noexcept { return mass_; }

 private:
  std::vector<Label> labels_;
  std::unordered_set<Label> members_;
  WeightedMass mass_;
};

/// α together with a witness β: for an inner point α ∈ F, β ∉ F; for an
/// outer point α ∉ F, β ∈ F; in both cases N^β_{α,γ} > 0.
struct BoundaryCertificate {
  Label alpha;
  Label beta;
  bool inner = true;
};

struct Boundary {
  std::vector<Label> inner;  ///< {α ∈ F : ∃β ∉ F, N^β_{α,γ} > 0}
  std::vector<Label> outer;  ///< {α ∉ F : ∃β ∈ F, N^β_{α,γ} > 0}
  std::vector<BoundaryCertificate> certificates;
  /// Outer candidates α ∈ supp(β ⊗ γ̄) for which N^β_{α,γ} came out zero;
  /// nonempty only for rings violating Frobenius reciprocity.
  std::vector<BoundaryCertificate> violations;

  /// inner ∪ outer in canonical order.
  std::vector<Label> all(const FusionRing& ring) const;
};

/// ∂_γ F. Outer points are found among supp(β ⊗ γ̄), β ∈ F, which contains
/// all of them because N^β_{α,γ} = N^α_{β,γ̄}; each is re-verified.
Boundary boundary_with_certificates(const FusionRing& ring, const FolnerSet& f, const Label& gamma);
std::vector<Label> boundary(const FusionRing& ring, const FolnerSet& f, const Label& gamma);

/// Checks every certificate's multiplicity and that inner witnesses for γ
/// are outer points for γ̄ and vice versa. Returns the number of mismatches.
std::size_t cross_check_certificates(const FusionRing& ring, const FolnerSet& f, const Label& gamma);

struct Ratio {
  double value = 0.0;
  bool exact = false;
  __int128 numerator = 0;    ///< reduced, when exact
  __int128 denominator = 1;

  std::string to_string() const;
};

Ratio folner_ratio_exact(const FusionRing& ring, const FolnerSet& f, const Label& gamma);
/// |∂_γ F|_w / |F|_w.
double folner_ratio(const FusionRing& ring, const FolnerSet& f, const Label& gamma);

struct FolnerRow {
  int n = 0;
  std::size_t size = 0;
  double weighted_card = 0.0;
  std::vector<Ratio> ratios;  ///< one per tested generator
  double max_ratio = 0.0;
};

struct FolnerProfile {
  std::vector<Label> generators;
  std::vector<FolnerRow> rows;
  bool decreasing = true;  ///< max ratio nonincreasing along the rows
  bool truncated = false;  ///< stopped early (size cap or overflowing weights)
  std::string stop_reason;
  double epsilon = 0.0;
  bool passed = false;     ///< final max ratio ≤ epsilon
};

/// Only the ring's generators are tested; the limit over every γ is not.
inline constexpr const char* kGeneratorCaveat =
    "ratios are tested on generators only; the limit for every basis label is not checked";

struct BallProfileOptions {
  std::size_t cap = kDefaultBallCap;
  bool stop_at_cap = false;  ///< truncate instead of throwing SizeCapExceeded
  double epsilon = 0.0;
};

/// F_n = ball(n) for n = 1..n_max. Stops early (truncated) when the weighted
/// cardinality overflows a double.
FolnerProfile ball_profile(const FusionRing& ring, int n_max, const BallProfileOptions& options = {});

FolnerProfile verify_sequence(const FusionRing& ring, const std::vector<FolnerSet>& sets,
                              const std::vector<Label>& generators, double epsilon);

struct GreedyOptions {
  std::size_t cap = kDefaultBallCap;
  /// Ball growth stops once the max ratio improves by less than this.
  double min_gain = 1e-4;
};

struct GreedyResult {
  bool found = false;
  std::optional<FolnerSet> set;  ///< the witness, or the best set seen
  double best_ratio = 0.0;
  int evaluations = 0;
  int best_radius = -1;          ///< radius of the best ball before local moves
  std::string reason;
};

/// Grows balls, then applies local moves (add an outer label / remove an
/// inner label, whichever lowers the max generator ratio most; ties go to
/// the canonically smallest label). Each candidate set costs one evaluation.
/// NotFound (found = false) is not a non-amenability claim.
GreedyResult greedy_search(const FusionRing& ring, double target_ratio, int budget,
                           const GreedyOptions& options = {});

}  // namespace fusalg
