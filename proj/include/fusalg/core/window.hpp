#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fusalg/core/fusion_ring.hpp"

namespace fusalg {

inline constexpr std::size_t kDefaultBallCap = 2'000'000;

/// Ordered finite truncation of the basis. Labels are distinct and kept in
/// the ring's canonical order; weights hold d(label)^2 (the μ₀ mass), which
/// may be +inf for labels whose dimension overflows a double.
class Window {
 public:
  Window() = default;
  /// Sorts and validates `labels`; duplicates are rejected with InvalidSpec.
  Window(const FusionRing& ring, std::vector<Label> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const Label& operator[](std::size_t i) const { return labels_[i]; }
  std::optional<std::size_t> find(const Label& label) const;
  bool contains(const Label& label) const { return index_.contains(label); }

  /// Breadth-first distance from the unit for each label; empty unless the
  /// window came from ball().
  const std::vector<int>& shells() const noexcept { return shells_; }

 private:
  friend Window ball(const FusionRing&, int, std::size_t);

  std::vector<Label> labels_;
  std::vector<double> weights_;
  std::vector<int> shells_;
  std::unordered_map<Label, std::size_t> index_;
};

/// B_0 = {e}; B_{r+1} = B_r ∪ supp(g ⊗ β) for g in the symmetric generating
/// set and β ∈ B_r. Throws SizeCapExceeded once the ball outgrows `cap`.
Window ball(const FusionRing& ring, int radius, std::size_t cap = kDefaultBallCap);

}  // namespace fusalg
