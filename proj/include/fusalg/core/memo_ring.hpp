#pragma once

#include <cstddef>
#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "fusalg/core/fusion_ring.hpp"

namespace fusalg {

inline constexpr std::size_t kDefaultMemoCapacity = 1'000'000;

/// Decorator that caches fuse() results keyed by the canonical label pair.
/// The cache stops growing at `capacity` entries; lookups and inserts are
/// guarded by a shared mutex so one instance can serve several workers.
class MemoizedRing final : public FusionRing {
 public:
  explicit MemoizedRing(RingPtr inner, std::size_t capacity = kDefaultMemoCapacity);

  std::string name() const override { return inner_->name(); }
  Label unit() const override { return inner_->unit(); }
  std::vector<Label> generators() const override { return inner_->generators(); }
  bool is_valid(const Label& l) const override { return inner_->is_valid(l); }
  double dim(const Label& l) const override { return inner_->dim(l); }
  std::optional<std::int64_t> exact_dim(const Label& l) const override { return inner_->exact_dim(l); }
  Label conj(const Label& l) const override { return inner_->conj(l); }
  FusionProduct fuse(const Label& a, const Label& b) const override;
  bool is_finite() const override { return inner_->is_finite(); }
  std::vector<Label> basis() const override { return inner_->basis(); }
  bool less(const Label& a, const Label& b) const override { return inner_->less(a, b); }
  bool integer_dimensions() const override { return inner_->integer_dimensions(); }

  std::size_t cache_size() const;
  std::size_t capacity() const noexcept { return capacity_; }
  const RingPtr& inner() const noexcept { return inner_; }

 private:
  RingPtr inner_;
  std::size_t capacity_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::string, FusionProduct> cache_;
};

}  // namespace fusalg
