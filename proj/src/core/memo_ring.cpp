#include "fusalg/core/memo_ring.hpp"

#include <mutex>

namespace fusalg {

MemoizedRing::MemoizedRing(RingPtr inner, std::size_t capacity)
    : inner_(std::move(inner)), capacity_(capacity) {}

FusionProduct MemoizedRing::fuse(const Label& a, const Label& b) const {
  std::string key;
  key.reserve(a.str().size() + b.str().size() + 1);
  key.append(a.str()).push_back('\x1f');
  key.append(b.str());
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  FusionProduct result = inner_->fuse(a, b);
  std::unique_lock lock(mutex_);
  if (cache_.size() < capacity_) cache_.emplace(std::move(key), result);
  return result;
}

std::size_t MemoizedRing::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

}  // namespace fusalg
