#include "fusalg/core/window.hpp"

#include <algorithm>
#include <numeric>

namespace fusalg {

Window::Window(const FusionRing& ring, std::vector<Label> labels) : labels_(std::move(labels)) {
  for (const auto& l : labels_) ring.require_valid(l);
  sort_labels(ring, labels_);
  if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) {
    throw Error(ErrorKind::InvalidSpec, "window labels must be distinct");
  }
  weights_.reserve(labels_.size());
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    double d = ring.dim(labels_[i]);
    weights_.push_back(d * d);
    index_.emplace(labels_[i], i);
  }
}

std::optional<std::size_t> Window::find(const Label& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Window ball(const FusionRing& ring, int radius, std::size_t cap) {
  if (radius < 0) throw Error(ErrorKind::InvalidSpec, "ball radius must be nonnegative");
  const auto gens = ring.symmetric_generators();

  std::unordered_map<Label, int> shell_of;
  std::vector<Label> order{ring.unit()};
  shell_of.emplace(ring.unit(), 0);
  std::size_t shell_begin = 0;
  for (int r = 0; r < radius; ++r) {
    const std::size_t shell_end = order.size();
    for (std::size_t i = shell_begin; i < shell_end; ++i) {
      for (const auto& g : gens) {
        for (const auto& [gamma, n] : ring.fuse(g, order[i])) {
          if (shell_of.try_emplace(gamma, r + 1).second) {
            order.push_back(gamma);
            if (order.size() > cap) {
              throw Error(ErrorKind::SizeCapExceeded,
                          "ball of radius " + std::to_string(radius) + " exceeds " +
                              std::to_string(cap) + " elements");
            }
          }
        }
      }
    }
    if (order.size() == shell_end) break;  // closed: finite ring exhausted
    shell_begin = shell_end;
  }

  Window w(ring, std::move(order));
  w.shells_.reserve(w.size());
  for (const auto& l : w.labels_) w.shells_.push_back(shell_of.at(l));
  return w;
}

}  // namespace fusalg
