#include <cmath>
#include <limits>

#include "rings.hpp"

namespace fusalg::detail {

SpinChainRing::SpinChainRing(int n, std::string name) : n_(n), name_(std::move(name)) {
  if (n < 2) throw Error(ErrorKind::InvalidSpec, "free_orthogonal parameter N must be >= 2");
  if (n == 2) return;  // d_k = k + 1 in closed form
  dims_ = {1.0, static_cast<double>(n)};
  while (std::isfinite(dims_.back())) {
    const auto k = dims_.size();
    dims_.push_back(n * dims_[k - 1] - dims_[k - 2]);
  }
  exact_dims_ = {1, n};
  while (true) {
    const auto k = exact_dims_.size();
    const __int128 next = static_cast<__int128>(n) * exact_dims_[k - 1] - exact_dims_[k - 2];
    if (next > std::numeric_limits<std::int64_t>::max()) break;
    exact_dims_.push_back(static_cast<std::int64_t>(next));
  }
}

bool SpinChainRing::is_valid(const Label& l) const {
  auto v = parse_canonical_int(l.str());
  return v && *v >= 0;
}

std::int64_t SpinChainRing::require(const Label& l) const {
  require_valid(l);
  return *parse_canonical_int(l.str());
}

double SpinChainRing::dim(const Label& l) const {
  const auto k = require(l);
  if (n_ == 2) return static_cast<double>(k + 1);
  if (k < static_cast<std::int64_t>(dims_.size())) return dims_[k];
  return std::numeric_limits<double>::infinity();
}

std::optional<std::int64_t> SpinChainRing::exact_dim(const Label& l) const {
  const auto k = require(l);
  if (n_ == 2) return k + 1;
  if (k < static_cast<std::int64_t>(exact_dims_.size())) return exact_dims_[k];
  return std::nullopt;
}

Label SpinChainRing::conj(const Label& l) const {
  require(l);
  return l;
}

FusionProduct SpinChainRing::fuse(const Label& a, const Label& b) const {
  const auto x = require(a);
  const auto y = require(b);
  FusionProduct out;
  for (auto c = x > y ? x - y : y - x; c <= x + y; c += 2) out.emplace_back(Label{std::to_string(c)}, 1);
  return out;
}

bool SpinChainRing::less(const Label& a, const Label& b) const {
  auto x = parse_canonical_int(a.str());
  auto y = parse_canonical_int(b.str());
  if (!x || !y) return FusionRing::less(a, b);
  return *x < *y;
}

}  // namespace fusalg::detail
