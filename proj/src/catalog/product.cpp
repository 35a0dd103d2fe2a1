#include <limits>

#include "rings.hpp"

namespace fusalg::detail {

ProductRing::ProductRing(RingPtr left, RingPtr right)
    : left_(std::move(left)), right_(std::move(right)) {}

std::string ProductRing::name() const {
  return "product(" + left_->name() + "," + right_->name() + ")";
}

std::optional<std::pair<Label, Label>> ProductRing::split(const Label& l) {
  const auto& s = l.str();
  if (s.size() < 5 || s.front() != '(' || s.back() != ')') return std::nullopt;
  int depth = 0;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == ',' && depth == 0) {
      return std::make_pair(Label{s.substr(1, i - 1)}, Label{s.substr(i + 1, s.size() - i - 2)});
    }
    if (depth < 0) return std::nullopt;
  }
  return std::nullopt;
}

Label ProductRing::join(const Label& x, const Label& y) {
  return Label{"(" + x.str() + "," + y.str() + ")"};
}

std::pair<Label, Label> ProductRing::require(const Label& l) const {
  auto parts = split(l);
  if (!parts || !left_->is_valid(parts->first) || !right_->is_valid(parts->second)) {
    throw Error(ErrorKind::InvalidLabel, "'" + l.str() + "' is not a basis label of " + name());
  }
  return *parts;
}

bool ProductRing::is_valid(const Label& l) const {
  auto parts = split(l);
  return parts && left_->is_valid(parts->first) && right_->is_valid(parts->second);
}

Label ProductRing::unit() const { return join(left_->unit(), right_->unit()); }

std::vector<Label> ProductRing::generators() const {
  std::vector<Label> out;
  for (const auto& g : left_->generators()) out.push_back(join(g, right_->unit()));
  for (const auto& h : right_->generators()) out.push_back(join(left_->unit(), h));
  return out;
}

double ProductRing::dim(const Label& l) const {
  auto [x, y] = require(l);
  return left_->dim(x) * right_->dim(y);
}

std::optional<std::int64_t> ProductRing::exact_dim(const Label& l) const {
  auto [x, y] = require(l);
  auto dx = left_->exact_dim(x);
  auto dy = right_->exact_dim(y);
  if (!dx || !dy) return std::nullopt;
  const __int128 p = static_cast<__int128>(*dx) * *dy;
  if (p > std::numeric_limits<std::int64_t>::max()) return std::nullopt;
  return static_cast<std::int64_t>(p);
}

Label ProductRing::conj(const Label& l) const {
  auto [x, y] = require(l);
  return join(left_->conj(x), right_->conj(y));
}

FusionProduct ProductRing::fuse(const Label& a, const Label& b) const {
  auto [a1, a2] = require(a);
  auto [b1, b2] = require(b);
  const auto p = left_->fuse(a1, b1);
  const auto q = right_->fuse(a2, b2);
  FusionProduct out;
  out.reserve(p.size() * q.size());
  for (const auto& [g1, m1] : p) {
    for (const auto& [g2, m2] : q) out.emplace_back(join(g1, g2), m1 * m2);
  }
  return out;  // lexicographic in (left, right) already
}

bool ProductRing::is_finite() const { return left_->is_finite() && right_->is_finite(); }

std::vector<Label> ProductRing::basis() const {
  std::vector<Label> out;
  for (const auto& x : left_->basis()) {
    for (const auto& y : right_->basis()) out.push_back(join(x, y));
  }
  return out;
}

bool ProductRing::less(const Label& a, const Label& b) const {
  auto x = split(a);
  auto y = split(b);
  if (!x || !y) return FusionRing::less(a, b);
  if (x->first != y->first) return left_->less(x->first, y->first);
  return right_->less(x->second, y->second);
}

bool ProductRing::integer_dimensions() const {
  return left_->integer_dimensions() && right_->integer_dimensions();
}

}  // namespace fusalg::detail
