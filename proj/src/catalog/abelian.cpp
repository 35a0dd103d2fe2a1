#include <algorithm>
#include <charconv>

#include "rings.hpp"

namespace fusalg::detail {

std::optional<std::int64_t> parse_canonical_int(std::string_view s) {
  if (s.empty() || s.size() > 16) return std::nullopt;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return std::nullopt;
  if (s[i] == '0' && (s.size() > i + 1 || i == 1)) return std::nullopt;  // no leading zeros, no -0
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// ---------------------------------------------------------------- ℤ^d

FreeAbelianRing::FreeAbelianRing(int rank) : rank_(rank) {
  if (rank < 1) throw Error(ErrorKind::InvalidSpec, "free_abelian rank must be >= 1");
}

std::string FreeAbelianRing::name() const { return "free_abelian(" + std::to_string(rank_) + ")"; }

Label FreeAbelianRing::unit() const { return format(std::vector<std::int64_t>(rank_, 0)); }

std::vector<Label> FreeAbelianRing::generators() const {
  std::vector<Label> out;
  for (int i = 0; i < rank_; ++i) {
    std::vector<std::int64_t> v(rank_, 0);
    v[i] = 1;
    out.push_back(format(v));
  }
  return out;
}

std::optional<std::vector<std::int64_t>> FreeAbelianRing::parse(const Label& l) const {
  std::string_view s = l.str();
  if (rank_ == 1) {
    auto v = parse_canonical_int(s);
    if (!v) return std::nullopt;
    return std::vector<std::int64_t>{*v};
  }
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return std::nullopt;
  s = s.substr(1, s.size() - 2);
  std::vector<std::int64_t> out;
  while (true) {
    const auto comma = s.find(',');
    auto v = parse_canonical_int(s.substr(0, comma));
    if (!v) return std::nullopt;
    out.push_back(*v);
    if (comma == std::string_view::npos) break;
    s = s.substr(comma + 1);
  }
  if (static_cast<int>(out.size()) != rank_) return std::nullopt;
  return out;
}

Label FreeAbelianRing::format(const std::vector<std::int64_t>& v) const {
  if (rank_ == 1) return Label{std::to_string(v[0])};
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  s += ')';
  return Label{std::move(s)};
}

std::vector<std::int64_t> FreeAbelianRing::require(const Label& l) const {
  auto v = parse(l);
  if (!v) throw Error(ErrorKind::InvalidLabel, "'" + l.str() + "' is not a basis label of " + name());
  return *v;
}

double FreeAbelianRing::dim(const Label& l) const {
  require(l);
  return 1.0;
}

std::optional<std::int64_t> FreeAbelianRing::exact_dim(const Label& l) const {
  require(l);
  return 1;
}

Label FreeAbelianRing::conj(const Label& l) const {
  auto v = require(l);
  for (auto& x : v) x = -x;
  return format(v);
}

FusionProduct FreeAbelianRing::fuse(const Label& a, const Label& b) const {
  auto x = require(a);
  const auto y = require(b);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return {{format(x), 1}};
}

bool FreeAbelianRing::less(const Label& a, const Label& b) const {
  auto x = parse(a);
  auto y = parse(b);
  if (!x || !y) return FusionRing::less(a, b);
  return *x < *y;
}

// ---------------------------------------------------------------- ℤ/m

CyclicRing::CyclicRing(int order) : order_(order) {
  if (order < 2) throw Error(ErrorKind::InvalidSpec, "cyclic order must be >= 2");
}

std::string CyclicRing::name() const { return "cyclic(" + std::to_string(order_) + ")"; }

std::vector<Label> CyclicRing::generators() const { return {Label{"1"}}; }

bool CyclicRing::is_valid(const Label& l) const {
  auto v = parse_canonical_int(l.str());
  return v && *v >= 0 && *v < order_;
}

std::int64_t CyclicRing::require(const Label& l) const {
  require_valid(l);
  return *parse_canonical_int(l.str());
}

double CyclicRing::dim(const Label& l) const {
  require(l);
  return 1.0;
}

std::optional<std::int64_t> CyclicRing::exact_dim(const Label& l) const {
  require(l);
  return 1;
}

Label CyclicRing::conj(const Label& l) const {
  return Label{std::to_string((order_ - require(l)) % order_)};
}

FusionProduct CyclicRing::fuse(const Label& a, const Label& b) const {
  return {{Label{std::to_string((require(a) + require(b)) % order_)}, 1}};
}

std::vector<Label> CyclicRing::basis() const {
  std::vector<Label> out;
  for (int i = 0; i < order_; ++i) out.emplace_back(std::to_string(i));
  return out;
}

bool CyclicRing::less(const Label& a, const Label& b) const {
  auto x = parse_canonical_int(a.str());
  auto y = parse_canonical_int(b.str());
  if (!x || !y) return FusionRing::less(a, b);
  return *x < *y;
}

}  // namespace fusalg::detail
