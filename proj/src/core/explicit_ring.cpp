#include "fusalg/core/explicit_ring.hpp"

#include <algorithm>
#include <cmath>

namespace fusalg {

ExplicitRing::ExplicitRing(Table table) : table_(std::move(table)) {
  const auto n = table_.basis.size();
  if (n == 0) throw Error(ErrorKind::InvalidSpec, "explicit ring needs a nonempty basis");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& entry = table_.basis[i];
    if (!index_.emplace(entry.label, i).second) {
      throw Error(ErrorKind::InvalidSpec, "duplicate basis label '" + entry.label.str() + "'");
    }
    if (!(entry.dim > 0.0) || !std::isfinite(entry.dim)) {
      throw Error(ErrorKind::InvalidSpec, "dimension of '" + entry.label.str() + "' must be positive");
    }
    if (entry.dim != std::round(entry.dim)) integer_dims_ = false;
  }
  auto need = [this](const Label& l, const char* what) {
    if (!index_.contains(l)) {
      throw Error(ErrorKind::InvalidSpec, std::string(what) + " '" + l.str() + "' is not in the basis");
    }
  };
  need(table_.unit, "unit");
  for (const auto& g : table_.generators) need(g, "generator");
  for (const auto& entry : table_.basis) need(entry.conj, "conjugate");

  products_.assign(n, std::vector<FusionProduct>(n));
  for (const auto& [pair, out] : table_.fusion) {
    need(pair.first, "fusion operand");
    need(pair.second, "fusion operand");
    FusionProduct prod;
    for (const auto& [g, m] : out) {
      need(g, "fusion output");
      if (m < 0) throw Error(ErrorKind::InvalidSpec, "negative multiplicity in fusion table");
      if (m > 0) prod.emplace_back(g, m);
    }
    std::sort(prod.begin(), prod.end(),
              [this](const auto& x, const auto& y) { return less(x.first, y.first); });
    products_[index_.at(pair.first)][index_.at(pair.second)] = std::move(prod);
  }
}

double ExplicitRing::dim(const Label& l) const {
  require_valid(l);
  return table_.basis[index_.at(l)].dim;
}

std::optional<std::int64_t> ExplicitRing::exact_dim(const Label& l) const {
  const double d = dim(l);
  if (d != std::round(d) || d > 9.0e18) return std::nullopt;
  return static_cast<std::int64_t>(d);
}

Label ExplicitRing::conj(const Label& l) const {
  require_valid(l);
  return table_.basis[index_.at(l)].conj;
}

FusionProduct ExplicitRing::fuse(const Label& a, const Label& b) const {
  require_valid(a);
  require_valid(b);
  return products_[index_.at(a)][index_.at(b)];
}

std::vector<Label> ExplicitRing::basis() const {
  std::vector<Label> out;
  for (const auto& e : table_.basis) out.push_back(e.label);
  return out;
}

bool ExplicitRing::less(const Label& a, const Label& b) const {
  auto ia = index_.find(a);
  auto ib = index_.find(b);
  if (ia == index_.end() || ib == index_.end()) return FusionRing::less(a, b);
  return ia->second < ib->second;
}

}  // namespace fusalg
