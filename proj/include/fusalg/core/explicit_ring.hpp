#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "fusalg/core/fusion_ring.hpp"

namespace fusalg {

/// Finite fusion ring given by a full table. Labels keep the order in which
/// the basis was declared; that order is the canonical one.
class ExplicitRing final : public FusionRing {
 public:
  struct BasisEntry {
    Label label;
    double dim = 1.0;
    Label conj;
  };
  struct Table {
    std::string name;
    Label unit;
    std::vector<Label> generators;
    std::vector<BasisEntry> basis;
    /// (a, b) -> {γ: N}. Missing pairs fuse to the empty product.
    std::map<std::pair<Label, Label>, std::map<Label, Multiplicity>> fusion;
  };

  /// Validates structure (unit/conj/generators reference declared labels,
  /// dims positive, multiplicities nonnegative). Axioms are not checked
  /// here: a malformed table is still loadable so it can be diagnosed.
  explicit ExplicitRing(Table table);

  std::string name() const override { return table_.name; }
  Label unit() const override { return table_.unit; }
  std::vector<Label> generators() const override { return table_.generators; }
  bool is_valid(const Label& l) const override { return index_.contains(l); }
  double dim(const Label& l) const override;
  std::optional<std::int64_t> exact_dim(const Label& l) const override;
  Label conj(const Label& l) const override;
  FusionProduct fuse(const Label& a, const Label& b) const override;
  bool is_finite() const override { return true; }
  std::vector<Label> basis() const override;
  bool less(const Label& a, const Label& b) const override;
  bool integer_dimensions() const override { return integer_dims_; }

  const Table& table() const noexcept { return table_; }

 private:
  Table table_;
  std::unordered_map<Label, std::size_t> index_;
  std::vector<std::vector<FusionProduct>> products_;
  bool integer_dims_ = true;
};

}  // namespace fusalg
