#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fusalg/catalog.hpp"
#include "fusalg/core/explicit_ring.hpp"

namespace fusalg::detail {

/// Canonical decimal integer: "0" or an optional '-' then a nonzero digit,
/// at most 15 digits so sums of labels cannot overflow.
std::optional<std::int64_t> parse_canonical_int(std::string_view text);

class FreeGroupRing final : public FusionRing {
 public:
  explicit FreeGroupRing(int rank);

  std::string name() const override;
  Label unit() const override { return Label{"e"}; }
  std::vector<Label> generators() const override;
  bool is_valid(const Label& l) const override;
  double dim(const Label& l) const override;
  std::optional<std::int64_t> exact_dim(const Label& l) const override;
  Label conj(const Label& l) const override;
  FusionProduct fuse(const Label& a, const Label& b) const override;
  bool is_finite() const override { return false; }
  bool less(const Label& a, const Label& b) const override;
  bool integer_dimensions() const override { return true; }

 private:
  int letter_rank(char c) const;  // a=0, A=1, b=2, B=3, ...; -1 if foreign
  int rank_;
  std::string alphabet_;
};

class FreeAbelianRing final : public FusionRing {
 public:
  explicit FreeAbelianRing(int rank);

  std::string name() const override;
  Label unit() const override;
  std::vector<Label> generators() const override;
  bool is_valid(const Label& l) const override { return parse(l).has_value(); }
  double dim(const Label& l) const override;
  std::optional<std::int64_t> exact_dim(const Label& l) const override;
  Label conj(const Label& l) const override;
  FusionProduct fuse(const Label& a, const Label& b) const override;
  bool is_finite() const override { return false; }
  bool less(const Label& a, const Label& b) const override;
  bool integer_dimensions() const override { return true; }

  std::optional<std::vector<std::int64_t>> parse(const Label& l) const;
  Label format(const std::vector<std::int64_t>& v) const;

 private:
  std::vector<std::int64_t> require(const Label& l) const;
  int rank_;
};

class CyclicRing final : public FusionRing {
 public:
  explicit CyclicRing(int order);

  std::string name() const override;
  Label unit() const override { return Label{"0"}; }
  std::vector<Label> generators() const override;
  bool is_valid(const Label& l) const override;
  double dim(const Label& l) const override;
  std::optional<std::int64_t> exact_dim(const Label& l) const override;
  Label conj(const Label& l) const override;
  FusionProduct fuse(const Label& a, const Label& b) const override;
  bool is_finite() const override { return true; }
  std::vector<Label> basis() const override;
  bool less(const Label& a, const Label& b) const override;
  bool integer_dimensions() const override { return true; }

 private:
  std::int64_t require(const Label& l) const;
  int order_;
};

/// SU(2)-type fusion rules on ℕ₀ with dimension recurrence
/// d_0 = 1, d_1 = N, d_{n+1} = N d_n - d_{n-1}. N = 2 is R(SU(2)).
class SpinChainRing final : public FusionRing {
 public:
  SpinChainRing(int n, std::string name);

  std::string name() const override { return name_; }
  Label unit() const override { return Label{"0"}; }
  std::vector<Label> generators() const override { return {Label{"1"}}; }
  bool is_valid(const Label& l) const override;
  double dim(const Label& l) const override;
  std::optional<std::int64_t> exact_dim(const Label& l) const override;
  Label conj(const Label& l) const override;
  FusionProduct fuse(const Label& a, const Label& b) const override;
  bool is_finite() const override { return false; }
  bool less(const Label& a, const Label& b) const override;
  bool integer_dimensions() const override { return true; }

 private:
  std::int64_t require(const Label& l) const;
  int n_;
  std::string name_;
  std::vector<double> dims_;               // until the recurrence overflows
  std::vector<std::int64_t> exact_dims_;   // until int64 overflows
};

class ProductRing final : public FusionRing {
 public:
  ProductRing(RingPtr left, RingPtr right);

  std::string name() const override;
  Label unit() const override;
  std::vector<Label> generators() const override;
  bool is_valid(const Label& l) const override;
  double dim(const Label& l) const override;
  std::optional<std::int64_t> exact_dim(const Label& l) const override;
  Label conj(const Label& l) const override;
  FusionProduct fuse(const Label& a, const Label& b) const override;
  bool is_finite() const override;
  std::vector<Label> basis() const override;
  bool less(const Label& a, const Label& b) const override;
  bool integer_dimensions() const override;

  /// Splits "(x,y)" at the top-level comma.
  static std::optional<std::pair<Label, Label>> split(const Label& l);
  static Label join(const Label& x, const Label& y);

 private:
  std::pair<Label, Label> require(const Label& l) const;
  RingPtr left_;
  RingPtr right_;
};

ExplicitRing::Table ising_table();

/// Fusion table of a finite group's representation ring computed from its
/// character table by N^k_{ij} = (1/|G|) Σ_c |c| χ_i(c) χ_j(c) conj(χ_k(c)).
ExplicitRing::Table group_character_table(const std::string& name);

}  // namespace fusalg::detail
