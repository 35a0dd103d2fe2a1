#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fusalg/core/errors.hpp"
#include "fusalg/core/label.hpp"

namespace fusalg {

using Multiplicity = std::int64_t;

/// Sparse result of fusing two basis elements: {γ : N^γ_{α,β}} with only
/// nonzero multiplicities, sorted by the ring's canonical label order.
using FusionProduct = std::vector<std::pair<Label, Multiplicity>>;

Multiplicity coefficient(const FusionProduct& product, const Label& gamma);

/// A based ring with nonnegative structure constants, a basis involution and
/// a dimension function. Implementations are immutable once constructed and
/// may be shared freely between threads.
///
/// Infinite rings evaluate `fuse` on demand; `basis()` is only available when
/// `is_finite()` holds.
class FusionRing {
 public:
  virtual ~FusionRing() = default;

  virtual std::string name() const = 0;
  virtual Label unit() const = 0;
  virtual std::vector<Label> generators() const = 0;
  virtual bool is_valid(const Label& label) const = 0;

  virtual double dim(const Label& label) const = 0;
  /// Exact integer dimension when the ring has one and it fits in 64 bits.
  virtual std::optional<std::int64_t> exact_dim(const Label& label) const = 0;

  virtual Label conj(const Label& label) const = 0;
  virtual FusionProduct fuse(const Label& a, const Label& b) const = 0;

  virtual bool is_finite() const = 0;
  virtual std::vector<Label> basis() const;

  /// Canonical total order on labels used for windows, reports and tie-breaks.
  /// Defaults to shortlex on the key string.
  virtual bool less(const Label& a, const Label& b) const;

  /// True when every dimension is an exact integer (then axiom checks and
  /// weighted cardinalities are done in integer arithmetic).
  virtual bool integer_dimensions() const = 0;

  /// N^gamma_{a,b}.
  Multiplicity multiplicity(const Label& a, const Label& b, const Label& gamma) const;

  /// Generators together with their conjugates, deduplicated, canonical order.
  std::vector<Label> symmetric_generators() const;

  void require_valid(const Label& label) const;
};

using RingPtr = std::shared_ptr<const FusionRing>;

/// Sort labels in place by the ring's canonical order.
void sort_labels(const FusionRing& ring, std::vector<Label>& labels);

}  // namespace fusalg
