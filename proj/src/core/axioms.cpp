#include "fusalg/core/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace fusalg {

namespace {

constexpr std::size_t kMaxRecordedFailures = 16;

void record(AxiomCheck& check, double residual, double tol, std::vector<Label> witness) {
  ++check.evaluations;
  check.worst_residual = std::max(check.worst_residual, residual);
  if (residual > tol) {
    check.passed = false;
    if (check.failures.size() < kMaxRecordedFailures) check.failures.push_back(std::move(witness));
  }
}

struct PairHash {
  std::size_t operator()(const std::pair<Label, Label>& p) const noexcept {
    return std::hash<Label>{}(p.first) * 1000003u ^ std::hash<Label>{}(p.second);
  }
};

}  // namespace

bool AxiomReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const AxiomCheck* AxiomReport::find(const std::string& axiom) const {
  for (const auto& c : checks) {
    if (c.axiom == axiom) return &c;
  }
  return nullptr;
}

AxiomReport check_axioms(const FusionRing& ring, std::span<const Label> probe_in, double tolerance) {
  AxiomReport report;
  report.exact = ring.integer_dimensions();
  report.tolerance = report.exact ? 0.0 : tolerance;
  const double tol = report.tolerance;

  std::vector<Label> probe(probe_in.begin(), probe_in.end());
  for (const auto& l : probe_in) {
    ring.require_valid(l);
    probe.push_back(ring.conj(l));
  }
  sort_labels(ring, probe);
  probe.erase(std::unique(probe.begin(), probe.end()), probe.end());
  const std::unordered_set<Label> in_probe(probe.begin(), probe.end());

  std::unordered_map<std::pair<Label, Label>, FusionProduct, PairHash> cache;
  auto fuse = [&](const Label& a, const Label& b) -> const FusionProduct& {
    auto key = std::make_pair(a, b);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, ring.fuse(a, b)).first;
    return it->second;
  };
  auto n = [&](const Label& a, const Label& b, const Label& g) {
    return coefficient(fuse(a, b), g);
  };

  const Label e = ring.unit();

  AxiomCheck unit;
  unit.axiom = "unit";
  record(unit, std::abs(ring.dim(e) - 1.0), tol, {e});
  record(unit, ring.conj(e) == e ? 0.0 : 1.0, tol, {e});
  for (const auto& a : probe) {
    for (const auto* prod : {&fuse(e, a), &fuse(a, e)}) {
      double residual = 0.0;
      for (const auto& [g, m] : *prod) {
        residual += g == a ? std::abs(static_cast<double>(m - 1)) : static_cast<double>(m);
      }
      if (coefficient(*prod, a) == 0) residual += 1.0;
      record(unit, residual, tol, {e, a});
    }
  }

  AxiomCheck invol;
  invol.axiom = "involution";
  for (const auto& a : probe) {
    const Label c = ring.conj(a);
    record(invol, ring.conj(c) == a ? 0.0 : 1.0, tol, {a});
    const double da = ring.dim(a);
    record(invol, std::abs(ring.dim(c) - da) / std::max(1.0, da), tol, {a});
  }
  for (const auto& a : probe) {
    for (const auto& b : probe) {
      // conj(a ⊗ b) = b̄ ⊗ ā as multisets
      FusionProduct lhs;
      for (const auto& [g, m] : fuse(a, b)) lhs.emplace_back(ring.conj(g), m);
      std::sort(lhs.begin(), lhs.end(),
                [&ring](const auto& x, const auto& y) { return ring.less(x.first, y.first); });
      const auto& rhs = fuse(ring.conj(b), ring.conj(a));
      record(invol, lhs == rhs ? 0.0 : 1.0, tol, {a, b});
    }
  }

  AxiomCheck dimension;
  dimension.axiom = "dimension";
  for (const auto& a : probe) {
    const double da = ring.dim(a);
    record(dimension, da >= 1.0 - tol ? 0.0 : 1.0 - da, tol, {a});
  }
  for (const auto& a : probe) {
    for (const auto& b : probe) {
      const auto& prod = fuse(a, b);
      double residual = 0.0;
      bool exact = report.exact && ring.exact_dim(a) && ring.exact_dim(b);
      for (const auto& [g, m] : prod) exact = exact && ring.exact_dim(g).has_value();
      if (exact) {
        __int128 lhs = 0;
        for (const auto& [g, m] : prod) lhs += static_cast<__int128>(m) * *ring.exact_dim(g);
        const __int128 rhs = static_cast<__int128>(*ring.exact_dim(a)) * *ring.exact_dim(b);
        const __int128 diff = lhs > rhs ? lhs - rhs : rhs - lhs;
        residual = static_cast<double>(diff);
      } else {
        long double lhs = 0.0L;
        for (const auto& [g, m] : prod) lhs += static_cast<long double>(m) * ring.dim(g);
        const long double rhs = static_cast<long double>(ring.dim(a)) * ring.dim(b);
        residual = static_cast<double>(std::fabs(lhs - rhs) / rhs);
      }
      record(dimension, residual, tol, {a, b});
    }
  }

  AxiomCheck frob;
  frob.axiom = "frobenius";
  for (const auto& a : probe) {
    for (const auto& b : probe) {
      for (const auto& [g, m] : fuse(a, b)) {
        if (!in_probe.contains(g)) continue;
        // (a,b;g) -> (g,b̄;a) and (ā,g;b); both relabelings are involutions.
        const Multiplicity m1 = n(g, ring.conj(b), a);
        const Multiplicity m2 = n(ring.conj(a), g, b);
        const double residual =
            static_cast<double>(std::max(std::abs(m - m1), std::abs(m - m2)));
        record(frob, residual, 0.0, {a, b, g});
      }
    }
  }

  report.checks = {std::move(unit), std::move(invol), std::move(dimension), std::move(frob)};
  return report;
}

}  // namespace fusalg
