#include "fusalg/core/fusion_ring.hpp"

#include <algorithm>

namespace fusalg {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidLabel: return "InvalidLabel";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::NonProbability: return "NonProbability";
    case ErrorKind::NonSymmetricMeasure: return "NonSymmetricMeasure";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::InconsistentRelations: return "InconsistentRelations";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NoAlphaMap: return "NoAlphaMap";
    case ErrorKind::UnreachableLabel: return "UnreachableLabel";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::InvalidState: return "InvalidState";
  }
  return "Unknown";
}

Multiplicity coefficient(const FusionProduct& product, const Label& gamma) {
  for (const auto& [label, mult] : product) {
    if (label == gamma) return mult;
  }
  return 0;
}

std::vector<Label> FusionRing::basis() const {
  throw Error(ErrorKind::InvalidSpec, "ring '" + name() + "' has an infinite basis");
}

bool FusionRing::less(const Label& a, const Label& b) const {
  const auto& x = a.str();
  const auto& y = b.str();
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

Multiplicity FusionRing::multiplicity(const Label& a, const Label& b, const Label& gamma) const {
  return coefficient(fuse(a, b), gamma);
}

std::vector<Label> FusionRing::symmetric_generators() const {
  std::vector<Label> out;
  for (const auto& g : generators()) {
    out.push_back(g);
    out.push_back(conj(g));
  }
  sort_labels(*this, out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void FusionRing::require_valid(const Label& label) const {
  if (!is_valid(label)) {
    throw Error(ErrorKind::InvalidLabel, "'" + label.str() + "' is not a basis label of " + name());
  }
}

void sort_labels(const FusionRing& ring, std::vector<Label>& labels) {
  std::sort(labels.begin(), labels.end(),
            [&ring](const Label& a, const Label& b) { return ring.less(a, b); });
}

}  // namespace fusalg
