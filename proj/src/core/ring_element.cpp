#include "fusalg/core/ring_element.hpp"

#include <cmath>

namespace fusalg {

RingElement RingElement::dirac(const Label& label, Complex coeff) {
  RingElement e;
  e.add(label, coeff);
  return e;
}

void RingElement::add(const Label& label, Complex coeff) {
  auto [it, inserted] = coeffs_.try_emplace(label, coeff);
  if (!inserted) it->second += coeff;
  if (it->second == Complex{0.0, 0.0}) coeffs_.erase(it);
}

Complex RingElement::operator[](const Label& label) const {
  auto it = coeffs_.find(label);
  return it == coeffs_.end() ? Complex{} : it->second;
}

std::vector<Label> RingElement::support() const {
  std::vector<Label> out;
  out.reserve(coeffs_.size());
  for (const auto& [label, c] : coeffs_) out.push_back(label);
  return out;
}

RingElement multiply(const FusionRing& ring, const RingElement& x, const RingElement& y) {
  RingElement out;
  for (const auto& [a, xa] : x.coeffs()) {
    for (const auto& [b, yb] : y.coeffs()) {
      for (const auto& [g, n] : ring.fuse(a, b)) {
        out.add(g, xa * yb * static_cast<double>(n));
      }
    }
  }
  return out;
}

RingElement involute(const FusionRing& ring, const RingElement& x) {
  RingElement out;
  for (const auto& [a, xa] : x.coeffs()) out.add(ring.conj(a), std::conj(xa));
  return out;
}

SparseWeights dirac_convolve(const FusionRing& ring, const Label& xi, const Label& eta) {
  const double scale = ring.dim(xi) * ring.dim(eta);
  SparseWeights out;
  for (const auto& [alpha, n] : ring.fuse(xi, eta)) {
    out[alpha] += ring.dim(alpha) * static_cast<double>(n) / scale;
  }
  return out;
}

FiniteMeasure::FiniteMeasure(const FusionRing& ring, SparseWeights weights) {
  double total = 0.0;
  for (const auto& [label, w] : weights) {
    ring.require_valid(label);
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::NonProbability, "negative or non-finite weight at '" + label.str() + "'");
    }
    total += w;
    if (w > 0.0) weights_.emplace(label, w);
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw Error(ErrorKind::NonProbability, "weights sum to " + std::to_string(total));
  }
  symmetric_ = true;
  for (const auto& [label, w] : weights_) {
    auto it = weights_.find(ring.conj(label));
    double wc = it == weights_.end() ? 0.0 : it->second;
    if (std::abs(wc - w) > kProbabilityTolerance) {
      symmetric_ = false;
      break;
    }
  }
}

FiniteMeasure FiniteMeasure::dirac(const FusionRing& ring, const Label& label) {
  return FiniteMeasure(ring, {{label, 1.0}});
}

FiniteMeasure FiniteMeasure::uniform_generators(const FusionRing& ring) {
  auto gens = ring.symmetric_generators();
  if (gens.empty()) return dirac(ring, ring.unit());
  SparseWeights w;
  for (const auto& g : gens) w[g] = 1.0 / static_cast<double>(gens.size());
  return FiniteMeasure(ring, std::move(w));
}

FiniteMeasure FiniteMeasure::symmetrized_dirac(const FusionRing& ring, const Label& label) {
  ring.require_valid(label);
  Label c = ring.conj(label);
  if (c == label) return dirac(ring, label);
  return FiniteMeasure(ring, {{label, 0.5}, {c, 0.5}});
}

double FiniteMeasure::operator[](const Label& label) const {
  auto it = weights_.find(label);
  return it == weights_.end() ? 0.0 : it->second;
}

std::vector<Label> FiniteMeasure::support() const {
  std::vector<Label> out;
  for (const auto& [label, w] : weights_) out.push_back(label);
  return out;
}

FiniteMeasure measure_convolve(const FusionRing& ring, const FiniteMeasure& mu,
                               const FiniteMeasure& nu) {
  SparseWeights out;
  for (const auto& [xi, a] : mu.weights()) {
    for (const auto& [eta, b] : nu.weights()) {
      for (const auto& [alpha, w] : dirac_convolve(ring, xi, eta)) out[alpha] += a * b * w;
    }
  }
  return FiniteMeasure(ring, std::move(out));
}

}  // namespace fusalg
