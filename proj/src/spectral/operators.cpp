#include "fusalg/spectral/operators.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

namespace fusalg {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Σ_ξ c(ξ) K_ξ with K_ξ[α, η] = N^α_{ξ,η} / d(ξ) (left) or N^α_{η,ξ} / d(ξ) (right).
template <bool Left>
SparseMatrix assemble(const FusionRing& ring, const SparseWeights& coeffs, const Window& window) {
  const auto n = static_cast<std::ptrdiff_t>(window.size());
  std::vector<std::pair<Label, double>> terms;
  for (const auto& [xi, c] : coeffs) {
    if (c != 0.0) terms.emplace_back(xi, c / ring.dim(xi));
  }
  Triplets triplets;
#pragma omp parallel
  {
    Triplets local;
#pragma omp for schedule(dynamic, 256) nowait
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      const Label& eta = window[static_cast<std::size_t>(j)];
      for (const auto& [xi, scale] : terms) {
        const auto product = Left ? ring.fuse(xi, eta) : ring.fuse(eta, xi);
        for (const auto& [alpha, m] : product) {
          if (auto i = window.find(alpha)) {
            local.emplace_back(static_cast<int>(*i), static_cast<int>(j), scale * static_cast<double>(m));
          }
        }
      }
    }
#pragma omp critical
    triplets.insert(triplets.end(), local.begin(), local.end());
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

// Schur test: for any positive p, ‖A‖² ≤ max_α (Σ_η |A_αη| p_η)/p_α · max_η (Σ_α |A_αη| p_α)/p_η.
double schur_bound(const SparseMatrix& m, const std::vector<double>& p) {
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<double> row(n, 0.0), col(n, 0.0);
  for (Eigen::Index i = 0; i < m.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) {
      const auto r = static_cast<std::size_t>(it.row());
      const auto c = static_cast<std::size_t>(it.col());
      row[r] += std::abs(it.value()) * p[c];
      col[c] += std::abs(it.value()) * p[r];
    }
  }
  double max_row = 0.0, max_col = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    max_row = std::max(max_row, row[i] / p[i]);
    max_col = std::max(max_col, col[i] / p[i]);
  }
  return std::sqrt(max_row * max_col);
}

double norm_bound(const FusionRing& ring, const SparseMatrix& m, const Window& window) {
  const std::vector<double> ones(window.size(), 1.0);
  double bound = schur_bound(m, ones);
  std::vector<double> dims;
  dims.reserve(window.size());
  for (const auto& l : window.labels()) dims.push_back(ring.dim(l));
  bool finite = true;
  for (double d : dims) finite = finite && std::isfinite(d);
  if (finite) bound = std::min(bound, schur_bound(m, dims));
  return bound;
}

}  // namespace

CompressedOperator l_operator(const FusionRing& ring, const Label& xi, const Window& window) {
  ring.require_valid(xi);
  CompressedOperator op{window, assemble<true>(ring, {{xi, 1.0}}, window), false, 0.0};
  op.self_adjoint = ring.conj(xi) == xi;
  op.norm_bound = norm_bound(ring, op.matrix, window);
  return op;
}

CompressedOperator rho_operator(const FusionRing& ring, const Label& xi, const Window& window) {
  ring.require_valid(xi);
  CompressedOperator op{window, assemble<false>(ring, {{xi, 1.0}}, window), false, 0.0};
  op.self_adjoint = ring.conj(xi) == xi;
  op.norm_bound = norm_bound(ring, op.matrix, window);
  return op;
}

CompressedOperator lambda_dirac_matrix(const FusionRing& ring, const Label& xi, const Window& window) {
  ring.require_valid(xi);
  const Label xi_bar = ring.conj(xi);
  Triplets triplets;
  for (std::size_t r = 0; r < window.size(); ++r) {
    for (const auto& [alpha, w] : dirac_convolve(ring, xi_bar, window[r])) {
      if (auto c = window.find(alpha)) triplets.emplace_back(static_cast<int>(r), static_cast<int>(*c), w);
    }
  }
  const auto n = static_cast<Eigen::Index>(window.size());
  CompressedOperator op{window, SparseMatrix(n, n), false, std::numeric_limits<double>::quiet_NaN()};
  op.matrix.setFromTriplets(triplets.begin(), triplets.end());
  op.matrix.makeCompressed();
  return op;
}

CompressedOperator lambda_operator(const FusionRing& ring, const FiniteMeasure& mu, const Window& window) {
  CompressedOperator op{window, assemble<true>(ring, mu.weights(), window), mu.is_symmetric(), 0.0};
  op.norm_bound = norm_bound(ring, op.matrix, window);
  return op;
}

SparseMatrix principal_submatrix(const SparseMatrix& m, const std::vector<std::size_t>& indices) {
  std::vector<std::ptrdiff_t> position(static_cast<std::size_t>(m.rows()), -1);
  for (std::size_t k = 0; k < indices.size(); ++k) position[indices[k]] = static_cast<std::ptrdiff_t>(k);
  Triplets triplets;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    for (SparseMatrix::InnerIterator it(m, static_cast<Eigen::Index>(indices[k])); it; ++it) {
      const auto c = position[static_cast<std::size_t>(it.col())];
      if (c >= 0) triplets.emplace_back(static_cast<int>(k), static_cast<int>(c), it.value());
    }
  }
  const auto n = static_cast<Eigen::Index>(indices.size());
  SparseMatrix out(n, n);
  out.setFromTriplets(triplets.begin(), triplets.end());
  out.makeCompressed();
  return out;
}

CompressedOperator restrict_to(const CompressedOperator& op, const FusionRing& ring,
                               const std::vector<std::size_t>& indices) {
  std::vector<Label> labels;
  labels.reserve(indices.size());
  for (auto i : indices) labels.push_back(op.window[i]);
  CompressedOperator out{Window(ring, std::move(labels)), principal_submatrix(op.matrix, indices),
                         op.self_adjoint, 0.0};
  out.norm_bound = std::isnan(op.norm_bound) ? op.norm_bound : norm_bound(ring, out.matrix, out.window);
  return out;
}

double asymmetry(const SparseMatrix& m) {
  const SparseMatrix t = m.transpose();
  const SparseMatrix diff = m - t;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < diff.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(diff, i); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

double WeightedVector::norm() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < window.size(); ++i) {
    sum += std::norm(entries[static_cast<Eigen::Index>(i)]) * window.weights()[i];
  }
  return std::sqrt(sum);
}

WeightedVector WeightedVector::normalized_indicator(const Window& window) {
  double mass = 0.0;
  for (double w : window.weights()) mass += w;
  return {window, Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(window.size()), 1.0 / std::sqrt(mass))};
}

WeightedVector WeightedVector::from_l_coordinates(const Window& window, const Eigen::VectorXcd& g) {
  WeightedVector f{window, g};
  for (std::size_t i = 0; i < window.size(); ++i) {
    f.entries[static_cast<Eigen::Index>(i)] /= std::sqrt(window.weights()[i]);
  }
  return f;
}

double almost_invariant_defect(const FusionRing& ring, const WeightedVector& f, const Label& gamma) {
  const double norm = f.norm();
  if (!(std::abs(norm - 1.0) <= kNormalizationTolerance)) {
    throw Error(ErrorKind::NotNormalized, "vector has norm " + std::to_string(norm) + ", expected 1");
  }
  ring.require_valid(gamma);
  const double d_gamma = ring.dim(gamma);
  // (λ_γ f)(η) = Σ_α f(α) d(α) N^α_{γ̄,η} / (d(γ) d(η)), and N^α_{γ̄,η} = N^η_{γ,α}.
  std::unordered_map<Label, Complex> image;
  for (std::size_t i = 0; i < f.window.size(); ++i) {
    const Complex fa = f.entries[static_cast<Eigen::Index>(i)];
    if (fa == Complex{}) continue;
    const Label& alpha = f.window[i];
    const double d_alpha = ring.dim(alpha);
    for (const auto& [eta, m] : ring.fuse(gamma, alpha)) {
      image[eta] += fa * (d_alpha * static_cast<double>(m) / (d_gamma * ring.dim(eta)));
    }
  }
  double sum = 0.0;
  for (const auto& [eta, value] : image) {
    Complex diff = value;
    if (auto i = f.window.find(eta)) diff -= f.entries[static_cast<Eigen::Index>(*i)];
    const double d = ring.dim(eta);
    sum += std::norm(diff) * d * d;
  }
  for (std::size_t i = 0; i < f.window.size(); ++i) {
    if (!image.contains(f.window[i])) sum += std::norm(f.entries[static_cast<Eigen::Index>(i)]) * f.window.weights()[i];
  }
  return std::sqrt(sum);
}

}  // namespace fusalg
