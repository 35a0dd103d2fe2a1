#include "fusalg/actions/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <random>

namespace fusalg {

FiniteDimCStarAlgebra::FiniteDimCStarAlgebra(std::vector<int> block_sizes) : blocks_(std::move(block_sizes)) {
  if (blocks_.empty()) throw Error(ErrorKind::InvalidSpec, "an algebra needs at least one block");
  for (int n : blocks_) {
    if (n < 1) throw Error(ErrorKind::InvalidSpec, "block sizes must be positive");
    dimension_ += static_cast<Eigen::Index>(n) * n;
  }
}

FiniteDimCStarAlgebra FiniteDimCStarAlgebra::commutative(int points) {
  if (points < 1) throw Error(ErrorKind::InvalidSpec, "C(X) needs at least one point");
  return FiniteDimCStarAlgebra(std::vector<int>(static_cast<std::size_t>(points), 1));
}

FiniteDimCStarAlgebra FiniteDimCStarAlgebra::matrix(int n) { return FiniteDimCStarAlgebra({n}); }

AlgebraElement FiniteDimCStarAlgebra::zero() const {
  AlgebraElement a;
  for (int n : blocks_) a.push_back(Eigen::MatrixXcd::Zero(n, n));
  return a;
}

AlgebraElement FiniteDimCStarAlgebra::unit() const {
  AlgebraElement a;
  for (int n : blocks_) a.push_back(Eigen::MatrixXcd::Identity(n, n));
  return a;
}

std::vector<AlgebraElement> FiniteDimCStarAlgebra::basis() const {
  std::vector<AlgebraElement> out;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (int k = 0; k < blocks_[b]; ++k) {
      for (int j = 0; j < blocks_[b]; ++j) {
        auto e = zero();
        e[b](j, k) = 1.0;
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

void FiniteDimCStarAlgebra::require(const AlgebraElement& a) const {
  bool ok = a.size() == blocks_.size();
  for (std::size_t b = 0; ok && b < blocks_.size(); ++b) {
    ok = a[b].rows() == blocks_[b] && a[b].cols() == blocks_[b];
  }
  if (!ok) throw Error(ErrorKind::AlgebraMismatch, "element does not match the algebra's block shapes");
}

Eigen::VectorXcd FiniteDimCStarAlgebra::to_vector(const AlgebraElement& a) const {
  require(a);
  Eigen::VectorXcd v(dimension_);
  Eigen::Index at = 0;
  for (const auto& block : a) {
    v.segment(at, block.size()) = block.reshaped();
    at += block.size();
  }
  return v;
}

AlgebraElement FiniteDimCStarAlgebra::from_vector(const Eigen::VectorXcd& v) const {
  if (v.size() != dimension_) throw Error(ErrorKind::AlgebraMismatch, "vector length does not match the algebra");
  AlgebraElement a;
  Eigen::Index at = 0;
  for (int n : blocks_) {
    a.push_back(v.segment(at, static_cast<Eigen::Index>(n) * n).reshaped(n, n));
    at += static_cast<Eigen::Index>(n) * n;
  }
  return a;
}

namespace {

void same_shape(const AlgebraElement& a, const AlgebraElement& b) {
  bool ok = a.size() == b.size();
  for (std::size_t i = 0; ok && i < a.size(); ++i) ok = a[i].rows() == b[i].rows() && a[i].cols() == b[i].cols();
  if (!ok) throw Error(ErrorKind::AlgebraMismatch, "elements live in different algebras");
}

}  // namespace

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  same_shape(a, b);
  AlgebraElement c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  same_shape(a, b);
  AlgebraElement c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

AlgebraElement operator*(std::complex<double> s, const AlgebraElement& a) {
  AlgebraElement c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
  return c;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  same_shape(a, b);
  AlgebraElement c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * b[i];
  return c;
}

AlgebraElement adjoint(const AlgebraElement& a) {
  AlgebraElement c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i].adjoint();
  return c;
}

double norm(const AlgebraElement& a) {
  double n = 0.0;
  for (const auto& block : a) {
    if (block.size() == 1) {
      n = std::max(n, std::abs(block(0, 0)));
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block);
      n = std::max(n, svd.singularValues()(0));
    }
  }
  return n;
}

std::vector<AlgebraElement> random_elements(const FiniteDimCStarAlgebra& algebra, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<AlgebraElement> out;
  for (int c = 0; c < count; ++c) {
    auto a = algebra.zero();
    for (auto& block : a) {
      for (Eigen::Index k = 0; k < block.size(); ++k) block.data()[k] = {u(rng), u(rng)};
    }
    out.push_back(std::move(a));
  }
  return out;
}

State::State(const FiniteDimCStarAlgebra& algebra, std::vector<Eigen::MatrixXcd> densities)
    : algebra_(algebra), densities_(std::move(densities)) {
  try {
    algebra_.require(densities_);
  } catch (const Error&) {
    throw Error(ErrorKind::InvalidState, "density blocks do not match the algebra");
  }
  for (const auto& rho : densities_) {
    const double scale = std::max(1.0, rho.norm());
    if ((rho - rho.adjoint()).norm() > 1e-10 * scale) throw Error(ErrorKind::InvalidState, "density is not Hermitian");
  }
  if (min_eigenvalue() < kPositivityFloor) {
    throw Error(ErrorKind::InvalidState, "density has eigenvalue " + std::to_string(min_eigenvalue()));
  }
  if (std::abs(mass() - 1.0) > kMassTolerance) {
    throw Error(ErrorKind::InvalidState, "total mass " + std::to_string(mass()) + " is not 1");
  }
}

State State::normalized_trace(const FiniteDimCStarAlgebra& algebra) {
  int total = 0;
  for (int n : algebra.block_sizes()) total += n;
  std::vector<Eigen::MatrixXcd> rho;
  for (int n : algebra.block_sizes()) rho.push_back(Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(total));
  return State(algebra, std::move(rho));
}

State State::vector_state(const FiniteDimCStarAlgebra& algebra, int block, const Eigen::VectorXcd& v) {
  if (block < 0 || block >= static_cast<int>(algebra.block_sizes().size()) ||
      v.size() != algebra.block_sizes()[static_cast<std::size_t>(block)]) {
    throw Error(ErrorKind::InvalidState, "vector does not fit the chosen block");
  }
  auto rho = algebra.zero();
  rho[static_cast<std::size_t>(block)] = v * v.adjoint();
  return State(algebra, std::move(rho));
}

State State::point_mass(const FiniteDimCStarAlgebra& algebra, int block) {
  if (block < 0 || block >= static_cast<int>(algebra.block_sizes().size())) {
    throw Error(ErrorKind::InvalidState, "block index out of range");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(algebra.block_sizes()[static_cast<std::size_t>(block)]);
  v[0] = 1.0;
  return vector_state(algebra, block, v);
}

State State::from_dual(const FiniteDimCStarAlgebra& algebra, const Eigen::VectorXcd& w) {
  // φ(a) = Σ tr(ρ a) = Σ_{j,k} ρ_kj a_jk, and a_jk sits at j + k n.
  auto as_matrix = algebra.from_vector(w);
  std::vector<Eigen::MatrixXcd> rho;
  for (auto& m : as_matrix) rho.push_back(m.transpose());
  return State(algebra, std::move(rho));
}

std::complex<double> State::operator()(const AlgebraElement& a) const {
  algebra_.require(a);
  std::complex<double> sum = 0.0;
  for (std::size_t b = 0; b < a.size(); ++b) sum += (densities_[b] * a[b]).trace();
  return sum;
}

Eigen::VectorXcd State::dual() const {
  AlgebraElement t;
  for (const auto& rho : densities_) t.push_back(rho.transpose());
  return algebra_.to_vector(t);
}

double State::min_eigenvalue() const {
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& rho : densities_) {
    const Eigen::MatrixXcd h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    lowest = std::min(lowest, es.eigenvalues()(0));
  }
  return lowest;
}

double State::mass() const {
  double total = 0.0;
  for (const auto& rho : densities_) total += rho.trace().real();
  return total;
}

std::vector<State> random_states(const FiniteDimCStarAlgebra& algebra, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g;
  std::vector<State> out;
  const auto trace_state = State::normalized_trace(algebra);
  for (int c = 0; c < count; ++c) {
    std::vector<Eigen::MatrixXcd> rho;
    double total = 0.0;
    for (int n : algebra.block_sizes()) {
      Eigen::MatrixXcd m;
      if (c % 3 == 1) {
        m = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = u(rng);
      } else {
        Eigen::MatrixXcd x(n, n);
        for (Eigen::Index k = 0; k < x.size(); ++k) x.data()[k] = {g(rng), g(rng)};
        m = x * x.adjoint() * u(rng);
      }
      total += m.trace().real();
      rho.push_back(std::move(m));
    }
    for (auto& m : rho) m /= total;
    if (c % 3 == 2) {
      const double t = u(rng);
      for (std::size_t b = 0; b < rho.size(); ++b) rho[b] = t * rho[b] + (1.0 - t) * trace_state.densities()[b];
    }
    for (auto& m : rho) m = 0.5 * (m + m.adjoint()).eval();
    out.emplace_back(algebra, std::move(rho));
  }
  return out;
}

}  // namespace fusalg
