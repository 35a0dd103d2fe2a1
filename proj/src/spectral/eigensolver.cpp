#include "fusalg/spectral/eigensolver.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <random>

namespace fusalg {

namespace {

[[noreturn]] void no_convergence(const char* method, int iterations) {
  throw Error(ErrorKind::NoConvergence,
              std::string(method) + " did not converge in " + std::to_string(iterations) + " iterations");
}

// Positive start vector; a nonnegative matrix's Perron vector is never
// orthogonal to it. Matrices with negative entries get a seeded jitter.
Eigen::VectorXd start_vector(const SparseMatrix& m) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(m.rows());
  bool nonnegative = true;
  for (Eigen::Index i = 0; i < m.nonZeros(); ++i) nonnegative = nonnegative && m.valuePtr()[i] >= 0.0;
  if (!nonnegative) {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> jitter(0.5, 1.5);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = jitter(rng);
  }
  return v.normalized();
}

// Number of eigenvalues of the symmetric tridiagonal (a, b) below x.
Eigen::Index count_below(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double x) {
  Eigen::Index count = 0;
  double q = 1.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double off = i == 0 ? 0.0 : b[i - 1] * b[i - 1];
    q = a[i] - x - (i == 0 ? 0.0 : off / q);
    if (q == 0.0) q = -std::numeric_limits<double>::min();
    if (q < 0.0) ++count;
  }
  return count;
}

EigenResult sturm_bisection(const SparseMatrix& m, int max_iter) {
  const Eigen::Index n = m.rows();
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index i = 0; i < m.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) {
      if (it.col() == it.row()) a[it.row()] = it.value();
      else if (it.col() == it.row() + 1) b[it.row()] = it.value();
    }
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(b[i - 1]) : 0.0) + (i + 1 < n ? std::abs(b[i]) : 0.0);
    lo = std::min(lo, a[i] - r);
    hi = std::max(hi, a[i] + r);
  }
  EigenResult out;
  out.method = EigenMethod::Tridiagonal;
  while (true) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (++out.iterations > max_iter) no_convergence("bisection", max_iter);
    if (count_below(a, b, mid) == n) hi = mid;
    else lo = mid;
  }
  out.value = hi;
  out.residual = hi - lo;
  return out;
}

EigenResult lanczos(const SparseMatrix& m, double tol, int max_iter) {
  const Eigen::Index n = m.rows();
  EigenResult out;
  out.method = EigenMethod::Lanczos;
  Eigen::VectorXd v = start_vector(m);
  Eigen::VectorXd v_prev = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd w(n);
  std::vector<double> alphas, betas;
  double beta = 0.0;
  double scale = 0.0;
  int next_check = 1;
  for (int k = 1; k <= max_iter; ++k) {
    w.noalias() = m * v;
    w -= beta * v_prev;
    const double alpha = w.dot(v);
    w -= alpha * v;
    alphas.push_back(alpha);
    const double b = w.norm();
    scale = std::max(scale, std::abs(alpha) + b + beta);
    const bool breakdown = b <= 1e-13 * std::max(scale, 1.0) || k == n;
    if (breakdown || k >= next_check) {
      next_check = std::max(k + 1, static_cast<int>(k * 1.25));
      Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alphas.data(), k);
      Eigen::VectorXd sub = Eigen::Map<Eigen::VectorXd>(betas.data(), k - 1);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz;
      ritz.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      const double theta = ritz.eigenvalues()[k - 1];
      const double residual = b * std::abs(ritz.eigenvectors()(k - 1, k - 1));
      out.value = theta;
      out.iterations = k;
      out.residual = residual;
      if (k > 1) {
        const double gap = theta - ritz.eigenvalues()[k - 2];
        if (gap > residual) out.residual = std::min(residual, residual * residual / gap);
      }
      if (breakdown || out.residual <= tol) return out;
    }
    betas.push_back(b);
    v_prev.swap(v);
    v = w / b;
    beta = b;
  }
  no_convergence("Lanczos", max_iter);
}

EigenResult power(const SparseMatrix& m, double tol, int max_iter) {
  EigenResult out;
  out.method = EigenMethod::Power;
  Eigen::VectorXd x = start_vector(m);
  Eigen::VectorXd ax(m.rows());
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int k = 1; k <= max_iter; ++k) {
    ax.noalias() = m * x;
    const double rho = x.dot(ax);
    out.iterations = k;
    out.value = rho;
    if (std::abs(rho - previous) < tol / 10) {
      out.residual = (ax - rho * x).norm();
      return out;
    }
    previous = rho;
    x = (ax + x).normalized();  // shift by I keeps the top eigenvalue dominant
  }
  no_convergence("power iteration", max_iter);
}

}  // namespace

std::string_view to_string(EigenMethod m) {
  switch (m) {
    case EigenMethod::Auto: return "auto";
    case EigenMethod::Tridiagonal: return "tridiagonal";
    case EigenMethod::Lanczos: return "lanczos";
    case EigenMethod::Power: return "power";
  }
  return "auto";
}

EigenMethod parse_eigen_method(std::string_view name) {
  for (auto m : {EigenMethod::Auto, EigenMethod::Tridiagonal, EigenMethod::Lanczos, EigenMethod::Power}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorKind::ParseError, "unknown eigen method '" + std::string(name) + "'");
}

bool is_tridiagonal(const SparseMatrix& m) {
  for (Eigen::Index i = 0; i < m.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) {
      if (std::abs(it.col() - it.row()) > 1 && it.value() != 0.0) return false;
    }
  }
  return true;
}

EigenResult top_eigenvalue(const SparseMatrix& matrix, double tol, int max_iter, EigenMethod method) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidSpec, "eigen tolerance must be positive");
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw Error(ErrorKind::InvalidSpec, "top_eigenvalue needs a nonempty square matrix");
  }
  if (method == EigenMethod::Auto) method = is_tridiagonal(matrix) ? EigenMethod::Tridiagonal : EigenMethod::Lanczos;
  switch (method) {
    case EigenMethod::Tridiagonal:
      if (!is_tridiagonal(matrix)) throw Error(ErrorKind::InvalidSpec, "matrix is not tridiagonal");
      return sturm_bisection(matrix, max_iter);
    case EigenMethod::Power:
      return power(matrix, tol, max_iter);
    default:
      return lanczos(matrix, tol, max_iter);
  }
}

EigenResult top_eigenvalue(const CompressedOperator& op, double tol, int max_iter, EigenMethod method) {
  if (!op.self_adjoint) throw Error(ErrorKind::InvalidSpec, "top_eigenvalue needs a self-adjoint operator");
  return top_eigenvalue(op.matrix, tol, max_iter, method);
}

}  // namespace fusalg
