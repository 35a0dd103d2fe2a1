#include "fusalg/spectral/kesten.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace fusalg {

std::vector<KestenRow> kesten_profile(const FusionRing& ring, const FiniteMeasure& mu,
                                      const std::vector<int>& radii, const KestenOptions& options) {
  if (!mu.is_symmetric()) {
    throw Error(ErrorKind::NonSymmetricMeasure, "Kesten profile needs a symmetric measure");
  }
  if (radii.empty()) throw Error(ErrorKind::InvalidSpec, "no radii given");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] < 0 || (i > 0 && radii[i] <= radii[i - 1])) {
      throw Error(ErrorKind::InvalidSpec, "radii must be nonnegative and strictly increasing");
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  const Window window = ball(ring, radii.back(), options.cap);
  const CompressedOperator op = lambda_operator(ring, mu, window);
  double setup = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  // Window indices ordered by shell, so every ball is a prefix.
  std::vector<std::size_t> by_shell(window.size());
  for (std::size_t i = 0; i < by_shell.size(); ++i) by_shell[i] = i;
  std::stable_sort(by_shell.begin(), by_shell.end(),
                   [&](std::size_t x, std::size_t y) { return window.shells()[x] < window.shells()[y]; });

  std::vector<KestenRow> rows;
  std::size_t taken = 0;
  std::vector<std::size_t> indices;
  for (int r : radii) {
    const auto t = std::chrono::steady_clock::now();
    while (taken < by_shell.size() && window.shells()[by_shell[taken]] <= r) ++taken;
    EigenResult ev;
    if (taken == window.size()) {
      ev = top_eigenvalue(op.matrix, options.tol, options.max_iter, options.method);
    } else {
      indices.assign(by_shell.begin(), by_shell.begin() + static_cast<std::ptrdiff_t>(taken));
      std::sort(indices.begin(), indices.end());  // keep canonical order (tridiagonal stays tridiagonal)
      ev = top_eigenvalue(principal_submatrix(op.matrix, indices), options.tol, options.max_iter, options.method);
    }
    KestenRow row;
    row.radius = r;
    row.window_size = taken;
    row.lower_bound = ev.value;
    row.iterations = ev.iterations;
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count() + setup;
    setup = 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::ApproachingOne: return "ApproachingOne";
    case VerdictKind::GapEvidence: return "GapEvidence";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict amenability_verdict(const std::vector<double>& bounds, int plateau_window, double gap_tol) {
  if (bounds.empty()) throw Error(ErrorKind::InvalidSpec, "empty profile");
  if (!(gap_tol > 0.0)) throw Error(ErrorKind::InvalidSpec, "gap tolerance must be positive");
  const auto window = static_cast<std::size_t>(std::max(plateau_window, 2));
  Verdict v;
  v.value = bounds.back();
  std::ostringstream note;
  if (v.value >= 1.0 - gap_tol) {
    v.kind = VerdictKind::ApproachingOne;
    note << "last lower bound " << v.value << " is within " << gap_tol << " of 1";
  } else if (bounds.size() >= window) {
    const auto first = bounds.end() - static_cast<std::ptrdiff_t>(window);
    const auto [lo, hi] = std::minmax_element(first, bounds.end());
    if (*hi - *lo <= gap_tol && v.value <= 1.0 - 2.0 * gap_tol) {
      v.kind = VerdictKind::GapEvidence;
      note << "last " << window << " lower bounds agree within " << gap_tol << " at " << v.value;
    }
  }
  if (v.kind == VerdictKind::Inconclusive) note << "no plateau and no approach to 1 detected";
  note << "; compressions only bound sup Spec from below, so this is numerical evidence, not a proof";
  v.note = note.str();
  return v;
}

Verdict amenability_verdict(const std::vector<KestenRow>& profile, int plateau_window, double gap_tol) {
  std::vector<double> bounds;
  for (const auto& r : profile) bounds.push_back(r.lower_bound);
  return amenability_verdict(bounds, plateau_window, gap_tol);
}

}  // namespace fusalg
