#pragma once

#include <string>
#include <vector>

#include "fusalg/spectral/eigensolver.hpp"

namespace fusalg {

struct KestenRow {
  int radius = 0;
  std::size_t window_size = 0;
  double lower_bound = 0.0;
  int iterations = 0;
  double seconds = 0.0;
};

struct KestenOptions {
  double tol = kDefaultEigenTolerance;
  int max_iter = kDefaultEigenMaxIter;
  EigenMethod method = EigenMethod::Auto;
  std::size_t cap = kDefaultBallCap;
};

/// Top eigenvalues of the compressions of λ_{2,μ} to the balls B_r. Each is
/// a lower bound for sup Spec λ_{2,μ}; they are nondecreasing in r.
/// Throws NonSymmetricMeasure, SizeCapExceeded, InvalidSpec (radii not
/// strictly increasing or negative).
std::vector<KestenRow> kesten_profile(const FusionRing& ring, const FiniteMeasure& mu,
                                      const std::vector<int>& radii, const KestenOptions& options = {});

enum class VerdictKind { ApproachingOne, GapEvidence, Inconclusive };

std::string_view to_string(VerdictKind kind);

/// Numerical evidence only: compressions bound sup Spec from below, so
/// neither outcome is a proof.
struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  double value = 0.0;  ///< last lower bound
  std::string note;
};

/// ApproachingOne when the last bound is ≥ 1 − gap_tol; GapEvidence when the
/// last `plateau_window` (at least 2) bounds agree within gap_tol and the
/// last is ≤ 1 − 2·gap_tol; Inconclusive otherwise.
Verdict amenability_verdict(const std::vector<double>& bounds, int plateau_window, double gap_tol);
Verdict amenability_verdict(const std::vector<KestenRow>& profile, int plateau_window, double gap_tol);

}  // namespace fusalg
