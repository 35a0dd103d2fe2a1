#include "fusalg/actions/averaging.hpp"

#include <cmath>
#include <sstream>

namespace fusalg {

namespace {

ActionVector subtract(const ActionVector& f, const ActionVector& g) {
  ActionVector out = f;
  for (const auto& [label, b] : g.entries) {
    auto it = out.entries.find(label);
    if (it == out.entries.end()) out.entries.emplace(label, -1.0 * b);
    else it->second = it->second - b;
  }
  return out;
}

std::vector<FolnerSet> ball_sets(const FusionRing& ring, const FolnerProfile& profile, std::size_t cap) {
  std::vector<FolnerSet> sets;
  if (profile.rows.empty()) return sets;
  const Window w = ball(ring, profile.rows.back().n, cap);
  for (const auto& row : profile.rows) {
    std::vector<Label> labels;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w.shells()[i] <= row.n) labels.push_back(w[i]);
    }
    sets.emplace_back(ring, std::move(labels));
  }
  return sets;
}

}  // namespace

AveragingResult average_state(const ModuleAction& action, const State& phi, const FolnerSet& f) {
  if (!(phi.algebra() == action.algebra())) throw Error(ErrorKind::AlgebraMismatch, "state and action differ in algebra");
  const auto& ring = action.ring();
  const Eigen::VectorXcd w = phi.dual();
  Eigen::VectorXcd avg = Eigen::VectorXcd::Zero(w.size());
  for (const auto& alpha : f.labels()) avg += ring.dim(alpha) * (action.char_op(alpha).transpose() * w);
  avg /= f.weighted_card();

  AveragingResult result{State::from_dual(action.algebra(), avg), {}, true};
  for (const auto& beta : ring.symmetric_generators()) {
    AveragingBound b;
    b.generator = beta;
    const double d = ring.dim(beta);
    b.measured = (action.char_op(beta).transpose() * avg - d * avg).cwiseAbs().maxCoeff();
    b.bound = d * folner_ratio(ring, f, beta);
    b.holds = b.measured <= b.bound + kAveragingSlack;
    result.bounds_hold = result.bounds_hold && b.holds;
    result.bounds.push_back(b);
  }
  return result;
}

SearchResult invariant_state_search(const ModuleAction& action, const State& phi0,
                                    const std::vector<FolnerSet>& sets, double tol) {
  std::vector<double> trace{max_generator_defect(action, phi0)};
  if (trace.back() <= tol) return {phi0, trace, -1};
  for (std::size_t i = 0; i < sets.size(); ++i) {
    auto averaged = average_state(action, phi0, sets[i]);
    trace.push_back(max_generator_defect(action, averaged.state));
    if (trace.back() <= tol) return {std::move(averaged.state), trace, static_cast<int>(i)};
  }
  std::ostringstream msg;
  msg << "no averaged state reached defect " << tol << " (last " << trace.back() << ")";
  throw NotConvergedError(msg.str(), trace);
}

AlgebraElement inner_A(const FiniteDimCStarAlgebra& algebra, const ActionVector& f, const ActionVector& g) {
  AlgebraElement sum = algebra.zero();
  for (const auto& [label, a] : f.entries) {
    algebra.require(a);
    auto it = g.entries.find(label);
    if (it == g.entries.end()) continue;
    algebra.require(it->second);
    sum = sum + multiply(a, adjoint(it->second));
  }
  for (const auto& [label, b] : g.entries) algebra.require(b);
  return sum;
}

double norm_2A(const FiniteDimCStarAlgebra& algebra, const ActionVector& f) {
  return std::sqrt(norm(inner_A(algebra, f, f)));
}

ActionVector twisted_convolve(const ModuleAction& action, const ActionVector& f, const ActionVector& g) {
  const auto& ring = action.ring();
  const auto& alg = action.algebra();
  ActionVector out;
  for (const auto& [alpha, a] : f.entries) {
    alg.require(a);
    const double d_alpha = ring.dim(alpha);
    const Superoperator sigma = action.char_op(alpha) / d_alpha;
    for (const auto& [beta, b] : g.entries) {
      alg.require(b);
      const AlgebraElement c = multiply(a, alg.from_vector(sigma * alg.to_vector(b)));
      for (const auto& [gamma, n] : ring.fuse(alpha, beta)) {
        const AlgebraElement term = (static_cast<double>(n) / d_alpha) * c;
        auto it = out.entries.find(gamma);
        if (it == out.entries.end()) out.entries.emplace(gamma, term);
        else it->second = it->second + term;
      }
    }
  }
  return out;
}

ActionVector canonical_xi(const ModuleAction& action, const FolnerSet& f) {
  ActionVector xi;
  const double scale = 1.0 / std::sqrt(f.weighted_card());
  const auto one = action.algebra().unit();
  for (const auto& alpha : f.labels()) xi.entries.emplace(alpha, (action.ring().dim(alpha) * scale) * one);
  return xi;
}

AmenabilityReport fa_amenability_check(const ModuleAction& action, const std::vector<ActionVector>& xi_sequence,
                                       const std::vector<double>& tolerances) {
  if (xi_sequence.empty() || tolerances.empty()) throw Error(ErrorKind::InvalidSpec, "empty ξ sequence or tolerances");
  const auto& alg = action.algebra();
  const auto one = alg.unit();
  const auto units = alg.basis();
  AmenabilityReport report;
  report.generators = action.ring().symmetric_generators();
  for (std::size_t n = 0; n < xi_sequence.size(); ++n) {
    const auto& xi = xi_sequence[n];
    AmenabilityRow row;
    row.n = static_cast<int>(n + 1);
    row.tolerance = tolerances[std::min(n, tolerances.size() - 1)];
    row.unit_residual = norm(inner_A(alg, xi, xi) - one);
    for (const auto& [label, x] : xi.entries) {
      for (const auto& a : units) {
        row.central_residual = std::max(row.central_residual, norm(multiply(x, a) - multiply(a, x)));
      }
    }
    for (const auto& g : report.generators) {
      ActionVector delta;
      delta.entries.emplace(g, one);
      const double r = norm_2A(alg, subtract(twisted_convolve(action, delta, xi), xi));
      row.convolution.push_back(r);
      row.max_convolution = std::max(row.max_convolution, r);
    }
    report.rows.push_back(std::move(row));
  }
  report.passed = report.rows.back().max_convolution <= report.rows.back().tolerance;
  return report;
}

HarnessReport theorem_harness(const ModuleAction& action, const HarnessConfig& config) {
  const auto& ring = action.ring();
  HarnessReport report;
  BallProfileOptions options;
  options.cap = config.folner_cap;
  options.stop_at_cap = true;
  options.epsilon = config.folner_tol;
  report.folner = ball_profile(ring, config.folner_n_max, options);
  report.notes.push_back(kGeneratorCaveat);
  if (report.folner.truncated) report.notes.push_back("Følner profile truncated: " + report.folner.stop_reason);
  report.ratios_vanish = !report.folner.rows.empty() && report.folner.decreasing && report.folner.passed;

  if (report.ratios_vanish) {
    report.direction = "amenable";
    const auto sets = ball_sets(ring, report.folner, config.folner_cap);
    std::vector<ActionVector> xis;
    std::vector<double> tolerances;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      xis.push_back(canonical_xi(action, sets[i]));
      tolerances.push_back(2.0 * std::sqrt(report.folner.rows[i].max_ratio) + 1e-9);
    }
    report.fa_amenability = fa_amenability_check(action, xis, tolerances);
    const State seed = config.seed_state ? *config.seed_state : State::point_mass(action.algebra(), 0);
    try {
      auto found = invariant_state_search(action, seed, sets, config.invariant_tol);
      report.invariant_trace = found.trace;
      report.invariant_defect = found.trace.back();
      report.invariant_found = true;
      report.invariant_index = found.index;
      report.invariant_state = std::move(found.state);
    } catch (const NotConvergedError& e) {
      report.invariant_trace = e.trace();
      report.invariant_defect = e.trace().back();
      report.notes.push_back(e.what());
    }
    return report;
  }

  std::vector<int> radii;
  for (int r = 1; r <= config.kesten_radius + 1; ++r) radii.push_back(r);
  try {
    KestenOptions kopt;
    kopt.cap = kDefaultBallCap;
    report.kesten = kesten_profile(ring, FiniteMeasure::uniform_generators(ring), radii, kopt);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SizeCapExceeded) throw;
    report.direction = "inconclusive";
    report.notes.push_back(e.what());
    return report;
  }
  report.verdict = amenability_verdict(report.kesten, config.plateau_window, config.gap_tol);
  report.notes.push_back(report.verdict->note);
  if (report.verdict->kind != VerdictKind::GapEvidence) {
    report.direction = "inconclusive";
    return report;
  }
  report.direction = "non-amenable-evidence";
  report.defect_lower_bound = 1.0 - report.kesten.back().lower_bound;
  const Window w = ball(ring, config.kesten_radius);
  const auto check = fa_amenability_check(action, {canonical_xi(action, FolnerSet::from_window(ring, w))}, {0.0});
  report.canonical_defect = check.rows.back().max_convolution;
  report.lower_bound_consistent = report.canonical_defect >= report.defect_lower_bound - 1e-12;
  report.notes.push_back("every unit vector supported in the radius-" + std::to_string(config.kesten_radius) +
                         " ball has max generator defect >= 1 - theta_" + std::to_string(config.kesten_radius + 1));
  return report;
}

}  // namespace fusalg
