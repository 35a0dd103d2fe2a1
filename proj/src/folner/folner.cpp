#include "fusalg/folner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fusalg {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

double max_of(const std::vector<Ratio>& ratios) {
  double m = 0.0;
  for (const auto& r : ratios) m = std::max(m, r.value);
  return m;
}

bool all_finite(const std::vector<Ratio>& ratios) {
  return std::all_of(ratios.begin(), ratios.end(), [](const Ratio& r) { return std::isfinite(r.value); });
}

FolnerRow make_row(const FusionRing& ring, int n, const FolnerSet& set, const std::vector<Label>& gens) {
  FolnerRow row;
  row.n = n;
  row.size = set.size();
  row.weighted_card = set.weighted_card();
  for (const auto& g : gens) row.ratios.push_back(folner_ratio_exact(ring, set, g));
  row.max_ratio = max_of(row.ratios);
  return row;
}

void finish(FolnerProfile& p) {
  for (std::size_t i = 1; i < p.rows.size(); ++i) {
    if (p.rows[i].max_ratio > p.rows[i - 1].max_ratio + 1e-15) p.decreasing = false;
  }
  p.passed = !p.rows.empty() && p.rows.back().max_ratio <= p.epsilon;
}

std::vector<Label> prefix_by_shell(const Window& w, int n) {
  std::vector<Label> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w.shells()[i] <= n) out.push_back(w[i]);
  }
  return out;
}

}  // namespace

std::string int128_to_string(__int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (negative) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

WeightedMass weighted_mass(const FusionRing& ring, const std::vector<Label>& labels) {
  WeightedMass m;
  m.exact = ring.integer_dimensions();
  for (const auto& l : labels) {
    const double d = ring.dim(l);
    m.value += d * d;
    if (!m.exact) continue;
    const auto e = ring.exact_dim(l);
    __int128 sq = 0;
    if (!e || __builtin_mul_overflow(static_cast<__int128>(*e), static_cast<__int128>(*e), &sq) ||
        __builtin_add_overflow(m.exact_value, sq, &m.exact_value)) {
      m.exact = false;
    }
  }
  if (m.exact) m.value = static_cast<double>(m.exact_value);
  return m;
}

FolnerSet::FolnerSet(const FusionRing& ring, std::vector<Label> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error(ErrorKind::InvalidSpec, "a Følner set must be nonempty");
  for (const auto& l : labels_) ring.require_valid(l);
  sort_labels(ring, labels_);
  if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) {
    throw Error(ErrorKind::InvalidSpec, "Følner set labels must be distinct");
  }
  members_.reserve(labels_.size());
  members_.insert(labels_.begin(), labels_.end());
  mass_ = weighted_mass(ring, labels_);
}

FolnerSet FolnerSet::from_window(const FusionRing& ring, const Window& window) {
  return FolnerSet(ring, window.labels());
}

std::vector<Label> Boundary::all(const FusionRing& ring) const {
  std::vector<Label> out = inner;
  out.insert(out.end(), outer.begin(), outer.end());
  sort_labels(ring, out);
  return out;
}

Boundary boundary_with_certificates(const FusionRing& ring, const FolnerSet& f, const Label& gamma) {
  ring.require_valid(gamma);
  const Label gamma_bar = ring.conj(gamma);
  Boundary b;
  for (const auto& alpha : f.labels()) {
    for (const auto& [beta, m] : ring.fuse(alpha, gamma)) {
      if (!f.contains(beta)) {
        b.inner.push_back(alpha);
        b.certificates.push_back({alpha, beta, true});
        break;
      }
    }
  }
  std::unordered_set<Label> seen;
  for (const auto& beta : f.labels()) {
    for (const auto& [alpha, m] : ring.fuse(beta, gamma_bar)) {
      if (f.contains(alpha) || seen.contains(alpha)) continue;
      if (coefficient(ring.fuse(alpha, gamma), beta) > 0) {
        seen.insert(alpha);
        b.outer.push_back(alpha);
        b.certificates.push_back({alpha, beta, false});
      } else {
        b.violations.push_back({alpha, beta, false});
      }
    }
  }
  sort_labels(ring, b.outer);
  return b;
}

std::vector<Label> boundary(const FusionRing& ring, const FolnerSet& f, const Label& gamma) {
  return boundary_with_certificates(ring, f, gamma).all(ring);
}

std::size_t cross_check_certificates(const FusionRing& ring, const FolnerSet& f, const Label& gamma) {
  const Label gamma_bar = ring.conj(gamma);
  const auto forward = boundary_with_certificates(ring, f, gamma);
  const auto backward = boundary_with_certificates(ring, f, gamma_bar);
  const std::unordered_set<Label> back_inner(backward.inner.begin(), backward.inner.end());
  const std::unordered_set<Label> back_outer(backward.outer.begin(), backward.outer.end());
  std::size_t mismatches = forward.violations.size();
  for (const auto& c : forward.certificates) {
    const bool witnessed = coefficient(ring.fuse(c.alpha, gamma), c.beta) > 0 &&
                           f.contains(c.alpha) == c.inner && f.contains(c.beta) != c.inner;
    if (!witnessed) ++mismatches;
    // N^β_{α,γ} = N^α_{β,γ̄}: the witness β sits in the opposite clause for γ̄.
    if (c.inner ? !back_outer.contains(c.beta) : !back_inner.contains(c.beta)) ++mismatches;
  }
  return mismatches;
}

std::string Ratio::to_string() const {
  if (!exact) return std::to_string(value);
  if (denominator == 1) return int128_to_string(numerator);
  return int128_to_string(numerator) + "/" + int128_to_string(denominator);
}

Ratio folner_ratio_exact(const FusionRing& ring, const FolnerSet& f, const Label& gamma) {
  const auto mass = weighted_mass(ring, boundary(ring, f, gamma));
  Ratio r;
  if (mass.exact && f.mass().exact && f.mass().exact_value > 0) {
    const __int128 g = gcd128(mass.exact_value, f.mass().exact_value);
    r.exact = true;
    r.numerator = g == 0 ? 0 : mass.exact_value / g;
    r.denominator = g == 0 ? 1 : f.mass().exact_value / g;
    r.value = static_cast<double>(static_cast<long double>(r.numerator) / static_cast<long double>(r.denominator));
  } else {
    r.value = mass.value / f.weighted_card();
  }
  return r;
}

double folner_ratio(const FusionRing& ring, const FolnerSet& f, const Label& gamma) {
  return folner_ratio_exact(ring, f, gamma).value;
}

FolnerProfile ball_profile(const FusionRing& ring, int n_max, const BallProfileOptions& options) {
  if (n_max < 1) throw Error(ErrorKind::InvalidSpec, "n_max must be >= 1");
  FolnerProfile p;
  p.generators = ring.generators();
  p.epsilon = options.epsilon;
  int reach = n_max;
  Window w;
  try {
    w = ball(ring, n_max, options.cap);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SizeCapExceeded || !options.stop_at_cap) throw;
    reach = 0;
    for (int r = 1; r <= n_max; ++r) {
      try {
        w = ball(ring, r, options.cap);
        reach = r;
      } catch (const Error&) {
        break;
      }
    }
    p.truncated = true;
    p.stop_reason = "ball of radius " + std::to_string(reach + 1) + " exceeds the size cap";
  }
  for (int n = 1; n <= reach; ++n) {
    const FolnerSet set(ring, prefix_by_shell(w, n));
    if (!std::isfinite(set.weighted_card())) {
      p.truncated = true;
      p.stop_reason = "weighted cardinality overflows at n = " + std::to_string(n);
      break;
    }
    auto row = make_row(ring, n, set, p.generators);
    if (!all_finite(row.ratios)) {
      p.truncated = true;
      p.stop_reason = "boundary weight overflows at n = " + std::to_string(n);
      break;
    }
    p.rows.push_back(std::move(row));
  }
  finish(p);
  return p;
}

FolnerProfile verify_sequence(const FusionRing& ring, const std::vector<FolnerSet>& sets,
                              const std::vector<Label>& generators, double epsilon) {
  if (sets.empty()) throw Error(ErrorKind::InvalidSpec, "verify_sequence needs at least one set");
  FolnerProfile p;
  p.generators = generators;
  p.epsilon = epsilon;
  int n = 0;
  for (const auto& s : sets) p.rows.push_back(make_row(ring, ++n, s, generators));
  finish(p);
  return p;
}

GreedyResult greedy_search(const FusionRing& ring, double target_ratio, int budget, const GreedyOptions& options) {
  if (!(target_ratio > 0.0 && target_ratio < 1.0)) {
    throw Error(ErrorKind::InvalidSpec, "target ratio must lie in (0, 1)");
  }
  const auto gens = ring.generators();
  GreedyResult result;
  result.best_ratio = std::numeric_limits<double>::infinity();

  auto evaluate = [&](const FolnerSet& s) {
    ++result.evaluations;
    if (!std::isfinite(s.weighted_card())) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const auto& g : gens) worst = std::max(worst, folner_ratio(ring, s, g));
    return std::isfinite(worst) ? worst : std::numeric_limits<double>::infinity();
  };
  auto done = [&](const char* reason) {
    result.found = result.best_ratio <= target_ratio;
    result.reason = result.found ? "target reached" : reason;
    return result;
  };

  // Phase 1: balls.
  std::size_t previous_size = 0;
  for (int r = 0;; ++r) {
    if (result.evaluations >= budget) return done("budget exhausted");
    std::optional<FolnerSet> s;
    try {
      s.emplace(FolnerSet::from_window(ring, ball(ring, r, options.cap)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SizeCapExceeded) throw;
      break;
    }
    if (s->size() == previous_size || !std::isfinite(s->weighted_card())) break;
    previous_size = s->size();
    const double ratio = evaluate(*s);
    const double gain = result.best_ratio - ratio;
    if (ratio < result.best_ratio) {
      result.best_ratio = ratio;
      result.best_radius = r;
      result.set = std::move(s);
    }
    if (result.best_ratio <= target_ratio) return done("");
    if (r > 0 && !(gain >= options.min_gain)) break;
  }
  if (!result.set) return done("no finite ball to start from");

  // Phase 2: local moves. Toggling c only changes the boundary status of c
  // and of the x with c ∈ supp(x ⊗ γ), i.e. x ∈ supp(c ⊗ γ̄), so candidates
  // are scored incrementally against the current boundary masses.
  std::vector<Label> gen_bars;
  for (const auto& g : gens) gen_bars.push_back(ring.conj(g));
  while (true) {
    const FolnerSet& current = *result.set;
    std::vector<double> masses;
    std::vector<Label> candidates;
    for (const auto& g : gens) {
      const auto b = boundary_with_certificates(ring, current, g);
      masses.push_back(weighted_mass(ring, b.inner).value + weighted_mass(ring, b.outer).value);
      candidates.insert(candidates.end(), b.outer.begin(), b.outer.end());
      if (current.size() > 1) candidates.insert(candidates.end(), b.inner.begin(), b.inner.end());
    }
    sort_labels(ring, candidates);
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    const Label* best = nullptr;
    double best_ratio = result.best_ratio;
    for (const auto& c : candidates) {
      if (result.evaluations >= budget) break;
      ++result.evaluations;
      const bool adding = !current.contains(c);
      auto member = [&](const Label& x, bool toggled) { return toggled && x == c ? adding : current.contains(x); };
      auto on_boundary = [&](const Label& x, const Label& g, bool toggled) {
        const bool inside = member(x, toggled);
        for (const auto& [beta, m] : ring.fuse(x, g)) {
          if (member(beta, toggled) != inside) return true;
        }
        return false;
      };
      const double dc = ring.dim(c);
      const double card = current.weighted_card() + (adding ? dc * dc : -dc * dc);
      double worst = 0.0;
      for (std::size_t k = 0; k < gens.size(); ++k) {
        std::vector<Label> affected{c};
        for (const auto& [x, m] : ring.fuse(c, gen_bars[k])) affected.push_back(x);
        std::sort(affected.begin(), affected.end());
        affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
        double mass = masses[k];
        for (const auto& x : affected) {
          const double dx = ring.dim(x);
          mass += (static_cast<int>(on_boundary(x, gens[k], true)) - static_cast<int>(on_boundary(x, gens[k], false))) *
                  dx * dx;
        }
        worst = std::max(worst, mass / card);
      }
      if (std::isfinite(worst) && worst < best_ratio - 1e-12) {
        best_ratio = worst;
        best = &c;
      }
    }
    if (!best) {
      return done(result.evaluations >= budget ? "budget exhausted"
                                               : "local minimum: no single-label move lowers the ratio");
    }
    std::vector<Label> labels;
    if (current.contains(*best)) {
      for (const auto& l : current.labels()) {
        if (l != *best) labels.push_back(l);
      }
    } else {
      labels = current.labels();
      labels.push_back(*best);
    }
    FolnerSet next(ring, std::move(labels));
    double exact_worst = 0.0;
    for (const auto& g : gens) exact_worst = std::max(exact_worst, folner_ratio(ring, next, g));
    result.best_ratio = exact_worst;
    result.set.emplace(std::move(next));
    if (result.best_ratio <= target_ratio) return done("");
  }
}

}  // namespace fusalg
