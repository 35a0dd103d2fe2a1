#include "fusalg/actions/action.hpp"

#include <algorithm>
#include <cmath>

#include "fusalg/core/window.hpp"

namespace fusalg {

namespace {

constexpr std::size_t kResolveCap = kDefaultBallCap;
constexpr int kMaxTrivialAlphaDim = 64;

Superoperator identity(const FiniteDimCStarAlgebra& alg) {
  return Superoperator::Identity(alg.dimension(), alg.dimension());
}

void check_shape(const FiniteDimCStarAlgebra& alg, const Superoperator& op, const Label& l) {
  if (op.rows() != alg.dimension() || op.cols() != alg.dimension()) {
    throw Error(ErrorKind::AlgebraMismatch, "operator for '" + l.str() + "' has the wrong size");
  }
}

// Group ring check on the generators and a small ball: every dimension is 1
// and each product is a single label.
void require_group_ring(const FusionRing& ring) {
  const auto w = ball(ring, 2, kResolveCap);
  for (const auto& l : w.labels()) {
    if (ring.exact_dim(l) != std::optional<std::int64_t>{1}) {
      throw Error(ErrorKind::InvalidSpec, ring.name() + " is not a group ring (dimension of '" + l.str() + "' is not 1)");
    }
  }
  for (const auto& g : ring.symmetric_generators()) {
    const auto p = ring.fuse(g, ring.conj(g));
    if (p.size() != 1 || p[0].first != ring.unit() || p[0].second != 1) {
      throw Error(ErrorKind::InvalidSpec, ring.name() + " is not a group ring");
    }
  }
}

void require_relations(const ModuleAction& action) {
  const double r = action.relation_residual(kRelationProbeRadius);
  if (!(r <= kRelationTolerance)) {
    throw Error(ErrorKind::InconsistentRelations,
                "generator data violates the ring's relations (residual " + std::to_string(r) + ")");
  }
}

}  // namespace

ModuleAction::ModuleAction(RingPtr ring, FiniteDimCStarAlgebra algebra, std::map<Label, Superoperator> char_ops,
                           std::map<Label, AlphaMap> alpha_maps, std::string instance)
    : ring_(std::move(ring)), algebra_(std::move(algebra)), alpha_maps_(std::move(alpha_maps)),
      instance_(std::move(instance)) {
  for (auto& [label, op] : char_ops) {
    ring_->require_valid(label);
    check_shape(algebra_, op, label);
    cache_.emplace(label, std::move(op));
  }
  for (const auto& g : ring_->symmetric_generators()) {
    if (!cache_.contains(g)) throw Error(ErrorKind::InvalidSpec, "no character operator for generator '" + g.str() + "'");
  }
  cache_.try_emplace(ring_->unit(), identity(algebra_));
  for (const auto& [label, alpha] : alpha_maps_) {
    ring_->require_valid(label);
    if (alpha.dim < 1 || alpha.coefficients.size() != static_cast<std::size_t>(alpha.dim * alpha.dim)) {
      throw Error(ErrorKind::InvalidSpec, "alpha map for '" + label.str() + "' has the wrong number of coefficients");
    }
    for (const auto& c : alpha.coefficients) check_shape(algebra_, c, label);
  }
}

ModuleAction::ModuleAction(const ModuleAction& other)
    : ring_(other.ring_), algebra_(other.algebra_), alpha_maps_(other.alpha_maps_), instance_(other.instance_) {
  std::lock_guard lock(other.mutex_);
  cache_ = other.cache_;
}

void ModuleAction::resolve(const Label& alpha) const {
  // Caller holds the mutex.
  if (cache_.contains(alpha)) return;
  const auto gens = ring_->symmetric_generators();
  Window w;
  std::size_t previous = 0;
  for (int r = 1;; r *= 2) {
    try {
      w = ball(*ring_, r, kResolveCap);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SizeCapExceeded) throw;
      throw Error(ErrorKind::UnreachableLabel, "'" + alpha.str() + "' lies beyond the resolvable ball");
    }
    if (w.contains(alpha)) break;
    if (w.size() == previous) {
      throw Error(ErrorKind::UnreachableLabel, "'" + alpha.str() + "' is not generated by the generators");
    }
    previous = w.size();
  }
  std::vector<std::size_t> order(w.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return w.shells()[x] < w.shells()[y]; });
  const int target_shell = w.shells()[*w.find(alpha)];

  for (auto i : order) {
    const Label& x = w[i];
    if (w.shells()[i] > target_shell) break;
    if (cache_.contains(x)) continue;
    bool done = false;
    for (const auto& g : gens) {
      // x ∈ supp(g ⊗ β) ⇔ β ∈ supp(ḡ ⊗ x)
      for (const auto& [beta, unused] : ring_->fuse(ring_->conj(g), x)) {
        auto known = cache_.find(beta);
        if (known == cache_.end()) continue;
        const auto product = ring_->fuse(g, beta);
        Multiplicity n_x = 0;
        bool solvable = true;
        for (const auto& [gamma, n] : product) {
          if (gamma == x) n_x = n;
          else if (!cache_.contains(gamma)) solvable = false;
        }
        if (!solvable || n_x == 0) continue;
        Superoperator op = cache_.at(g) * known->second;
        for (const auto& [gamma, n] : product) {
          if (gamma != x) op -= static_cast<double>(n) * cache_.at(gamma);
        }
        cache_.emplace(x, op / static_cast<double>(n_x));
        done = true;
        break;
      }
      if (done) break;
    }
    if (!done && x == alpha) {
      throw Error(ErrorKind::UnreachableLabel, "no fusion step determines the character of '" + alpha.str() + "'");
    }
  }
  if (!cache_.contains(alpha)) {
    throw Error(ErrorKind::UnreachableLabel, "no fusion step determines the character of '" + alpha.str() + "'");
  }
}

Superoperator ModuleAction::char_op(const Label& alpha) const {
  ring_->require_valid(alpha);
  std::lock_guard lock(mutex_);
  resolve(alpha);
  return cache_.at(alpha);
}

AlgebraElement ModuleAction::apply_char(const Label& alpha, const AlgebraElement& a) const {
  return algebra_.from_vector(char_op(alpha) * algebra_.to_vector(a));
}

const AlphaMap& ModuleAction::alpha_map(const Label& gamma) const {
  auto it = alpha_maps_.find(gamma);
  if (it == alpha_maps_.end()) throw Error(ErrorKind::NoAlphaMap, "no alpha map for '" + gamma.str() + "'");
  return it->second;
}

double ModuleAction::relation_residual(int radius, std::size_t cap) const {
  Window w;
  for (int r = radius; r >= 0; --r) {
    try {
      w = ball(*ring_, r, cap);
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SizeCapExceeded) throw;
    }
  }
  std::vector<Superoperator> ops;
  for (const auto& l : w.labels()) ops.push_back(char_op(l));
  double worst = 0.0;
  for (const auto& g : ring_->symmetric_generators()) {
    const auto xg = char_op(g);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto product = ring_->fuse(g, w[i]);
      Superoperator diff = xg * ops[i];
      bool inside = true;
      for (const auto& [gamma, n] : product) {
        auto j = w.find(gamma);
        if (!j) {
          inside = false;
          break;
        }
        diff -= static_cast<double>(n) * ops[*j];
      }
      if (inside) worst = std::max(worst, diff.norm());
    }
  }
  return worst;
}

ModuleAction make_trivial_action(RingPtr ring, const FiniteDimCStarAlgebra& algebra) {
  std::map<Label, Superoperator> ops;
  std::map<Label, AlphaMap> alphas;
  const auto id = identity(algebra);
  for (const auto& g : ring->symmetric_generators()) {
    ops.emplace(g, ring->dim(g) * id);
    const auto d = ring->exact_dim(g);
    if (d && *d <= kMaxTrivialAlphaDim) {
      AlphaMap alpha;
      alpha.dim = static_cast<int>(*d);
      for (int i = 0; i < alpha.dim; ++i) {
        for (int j = 0; j < alpha.dim; ++j) alpha.coefficients.push_back(i == j ? id : Superoperator::Zero(id.rows(), id.cols()));
      }
      alphas.emplace(g, std::move(alpha));
    }
  }
  return ModuleAction(std::move(ring), algebra, std::move(ops), std::move(alphas), "trivial");
}

ModuleAction make_permutation_action(RingPtr ring, int points, const std::map<Label, std::vector<int>>& permutations) {
  require_group_ring(*ring);
  const auto algebra = FiniteDimCStarAlgebra::commutative(points);
  const auto gens = ring->generators();
  for (const auto& [label, p] : permutations) {
    if (std::find(gens.begin(), gens.end(), label) == gens.end()) {
      throw Error(ErrorKind::InvalidSpec, "'" + label.str() + "' is not a generator of " + ring->name());
    }
  }
  std::map<Label, Superoperator> ops;
  std::map<Label, AlphaMap> alphas;
  for (const auto& g : gens) {
    auto it = permutations.find(g);
    if (it == permutations.end()) throw Error(ErrorKind::InvalidSpec, "no permutation for generator '" + g.str() + "'");
    const auto& p = it->second;
    std::vector<int> seen(static_cast<std::size_t>(points), 0);
    bool ok = static_cast<int>(p.size()) == points;
    for (int x : p) {
      ok = ok && x >= 0 && x < points && !seen[static_cast<std::size_t>(x)]++;
    }
    if (!ok) throw Error(ErrorKind::InvalidSpec, "data for '" + g.str() + "' is not a permutation of 0.." + std::to_string(points - 1));
    // (γ·f)(γ·y) = f(y)
    Superoperator forward = Superoperator::Zero(points, points);
    for (int y = 0; y < points; ++y) forward(p[static_cast<std::size_t>(y)], y) = 1.0;
    const Label gbar = ring->conj(g);
    if (gbar == g) {
      ops[g] = forward;  // an involutive generator must square to the identity; the probe checks it
    } else {
      ops[g] = forward;
      ops[gbar] = forward.transpose();
    }
  }
  for (const auto& [label, op] : ops) alphas.emplace(label, AlphaMap{1, {op}});
  ModuleAction action(std::move(ring), algebra, std::move(ops), std::move(alphas), "permutation");
  require_relations(action);
  return action;
}

ModuleAction make_conjugation_action(RingPtr ring, const std::map<Label, Eigen::MatrixXcd>& unitaries) {
  require_group_ring(*ring);
  const auto gens = ring->generators();
  if (unitaries.empty()) throw Error(ErrorKind::InvalidSpec, "no unitaries given");
  const auto m = unitaries.begin()->second.rows();
  for (const auto& [label, u] : unitaries) {
    if (std::find(gens.begin(), gens.end(), label) == gens.end()) {
      throw Error(ErrorKind::InvalidSpec, "'" + label.str() + "' is not a generator of " + ring->name());
    }
    if (u.rows() != m || u.cols() != m) throw Error(ErrorKind::InvalidSpec, "unitaries must share one size");
    if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(m, m)).norm() > 1e-10) {
      throw Error(ErrorKind::NotUnitary, "matrix for '" + label.str() + "' is not unitary");
    }
  }
  const auto algebra = FiniteDimCStarAlgebra::matrix(static_cast<int>(m));
  // vec(U T U*) = (conj(U) ⊗ U) vec(T) for column-major vec.
  auto superop = [m](const Eigen::MatrixXcd& u) {
    Superoperator s(m * m, m * m);
    const Eigen::MatrixXcd uc = u.conjugate();
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) s.block(a * m, b * m, m, m) = uc(a, b) * u;
    }
    return s;
  };
  std::map<Label, Superoperator> ops;
  for (const auto& g : gens) {
    auto it = unitaries.find(g);
    if (it == unitaries.end()) throw Error(ErrorKind::InvalidSpec, "no unitary for generator '" + g.str() + "'");
    ops[g] = superop(it->second);
    const Label gbar = ring->conj(g);
    if (gbar != g) ops[gbar] = superop(it->second.adjoint());
  }
  std::map<Label, AlphaMap> alphas;
  for (const auto& [label, op] : ops) alphas.emplace(label, AlphaMap{1, {op}});
  ModuleAction action(std::move(ring), algebra, std::move(ops), std::move(alphas), "conjugation");
  require_relations(action);
  return action;
}

AlgebraElement cfa_apply(const ModuleAction& action, const std::vector<Label>& word, const AlgebraElement& a) {
  const auto& alg = action.algebra();
  Eigen::VectorXcd v = alg.to_vector(a);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    v = action.char_op(*it) * v / action.ring().dim(*it);
  }
  return alg.from_vector(v);
}

bool ActionAxiomReport::all_passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.passed; });
}

const ResidualEntry* ActionAxiomReport::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

std::vector<std::vector<Label>> generator_words(const FusionRing& ring, int max_length) {
  const auto gens = ring.symmetric_generators();
  std::vector<std::vector<Label>> out{{}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& g : gens) {
        auto w = out[i];
        w.push_back(g);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

ActionAxiomReport check_action_axioms(const ModuleAction& action, const std::vector<AlgebraElement>& samples,
                                      const std::vector<std::vector<Label>>& words, double tolerance) {
  if (samples.empty() || words.empty()) throw Error(ErrorKind::InvalidSpec, "axiom check needs samples and words");
  const auto& alg = action.algebra();
  const auto& ring = action.ring();
  for (const auto& a : samples) alg.require(a);
  ActionAxiomReport report;
  report.tolerance = tolerance;
  report.words = words.size();
  report.samples = samples.size();
  double linearity = 0, unitality = 0, contractivity = 0, star = 0;
  const std::complex<double> x{0.7, -0.2}, y{-0.3, 1.1};
  const auto one = alg.unit();
  for (const auto& word : words) {
    Superoperator s = identity(alg);
    for (const auto& l : word) s = s * action.char_op(l) / ring.dim(l);
    auto apply = [&](const AlgebraElement& a) { return alg.from_vector(s * alg.to_vector(a)); };
    unitality = std::max(unitality, norm(apply(one) - one));
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& a = samples[i];
      const auto& b = samples[(i + 1) % samples.size()];
      const auto sa = apply(a);
      linearity = std::max(linearity, norm(apply(x * a + y * b) - (x * sa + y * apply(b))));
      contractivity = std::max(contractivity, norm(sa) - norm(a));
      star = std::max(star, norm(apply(adjoint(a)) - adjoint(sa)));
    }
  }
  auto add = [&](std::string name, double r) {
    r = std::max(r, 0.0);
    report.entries.push_back({std::move(name), r, r <= tolerance});
  };
  add("linearity", linearity);
  add("unitality", unitality);
  add("contractivity", contractivity);
  add("star", star);

  double identity_residual = 0.0, character_bound = 0.0;
  for (const auto& a : samples) {
    identity_residual = std::max(identity_residual, norm(action.apply_char(ring.unit(), a) - a));
  }
  add("identity", identity_residual);

  // Labels reached by the words, for the character bound and composition.
  std::vector<Label> labels{ring.unit()};
  for (const auto& word : words) {
    if (word.size() == 1 && std::find(labels.begin(), labels.end(), word[0]) == labels.end()) labels.push_back(word[0]);
  }
  const auto small = ball(ring, 2, 4096);
  for (const auto& l : small.labels()) {
    if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
  }
  for (const auto& l : labels) {
    const double d = ring.dim(l);
    for (const auto& a : samples) character_bound = std::max(character_bound, norm(action.apply_char(l, a)) - d * norm(a));
  }
  add("character_bound", character_bound);

  double composition = 0.0;
  for (const auto& g : ring.symmetric_generators()) {
    const auto xg = action.char_op(g);
    for (const auto& beta : labels) {
      Superoperator rhs = Superoperator::Zero(alg.dimension(), alg.dimension());
      for (const auto& [gamma, n] : ring.fuse(g, beta)) {
        rhs += (static_cast<double>(n) * ring.dim(gamma) / (ring.dim(g) * ring.dim(beta))) *
               (action.char_op(gamma) / ring.dim(gamma));
      }
      const Superoperator lhs = xg / ring.dim(g) * action.char_op(beta) / ring.dim(beta);
      for (const auto& a : samples) {
        const auto v = alg.to_vector(a);
        composition = std::max(composition, norm(alg.from_vector(lhs * v - rhs * v)));
      }
    }
  }
  add("composition", composition);

  bool any_alpha = false;
  double mult = 0, alpha_star = 0, alpha_unit = 0, alpha_char = 0;
  for (const auto& g : ring.symmetric_generators()) {
    if (!action.has_alpha_map(g)) continue;
    any_alpha = true;
    const auto& alpha = action.alpha_map(g);
    const int d = alpha.dim;
    auto entry = [&](int i, int j, const AlgebraElement& a) {
      return alg.from_vector(alpha.at(i, j) * alg.to_vector(a));
    };
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        auto u1 = entry(i, j, one);
        if (i == j) u1 = u1 - one;
        alpha_unit = std::max(alpha_unit, norm(u1));
      }
    }
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const auto& a = samples[s];
      const auto& b = samples[(s + 1) % samples.size()];
      const auto ab = multiply(a, b);
      AlgebraElement trace = alg.zero();
      for (int i = 0; i < d; ++i) {
        trace = trace + entry(i, i, a);
        for (int j = 0; j < d; ++j) {
          AlgebraElement prod = alg.zero();
          for (int k = 0; k < d; ++k) prod = prod + multiply(entry(i, k, a), entry(k, j, b));
          mult = std::max(mult, norm(entry(i, j, ab) - prod));
          alpha_star = std::max(alpha_star, norm(entry(i, j, adjoint(a)) - adjoint(entry(j, i, a))));
        }
      }
      alpha_char = std::max(alpha_char, norm(trace - action.apply_char(g, a)));
    }
  }
  if (any_alpha) {
    add("alpha_multiplicative", mult);
    add("alpha_star", alpha_star);
    add("alpha_unital", alpha_unit);
    add("alpha_character", alpha_char);
  }
  return report;
}

double fa_invariance_defect(const ModuleAction& action, const State& phi, const Label& gamma) {
  if (!(phi.algebra() == action.algebra())) throw Error(ErrorKind::AlgebraMismatch, "state and action differ in algebra");
  const double d = action.ring().dim(gamma);
  const Eigen::VectorXcd w = phi.dual();
  // φ(χ(γ) e_k) = (Xᵀ w)_k on the matrix unit e_k.
  const Eigen::VectorXcd diff = action.char_op(gamma).transpose() * w - d * w;
  return diff.cwiseAbs().maxCoeff() / d;
}

double usual_invariance_defect(const ModuleAction& action, const State& phi, const Label& gamma) {
  if (!(phi.algebra() == action.algebra())) throw Error(ErrorKind::AlgebraMismatch, "state and action differ in algebra");
  const auto& alpha = action.alpha_map(gamma);
  const Eigen::VectorXcd w = phi.dual();
  double worst = 0.0;
  for (int i = 0; i < alpha.dim; ++i) {
    for (int j = 0; j < alpha.dim; ++j) {
      Eigen::VectorXcd diff = alpha.at(i, j).transpose() * w;
      if (i == j) diff -= w;
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double max_generator_defect(const ModuleAction& action, const State& phi) {
  double worst = 0.0;
  for (const auto& g : action.ring().symmetric_generators()) worst = std::max(worst, fa_invariance_defect(action, phi, g));
  return worst;
}

}  // namespace fusalg
