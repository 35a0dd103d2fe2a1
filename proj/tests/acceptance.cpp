// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fusalg/io/report.hpp"
#include "oracles.hpp"

using namespace fusalg;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

Label L(const std::string& s) { return Label(s); }

std::vector<BuilderSpec> catalog() {
  return {BuilderSpec::free_group(2),  BuilderSpec::free_abelian(1), BuilderSpec::free_abelian(2),
          BuilderSpec::cyclic(5),      BuilderSpec::finite_group_table("S3"), BuilderSpec::su2(),
          BuilderSpec::free_orthogonal(3), BuilderSpec::ising(),
          BuilderSpec::product(BuilderSpec::su2(), BuilderSpec::cyclic(3))};
}

FolnerSet interval(const FusionRing& z, int lo, int hi) {
  std::vector<Label> ls;
  for (int k = lo; k <= hi; ++k) ls.emplace_back(std::to_string(k));
  return FolnerSet(z, ls);
}

/// Cayley ball of F₂ from reduced words, right multiplication by a, A, b, B.
Eigen::MatrixXd free_group_walk(int r) {
  const std::string letters = "aAbB";
  auto inverse = [](char c) { return char(std::isupper(c) ? std::tolower(c) : std::toupper(c)); };
  std::vector<std::string> words{""};
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (int(words[i].size()) == r) continue;
    for (char c : letters)
      if (words[i].empty() || words[i].back() != inverse(c)) words.push_back(words[i] + c);
  }
  std::map<std::string, Eigen::Index> index;
  for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = Eigen::Index(i);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(Eigen::Index(words.size()), Eigen::Index(words.size()));
  for (const auto& w : words)
    for (char c : letters) {
      const std::string v = !w.empty() && w.back() == inverse(c) ? w.substr(0, w.size() - 1) : w + c;
      if (auto it = index.find(v); it != index.end()) m(index[w], it->second) = 0.25;
    }
  return m;
}

void axiom_suite(Outcome& o) {
  for (const auto& spec : catalog()) {
    auto ring = build(spec);
    const auto report = check_axioms(*ring, ball(*ring, 5).labels());
    double worst = 0.0;
    for (const auto& c : report.checks) worst = std::max(worst, c.worst_residual);
    o.require(report.all_passed(), ring->name());
    if (spec.type == BuilderType::Ising) {
      o.require(worst <= 1e-9, "Ising residual");
      o.detail << " Ising residual " << worst << ";";
    } else {
      o.require(report.exact && worst == 0.0, ring->name() + " exact");
    }
  }
  o.detail << " " << catalog().size() << " rings at radius 5";
}

void integer_kesten(Outcome& o) {
  auto z = build(BuilderSpec::free_abelian(1));
  std::vector<int> radii;
  for (int r = 1; r <= 200; ++r) radii.push_back(r);
  const auto rows = kesten_profile(*z, FiniteMeasure::symmetrized_dirac(*z, L("1")), radii);
  double worst = 0.0;
  for (const auto& row : rows)
    worst = std::max(worst, std::abs(row.lower_bound - std::cos(std::numbers::pi / (2 * row.radius + 2))));
  o.require(worst <= 1e-9, "closed form");
  o.require(rows.back().lower_bound >= 0.9998, "r = 200 bound");
  o.detail << " max deviation " << worst << ", r=200 bound " << rows.back().lower_bound;
}

void free_group_gap(Outcome& o) {
  auto f2 = build(BuilderSpec::free_group(2));
  const auto mu = FiniteMeasure::uniform_generators(*f2);
  std::vector<int> radii;
  for (int r = 1; r <= 12; ++r) radii.push_back(r);
  const auto rows = kesten_profile(*f2, mu, radii);
  const double kesten = std::sqrt(3.0) / 2.0;
  double dense_dev = 0.0;
  for (int r = 1; r <= 5; ++r) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(free_group_walk(r), Eigen::EigenvaluesOnly);
    dense_dev = std::max(dense_dev, std::abs(es.eigenvalues().maxCoeff() - rows[std::size_t(r - 1)].lower_bound));
  }
  o.require(dense_dev <= 1e-8, "dense cross-check");
  bool monotone = true, below = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].lower_bound < rows[i - 1].lower_bound - 1e-12) monotone = false;
    if (rows[i].lower_bound > kesten + 1e-9) below = false;
  }
  o.require(monotone, "monotone");
  o.require(below, "≤ √3/2");
  for (std::size_t i = 9; i < rows.size(); ++i)
    o.require(rows[i].lower_bound >= 0.858 && rows[i].lower_bound <= 0.8660255,
              "r = " + std::to_string(rows[i].radius) + " in [0.858, 0.8660255]");
  o.detail << " dense deviation " << dense_dev << ", r=10..12 bounds " << rows[9].lower_bound << ", "
           << rows[10].lower_bound << ", " << rows[11].lower_bound;
}

void plateaus(Outcome& o) {
  std::vector<int> radii;
  for (int r = 100; r <= 5000; r += 100) radii.push_back(r);

  auto o3 = build(BuilderSpec::free_orthogonal(3));
  const auto rows = kesten_profile(*o3, FiniteMeasure::dirac(*o3, L("1")), radii);
  const auto v = amenability_verdict(rows, 3, 1e-3);
  const double top = rows.back().lower_bound;
  o.require(std::abs(top - 2.0 / 3.0) <= 1e-4, "O3+ within 1e-4 of 2/3");
  o.require(v.kind == VerdictKind::GapEvidence, "O3+ verdict");
  // the compression at radius r is a third of the path adjacency on r + 1 vertices
  o.require(std::abs(top - oracle::path_top(5001, 1.0 / 3.0)) <= 1e-9, "O3+ path closed form");

  auto su2 = build(BuilderSpec::su2());
  const auto srows = kesten_profile(*su2, FiniteMeasure::dirac(*su2, L("1")), radii);
  const auto sv = amenability_verdict(srows, 3, 1e-3);
  o.require(srows.back().lower_bound >= 0.999, "SU(2) ≥ 0.999");
  o.require(sv.kind == VerdictKind::ApproachingOne, "SU(2) verdict");
  o.detail << " O3+ " << top << " (" << to_string(v.kind) << "), SU(2) " << srows.back().lower_bound << " ("
           << to_string(sv.kind) << ")";
}

void folner_closed_forms(Outcome& o) {
  auto z = build(BuilderSpec::free_abelian(1));
  for (int n = 1; n <= 50; ++n) {
    const auto r = folner_ratio_exact(*z, interval(*z, -n, n), L("1"));
    o.require(r.exact && r.to_string() == "2/" + std::to_string(2 * n + 1), "ℤ n = " + std::to_string(n));
  }
  auto su2 = build(BuilderSpec::su2());
  const auto p = ball_profile(*su2, 50);
  double worst = 0.0;
  for (const auto& row : p.rows) worst = std::max(worst, std::abs(row.max_ratio - oracle::su2_segment_ratio(row.n)));
  o.require(worst <= 1e-12, "SU(2) closed form");
  o.require(p.decreasing && p.rows.back().max_ratio < 0.12, "SU(2) ratios shrink");
  auto o3 = build(BuilderSpec::free_orthogonal(3));
  const auto q = ball_profile(*o3, 30);
  double least = 1e300;
  for (const auto& row : q.rows)
    if (row.n >= 5) least = std::min(least, row.max_ratio);
  o.require(q.rows.size() == 30 && least >= 0.5, "O3+ ratios ≥ 0.5");
  o.detail << " SU(2) deviation " << worst << ", SU(2) n=50 ratio " << p.rows.back().max_ratio << ", O3+ min "
           << least;
}

void boundary_oracle(Outcome& o) {
  std::size_t checked = 0;
  for (const auto& spec : catalog()) {
    auto ring = build(spec);
    for (int n = 0; n <= 8; ++n) {
      const auto f = FolnerSet::from_window(*ring, ball(*ring, n));
      const std::set<Label> members(f.labels().begin(), f.labels().end());
      const auto candidates = ring->is_finite() ? ring->basis() : ball(*ring, n + 2).labels();
      for (const auto& g : ring->symmetric_generators()) {
        const auto got = boundary(*ring, f, g);
        const bool same = std::set<Label>(got.begin(), got.end()) ==
                          oracle::brute_boundary(*ring, members, g, candidates);
        o.require(same, ring->name() + " n = " + std::to_string(n) + " γ = " + g.str());
        ++checked;
      }
    }
  }
  o.detail << " " << checked << " (ring, n, generator) cases";
}

void rotation_averaging(Outcome& o) {
  auto z = build(BuilderSpec::free_abelian(1));
  double worst_uniform = 0.0, worst_slack = -1e300;
  for (int m = 2; m <= 7; ++m) {
    std::vector<int> perm(static_cast<std::size_t>(m));
    for (int x = 0; x < m; ++x) perm[std::size_t(x)] = (x + 1) % m;
    const auto act = make_permutation_action(z, m, {{L("1"), perm}});
    const auto phi = State::point_mass(act.algebra(), 0);
    const auto units = act.algebra().basis();
    for (int len = 1; len <= 4 * m; ++len) {
      const auto avg = average_state(act, phi, interval(*z, 0, len - 1));
      // |φ_F(χ(β)a) − d_β φ_F(a)| ≤ d_β·(2/len)·‖a‖ for the interval [0, len)
      for (const auto& beta : z->symmetric_generators())
        for (const auto& a : units) {
          const double measured = std::abs(avg.state(act.apply_char(beta, a)) - avg.state(a));
          worst_slack = std::max(worst_slack, measured - 2.0 / len * norm(a));
          o.require(measured <= 2.0 / len * norm(a) + 1e-9, "bound m = " + std::to_string(m));
        }
      o.require(avg.bounds_hold, "reported bound m = " + std::to_string(m));
      if (len % m == 0) {
        double dev = 0.0;
        for (const auto& d : avg.state.densities()) dev = std::max(dev, std::abs(d(0, 0) - 1.0 / m));
        double defect = 0.0;
        for (const auto& g : z->symmetric_generators())
          defect = std::max(defect, fa_invariance_defect(act, avg.state, g));
        worst_uniform = std::max({worst_uniform, dev, defect});
        o.require(dev <= 1e-12 && defect <= 1e-12, "uniform m = " + std::to_string(m));
      }
    }
  }
  o.detail << " orbit-covering defect " << worst_uniform << ", max (measured − bound) " << worst_slack;
}

void conjugation_averaging(Outcome& o) {
  const double theta = 2.0 * std::numbers::pi * (std::numbers::sqrt2 - 1.0);
  auto z = build(BuilderSpec::free_abelian(1));
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2, 2);
  u(1, 1) = std::polar(1.0, theta);
  const auto act = make_conjugation_action(z, {{L("1"), u}});
  Eigen::VectorXcd v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const auto phi = State::vector_state(act.algebra(), 0, v);
  double worst = 0.0;
  for (int n : {1, 2, 3, 5, 10, 20, 50, 100, 1000, 10000, 100000}) {
    const auto rho = average_state(act, phi, interval(*z, -n, n)).state.densities()[0];
    worst = std::max(worst, std::abs(rho(0, 1) - 0.5 * oracle::dirichlet_average(n, theta)));
    if (n == 100000) {
      Eigen::MatrixXcd diag = Eigen::MatrixXcd::Identity(2, 2) * 0.5;
      const double dev = (rho - diag).cwiseAbs().maxCoeff();
      o.require(dev <= 1e-6, "n = 1e5 within 1e-6 of the diagonal average");
      o.detail << " n=1e5 off-diagonal " << rho(0, 1).real() << " (closed form "
               << 0.5 * oracle::dirichlet_average(n, theta) << "), deviation " << dev << ";";
    }
  }
  o.require(worst <= 1e-9, "Dirichlet closed form");
  o.detail << " max closed-form deviation " << worst;
}

void canonical_vectors(Outcome& o) {
  const auto m2 = FiniteDimCStarAlgebra::matrix(2);
  std::vector<ModuleAction> actions;
  for (const auto& spec : {BuilderSpec::free_abelian(1), BuilderSpec::su2(), BuilderSpec::cyclic(5)})
    actions.push_back(make_trivial_action(build(spec), m2));
  actions.push_back(io::load_action(std::string(FUSALG_DATA_DIR) + "/rotation5.json").action.value());
  actions.push_back(io::load_action(std::string(FUSALG_DATA_DIR) + "/cyclic3-rotation.json").action.value());
  double worst_unit = 0.0, worst_central = 0.0, worst_margin = -1e300;
  for (const auto& act : actions) {
    const auto& ring = act.ring();
    std::vector<ActionVector> xis;
    std::vector<double> tols;
    for (int n = 1; n <= 50; ++n) {
      const auto f = FolnerSet::from_window(ring, ball(ring, n));
      double ratio = 0.0;
      for (const auto& g : ring.symmetric_generators()) ratio = std::max(ratio, folner_ratio(ring, f, g));
      xis.push_back(canonical_xi(act, f));
      tols.push_back(2.0 * std::sqrt(ratio) + 1e-9);
    }
    const auto rep = fa_amenability_check(act, xis, tols);
    for (const auto& row : rep.rows) {
      worst_unit = std::max(worst_unit, row.unit_residual);
      worst_central = std::max(worst_central, row.central_residual);
      worst_margin = std::max(worst_margin, row.max_convolution - row.tolerance);
      o.require(row.max_convolution <= row.tolerance, ring.name() + " n = " + std::to_string(row.n));
    }
  }
  o.require(worst_unit <= 1e-12, "unit inner product");
  o.require(worst_central == 0.0, "centrality");
  o.detail << " unit residual " << worst_unit << ", central residual " << worst_central
           << ", max (residual − bound) " << worst_margin;
}

void free_group_defects(Outcome& o) {
  auto f2 = build(BuilderSpec::free_group(2));
  const auto mu = FiniteMeasure::uniform_generators(*f2);
  const auto b8 = ball(*f2, 8), b9 = ball(*f2, 9);
  const auto op9 = lambda_operator(*f2, mu, b9);
  const double theta9 = top_eigenvalue(op9).value;
  const double floor = 1.0 - theta9;
  o.require(floor >= 0.133, "1 − θ₉ ≥ 0.133");

  // sample vectors: Gaussian, the indicator, and a near-top eigenvector of the B₈ compression
  std::vector<Eigen::VectorXd> samples;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  const auto n8 = Eigen::Index(b8.size());
  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXd g(n8);
    for (auto& x : g) x = n01(rng);
    samples.push_back(g.normalized());
  }
  samples.push_back(Eigen::VectorXd::Ones(n8).normalized());
  const auto a8 = lambda_operator(*f2, mu, b8).matrix;
  Eigen::VectorXd top = Eigen::VectorXd::Ones(n8).normalized();
  for (int it = 0; it < 3000; ++it) top = (a8 * top + top).normalized();
  samples.push_back(top);

  double least_defect = 1e300, max_rayleigh = -1e300;
  for (const auto& g : samples) {
    Eigen::VectorXd padded = Eigen::VectorXd::Zero(Eigen::Index(b9.size()));
    for (std::size_t i = 0; i < b8.size(); ++i) padded[Eigen::Index(*b9.find(b8[i]))] = g[Eigen::Index(i)];
    const double rayleigh = padded.dot(op9.matrix * padded);
    max_rayleigh = std::max(max_rayleigh, rayleigh);
    const auto f = WeightedVector::from_l_coordinates(b8, g.cast<std::complex<double>>());
    double worst = 0.0;
    for (const auto& gamma : f2->symmetric_generators()) worst = std::max(worst, almost_invariant_defect(*f2, f, gamma));
    least_defect = std::min(least_defect, worst);
    // Cauchy–Schwarz: max_γ ‖λ_γ f − f‖ ≥ 1 − ⟨λ_μ f, f⟩ ≥ 1 − θ₉
    o.require(worst >= 1.0 - rayleigh - 1e-12, "Rayleigh bound");
    o.require(rayleigh <= theta9 + 1e-9, "Rayleigh quotient ≤ θ₉");
    o.require(worst >= floor - 1e-12, "defect ≥ 1 − θ₉");
  }

  const auto act = make_trivial_action(f2, FiniteDimCStarAlgebra::matrix(1));
  HarnessConfig cfg;
  cfg.kesten_radius = 8;
  const auto h = theorem_harness(act, cfg);
  o.require(h.direction == "non-amenable-evidence", "harness direction");
  o.require(h.verdict.has_value() && h.lower_bound_consistent, "spectral certificate");
  o.require(std::abs(h.defect_lower_bound - floor) <= 1e-9, "harness bound matches 1 − θ₉");
  o.detail << " θ₉ " << theta9 << ", bound " << floor << ", least sampled defect " << least_defect
           << ", top Rayleigh quotient " << max_rayleigh << ", harness bound " << h.defect_lower_bound;
}

void invariance_implication(Outcome& o) {
  int invariant = 0, total = 0;
  for (const char* file :
       {"rotation5.json", "f2-trivial.json", "trivial-c.json", "conjugation-m2.json", "cyclic3-rotation.json"}) {
    const auto inst = io::load_action(std::string(FUSALG_DATA_DIR) + "/" + file);
    const auto& act = *inst.action;
    auto states = random_states(act.algebra(), 100, 2024);
    states.push_back(State::normalized_trace(act.algebra()));
    for (const auto& s : states) {
      for (const auto& g : act.ring().symmetric_generators()) {
        if (!act.has_alpha_map(g)) continue;
        ++total;
        if (usual_invariance_defect(act, s, g) <= 1e-10) {
          ++invariant;
          o.require(fa_invariance_defect(act, s, g) <= 1e-9, std::string(file));
        }
      }
    }
  }
  o.require(invariant > 0, "some invariant samples");
  o.detail << " " << invariant << " of " << total << " (state, generator) pairs invariant, all FA-invariant";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::pair<std::function<void(Outcome&)>, double>>> criteria = {
      {"axiom suite on radius-5 balls", {axiom_suite, 10.0}},
      {"integer Kesten closed form", {integer_kesten, 5.0}},
      {"free-group spectral gap", {free_group_gap, 60.0}},
      {"O3+ and SU(2) plateaus", {plateaus, 20.0}},
      {"Folner closed forms", {folner_closed_forms, 5.0}},
      {"boundary oracle equivalence", {boundary_oracle, 30.0}},
      {"rotation averaging", {rotation_averaging, 0.0}},
      {"conjugation averaging", {conjugation_averaging, 0.0}},
      {"canonical vector bound", {canonical_vectors, 0.0}},
      {"free-group defect lower bound", {free_group_defects, 60.0}},
      {"usual invariance implies FA-invariance", {invariance_implication, 0.0}},
  };
  int failures = 0, index = 0;
  for (const auto& [name, entry] : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      entry.first(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (entry.second > 0.0) o.require(seconds < entry.second, "runtime");
    failures += !o.passed;
    std::printf("%s %2d %s:%s (%.2f s)\n", o.passed ? "PASS" : "FAIL", index, name.c_str(), o.detail.str().c_str(),
                seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
