// fusalg: command-line front end for the fusion-algebra toolkit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Core>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fusalg/actions/averaging.hpp"
#include "fusalg/catalog.hpp"
#include "fusalg/core/axioms.hpp"
#include "fusalg/folner.hpp"
#include "fusalg/io/report.hpp"
#include "fusalg/io/serialize.hpp"
#include "fusalg/spectral/kesten.hpp"

namespace {

using fusalg::io::Json;
using Clock = std::chrono::steady_clock;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResourceCap = 3;

struct Common {
  std::string out_dir;
  bool timings = false;
  std::uint64_t seed = 1;
  std::size_t cap = fusalg::kDefaultBallCap;
};

struct AxiomsArgs {
  std::string ring;
  int radius = 5;
  double tol = fusalg::kRealAxiomTolerance;
};

struct SpectrumArgs {
  std::string ring;
  std::string mu = "uniform-generators";
  std::string radii = "1..10";
  double gap_tol = 1e-3;
  int plateau = 3;
  std::string method = "auto";
  double tol = fusalg::kDefaultEigenTolerance;
};

struct FolnerArgs {
  std::string ring;
  int nmax = 20;
  std::optional<double> target;
  int budget = 10000;
  std::optional<double> epsilon;
};

struct ActionArgs {
  std::string file;
  bool check = false, invariant = false, amenability = false, harness = false;
  int samples = 8;
  int word_length = 4;
  int nmax = 20;
  double tol = 1e-12;
  int kesten_radius = 8;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Json ring_echo(const std::string& spec) {
  Json j;
  j["spec"] = spec;
  if (spec.starts_with("builtin:")) {
    j["builder"] = fusalg::io::builder_to_json(fusalg::parse_builder_shorthand(spec.substr(8)));
  }
  return j;
}

Json common_echo(const Common& c) {
  return Json{{"cap", c.cap}, {"seed", c.seed}, {"timings", c.timings}};
}

void emit(const std::string& command, const Common& c, Json report,
          const std::vector<std::pair<std::string, std::string>>& files, double total) {
  if (c.timings) report["timings"] = Json{{"total_seconds", total}};
  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (c.out_dir.empty()) return;
  std::filesystem::create_directories(c.out_dir);
  const std::filesystem::path dir(c.out_dir);
  fusalg::io::write_text((dir / (command + ".json")).string(), text);
  for (const auto& [name, body] : files) fusalg::io::write_text((dir / name).string(), body);
}

int cmd_axioms(const AxiomsArgs& a, const Common& c) {
  const auto t0 = Clock::now();
  auto ring = fusalg::io::load_ring(a.ring);
  std::vector<fusalg::Label> probe;
  if (ring->is_finite()) probe = ring->basis();
  else probe = fusalg::ball(*ring, a.radius, c.cap).labels();
  const auto report = fusalg::check_axioms(*ring, probe, a.tol);

  Json config{{"ring", ring_echo(a.ring)}, {"radius", a.radius}, {"tol", a.tol}, {"common", common_echo(c)}};
  Json result = fusalg::io::to_json(report);
  result["ring_name"] = ring->name();
  result["probe_size"] = probe.size();
  emit("axioms", c, fusalg::io::make_report("axioms", config, result), {}, seconds_since(t0));

  for (const auto& check : report.checks) {
    if (check.passed) continue;
    std::cerr << "axiom '" << check.axiom << "' fails (worst residual " << check.worst_residual << ")\n";
    for (const auto& t : check.failures) {
      std::cerr << "  (";
      for (std::size_t i = 0; i < t.size(); ++i) std::cerr << (i ? ", " : "") << t[i];
      std::cerr << ")\n";
    }
  }
  return report.all_passed() ? kExitPass : kExitCheckFailed;
}

int cmd_spectrum(const SpectrumArgs& a, const Common& c) {
  const auto t0 = Clock::now();
  auto ring = fusalg::io::load_ring(a.ring);
  const auto mu = fusalg::io::parse_measure(*ring, a.mu);
  const auto radii = fusalg::io::parse_radii(a.radii);
  fusalg::KestenOptions opt;
  opt.tol = a.tol;
  opt.method = fusalg::parse_eigen_method(a.method);
  opt.cap = c.cap;
  const auto rows = fusalg::kesten_profile(*ring, mu, radii, opt);
  const auto verdict = fusalg::amenability_verdict(rows, a.plateau, a.gap_tol);

  Json measure = Json::object();
  for (const auto& [l, w] : mu.weights()) measure[l.str()] = w;
  Json config{{"ring", ring_echo(a.ring)}, {"mu", a.mu},           {"measure", measure},
              {"radii", a.radii},          {"gap_tol", a.gap_tol}, {"plateau", a.plateau},
              {"method", a.method},        {"tol", a.tol},         {"common", common_echo(c)}};
  Json result;
  result["ring_name"] = ring->name();
  result["profile"] = fusalg::io::to_json(rows, c.timings);
  result["verdict"] = fusalg::io::to_json(verdict);

  std::vector<std::pair<double, double>> points;
  for (const auto& r : rows) points.emplace_back(r.radius, r.lower_bound);
  emit("spectrum", c, fusalg::io::make_report("spectrum", config, result),
       {{"spectrum.csv", fusalg::io::kesten_csv(rows)},
        {"spectrum.dat", fusalg::io::plot_data("radius", "lower_bound", points)}},
       seconds_since(t0));
  std::cerr << "verdict: " << fusalg::to_string(verdict.kind) << " (" << verdict.value << ")\n";
  return kExitPass;
}

int cmd_folner(const FolnerArgs& a, const Common& c) {
  const auto t0 = Clock::now();
  auto ring = fusalg::io::load_ring(a.ring);
  Json config{{"ring", ring_echo(a.ring)}, {"nmax", a.nmax}, {"common", common_echo(c)}};
  if (a.target) {
    config["target"] = *a.target;
    config["budget"] = a.budget;
    fusalg::GreedyOptions opt;
    opt.cap = c.cap;
    const auto g = fusalg::greedy_search(*ring, *a.target, a.budget, opt);
    Json result = fusalg::io::to_json(g);
    result["ring_name"] = ring->name();
    emit("folner", c, fusalg::io::make_report("folner", config, result), {}, seconds_since(t0));
    std::cerr << (g.found ? "Found" : "NotFound") << ": best ratio " << g.best_ratio << " (" << g.reason << ")\n";
    return g.found ? kExitPass : kExitCheckFailed;
  }

  fusalg::BallProfileOptions opt;
  opt.cap = c.cap;
  opt.stop_at_cap = true;
  opt.epsilon = a.epsilon.value_or(0.0);
  if (a.epsilon) config["epsilon"] = *a.epsilon;
  auto profile = fusalg::ball_profile(*ring, a.nmax, opt);
  Json result;
  result["ring_name"] = ring->name();
  result["profile"] = fusalg::io::to_json(profile);
  bool passed = profile.passed;
  if (ring->is_finite()) {
    const fusalg::FolnerSet whole(*ring, ring->basis());
    const auto w = fusalg::verify_sequence(*ring, {whole}, ring->generators(), opt.epsilon);
    Json wj = fusalg::io::to_json(w);
    result["whole_basis"] = wj["rows"][0];
    result["whole_basis"].erase("n");
    passed = passed || w.passed;
  }
  result["passed"] = passed;

  std::vector<std::pair<double, double>> points;
  for (const auto& r : profile.rows) points.emplace_back(r.n, r.max_ratio);
  emit("folner", c, fusalg::io::make_report("folner", config, result),
       {{"folner.csv", fusalg::io::folner_csv(profile)},
        {"folner.dat", fusalg::io::plot_data("n", "max_ratio", points)}},
       seconds_since(t0));
  if (!profile.rows.empty()) std::cerr << "final max ratio: " << profile.rows.back().max_ratio << "\n";
  return a.epsilon && !passed ? kExitCheckFailed : kExitPass;
}

std::vector<fusalg::FolnerSet> ball_sets(const fusalg::FusionRing& ring, int nmax, std::size_t cap) {
  std::vector<fusalg::FolnerSet> sets;
  for (int n = 1; n <= nmax; ++n) sets.push_back(fusalg::FolnerSet::from_window(ring, fusalg::ball(ring, n, cap)));
  return sets;
}

int cmd_action(const ActionArgs& a, const Common& c) {
  const auto t0 = Clock::now();
  auto inst = fusalg::io::load_action(a.file);
  const auto& action = *inst.action;
  const auto& ring = action.ring();
  const auto& alg = action.algebra();
  const int modes = int(a.check) + int(a.invariant) + int(a.amenability) + int(a.harness);
  if (modes != 1) {
    throw fusalg::Error(fusalg::ErrorKind::InvalidSpec,
                        "choose exactly one of --check, --invariant, --amenability, --harness");
  }
  Json config{{"file", a.file}, {"ring", fusalg::io::builder_to_json(inst.ring_spec)},
              {"instance", action.instance()}, {"blocks", alg.block_sizes()}, {"common", common_echo(c)}};
  Json result;
  int code = kExitPass;

  if (a.check) {
    config["mode"] = "check";
    config["samples"] = a.samples;
    config["word_length"] = a.word_length;
    const auto samples = fusalg::random_elements(alg, a.samples, c.seed);
    const auto report = fusalg::check_action_axioms(action, samples, fusalg::generator_words(ring, a.word_length));
    result = fusalg::io::to_json(report);
    result["relation_residual"] = action.relation_residual(fusalg::kRelationProbeRadius);
    code = report.all_passed() ? kExitPass : kExitCheckFailed;
  } else if (a.invariant) {
    config["mode"] = "invariant";
    config["nmax"] = a.nmax;
    config["tol"] = a.tol;
    const auto phi0 = inst.seed_state ? *inst.seed_state : fusalg::State::point_mass(alg, 0);
    try {
      const auto s = fusalg::invariant_state_search(action, phi0, ball_sets(ring, a.nmax, c.cap), a.tol);
      result["found"] = true;
      result["index"] = s.index;
      result["trace"] = s.trace;
      result["state"] = fusalg::io::state_to_json(s.state);
    } catch (const fusalg::NotConvergedError& e) {
      result["found"] = false;
      result["trace"] = e.trace();
      result["reason"] = e.what();
      code = kExitCheckFailed;
    }
  } else if (a.amenability) {
    config["mode"] = "amenability";
    config["nmax"] = a.nmax;
    std::vector<fusalg::ActionVector> xis;
    std::vector<double> tols;
    for (const auto& f : ball_sets(ring, a.nmax, c.cap)) {
      double worst = 0.0;
      for (const auto& g : ring.symmetric_generators()) worst = std::max(worst, fusalg::folner_ratio(ring, f, g));
      xis.push_back(fusalg::canonical_xi(action, f));
      tols.push_back(2.0 * std::sqrt(worst) + 1e-9);
    }
    const auto report = fusalg::fa_amenability_check(action, xis, tols);
    result = fusalg::io::to_json(report);
    code = report.passed ? kExitPass : kExitCheckFailed;
  } else {
    config["mode"] = "harness";
    config["nmax"] = a.nmax;
    config["kesten_radius"] = a.kesten_radius;
    fusalg::HarnessConfig hc;
    hc.folner_n_max = a.nmax;
    hc.folner_cap = std::min(hc.folner_cap, c.cap);
    hc.kesten_radius = a.kesten_radius;
    hc.seed_state = inst.seed_state;
    const auto h = fusalg::theorem_harness(action, hc);
    result = fusalg::io::to_json(h);
    const bool certified = (h.direction == "amenable" && h.invariant_found && h.fa_amenability &&
                            h.fa_amenability->passed) ||
                           (h.direction == "non-amenable-evidence" && h.lower_bound_consistent);
    result["certified"] = certified;
    code = certified ? kExitPass : kExitCheckFailed;
    std::cerr << "direction: " << h.direction << "\n";
  }
  emit("action", c, fusalg::io::make_report("action", config, result), {}, seconds_since(t0));
  return code;
}

int exit_code_for(fusalg::ErrorKind kind) {
  switch (kind) {
    case fusalg::ErrorKind::SizeCapExceeded: return kExitResourceCap;
    case fusalg::ErrorKind::NoConvergence:
    case fusalg::ErrorKind::NotConverged: return kExitCheckFailed;
    default: return kExitUsage;
  }
}

void apply_environment(Common& c) {
  if (const char* t = std::getenv("FUSALG_THREADS")) {
    const int n = std::atoi(t);
    if (n > 0) {
      Eigen::setNbThreads(n);
#ifdef _OPENMP
      omp_set_num_threads(n);
#endif
    }
  }
  if (const char* m = std::getenv("FUSALG_MAX_ELEMENTS")) {
    const long long n = std::atoll(m);
    if (n > 0) c.cap = static_cast<std::size_t>(n);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fusion algebras: axioms, spectral bounds, Følner sets and module actions"};
  app.require_subcommand(1);
  Common common;
  apply_environment(common);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out_dir, "Directory for the JSON report and CSV/plot data files");
    sub->add_flag("--timings", common.timings, "Include wall-clock timings in the report");
    sub->add_option("--seed", common.seed, "Seed for sampled probes");
    sub->add_option("--cap", common.cap, "Maximum window size (env FUSALG_MAX_ELEMENTS)");
  };

  AxiomsArgs ax;
  auto* axioms = app.add_subcommand("axioms", "Check the fusion-ring axioms on a ball");
  axioms->add_option("--ring", ax.ring, "builtin:<shorthand> or file:<path>")->required();
  axioms->add_option("--radius", ax.radius, "Probe ball radius")->check(CLI::NonNegativeNumber);
  axioms->add_option("--tol", ax.tol, "Tolerance for real dimensions")->check(CLI::PositiveNumber);
  add_common(axioms);

  SpectrumArgs sp;
  auto* spectrum = app.add_subcommand("spectrum", "Compressed top eigenvalues and amenability verdict");
  spectrum->add_option("--ring", sp.ring, "builtin:<shorthand> or file:<path>")->required();
  spectrum->add_option("--mu", sp.mu, "uniform-generators | symmetric-step | delta:<l> | sym:<l> | l:w,...");
  spectrum->add_option("--radii", sp.radii, "a..b[:step] or r1,r2,...");
  spectrum->add_option("--gap-tol", sp.gap_tol, "Distance from 1 counted as approaching one")->check(CLI::PositiveNumber);
  spectrum->add_option("--plateau", sp.plateau, "Rows inspected for a plateau")->check(CLI::Range(2, 1 << 20));
  spectrum->add_option("--method", sp.method, "auto | tridiagonal | lanczos | power");
  spectrum->add_option("--tol", sp.tol, "Eigensolver tolerance")->check(CLI::PositiveNumber);
  add_common(spectrum);

  FolnerArgs fo;
  auto* folner = app.add_subcommand("folner", "Følner ratios of balls, or a greedy search");
  folner->add_option("--ring", fo.ring, "builtin:<shorthand> or file:<path>")->required();
  folner->add_option("--nmax", fo.nmax, "Largest ball radius")->check(CLI::NonNegativeNumber);
  folner->add_option("--target", fo.target, "Greedy search for a set with max ratio below this");
  folner->add_option("--budget", fo.budget, "Candidate evaluations for the greedy search")->check(CLI::PositiveNumber);
  folner->add_option("--epsilon", fo.epsilon, "Pass when the final max ratio is at most this");
  add_common(folner);

  ActionArgs ac;
  auto* action = app.add_subcommand("action", "Module actions on finite-dimensional C*-algebras");
  action->add_option("--file", ac.file, "Action instance JSON")->required();
  action->add_flag("--check", ac.check, "Action axiom residuals");
  action->add_flag("--invariant", ac.invariant, "Averaged invariant-state search over balls");
  action->add_flag("--amenability", ac.amenability, "Canonical vectors over balls");
  action->add_flag("--harness", ac.harness, "Both directions with certificates");
  action->add_option("--samples", ac.samples, "Random algebra elements for --check")->check(CLI::PositiveNumber);
  action->add_option("--word-length", ac.word_length, "Longest generator word for --check")->check(CLI::NonNegativeNumber);
  action->add_option("--nmax", ac.nmax, "Largest ball radius")->check(CLI::PositiveNumber);
  action->add_option("--tol", ac.tol, "Invariance tolerance")->check(CLI::PositiveNumber);
  action->add_option("--kesten-radius", ac.kesten_radius, "Support radius for the spectral certificate")->check(CLI::PositiveNumber);
  add_common(action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*axioms) return cmd_axioms(ax, common);
    if (*spectrum) return cmd_spectrum(sp, common);
    if (*folner) return cmd_folner(fo, common);
    return cmd_action(ac, common);
  } catch (const fusalg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
