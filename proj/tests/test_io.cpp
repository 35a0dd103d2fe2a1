#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "fusalg/io/report.hpp"

using namespace fusalg;
using namespace fusalg::io;

namespace {

const std::string kData = FUSALG_DATA_DIR;

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidSpec;
}

void require_same_finite_ring(const FusionRing& a, const FusionRing& b) {
  REQUIRE(a.basis() == b.basis());
  CHECK(a.unit() == b.unit());
  for (const auto& x : a.basis()) {
    CHECK(a.dim(x) == doctest::Approx(b.dim(x)).epsilon(1e-15));
    CHECK(a.conj(x) == b.conj(x));
    for (const auto& y : a.basis()) CHECK(a.fuse(x, y) == b.fuse(x, y));
  }
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("builder JSON round trip") {
  const std::vector<BuilderSpec> specs = {
      BuilderSpec::free_group(2),       BuilderSpec::free_abelian(3),
      BuilderSpec::cyclic(5),           BuilderSpec::finite_group_table("S3"),
      BuilderSpec::su2(),               BuilderSpec::free_orthogonal(4),
      BuilderSpec::ising(),             BuilderSpec::product(BuilderSpec::su2(), BuilderSpec::cyclic(3))};
  for (const auto& s : specs) {
    const auto j = builder_to_json(s);
    CHECK(j.contains("type"));
    CHECK(builder_from_json(j) == s);
    CHECK(builder_from_json(Json::parse(j.dump())) == s);
  }
  CHECK(builder_from_json(Json("cyclic:3")) == BuilderSpec::cyclic(3));
  CHECK(builder_from_json(Json("su2")) == BuilderSpec::su2());
  CHECK(kind_of([] { builder_from_json(Json("cyclic:1")); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { builder_from_json(Json("nonsense:2")); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { builder_from_json(Json::parse(R"({"type":"cyclic","params":{"m":0}})")); }) ==
        ErrorKind::InvalidSpec);
}

TEST_CASE("ring JSON round trip") {
  for (const auto& s : {BuilderSpec::cyclic(4), BuilderSpec::finite_group_table("S3"), BuilderSpec::ising(),
                        BuilderSpec::product(BuilderSpec::cyclic(2), BuilderSpec::ising())}) {
    const auto ring = build(s);
    const auto explicit_form = ring_to_json(*ring);
    CHECK(explicit_form.at("kind") == "explicit");
    const auto back = ring_from_json(Json::parse(explicit_form.dump()));
    require_same_finite_ring(*ring, *back);
    CHECK(check_axioms(*back, back->basis()).all_passed());

    const auto via_builder = ring_from_json(ring_to_json(*ring, s));
    require_same_finite_ring(*ring, *via_builder);
  }
  const auto su2 = build(BuilderSpec::su2());
  CHECK_THROWS_AS(ring_to_json(*su2), Error);
  const auto j = ring_to_json(*su2, BuilderSpec::su2());
  CHECK(ring_from_json(j)->dim(Label("4")) == 5.0);
}

TEST_CASE("ring loading") {
  const auto ising = load_ring(kData + "/ising.json");
  require_same_finite_ring(*ising, *build(BuilderSpec::ising()));
  const auto via_prefix = load_ring("file:" + kData + "/ising.json");
  require_same_finite_ring(*ising, *via_prefix);
  CHECK(load_ring("builtin:cyclic:3")->basis().size() == 3);
  CHECK(load_ring("builtin:free_orthogonal:3")->dim(Label("1")) == 3.0);
  // without a prefix the argument is a path
  CHECK(kind_of([] { load_ring("free_orthogonal:3"); }) == ErrorKind::ParseError);

  const auto bad = load_ring(kData + "/bad.json");
  const auto report = check_axioms(*bad, bad->basis());
  CHECK_FALSE(report.all_passed());

  CHECK_THROWS_AS(load_ring(kData + "/missing.json"), Error);
  const auto tmp = std::filesystem::temp_directory_path() / "fusalg_io_garbage.json";
  write_text(tmp.string(), "{ not json");
  CHECK(kind_of([&] { load_ring(tmp.string()); }) == ErrorKind::ParseError);
  std::filesystem::remove(tmp);
}

TEST_CASE("measure strings") {
  const auto z = build(BuilderSpec::free_abelian(1));
  auto mu = parse_measure(*z, "uniform-generators");
  CHECK(mu[Label("1")] == 0.5);
  CHECK(mu[Label("-1")] == 0.5);
  mu = parse_measure(*z, "symmetric-step");
  CHECK(mu.is_symmetric());
  CHECK(mu[Label("1")] == 0.5);
  mu = parse_measure(*z, "delta:2");
  CHECK(mu[Label("2")] == 1.0);
  CHECK_FALSE(mu.is_symmetric());
  mu = parse_measure(*z, "sym:3");
  CHECK(mu[Label("-3")] == 0.5);
  mu = parse_measure(*z, "1:0.25,-1:0.25,0:0.5");
  CHECK(mu[Label("0")] == 0.5);
  CHECK(mu.is_symmetric());
  CHECK(kind_of([&] { parse_measure(*z, "1:0.5"); }) == ErrorKind::NonProbability);
  CHECK(kind_of([&] { parse_measure(*z, "1:-0.5,-1:1.5"); }) == ErrorKind::NonProbability);
  CHECK_THROWS_AS(parse_measure(*z, "bogus"), Error);
  CHECK_THROWS_AS(parse_measure(*z, "1:x"), Error);
}

TEST_CASE("radius strings") {
  CHECK(parse_radii("1..5") == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(parse_radii("100..500:200") == std::vector<int>{100, 300, 500});
  CHECK(parse_radii("0..10:4") == std::vector<int>{0, 4, 8, 10});
  CHECK(parse_radii("3,7,9") == std::vector<int>{3, 7, 9});
  CHECK(parse_radii("4") == std::vector<int>{4});
  for (const char* empty : {"5..1", "1..5:0"})
    CHECK_MESSAGE(kind_of([&] { parse_radii(empty); }) == ErrorKind::InvalidSpec, empty);
  for (const char* malformed : {"", "1..", "a..b", "1,,2"})
    CHECK_MESSAGE(kind_of([&] { parse_radii(malformed); }) == ErrorKind::ParseError, malformed);
}

TEST_CASE("action instances from data") {
  {
  const auto inst = load_action(kData + "/rotation5.json");
  REQUIRE(inst.action.has_value());
  CHECK(inst.ring_spec == BuilderSpec::free_abelian(1));
  CHECK(inst.action->algebra().block_sizes() == std::vector<int>(5, 1));
  REQUIRE(inst.seed_state.has_value());
  CHECK((*inst.seed_state)(inst.action->algebra().unit()) == std::complex<double>(1.0));

  }
  {
  const auto inst = load_action(kData + "/conjugation-m2.json");
  REQUIRE(inst.action.has_value());
  CHECK(inst.action->relation_residual(kRelationProbeRadius) <= 1e-12);
  const auto& rho = inst.seed_state->densities()[0];
  CHECK(std::abs(rho(0, 1) - 0.5) <= 1e-15);
  }

  for (const char* f : {"f2-trivial.json", "trivial-c.json", "cyclic3-rotation.json"}) {
    CHECK(load_action(kData + "/" + f).action.has_value());
  }

  auto j = read_json_file(kData + "/cyclic3-rotation.json");
  j["data"]["generators"]["1"] = Json::array({1, 0, 2});
  CHECK(kind_of([&] { action_from_json(j); }) == ErrorKind::InconsistentRelations);
  j = read_json_file(kData + "/rotation5.json");
  j["algebra"]["blocks"] = Json::array({2, 1, 1, 1, 1});
  CHECK(kind_of([&] { action_from_json(j); }) == ErrorKind::InvalidSpec);
  j = read_json_file(kData + "/rotation5.json");
  j["seed_state"] = Json::parse(R"({"point_mass": 9})");
  CHECK_THROWS_AS(action_from_json(j), Error);
  j = read_json_file(kData + "/rotation5.json");
  j.erase("algebra");
  CHECK(kind_of([&] { action_from_json(j); }) == ErrorKind::ParseError);
}

TEST_CASE("matrix JSON") {
  Eigen::MatrixXcd m(2, 3);
  m << 1.0, std::complex<double>(0, 2), 3.5, -1.0, 0.0, std::complex<double>(0.25, -0.125);
  const auto back = matrix_from_json(Json::parse(matrix_to_json(m).dump()));
  CHECK(back == m);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"re":[[1,2],[3]]})")), Error);
}

TEST_CASE("report envelope") {
  const auto r = make_report("axioms", Json{{"ring", "su2"}}, Json{{"passed", true}});
  std::vector<std::string> keys;
  for (const auto& [k, v] : r.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"schema_version", "tool", "version", "command", "config", "result"});
  CHECK(r.at("schema_version") == kSchemaVersion);
  CHECK(r.at("tool") == "fusalg");

  const auto ring = build(BuilderSpec::su2());
  const auto axioms = to_json(check_axioms(*ring, ball(*ring, 4).labels()));
  CHECK(axioms.at("passed") == true);
}

TEST_CASE("Kesten CSV, plot data and verdict JSON") {
  const auto z = build(BuilderSpec::free_abelian(1));
  const auto rows = kesten_profile(*z, FiniteMeasure::uniform_generators(*z), {1, 2, 3});
  const auto csv = lines(kesten_csv(rows));
  REQUIRE(csv.size() == 4);
  CHECK(csv[0] == "radius,window_size,lower_bound,iterations,seconds");
  CHECK(csv[1].rfind("1,3,", 0) == 0);
  CHECK(csv[3].rfind("3,7,", 0) == 0);

  const auto j = to_json(rows, false);
  REQUIRE(j.size() == 3);
  CHECK_FALSE(j[0].contains("seconds"));
  CHECK(to_json(rows, true)[0].contains("seconds"));
  CHECK(j[2].at("lower_bound").get<double>() == doctest::Approx(std::cos(std::acos(-1.0) / 8)).epsilon(1e-10));

  const auto v = to_json(amenability_verdict(rows, 3, 1e-3));
  CHECK(v.contains("kind"));

  const auto dat = lines(plot_data("radius", "bound", {{1, 0.5}, {2, 0.25}}));
  REQUIRE(dat.size() == 3);
  CHECK(dat[0].front() == '#');
  std::istringstream row(dat[2]);
  double x = 0, y = 0;
  row >> x >> y;
  CHECK(x == 2.0);
  CHECK(y == 0.25);
}

TEST_CASE("Folner CSV and JSON") {
  const auto z = build(BuilderSpec::free_abelian(1));
  const auto p = ball_profile(*z, 3);
  const auto csv = lines(folner_csv(p));
  REQUIRE(csv.size() == 4);
  CHECK(csv[0].rfind("n,size,weighted_card,ratio_", 0) == 0);
  CHECK(csv[0].substr(csv[0].size() - 9) == "max_ratio");
  const auto j = to_json(p);
  const auto& first = j.at("rows")[0];
  CHECK(first.at("max_ratio").get<double>() == doctest::Approx(2.0 / 3.0));

  const auto o3 = build(BuilderSpec::free_orthogonal(3));
  const auto g = to_json(greedy_search(*o3, 0.4, 200));
  CHECK(g.at("status") == "NotFound");
  const auto gz = to_json(greedy_search(*z, 0.1, 1000));
  CHECK(gz.at("status") == "Found");
}

TEST_CASE("reports are deterministic") {
  const auto inst = load_action(kData + "/rotation5.json");
  HarnessConfig cfg;
  cfg.folner_n_max = 10;
  const auto a = to_json(theorem_harness(*inst.action, cfg)).dump();
  const auto b = to_json(theorem_harness(*inst.action, cfg)).dump();
  CHECK(a == b);
  const auto r = Json::parse(a);
  CHECK(r.at("direction") == "amenable");
  CHECK(r.contains("certificates"));
}
