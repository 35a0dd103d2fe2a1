#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fusalg/catalog.hpp"
#include "fusalg/core/axioms.hpp"
#include "fusalg/core/explicit_ring.hpp"
#include "fusalg/core/memo_ring.hpp"
#include "fusalg/core/ring_element.hpp"
#include "fusalg/core/window.hpp"
#include "oracles.hpp"

using namespace fusalg;

namespace {

Label L(const std::string& s) { return Label(s); }

FusionProduct fp(std::initializer_list<std::pair<const char*, Multiplicity>> items) {
  FusionProduct out;
  for (auto [l, n] : items) out.emplace_back(Label(l), n);
  return out;
}

double total(const SparseWeights& w) {
  double s = 0.0;
  for (const auto& [l, x] : w) s += x;
  return s;
}

// SU(2) truncated to spins 0..4 as an explicit table, optionally corrupted.
ExplicitRing::Table su2_table(int top) {
  ExplicitRing::Table t;
  t.name = "su2-truncated";
  t.unit = L("0");
  t.generators = {L("1")};
  for (int n = 0; n <= top; ++n) t.basis.push_back({L(std::to_string(n)), double(n + 1), L(std::to_string(n))});
  for (int a = 0; a <= top; ++a)
    for (int b = 0; b <= top; ++b)
      for (int c = std::abs(a - b); c <= a + b; c += 2) {
        if (c > top) continue;
        t.fusion[{L(std::to_string(a)), L(std::to_string(b))}][L(std::to_string(c))] = 1;
      }
  return t;
}

std::vector<BuilderSpec> catalog_specs() {
  return {BuilderSpec::free_group(2),  BuilderSpec::free_abelian(1), BuilderSpec::free_abelian(2),
          BuilderSpec::cyclic(5),      BuilderSpec::finite_group_table("S3"), BuilderSpec::su2(),
          BuilderSpec::free_orthogonal(3), BuilderSpec::ising(),
          BuilderSpec::product(BuilderSpec::su2(), BuilderSpec::cyclic(3))};
}

}  // namespace

TEST_CASE("fuse examples") {
  auto z = build(BuilderSpec::free_abelian(1));
  CHECK(z->fuse(L("1"), L("1")) == fp({{"2", 1}}));

  auto su2 = build(BuilderSpec::su2());
  CHECK(su2->fuse(L("1"), L("1")) == fp({{"0", 1}, {"2", 1}}));

  auto ising = build(BuilderSpec::ising());
  CHECK(ising->fuse(L("sigma"), L("sigma")) == fp({{"1", 1}, {"eps", 1}}));
  const std::vector<Label> basis = ising->basis();
  const auto report = check_axioms(*ising, basis);
  CHECK(report.all_passed());
  CHECK(report.find("dimension")->worst_residual <= 1e-12);
  CHECK(ising->dim(L("sigma")) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("fuse rejects unknown labels") {
  auto su2 = build(BuilderSpec::su2());
  CHECK_THROWS_AS(su2->fuse(L("x"), L("1")), Error);
  try {
    su2->fuse(L("-1"), L("1"));
    FAIL("expected InvalidLabel");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidLabel);
  }
}

TEST_CASE("SU(2) fusion matches character multiplication") {
  auto su2 = build(BuilderSpec::su2());
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 8; ++b)
      for (int c = 0; c <= 16; ++c) {
        CHECK(su2->multiplicity(L(std::to_string(a)), L(std::to_string(b)), L(std::to_string(c))) ==
              oracle::spin_multiplicity(a, b, c));
      }
}

TEST_CASE("multiply and involute") {
  auto su2 = build(BuilderSpec::su2());
  RingElement x;
  x.add(L("1"), 1.0);
  x.add(L("2"), 1.0);
  const auto y = multiply(*su2, x, RingElement::dirac(L("1")));
  RingElement expected;
  for (const char* l : {"0", "1", "2", "3"}) expected.add(L(l), 1.0);
  CHECK(y == expected);

  CHECK(multiply(*su2, RingElement::dirac(L("0")), x) == x);

  auto f2 = build(BuilderSpec::free_group(2));
  CHECK(multiply(*f2, RingElement::dirac(L("a")), RingElement::dirac(L("A"))) == RingElement::dirac(L("e")));
  CHECK(involute(*f2, RingElement::dirac(L("ab"))) == RingElement::dirac(L("BA")));
  CHECK(involute(*f2, RingElement::dirac(L("e"))) == RingElement::dirac(L("e")));
  for (int n = 0; n < 6; ++n) {
    const auto d = RingElement::dirac(L(std::to_string(n)));
    CHECK(involute(*su2, d) == d);
  }

  RingElement z;
  z.add(L("ab"), {1.0, 2.0});
  z.add(L("B"), {0.0, -1.0});
  const auto zz = involute(*f2, z);
  CHECK(zz[L("BA")] == std::complex<double>(1.0, -2.0));
  CHECK(zz[L("b")] == std::complex<double>(0.0, 1.0));
  CHECK(involute(*f2, zz) == z);
}

TEST_CASE("ring elements never store zeros") {
  RingElement x;
  x.add(L("1"), 2.0);
  x.add(L("1"), -2.0);
  CHECK(x.is_zero());
  CHECK(x.support().empty());
}

TEST_CASE("dirac_convolve examples") {
  auto z = build(BuilderSpec::free_abelian(1));
  auto w = dirac_convolve(*z, L("1"), L("1"));
  CHECK(w.size() == 1);
  CHECK(w[L("2")] == 1.0);

  auto su2 = build(BuilderSpec::su2());
  w = dirac_convolve(*su2, L("1"), L("1"));
  CHECK(w[L("0")] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w[L("2")] == doctest::Approx(0.75).epsilon(1e-15));

  auto o3 = build(BuilderSpec::free_orthogonal(3));
  w = dirac_convolve(*o3, L("1"), L("1"));
  CHECK(w[L("0")] == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(w[L("2")] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("dirac_convolve is a probability on every catalog ball") {
  for (const auto& spec : catalog_specs()) {
    auto ring = build(spec);
    const auto b = ball(*ring, spec.type == BuilderType::FreeGroup ? 3 : 5);
    for (const auto& x : b.labels())
      for (const auto& y : b.labels()) CHECK(std::abs(total(dirac_convolve(*ring, x, y)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("measure_convolve examples") {
  auto z = build(BuilderSpec::free_abelian(1));
  const auto mu = FiniteMeasure::symmetrized_dirac(*z, L("1"));
  const auto mm = measure_convolve(*z, mu, mu);
  CHECK(mm[L("-2")] == doctest::Approx(0.25));
  CHECK(mm[L("0")] == doctest::Approx(0.5));
  CHECK(mm[L("2")] == doctest::Approx(0.25));
  const auto unit = FiniteMeasure::dirac(*z, L("0"));
  CHECK(measure_convolve(*z, mu, unit).weights() == mu.weights());

  // Two steps by hand: δ₁*δ₁ = ¼δ₀ + ¾δ₂, δ₀*δ₁ = δ₁, δ₂*δ₁ = ⅓δ₁ + ⅔δ₃.
  auto su2 = build(BuilderSpec::su2());
  const auto d1 = FiniteMeasure::dirac(*su2, L("1"));
  const auto cube = measure_convolve(*su2, measure_convolve(*su2, d1, d1), d1);
  CHECK(cube[L("1")] == doctest::Approx(0.25 + 0.75 / 3.0).epsilon(1e-14));
  CHECK(cube[L("3")] == doctest::Approx(0.75 * 2.0 / 3.0).epsilon(1e-14));
  CHECK(cube.weights().size() == 2);
}

TEST_CASE("measure_convolve is associative") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (const auto& spec : {BuilderSpec::su2(), BuilderSpec::free_orthogonal(3), BuilderSpec::ising(),
                           BuilderSpec::finite_group_table("S3"), BuilderSpec::free_group(2)}) {
    auto ring = build(spec);
    const auto b = ball(*ring, 2).labels();
    auto random_measure = [&] {
      SparseWeights w;
      double s = 0.0;
      for (const auto& l : b) s += (w[l] = u(rng));
      for (auto& [l, x] : w) x /= s;
      // renormalize exactly so the constructor's mass check passes
      double t = 0.0;
      for (auto& [l, x] : w) t += x;
      w.begin()->second += 1.0 - t;
      return FiniteMeasure(*ring, w);
    };
    for (int trial = 0; trial < 3; ++trial) {
      const auto m1 = random_measure(), m2 = random_measure(), m3 = random_measure();
      const auto left = measure_convolve(*ring, measure_convolve(*ring, m1, m2), m3);
      const auto right = measure_convolve(*ring, m1, measure_convolve(*ring, m2, m3));
      for (const auto& [l, x] : left.weights()) CHECK(std::abs(x - right[l]) <= 1e-12);
      for (const auto& [l, x] : right.weights()) CHECK(std::abs(x - left[l]) <= 1e-12);
    }
  }
}

TEST_CASE("finite measures validate mass and symmetry") {
  auto z = build(BuilderSpec::free_abelian(1));
  CHECK_THROWS_AS(FiniteMeasure(*z, SparseWeights{{L("1"), 0.5}}), Error);
  CHECK_THROWS_AS(FiniteMeasure(*z, SparseWeights{{L("1"), 1.5}, {L("2"), -0.5}}), Error);
  CHECK_FALSE(FiniteMeasure::dirac(*z, L("1")).is_symmetric());
  CHECK(FiniteMeasure::symmetrized_dirac(*z, L("1")).is_symmetric());
  CHECK(FiniteMeasure::uniform_generators(*z).is_symmetric());
  auto su2 = build(BuilderSpec::su2());
  CHECK(FiniteMeasure::dirac(*su2, L("1")).is_symmetric());
}

TEST_CASE("check_axioms on the catalog, radius 5") {
  for (const auto& spec : catalog_specs()) {
    auto ring = build(spec);
    const auto probe = ball(*ring, 5).labels();
    const auto report = check_axioms(*ring, probe);
    INFO(spec.to_string());
    CHECK(report.all_passed());
    CHECK(report.exact == ring->integer_dimensions());
    if (report.exact) {
      for (const auto& c : report.checks) CHECK(c.worst_residual == 0.0);
    }
  }
}

TEST_CASE("check_axioms finds a corrupted multiplicity") {
  auto t = su2_table(4);
  t.fusion[{L("1"), L("1")}][L("2")] = 2;
  ExplicitRing bad(t);
  const auto basis = bad.basis();
  const auto report = check_axioms(bad, basis);
  CHECK_FALSE(report.all_passed());
  const auto* frob = report.find("frobenius");
  REQUIRE(frob != nullptr);
  CHECK_FALSE(frob->passed);
  bool found = false;
  for (const auto& triple : frob->failures) {
    std::multiset<Label> s(triple.begin(), triple.end());
    if (s == std::multiset<Label>{L("1"), L("1"), L("2")}) found = true;
  }
  CHECK(found);
}

TEST_CASE("truncated tables fail the dimension identity") {
  ExplicitRing truncated(su2_table(3));
  const auto basis = truncated.basis();
  const auto report = check_axioms(truncated, basis);
  CHECK_FALSE(report.find("dimension")->passed);
}

TEST_CASE("explicit tables reject structural errors") {
  auto t = su2_table(2);
  t.unit = L("9");
  CHECK_THROWS_AS(ExplicitRing{t}, Error);
  t = su2_table(2);
  t.basis[1].dim = -1.0;
  CHECK_THROWS_AS(ExplicitRing{t}, Error);
}

TEST_CASE("dimensions below one are diagnosed, not rejected") {
  auto t = su2_table(4);
  t.basis[1].dim = 0.5;
  ExplicitRing ring(t);
  const auto basis = ring.basis();
  CHECK_FALSE(check_axioms(ring, basis).find("dimension")->passed);
}

TEST_CASE("ball examples") {
  auto z = build(BuilderSpec::free_abelian(1));
  const auto b = ball(*z, 2);
  CHECK(b.labels() == std::vector<Label>{L("-2"), L("-1"), L("0"), L("1"), L("2")});

  auto f2 = build(BuilderSpec::free_group(2));
  for (int r = 0; r <= 7; ++r) CHECK(ball(*f2, r).size() == std::size_t(oracle::free_group_ball_size(2, r)));
  auto f3 = build(BuilderSpec::free_group(3));
  CHECK(ball(*f3, 4).size() == std::size_t(oracle::free_group_ball_size(3, 4)));

  auto su2 = build(BuilderSpec::su2());
  CHECK(ball(*su2, 3).labels() == std::vector<Label>{L("0"), L("1"), L("2"), L("3")});

  CHECK_THROWS_AS(ball(*f2, 10, 1000), Error);
  try {
    ball(*f2, 10, 1000);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeCapExceeded);
  }
}

TEST_CASE("ball shells give the word length") {
  auto f2 = build(BuilderSpec::free_group(2));
  const auto b = ball(*f2, 4);
  REQUIRE(b.shells().size() == b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& s = b[i].str();
    CHECK(b.shells()[i] == (s == "e" ? 0 : int(s.size())));
  }
}

TEST_CASE("windows are canonical and weighted by d squared") {
  auto su2 = build(BuilderSpec::su2());
  Window w(*su2, {L("3"), L("0"), L("10")});
  CHECK(w.labels() == std::vector<Label>{L("0"), L("3"), L("10")});
  CHECK(w.weights() == std::vector<double>{1.0, 16.0, 121.0});
  CHECK(w.find(L("10")).value() == 2);
  CHECK_THROWS_AS(Window(*su2, {L("1"), L("1")}), Error);
}

TEST_CASE("memoized ring returns the same products") {
  auto inner = build(BuilderSpec::free_group(2));
  MemoizedRing memo(inner, 64);
  const auto b = ball(*inner, 3).labels();
  for (const auto& x : b)
    for (const auto& y : {L("a"), L("B")}) CHECK(memo.fuse(x, y) == inner->fuse(x, y));
  CHECK(memo.cache_size() <= 64);
  CHECK(memo.cache_size() > 0);
}

TEST_CASE("involution is an isometry on supports") {
  auto s3 = build(BuilderSpec::finite_group_table("S3"));
  for (const auto& a : s3->basis())
    for (const auto& b : s3->basis()) {
      RingElement x = multiply(*s3, RingElement::dirac(a), RingElement::dirac(b));
      const auto xs = involute(*s3, x).support();
      std::vector<Label> mapped;
      for (const auto& l : x.support()) mapped.push_back(s3->conj(l));
      std::sort(mapped.begin(), mapped.end());
      auto sorted = xs;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == mapped);
    }
}
