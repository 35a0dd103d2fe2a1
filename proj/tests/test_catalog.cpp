#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fusalg/catalog.hpp"
#include "fusalg/core/axioms.hpp"
#include "fusalg/core/window.hpp"
#include "oracles.hpp"

using namespace fusalg;

namespace {

Label L(const std::string& s) { return Label(s); }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("cyclic group addition") {
  auto c3 = build(BuilderSpec::cyclic(3));
  CHECK(c3->fuse(L("1"), L("2")) == FusionProduct{{L("0"), 1}});
  CHECK(c3->basis() == std::vector<Label>{L("0"), L("1"), L("2")});
  CHECK(c3->conj(L("1")) == L("2"));
  for (const auto& a : c3->basis()) CHECK(c3->dim(a) == 1.0);
}

TEST_CASE("free orthogonal dimensions follow the recurrence") {
  auto o3 = build(BuilderSpec::free_orthogonal(3));
  const std::vector<std::int64_t> expected{1, 3, 8, 21, 55};
  for (int n = 0; n < 5; ++n) CHECK(o3->exact_dim(L(std::to_string(n))).value() == expected[std::size_t(n)]);
  // d_{n+1} = 3 d_n − d_{n−1} for a long stretch, checked in doubles
  double prev = 1.0, cur = 3.0;
  for (int n = 1; n < 200; ++n) {
    const double next = 3.0 * cur - prev;
    CHECK(o3->dim(L(std::to_string(n + 1))) == doctest::Approx(next).epsilon(1e-12));
    prev = cur;
    cur = next;
  }
  // exact dims stop once they no longer fit in 64 bits
  CHECK_FALSE(o3->exact_dim(L("200")).has_value());
  CHECK(o3->integer_dimensions());
}

TEST_CASE("S3 table matches character inner products over the group") {
  auto s3 = build(BuilderSpec::finite_group_table("S3"));
  const std::vector<std::string> irreps{"triv", "sgn", "std"};
  for (const auto& a : irreps)
    for (const auto& b : irreps)
      for (const auto& c : irreps) CHECK(s3->multiplicity(L(a), L(b), L(c)) == oracle::s3_multiplicity(a, b, c));
  CHECK(s3->fuse(L("std"), L("std")) ==
        FusionProduct{{L("triv"), 1}, {L("sgn"), 1}, {L("std"), 1}});
  CHECK(s3->dim(L("std")) == 2.0);
  CHECK(s3->dim(L("sgn")) == 1.0);
}

TEST_CASE("free_orthogonal(2) is su2") {
  auto o2 = build(BuilderSpec::free_orthogonal(2));
  auto su2 = build(BuilderSpec::su2());
  const auto b = ball(*su2, 12).labels();
  for (const auto& x : b) {
    CHECK(o2->dim(x) == su2->dim(x));
    for (const auto& y : b) CHECK(o2->fuse(x, y) == su2->fuse(x, y));
  }
  auto o3 = build(BuilderSpec::free_orthogonal(3));
  CHECK(o3->fuse(L("2"), L("3")) == su2->fuse(L("2"), L("3")));
  CHECK(o3->dim(L("2")) != su2->dim(L("2")));
}

TEST_CASE("su2 fusion rule") {
  auto su2 = build(BuilderSpec::su2());
  for (int a = 0; a <= 10; ++a)
    for (int b = 0; b <= 10; ++b)
      for (int c = 0; c <= 22; ++c) {
        const bool allowed = std::abs(a - b) <= c && c <= a + b && (a + b + c) % 2 == 0;
        CHECK(su2->multiplicity(L(std::to_string(a)), L(std::to_string(b)), L(std::to_string(c))) ==
              (allowed ? 1 : 0));
      }
}

TEST_CASE("products") {
  auto p = build(BuilderSpec::product(BuilderSpec::su2(), BuilderSpec::cyclic(3)));
  CHECK(p->unit() == L("(0,0)"));
  CHECK(p->dim(L("(2,1)")) == 3.0);
  CHECK(p->conj(L("(2,1)")) == L("(2,2)"));
  CHECK(p->fuse(L("(1,1)"), L("(1,2)")) == FusionProduct{{L("(0,0)"), 1}, {L("(2,0)"), 1}});
  CHECK_FALSE(p->is_finite());
  CHECK(kind_of([&] { p->dim(L("(1)")); }) == ErrorKind::InvalidLabel);

  auto q = build(BuilderSpec::product(BuilderSpec::ising(), BuilderSpec::finite_group_table("S3")));
  CHECK(q->is_finite());
  CHECK(q->basis().size() == 9);
  CHECK(q->dim(L("(sigma,std)")) == doctest::Approx(2.0 * std::sqrt(2.0)));
  const auto basis = q->basis();
  CHECK(check_axioms(*q, basis).all_passed());

  auto nested = build(BuilderSpec::product(BuilderSpec::cyclic(2),
                                           BuilderSpec::product(BuilderSpec::cyclic(2), BuilderSpec::cyclic(3))));
  CHECK(nested->basis().size() == 12);
  CHECK(nested->is_valid(L("(1,(1,2))")));
}

TEST_CASE("product axioms follow from the factors") {
  const std::vector<BuilderSpec> factors{BuilderSpec::su2(), BuilderSpec::cyclic(4), BuilderSpec::ising(),
                                         BuilderSpec::free_orthogonal(3), BuilderSpec::finite_group_table("S3")};
  for (const auto& a : factors)
    for (const auto& b : factors) {
      auto ring = build(BuilderSpec::product(a, b));
      const auto probe = ball(*ring, 3).labels();
      INFO(ring->name());
      CHECK(check_axioms(*ring, probe).all_passed());
    }
}

TEST_CASE("free groups and lattices") {
  auto f2 = build(BuilderSpec::free_group(2));
  CHECK(f2->generators() == std::vector<Label>{L("a"), L("b")});
  CHECK(f2->fuse(L("ab"), L("Ba")) == FusionProduct{{L("aa"), 1}});
  CHECK(f2->conj(L("abA")) == L("aBA"));
  CHECK_FALSE(f2->is_valid(L("aA")));
  auto f5 = build(BuilderSpec::free_group(5));
  CHECK(f5->generators().back() == L("f"));

  auto z2 = build(BuilderSpec::free_abelian(2));
  CHECK(z2->fuse(L("(1,-2)"), L("(3,4)")) == FusionProduct{{L("(4,2)"), 1}});
  CHECK(z2->conj(L("(1,-2)")) == L("(-1,2)"));
  CHECK(z2->unit() == L("(0,0)"));
}

TEST_CASE("validation") {
  CHECK(kind_of([] { build(BuilderSpec::free_group(0)); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { build(BuilderSpec::free_abelian(0)); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { build(BuilderSpec::cyclic(1)); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { build(BuilderSpec::free_orthogonal(1)); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { build(BuilderSpec::finite_group_table("A5")); }) == ErrorKind::InvalidSpec);
  BuilderSpec bad_product{BuilderType::Product, 0, {}, {BuilderSpec::su2()}};
  CHECK(kind_of([&] { build(bad_product); }) == ErrorKind::InvalidSpec);
}

TEST_CASE("shorthand parsing round-trips") {
  CHECK(parse_builder_shorthand("su2") == BuilderSpec::su2());
  CHECK(parse_builder_shorthand("cyclic:3") == BuilderSpec::cyclic(3));
  CHECK(parse_builder_shorthand("free_group:2") == BuilderSpec::free_group(2));
  CHECK(parse_builder_shorthand("free_orthogonal:3") == BuilderSpec::free_orthogonal(3));
  CHECK(parse_builder_shorthand("s3") == BuilderSpec::finite_group_table("S3"));
  CHECK(parse_builder_shorthand("finite_group_table:S3") == BuilderSpec::finite_group_table("S3"));
  const auto p = BuilderSpec::product(BuilderSpec::su2(), BuilderSpec::product(BuilderSpec::cyclic(3), BuilderSpec::ising()));
  CHECK(parse_builder_shorthand(p.to_string()) == p);
  CHECK(kind_of([] { parse_builder_shorthand("cyclic:x"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_builder_shorthand("unknown"); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { parse_builder_shorthand("product(su2)"); }) == ErrorKind::ParseError);
}

TEST_CASE("list_builders") {
  const auto list = list_builders();
  auto find = [&](const std::string& type) {
    return std::find_if(list.begin(), list.end(), [&](const auto& t) { return t.type == type; });
  };
  CHECK(find("su2") != list.end());
  REQUIRE(find("free_orthogonal") != list.end());
  CHECK(find("free_orthogonal")->parameters.find(">= 2") != std::string::npos);
  CHECK(find("product") != list.end());
  CHECK(list.size() == 8);
  CHECK(finite_group_tables() == std::vector<std::string>{"S3"});
}

TEST_CASE("spin-chain dimensions are exact until overflow") {
  auto o5 = build(BuilderSpec::free_orthogonal(5));
  int last_exact = -1;
  for (int n = 0; n < 100; ++n) {
    if (auto d = o5->exact_dim(L(std::to_string(n)))) {
      CHECK(double(*d) == doctest::Approx(o5->dim(L(std::to_string(n)))).epsilon(1e-15));
      last_exact = n;
    }
  }
  CHECK(last_exact > 20);
  CHECK(last_exact < 40);
}
