#include "fusalg/catalog.hpp"

#include <charconv>
#include <memory>

#include "fusalg/core/memo_ring.hpp"
#include "rings.hpp"

namespace fusalg {

namespace {

constexpr std::pair<BuilderType, std::string_view> kNames[] = {
    {BuilderType::FreeGroup, "free_group"},
    {BuilderType::FreeAbelian, "free_abelian"},
    {BuilderType::Cyclic, "cyclic"},
    {BuilderType::FiniteGroupTable, "finite_group_table"},
    {BuilderType::SU2, "su2"},
    {BuilderType::FreeOrthogonal, "free_orthogonal"},
    {BuilderType::Ising, "ising"},
    {BuilderType::Product, "product"},
};

bool takes_int(BuilderType t) {
  return t == BuilderType::FreeGroup || t == BuilderType::FreeAbelian || t == BuilderType::Cyclic ||
         t == BuilderType::FreeOrthogonal;
}

int parse_int(std::string_view s, std::string_view context) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::ParseError, "expected an integer parameter in '" + std::string(context) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

// Splits "a,b" at the single top-level comma.
std::pair<std::string_view, std::string_view> split_pair(std::string_view s, std::string_view context) {
  int depth = 0;
  std::size_t at = std::string_view::npos;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == ',' && depth == 0) {
      if (at != std::string_view::npos) at = s.size();
      else at = i;
    }
  }
  if (at == std::string_view::npos || at == s.size()) {
    throw Error(ErrorKind::ParseError, "product needs exactly two factors in '" + std::string(context) + "'");
  }
  return {trim(s.substr(0, at)), trim(s.substr(at + 1))};
}

BuilderSpec parse_spec(std::string_view text) {
  text = trim(text);
  if (text == "s3" || text == "S3") return BuilderSpec::finite_group_table("S3");
  std::string_view head = text;
  std::string_view arg;
  bool have_arg = false;
  if (auto p = text.find('('); p != std::string_view::npos) {
    if (text.back() != ')') throw Error(ErrorKind::ParseError, "unbalanced parentheses in '" + std::string(text) + "'");
    head = text.substr(0, p);
    arg = text.substr(p + 1, text.size() - p - 2);
    have_arg = true;
  } else if (auto c = text.find(':'); c != std::string_view::npos) {
    head = text.substr(0, c);
    arg = text.substr(c + 1);
    have_arg = true;
  }
  BuilderSpec spec;
  spec.type = parse_type_name(head);
  if (spec.type == BuilderType::Product) {
    if (!have_arg) throw Error(ErrorKind::ParseError, "product needs two factors");
    auto [a, b] = split_pair(arg, text);
    spec.factors = {parse_spec(a), parse_spec(b)};
  } else if (takes_int(spec.type)) {
    if (!have_arg) throw Error(ErrorKind::ParseError, "'" + std::string(head) + "' needs a parameter");
    spec.parameter = parse_int(trim(arg), text);
  } else if (spec.type == BuilderType::FiniteGroupTable) {
    if (!have_arg) throw Error(ErrorKind::ParseError, "finite_group_table needs a table name");
    spec.table = std::string(trim(arg));
  } else if (have_arg) {
    throw Error(ErrorKind::ParseError, "'" + std::string(head) + "' takes no parameter");
  }
  return spec;
}

}  // namespace

std::string_view type_name(BuilderType type) {
  for (const auto& [t, n] : kNames) {
    if (t == type) return n;
  }
  return "unknown";
}

BuilderType parse_type_name(std::string_view name) {
  for (const auto& [t, n] : kNames) {
    if (n == name) return t;
  }
  throw Error(ErrorKind::InvalidSpec, "unknown builder type '" + std::string(name) + "'");
}

std::string BuilderSpec::to_string() const {
  std::string out(type_name(type));
  if (takes_int(type)) return out + "(" + std::to_string(parameter) + ")";
  if (type == BuilderType::FiniteGroupTable) return out + "(" + table + ")";
  if (type == BuilderType::Product && factors.size() == 2) {
    return out + "(" + factors[0].to_string() + "," + factors[1].to_string() + ")";
  }
  return out;
}

void validate(const BuilderSpec& spec) {
  auto fail = [&](const std::string& msg) { throw Error(ErrorKind::InvalidSpec, spec.to_string() + ": " + msg); };
  switch (spec.type) {
    case BuilderType::FreeGroup:
      if (spec.parameter < 1 || spec.parameter > 25) fail("rank k must satisfy 1 <= k <= 25");
      break;
    case BuilderType::FreeAbelian:
      if (spec.parameter < 1) fail("rank d must be >= 1");
      break;
    case BuilderType::Cyclic:
      if (spec.parameter < 2) fail("order m must be >= 2");
      break;
    case BuilderType::FreeOrthogonal:
      if (spec.parameter < 2) fail("N must be >= 2");
      break;
    case BuilderType::FiniteGroupTable: {
      bool known = false;
      for (const auto& n : finite_group_tables()) known = known || n == spec.table;
      if (!known) fail("unknown group table '" + spec.table + "'");
      break;
    }
    case BuilderType::Product:
      if (spec.factors.size() != 2) fail("product takes exactly two factors");
      validate(spec.factors[0]);
      validate(spec.factors[1]);
      break;
    case BuilderType::SU2:
    case BuilderType::Ising:
      break;
  }
}

RingPtr build(const BuilderSpec& spec) {
  validate(spec);
  switch (spec.type) {
    case BuilderType::FreeGroup:
      return std::make_shared<detail::FreeGroupRing>(spec.parameter);
    case BuilderType::FreeAbelian:
      return std::make_shared<detail::FreeAbelianRing>(spec.parameter);
    case BuilderType::Cyclic:
      return std::make_shared<detail::CyclicRing>(spec.parameter);
    case BuilderType::FiniteGroupTable:
      return std::make_shared<ExplicitRing>(detail::group_character_table(spec.table));
    case BuilderType::SU2:
      return std::make_shared<detail::SpinChainRing>(2, "su2");
    case BuilderType::FreeOrthogonal:
      return std::make_shared<detail::SpinChainRing>(spec.parameter, spec.to_string());
    case BuilderType::Ising:
      return std::make_shared<ExplicitRing>(detail::ising_table());
    case BuilderType::Product:
      return std::make_shared<MemoizedRing>(
          std::make_shared<detail::ProductRing>(build(spec.factors[0]), build(spec.factors[1])));
  }
  throw Error(ErrorKind::InvalidSpec, "unhandled builder type");
}

BuilderSpec parse_builder_shorthand(std::string_view text) {
  auto spec = parse_spec(text);
  validate(spec);
  return spec;
}

std::vector<BuilderTemplate> list_builders() {
  return {
      {"free_group", "k >= 1 (k <= 25)", "group ring of the free group F_k; labels are reduced words, identity 'e'"},
      {"free_abelian", "d >= 1", "group ring of Z^d; labels are integers (d = 1) or tuples '(x,y,...)'"},
      {"cyclic", "m >= 2", "group ring of Z/m; labels 0..m-1"},
      {"finite_group_table", "name in {S3}", "representation ring of a finite group from its character table"},
      {"su2", "", "representation ring of SU(2); labels n >= 0, d_n = n + 1"},
      {"free_orthogonal", "N >= 2", "representation ring of O_N^+; SU(2) fusion rules, d_{n+1} = N d_n - d_{n-1}"},
      {"ising", "", "Ising fusion ring {1, eps, sigma}, d(sigma) = sqrt(2)"},
      {"product", "two builder specs", "tensor product ring; labels '(x,y)', d((x,y)) = d(x) d(y)"},
  };
}

std::vector<std::string> finite_group_tables() { return {"S3"}; }

}  // namespace fusalg
