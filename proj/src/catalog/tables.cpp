#include <array>
#include <cmath>

#include "rings.hpp"

namespace fusalg::detail {

ExplicitRing::Table ising_table() {
  const Label one{"1"}, eps{"eps"}, sigma{"sigma"};
  ExplicitRing::Table t;
  t.name = "ising";
  t.unit = one;
  t.generators = {sigma};
  t.basis = {{one, 1.0, one}, {eps, 1.0, eps}, {sigma, std::sqrt(2.0), sigma}};
  for (const auto& x : {one, eps, sigma}) {
    t.fusion[{one, x}] = {{x, 1}};
    t.fusion[{x, one}] = {{x, 1}};
  }
  t.fusion[{eps, eps}] = {{one, 1}};
  t.fusion[{eps, sigma}] = {{sigma, 1}};
  t.fusion[{sigma, eps}] = {{sigma, 1}};
  t.fusion[{sigma, sigma}] = {{one, 1}, {eps, 1}};
  return t;
}

namespace {

struct CharacterTable {
  std::vector<std::string> irreps;
  std::vector<int> class_sizes;
  std::vector<std::vector<int>> values;  // real characters only
  std::string generator;
};

CharacterTable s3() {
  // classes: identity, transpositions, 3-cycles
  return {{"triv", "sgn", "std"}, {1, 3, 2}, {{1, 1, 1}, {1, -1, 1}, {2, 0, -1}}, "std"};
}

}  // namespace

ExplicitRing::Table group_character_table(const std::string& name) {
  if (name != "S3" && name != "s3") {
    throw Error(ErrorKind::InvalidSpec, "unknown finite group table '" + name + "'");
  }
  const auto ct = s3();
  int order = 0;
  for (int s : ct.class_sizes) order += s;

  ExplicitRing::Table t;
  t.name = "finite_group_table(S3)";
  const auto n = ct.irreps.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Label l{ct.irreps[i]};
    t.basis.push_back({l, static_cast<double>(ct.values[i][0]), l});
  }
  t.unit = Label{ct.irreps[0]};
  t.generators = {Label{ct.generator}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto& out = t.fusion[{Label{ct.irreps[i]}, Label{ct.irreps[j]}}];
      for (std::size_t k = 0; k < n; ++k) {
        int sum = 0;
        for (std::size_t c = 0; c < ct.class_sizes.size(); ++c) {
          sum += ct.class_sizes[c] * ct.values[i][c] * ct.values[j][c] * ct.values[k][c];
        }
        if (sum % order != 0 || sum < 0) {
          throw Error(ErrorKind::InvalidSpec, "character table does not give integral multiplicities");
        }
        if (sum != 0) out[Label{ct.irreps[k]}] = sum / order;
      }
    }
  }
  return t;
}

}  // namespace fusalg::detail
