#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fusalg/core/fusion_ring.hpp"

namespace fusalg {

enum class BuilderType {
  FreeGroup,         ///< ℤ[F_k], reduced words; identity "e", generators a,b,c,d,f,...
  FreeAbelian,       ///< ℤ[ℤ^d], integers (d = 1) or tuples "(x,y,...)"
  Cyclic,            ///< ℤ[ℤ/m], residues 0..m-1
  FiniteGroupTable,  ///< representation ring of a finite group from its character table
  SU2,               ///< R(SU(2)), spins n ∈ ℕ₀, d_n = n + 1
  FreeOrthogonal,    ///< R(O_N^+), SU(2) fusion rules, d_{n+1} = N d_n - d_{n-1}
  Ising,             ///< {1, eps, sigma}, sigma ⊗ sigma = 1 + eps, d(sigma) = √2
  Product,           ///< tensor product of two rings, labels "(x,y)"
};

struct BuilderSpec {
  BuilderType type = BuilderType::SU2;
  int parameter = 0;                 ///< k, d, m or N depending on type
  std::string table;                 ///< finite group name for FiniteGroupTable
  std::vector<BuilderSpec> factors;  ///< exactly two for Product

  static BuilderSpec free_group(int k) { return {BuilderType::FreeGroup, k, {}, {}}; }
  static BuilderSpec free_abelian(int d) { return {BuilderType::FreeAbelian, d, {}, {}}; }
  static BuilderSpec cyclic(int m) { return {BuilderType::Cyclic, m, {}, {}}; }
  static BuilderSpec finite_group_table(std::string name) {
    return {BuilderType::FiniteGroupTable, 0, std::move(name), {}};
  }
  static BuilderSpec su2() { return {BuilderType::SU2, 0, {}, {}}; }
  static BuilderSpec free_orthogonal(int n) { return {BuilderType::FreeOrthogonal, n, {}, {}}; }
  static BuilderSpec ising() { return {BuilderType::Ising, 0, {}, {}}; }
  static BuilderSpec product(BuilderSpec a, BuilderSpec b) {
    return {BuilderType::Product, 0, {}, {std::move(a), std::move(b)}};
  }

  /// Human-readable form, e.g. "free_orthogonal(3)" or "product(su2,cyclic(3))".
  std::string to_string() const;

  friend bool operator==(const BuilderSpec&, const BuilderSpec&) = default;
};

std::string_view type_name(BuilderType type);
BuilderType parse_type_name(std::string_view name);

/// Throws InvalidSpec for out-of-range parameters (k, d ≥ 1; m, N ≥ 2) or an
/// unknown group table.
void validate(const BuilderSpec& spec);

RingPtr build(const BuilderSpec& spec);

/// Parses the colon shorthand used on the command line:
///   su2 | ising | cyclic:3 | free_group:2 | free_abelian:1 |
///   free_orthogonal:3 | finite_group_table:S3 | s3
BuilderSpec parse_builder_shorthand(std::string_view text);

struct BuilderTemplate {
  std::string type;
  std::string parameters;
  std::string description;
};

/// Stable, documented list of available builders.
std::vector<BuilderTemplate> list_builders();

/// Names accepted by FiniteGroupTable.
std::vector<std::string> finite_group_tables();

}  // namespace fusalg
