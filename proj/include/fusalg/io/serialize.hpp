#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fusalg/actions/action.hpp"
#include "fusalg/catalog.hpp"
#include "fusalg/core/ring_element.hpp"

namespace fusalg::io {

using Json = nlohmann::ordered_json;

/// {"type": ..., "params": {...}}; products nest their factors.
Json builder_to_json(const BuilderSpec& spec);
/// Accepts the object form or a shorthand string ("cyclic:3").
BuilderSpec builder_from_json(const Json& j);

/// Interchange form. Finite rings without a builder are written explicitly:
/// {"name","kind":"explicit","unit","generators","basis":[{"label","dim","conj"}],
///  "fusion":[{"a","b","out":{label: mult}}]}.
Json ring_to_json(const FusionRing& ring, const std::optional<BuilderSpec>& builder = std::nullopt);
RingPtr ring_from_json(const Json& j);

/// "builtin:<shorthand>", "file:<path>", or a bare path to a JSON file.
RingPtr load_ring(std::string_view spec);

Json read_json_file(const std::string& path);

/// uniform-generators | symmetric-step (½(δ_g + δ_ḡ), g the first
/// generator) | delta:<label> | sym:<label> | <label>:<w>,<label>:<w>,...
FiniteMeasure parse_measure(const FusionRing& ring, std::string_view spec);

/// "a..b", "a..b:step" or "r1,r2,...".
std::vector<int> parse_radii(std::string_view spec);

/// Action instance:
/// {"ring": <builder>, "algebra": {"blocks": [...]},
///  "instance": "trivial" | "permutation" | "conjugation",
///  "data": {"generators": {label: [images]}} | {"unitaries": {label: {"re": [[..]], "im": [[..]]}}},
///  "seed_state": "normalized_trace" | {"point_mass": k} | {"blocks": [{"re","im"}, ...]}}
struct ActionInstance {
  BuilderSpec ring_spec;
  std::optional<ModuleAction> action;
  std::optional<State> seed_state;
};

ActionInstance action_from_json(const Json& j);
ActionInstance load_action(const std::string& path);

Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j);
Json state_to_json(const State& s);

}  // namespace fusalg::io
