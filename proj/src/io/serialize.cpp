#include "fusalg/io/serialize.hpp"

#include <charconv>
#include <fstream>

#include "fusalg/core/explicit_ring.hpp"

namespace fusalg::io {

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

const Json& member(const Json& j, const char* key, const std::string& context) {
  if (!j.is_object() || !j.contains(key)) parse_error(context + ": missing field '" + key + "'");
  return j.at(key);
}

std::string label_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  parse_error("label must be a string or an integer, got " + j.dump());
}

int int_param(const Json& params, const char* key) {
  const Json& v = member(params, key, "builder params");
  if (!v.is_number_integer()) parse_error(std::string("builder param '") + key + "' must be an integer");
  return v.get<int>();
}

const char* int_param_name(BuilderType t) {
  switch (t) {
    case BuilderType::FreeGroup: return "k";
    case BuilderType::FreeAbelian: return "d";
    case BuilderType::Cyclic: return "m";
    case BuilderType::FreeOrthogonal: return "N";
    default: return nullptr;
  }
}

double parse_double(std::string_view s, std::string_view context) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    parse_error("expected a number in '" + std::string(context) + "'");
  }
  return v;
}

int parse_int(std::string_view s, std::string_view context) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    parse_error("expected an integer in '" + std::string(context) + "'");
  }
  return v;
}

std::vector<std::vector<double>> real_rows(const Json& j, const char* what) {
  if (!j.is_array()) parse_error(std::string(what) + " must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) parse_error(std::string(what) + " must be an array of rows");
    std::vector<double> row;
    for (const auto& x : r) {
      if (!x.is_number()) parse_error(std::string(what) + " entries must be numbers");
      row.push_back(x.get<double>());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json builder_to_json(const BuilderSpec& spec) {
  Json j;
  j["type"] = std::string(type_name(spec.type));
  Json params = Json::object();
  if (const char* key = int_param_name(spec.type)) params[key] = spec.parameter;
  if (spec.type == BuilderType::FiniteGroupTable) params["name"] = spec.table;
  if (spec.type == BuilderType::Product) {
    params["factors"] = Json::array();
    for (const auto& f : spec.factors) params["factors"].push_back(builder_to_json(f));
  }
  j["params"] = std::move(params);
  return j;
}

BuilderSpec builder_from_json(const Json& j) {
  if (j.is_string()) return parse_builder_shorthand(j.get<std::string>());
  const Json& type = member(j, "type", "builder");
  if (!type.is_string()) parse_error("builder type must be a string");
  BuilderSpec spec;
  spec.type = parse_type_name(type.get<std::string>());
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (!params.is_object()) parse_error("builder params must be an object");
  if (const char* key = int_param_name(spec.type)) spec.parameter = int_param(params, key);
  if (spec.type == BuilderType::FiniteGroupTable) {
    const Json& name = member(params, "name", "finite_group_table params");
    if (!name.is_string()) parse_error("finite_group_table name must be a string");
    spec.table = name.get<std::string>();
  }
  if (spec.type == BuilderType::Product) {
    const Json& factors = member(params, "factors", "product params");
    if (!factors.is_array()) parse_error("product factors must be an array");
    for (const auto& f : factors) spec.factors.push_back(builder_from_json(f));
  }
  validate(spec);
  return spec;
}

Json ring_to_json(const FusionRing& ring, const std::optional<BuilderSpec>& builder) {
  Json j;
  j["name"] = ring.name();
  if (builder) {
    j["kind"] = "builder";
    j["builder"] = builder_to_json(*builder);
    j["unit"] = ring.unit().str();
    j["generators"] = Json::array();
    for (const auto& g : ring.generators()) j["generators"].push_back(g.str());
    return j;
  }
  if (!ring.is_finite()) {
    throw Error(ErrorKind::InvalidSpec, "explicit interchange form needs a finite ring; pass its builder");
  }
  j["kind"] = "explicit";
  j["unit"] = ring.unit().str();
  j["generators"] = Json::array();
  for (const auto& g : ring.generators()) j["generators"].push_back(g.str());
  const auto basis = ring.basis();
  j["basis"] = Json::array();
  for (const auto& l : basis) {
    Json e;
    e["label"] = l.str();
    if (auto d = ring.exact_dim(l)) e["dim"] = *d;
    else e["dim"] = ring.dim(l);
    e["conj"] = ring.conj(l).str();
    j["basis"].push_back(std::move(e));
  }
  j["fusion"] = Json::array();
  for (const auto& a : basis) {
    for (const auto& b : basis) {
      const auto prod = ring.fuse(a, b);
      if (prod.empty()) continue;
      Json out = Json::object();
      for (const auto& [g, n] : prod) out[g.str()] = n;
      j["fusion"].push_back(Json{{"a", a.str()}, {"b", b.str()}, {"out", std::move(out)}});
    }
  }
  return j;
}

RingPtr ring_from_json(const Json& j) {
  if (!j.is_object()) parse_error("ring description must be a JSON object");
  const std::string kind = j.contains("kind") ? j.at("kind").get<std::string>() : "explicit";
  if (kind == "builder") return build(builder_from_json(member(j, "builder", "ring")));
  if (kind != "explicit") parse_error("ring kind must be 'explicit' or 'builder', got '" + kind + "'");

  ExplicitRing::Table t;
  t.name = j.contains("name") ? j.at("name").get<std::string>() : "explicit";
  t.unit = Label(label_text(member(j, "unit", "ring")));
  for (const auto& g : member(j, "generators", "ring")) t.generators.emplace_back(label_text(g));
  for (const auto& e : member(j, "basis", "ring")) {
    ExplicitRing::BasisEntry entry;
    entry.label = Label(label_text(member(e, "label", "basis entry")));
    const Json& dim = member(e, "dim", "basis entry");
    if (!dim.is_number()) parse_error("basis dim must be a number");
    entry.dim = dim.get<double>();
    entry.conj = e.contains("conj") ? Label(label_text(e.at("conj"))) : entry.label;
    t.basis.push_back(std::move(entry));
  }
  if (j.contains("fusion")) {
    for (const auto& f : j.at("fusion")) {
      const Label a(label_text(member(f, "a", "fusion entry")));
      const Label b(label_text(member(f, "b", "fusion entry")));
      const Json& out = member(f, "out", "fusion entry");
      if (!out.is_object()) parse_error("fusion 'out' must be an object {label: multiplicity}");
      auto& slot = t.fusion[{a, b}];
      for (const auto& [g, n] : out.items()) {
        if (!n.is_number_integer()) parse_error("fusion multiplicities must be integers");
        slot[Label(g)] += n.get<Multiplicity>();
      }
    }
  }
  return std::make_shared<ExplicitRing>(std::move(t));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error("'" + path + "': " + e.what());
  }
}

RingPtr load_ring(std::string_view spec) {
  if (spec.starts_with("builtin:")) return build(parse_builder_shorthand(spec.substr(8)));
  std::string path(spec.starts_with("file:") ? spec.substr(5) : spec);
  try {
    return ring_from_json(read_json_file(path));
  } catch (const nlohmann::json::exception& e) {
    parse_error("'" + path + "': " + e.what());
  }
}

FiniteMeasure parse_measure(const FusionRing& ring, std::string_view spec) {
  if (spec == "uniform-generators") return FiniteMeasure::uniform_generators(ring);
  if (spec == "symmetric-step") {
    const auto gens = ring.generators();
    if (gens.empty()) throw Error(ErrorKind::InvalidSpec, "ring has no generators");
    return FiniteMeasure::symmetrized_dirac(ring, gens.front());
  }
  if (spec.starts_with("delta:")) return FiniteMeasure::dirac(ring, Label(std::string(spec.substr(6))));
  if (spec.starts_with("sym:")) return FiniteMeasure::symmetrized_dirac(ring, Label(std::string(spec.substr(4))));
  SparseWeights w;
  std::string_view rest = spec;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto colon = item.rfind(':');
    if (colon == std::string_view::npos) parse_error("unrecognised measure '" + std::string(spec) + "'");
    w[Label(std::string(item.substr(0, colon)))] += parse_double(item.substr(colon + 1), item);
  }
  if (w.empty()) parse_error("empty measure");
  return FiniteMeasure(ring, std::move(w));
}

std::vector<int> parse_radii(std::string_view spec) {
  std::vector<int> radii;
  if (auto dots = spec.find(".."); dots != std::string_view::npos) {
    const int a = parse_int(spec.substr(0, dots), spec);
    std::string_view tail = spec.substr(dots + 2);
    int step = 1;
    if (auto c = tail.find(':'); c != std::string_view::npos) {
      step = parse_int(tail.substr(c + 1), spec);
      tail = tail.substr(0, c);
    }
    const int b = parse_int(tail, spec);
    if (step <= 0 || b < a) throw Error(ErrorKind::InvalidSpec, "radii range '" + std::string(spec) + "' is empty");
    for (int r = a; r <= b; r += step) radii.push_back(r);
    if (radii.back() != b) radii.push_back(b);
    return radii;
  }
  std::string_view rest = spec;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    radii.push_back(parse_int(rest.substr(0, comma), spec));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  if (radii.empty()) parse_error("no radii given");
  return radii;
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array(), ii = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      rr.push_back(m(i, k).real());
      ii.push_back(m(i, k).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  const auto re = real_rows(member(j, "re", "matrix"), "re");
  const auto im = j.contains("im") ? real_rows(j.at("im"), "im") : std::vector<std::vector<double>>{};
  const auto n = static_cast<Eigen::Index>(re.size());
  const auto c = n == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(re.front().size());
  if (!im.empty() && im.size() != re.size()) parse_error("matrix re/im shapes differ");
  Eigen::MatrixXcd m(n, c);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = re[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(r.size()) != c) parse_error("matrix rows have different lengths");
    for (Eigen::Index k = 0; k < c; ++k) {
      double imag = 0.0;
      if (!im.empty()) {
        const auto& ir = im[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(ir.size()) != c) parse_error("matrix re/im shapes differ");
        imag = ir[static_cast<std::size_t>(k)];
      }
      m(i, k) = {r[static_cast<std::size_t>(k)], imag};
    }
  }
  return m;
}

Json state_to_json(const State& s) {
  Json blocks = Json::array();
  for (const auto& d : s.densities()) blocks.push_back(matrix_to_json(d));
  return Json{{"blocks", std::move(blocks)}};
}

namespace {

State state_from_json(const FiniteDimCStarAlgebra& alg, const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "normalized_trace") return State::normalized_trace(alg);
    parse_error("unknown seed state '" + j.get<std::string>() + "'");
  }
  if (j.contains("point_mass")) return State::point_mass(alg, j.at("point_mass").get<int>());
  std::vector<Eigen::MatrixXcd> dens;
  for (const auto& b : member(j, "blocks", "seed_state")) dens.push_back(matrix_from_json(b));
  return State(alg, std::move(dens));
}

}  // namespace

ActionInstance action_from_json(const Json& j) {
  try {
    ActionInstance inst;
    inst.ring_spec = builder_from_json(member(j, "ring", "action instance"));
    RingPtr ring = build(inst.ring_spec);
    std::vector<int> blocks;
    for (const auto& b : member(member(j, "algebra", "action instance"), "blocks", "algebra")) {
      if (!b.is_number_integer()) parse_error("algebra blocks must be integers");
      blocks.push_back(b.get<int>());
    }
    FiniteDimCStarAlgebra alg(blocks);
    const std::string kind = member(j, "instance", "action instance").get<std::string>();
    const Json data = j.contains("data") ? j.at("data") : Json::object();
    if (kind == "trivial") {
      inst.action.emplace(make_trivial_action(ring, alg));
    } else if (kind == "permutation") {
      std::map<Label, std::vector<int>> perms;
      for (const auto& [g, p] : member(data, "generators", "permutation data").items()) {
        perms[Label(g)] = p.get<std::vector<int>>();
      }
      int points = 0;
      for (int b : blocks) {
        if (b != 1) throw Error(ErrorKind::InvalidSpec, "permutation actions need a commutative algebra (all blocks 1)");
        ++points;
      }
      inst.action.emplace(make_permutation_action(ring, points, perms));
    } else if (kind == "conjugation") {
      std::map<Label, Eigen::MatrixXcd> us;
      for (const auto& [g, u] : member(data, "unitaries", "conjugation data").items()) {
        us[Label(g)] = matrix_from_json(u);
      }
      if (blocks.size() != 1) throw Error(ErrorKind::InvalidSpec, "conjugation actions need a single matrix block");
      auto action = make_conjugation_action(ring, us);
      if (!(action.algebra() == alg)) {
        throw Error(ErrorKind::AlgebraMismatch, "unitary size does not match the declared algebra");
      }
      inst.action.emplace(std::move(action));
    } else {
      parse_error("instance must be trivial, permutation or conjugation, got '" + kind + "'");
    }
    if (j.contains("seed_state")) inst.seed_state.emplace(state_from_json(alg, j.at("seed_state")));
    return inst;
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("action instance: ") + e.what());
  }
}

ActionInstance load_action(const std::string& path) { return action_from_json(read_json_file(path)); }

}  // namespace fusalg::io
