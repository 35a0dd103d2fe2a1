#include "fusalg/io/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace fusalg::io {

namespace {

Json labels_json(const std::vector<Label>& labels) {
  Json a = Json::array();
  for (const auto& l : labels) a.push_back(l.str());
  return a;
}

Json ratio_json(const Ratio& r) {
  Json j;
  j["value"] = r.value;
  j["exact"] = r.exact;
  if (r.exact) j["fraction"] = r.to_string();
  return j;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

Json make_report(const std::string& command, const Json& config, const Json& result) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["config"] = config;
  j["result"] = result;
  return j;
}

Json to_json(const AxiomReport& r) {
  Json j;
  j["passed"] = r.all_passed();
  j["exact"] = r.exact;
  j["tolerance"] = r.tolerance;
  j["checks"] = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["axiom"] = c.axiom;
    cj["passed"] = c.passed;
    cj["worst_residual"] = c.worst_residual;
    cj["evaluations"] = c.evaluations;
    cj["failures"] = Json::array();
    for (const auto& t : c.failures) cj["failures"].push_back(labels_json(t));
    j["checks"].push_back(std::move(cj));
  }
  return j;
}

Json to_json(const std::vector<KestenRow>& rows, bool timings) {
  Json a = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["radius"] = r.radius;
    j["window_size"] = r.window_size;
    j["lower_bound"] = r.lower_bound;
    j["iterations"] = r.iterations;
    if (timings) j["seconds"] = r.seconds;
    a.push_back(std::move(j));
  }
  return a;
}

Json to_json(const Verdict& v) {
  return Json{{"kind", std::string(to_string(v.kind))}, {"value", v.value}, {"note", v.note}};
}

Json to_json(const FolnerProfile& p) {
  Json j;
  j["generators"] = labels_json(p.generators);
  j["rows"] = Json::array();
  for (const auto& r : p.rows) {
    Json rj;
    rj["n"] = r.n;
    rj["size"] = r.size;
    rj["weighted_card"] = r.weighted_card;
    rj["ratios"] = Json::array();
    for (const auto& q : r.ratios) rj["ratios"].push_back(ratio_json(q));
    rj["max_ratio"] = r.max_ratio;
    j["rows"].push_back(std::move(rj));
  }
  j["decreasing"] = p.decreasing;
  j["truncated"] = p.truncated;
  j["stop_reason"] = p.stop_reason;
  j["epsilon"] = p.epsilon;
  j["passed"] = p.passed;
  j["caveat"] = kGeneratorCaveat;
  return j;
}

Json to_json(const GreedyResult& r) {
  Json j;
  j["status"] = r.found ? "Found" : "NotFound";
  j["best_ratio"] = r.best_ratio;
  j["evaluations"] = r.evaluations;
  j["best_radius"] = r.best_radius;
  j["reason"] = r.reason;
  if (r.set) {
    j["set_size"] = r.set->size();
    j["set"] = labels_json(r.set->labels());
  }
  if (!r.found) j["note"] = "not finding a set is not evidence against amenability";
  return j;
}

Json to_json(const ActionAxiomReport& r) {
  Json j;
  j["passed"] = r.all_passed();
  j["tolerance"] = r.tolerance;
  j["words"] = r.words;
  j["samples"] = r.samples;
  j["residuals"] = Json::array();
  for (const auto& e : r.entries) {
    j["residuals"].push_back(Json{{"name", e.name}, {"residual", e.residual}, {"passed", e.passed}});
  }
  return j;
}

Json to_json(const AmenabilityReport& r) {
  Json j;
  j["generators"] = labels_json(r.generators);
  j["passed"] = r.passed;
  j["rows"] = Json::array();
  for (const auto& row : r.rows) {
    Json rj;
    rj["n"] = row.n;
    rj["unit_residual"] = row.unit_residual;
    rj["central_residual"] = row.central_residual;
    rj["convolution"] = row.convolution;
    rj["max_convolution"] = row.max_convolution;
    rj["tolerance"] = row.tolerance;
    j["rows"].push_back(std::move(rj));
  }
  return j;
}

Json to_json(const HarnessReport& r) {
  Json j;
  j["direction"] = r.direction;
  j["folner"] = to_json(r.folner);
  j["ratios_vanish"] = r.ratios_vanish;
  if (r.direction == "amenable") {
    Json a;
    if (r.fa_amenability) a["fa_amenability"] = to_json(*r.fa_amenability);
    a["invariant_trace"] = r.invariant_trace;
    a["invariant_defect"] = r.invariant_defect;
    a["invariant_found"] = r.invariant_found;
    a["invariant_index"] = r.invariant_index;
    if (r.invariant_state) a["invariant_state"] = state_to_json(*r.invariant_state);
    j["certificates"] = std::move(a);
  } else {
    Json s;
    s["kesten"] = to_json(r.kesten, false);
    if (r.verdict) s["verdict"] = to_json(*r.verdict);
    s["defect_lower_bound"] = r.defect_lower_bound;
    s["canonical_defect"] = r.canonical_defect;
    s["lower_bound_consistent"] = r.lower_bound_consistent;
    j["spectral_certificate"] = std::move(s);
  }
  j["notes"] = r.notes;
  return j;
}

std::string kesten_csv(const std::vector<KestenRow>& rows) {
  std::ostringstream os;
  os << "radius,window_size,lower_bound,iterations,seconds\n";
  for (const auto& r : rows) {
    os << r.radius << ',' << r.window_size << ',' << fmt(r.lower_bound) << ',' << r.iterations << ','
       << fmt(r.seconds) << '\n';
  }
  return os.str();
}

std::string folner_csv(const FolnerProfile& p) {
  std::ostringstream os;
  os << "n,size,weighted_card";
  for (const auto& g : p.generators) os << ",ratio_" << g.str();
  os << ",max_ratio\n";
  for (const auto& r : p.rows) {
    os << r.n << ',' << r.size << ',' << fmt(r.weighted_card);
    for (const auto& q : r.ratios) os << ',' << fmt(q.value);
    os << ',' << fmt(r.max_ratio) << '\n';
  }
  return os.str();
}

std::string plot_data(const std::string& x_name, const std::string& y_name,
                      const std::vector<std::pair<double, double>>& points) {
  std::ostringstream os;
  os << "# " << x_name << ' ' << y_name << '\n';
  for (const auto& [x, y] : points) os << fmt(x) << ' ' << fmt(y) << '\n';
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidSpec, "cannot write '" + path + "'");
  out << text;
}

}  // namespace fusalg::io
