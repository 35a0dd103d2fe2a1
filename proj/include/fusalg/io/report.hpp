#pragma once

#include <string>
#include <vector>

#include "fusalg/actions/averaging.hpp"
#include "fusalg/core/axioms.hpp"
#include "fusalg/io/serialize.hpp"

namespace fusalg::io {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolName = "fusalg";
inline constexpr const char* kToolVersion = "0.1.0";

/// {"schema_version", "tool", "version", "command", "config", "result"}.
Json make_report(const std::string& command, const Json& config, const Json& result);

Json to_json(const AxiomReport& r);
Json to_json(const std::vector<KestenRow>& rows, bool timings);
Json to_json(const Verdict& v);
Json to_json(const FolnerProfile& p);
Json to_json(const GreedyResult& r);
Json to_json(const ActionAxiomReport& r);
Json to_json(const AmenabilityReport& r);
Json to_json(const HarnessReport& r);

std::string kesten_csv(const std::vector<KestenRow>& rows);
std::string folner_csv(const FolnerProfile& p);
/// Two whitespace-separated columns under a '#' header.
std::string plot_data(const std::string& x_name, const std::string& y_name,
                      const std::vector<std::pair<double, double>>& points);

void write_text(const std::string& path, const std::string& text);

}  // namespace fusalg::io
