#pragma once

// JSON documents: network files, code files, reports and family archives.
// The exact schemas are described in docs/formats.md.

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "nec/decoder.hpp"
#include "nec/metrics.hpp"
#include "nec/nec_code.hpp"
#include "nec/randomized.hpp"
#include "nec/topology.hpp"
#include "nec/variable_rate.hpp"

namespace nec::io {

using nlohmann::json;

/// Reads and parses a file; syntax errors become ParseError with the byte offset.
json read_json(const std::filesystem::path& path);
/// Two-space indentation and a trailing newline.
std::string dump(const json& doc);
void write_json(const std::filesystem::path& path, const json& doc);

json network_to_json(const Network& n);
/// `where` prefixes error locations (usually the file name).
Network network_from_json(const json& doc, const std::string& where = "network");
Network load_network(const std::filesystem::path& path);

/// Self-contained: the network is embedded under "network".
json code_to_json(const NecCode& code);
NecCode code_from_json(const json& doc, const std::string& where = "code");
NecCode load_code(const std::filesystem::path& path);

json pattern_to_json(const Network& n, const ErrorPattern& rho);
ErrorPattern pattern_from_json(const Network& n, const json& doc, const std::string& where);

json distance_report_to_json(const NecCode& code, const DistanceReport& report);
json probability_report_to_json(const TrialConfig& config, const ProbabilityReport& report);
json simulation_to_json(const NecCode& code, std::span<const Value> message, const ErrorPattern& rho,
                        std::span<const Value> values, const std::vector<SinkOutcome>& outcomes);
json hyperplanes_to_json(const NecCode& code, const std::vector<ForbiddenHyperplane>& hyperplanes);

/// Writes code_w<r>.json for every member plus manifest.json into `dir`.
void save_family(const std::filesystem::path& dir, const CodeFamily& family);
/// Reads the members listed in a manifest back, highest rate first.
std::vector<NecCode> load_family(const std::filesystem::path& dir);

}  // namespace nec::io
