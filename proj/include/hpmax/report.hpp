#pragma once

#include <string>
#include <vector>

#include "hpmax/maximal.hpp"
#include "hpmax/verify.hpp"

#include <json.hpp>

namespace hpmax {

/// Report schema version, embedded in every JSON report.
inline constexpr int kReportSchemaVersion = 1;

nlohmann::ordered_json to_json(const MeasureEstimate& est);
nlohmann::ordered_json to_json(const MaximalValue& value);
nlohmann::ordered_json to_json(const InequalityCheck& check);
nlohmann::ordered_json to_json(const StripSample& sample);
nlohmann::ordered_json to_json(const WeakTypeReport& report);
nlohmann::ordered_json to_json(const VariantProbeReport& report);
nlohmann::ordered_json to_json(const LevelSetEstimate& estimate);
nlohmann::ordered_json to_json(const GrowthReport& report);
nlohmann::ordered_json to_json(const SuiteReport& report);

/// Canonical byte encoding of a report: 2-space indent, '\n' line ends,
/// trailing newline. Reruns with identical config and seed produce identical
/// bytes.
std::string canonical_json(const nlohmann::ordered_json& j);

void write_text_file(const std::string& path, const std::string& bytes);
std::string read_text_file(const std::string& path);

/// Growth-scan cells as CSV (full %.17g precision, so reading the table back
/// reproduces the reported sup exactly).
std::string growth_csv(const GrowthReport& report);
std::vector<GrowthCell> parse_growth_csv(const std::string& bytes);

} // namespace hpmax
