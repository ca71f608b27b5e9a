#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "algmech/config.hpp"

namespace algmech {

using Json = nlohmann::ordered_json;

/// Exit codes shared by every command.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

/// Command-line overrides applied on top of a loaded config.
struct RunOptions {
  std::string format = "md";  // json | md
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<double> dt;
  std::optional<int> steps;
  std::optional<std::string> at;
};

/// Config with the overrides applied.
SystemConfig apply_options(SystemConfig cfg, const RunOptions& opts);

/// Report sections. Each carries a boolean "pass" member.
Json validation_section(const SystemConfig& cfg, const std::vector<EvalPoint>& samples);
Json spray_section(const SystemConfig& cfg, const std::vector<EvalPoint>& samples);
/// Rejects points whose fiber part lies inside the excluded zero-section band.
Json geometry_section(const SystemConfig& cfg, const EvalPoint& p);
Json reference_section(const SystemConfig& cfg, const std::vector<EvalPoint>& samples);
Json candidate_section(const SystemConfig& cfg, const Candidate& c, const std::vector<EvalPoint>& samples);
Json symmetry_section(const SystemConfig& cfg, const std::vector<EvalPoint>& samples);
Json integration_section(const SystemConfig& cfg, const IntegrateSpec& spec);
Json full_report(const SystemConfig& cfg);

/// JSON with every number written as %.17g; key order is insertion order.
void write_json(std::ostream& os, const Json& j);
/// Markdown rendering of a section or full report.
void write_markdown(std::ostream& os, const Json& j, const std::string& title);

int cmd_validate(const SystemConfig& cfg, const RunOptions& opts, std::ostream& out);
int cmd_geometry(const SystemConfig& cfg, const RunOptions& opts, std::ostream& out);
int cmd_spray_check(const SystemConfig& cfg, const RunOptions& opts, std::ostream& out);
int cmd_symmetry(const SystemConfig& cfg, const RunOptions& opts, std::ostream& out);
int cmd_integrate(const SystemConfig& cfg, const RunOptions& opts, std::ostream& out);
int cmd_report(const SystemConfig& cfg, const RunOptions& opts, std::ostream& out);
/// Writes a built-in fixture; returns kExitUsage for unknown names.
int cmd_example(const std::string& name, std::ostream& out);

/// Built-in fixtures by name, byte-identical to the files under data/.
std::optional<std::string> builtin_example(const std::string& name);

}  // namespace algmech
