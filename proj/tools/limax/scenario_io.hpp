#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "limax/error.hpp"
#include "limax/integrals.hpp"
#include "limax/scenarios.hpp"
#include "limax/state.hpp"

namespace limax::cli {

using Json = nlohmann::ordered_json;

/// Schema or syntax problem in an input file. line is 0 when unknown.
class ScenarioError : public InvalidInput {
 public:
  ScenarioError(std::string source, int line, std::string field, const std::string& what);

  const std::string& source() const { return source_; }
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string source_;
  int line_;
  std::string field_;
};

struct Scenario {
  SystemParams params;
  PhaseState state;
  double dt = 0.0;
  double t_final = 0.0;
  std::vector<BoostEvent> events;  // sorted by t_ex
  std::uint64_t seed = 0;
  std::vector<IntegralName> outputs;  // extra integrals for verify
};

// Throws ScenarioError with the offending field and line.
Scenario parse_scenario(std::string_view text, const std::string& source = "<input>");
Scenario load_scenario(const std::filesystem::path& path);

Json scenario_to_json(const Scenario& scenario);
std::string dump_json(const Json& j);

Json vec_to_json(Vec2 v);
Json state_to_json(const PhaseState& s);

/// Trajectory CSV: t, x1, y1, px1, py1, ..., x4, y4, px4, py4.
std::string csv_header();
std::string csv_row(double t, const PhaseState& s);
std::string trajectory_csv(const Trajectory& traj);
// Throws ScenarioError on malformed input.
Trajectory parse_trajectory_csv(std::string_view text, const std::string& source = "<csv>");

// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double v);

// Writes via a temporary file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Writes to path if given, otherwise to out.
void emit(const std::optional<std::filesystem::path>& path, std::string_view content,
          std::ostream& out);

}  // namespace limax::cli
