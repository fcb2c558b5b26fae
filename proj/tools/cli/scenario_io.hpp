#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ivo/errors.hpp"
#include "ivo/noise_analysis.hpp"
#include "ivo/simulator.hpp"

namespace ivo::io {

/// Malformed file: bad JSON syntax (line set), or a field of the wrong type, missing,
/// or unknown (field set to its JSON path, e.g. "agents[2].radius").
class ParseError : public Error {
 public:
  ParseError(const std::string& source, int line, std::string field, const std::string& what);

  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

/// Well-formed file whose content violates a scenario invariant.
class ValidationError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Parses a scenario document, applies defaults, and validates it.
ScenarioConfig parse_scenario_text(std::string_view text, const std::string& source = "<memory>");
ScenarioConfig parse_scenario(const std::filesystem::path& path);

/// Every field written out explicitly; parse_scenario_text(emit_scenario(c)) == c.
std::string emit_scenario(const ScenarioConfig& scenario);

NoiseStudy parse_noise_study_text(std::string_view text, const std::string& source = "<memory>");
NoiseStudy parse_noise_study(const std::filesystem::path& path);
std::string emit_noise_study(const NoiseStudy& study);

/// Shortest decimal text that reads back to exactly `value`.
std::string format_double(double value);

}  // namespace ivo::io
