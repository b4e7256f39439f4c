#pragma once

// JSON model files. Two forms:
//
//   tensor form   {"modes": [{"name", "shift_cm1", "alpha34", "alpha12",
//                  "gprime34"?, "a34"?, "gprime12"?, "a12"?}, ...]}
//   states form   {"states": {"levels", "dipoles", "magnetic"?,
//                  "quadrupoles"?, "roles"}}
//
// plus optional "constants" {"c", "units"} and "beams" {"omega1", "omega2",
// "omega3", "scan": {"start", "stop", "step"}}. Rank-2 tensors are 9 values
// row-major, A is 27 values i-major.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cars/frequencies.hpp"
#include "cars/signal.hpp"
#include "cars/sos.hpp"
#include "json.hpp"

namespace cars {

struct Constants {
  double c = kSpeedOfLightAu;
  std::string units = "atomic";
};

struct BeamsBlock {
  std::optional<double> omega1;
  std::optional<double> omega2;
  std::optional<double> omega3;
  std::optional<ScanGrid> scan;
};

struct ModelFile {
  Constants constants;
  BeamsBlock beams;
  std::vector<Mode> modes;               // tensor form
  std::optional<MolecularModel> states;  // states form

  bool is_states() const { return states.has_value(); }
};

/// Throws SchemaError (with the JSON path of the offending field),
/// SymmetryError or RoleError.
ModelFile parse_model(std::string_view text);
ModelFile load_model(const std::filesystem::path& path);

/// Normalized form: defaults filled in, G'34 and A34 always written.
nlohmann::ordered_json to_json(const ModelFile& model);
std::string serialize_model(const ModelFile& model);

}  // namespace cars
