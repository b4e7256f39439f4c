#pragma once

// The four CLI commands, independent of argument parsing.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "cars/averaging.hpp"
#include "cars/model_io.hpp"
#include "cars/signal.hpp"

namespace cars {

struct RunConfig {
  std::string command;  // verify, invariants, delta, spectrum
  std::optional<std::filesystem::path> input;
  std::optional<std::filesystem::path> output;
  std::uint64_t seed = 42;
  std::size_t samples = 100000;
  /// Gauss-Legendre nodes in cos(beta); alpha and gamma get half as many.
  int quad_order = 32;
  double quadrature_tolerance = 1e-9;
  double convergence_tolerance = 1e-10;
  double consistency_tolerance = 1e-9;
  std::optional<double> omega1;
  std::optional<double> omega3;
  std::optional<ScanGrid> scan;
  bool normalize = false;
  /// verify without --input: isotropic, random or all.
  std::string verify_case = "all";
  /// delta: also average by quadrature.
  bool oracle = false;
  /// spectrum: Lorentzian half width in cm^-1.
  std::optional<double> lorentzian;

  void validate() const;
  QuadratureOrder order() const;
};

/// Runs one command; results go to `out` (or the output file), diagnostics
/// to `err`. Returns the process exit status: 0 success, 1 error, and for
/// verify 2 when only natural-invariant renditions fail.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Shortest round-trip form capped at 17 significant digits, '.' separator,
/// independent of the global locale.
std::string format_number(double value);

/// "--scan start,stop,step"
ScanGrid parse_scan_argument(const std::string& text);

/// Deterministic random tensor set used by `verify --case random`.
PropertyTensorSet builtin_random_tensors(std::uint64_t seed);

}  // namespace cars
