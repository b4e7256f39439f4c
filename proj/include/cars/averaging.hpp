#pragma once

// Orientational averages of the VVVR bracket.
//
// Closed forms come in two renditions: linear combinations of isotropic
// invariants (the production path) and of natural invariants (reported for
// cross-checking). Both are checked against direct averaging over SO(3),
// by a product quadrature rule and by Monte Carlo over Haar rotations.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cars/coefficients.hpp"
#include "cars/invariants.hpp"
#include "cars/kernels.hpp"
#include "cars/property_tensors.hpp"
#include "cars/tensor.hpp"

namespace cars {

struct AveragedTerms {
  double electric = 0.0;
  double magnetic = 0.0;    // carries 1/c
  double quadrupole = 0.0;  // carries k3 = omega3/c and k4 = omega4/c
};

// ---------------------------------------------------------------------------
// Closed forms

template <typename T>
T averaged_electric(const IsotropicInvariants<T>& iso) {
  return evaluate<T>(coeff::kElectricAverage, [&](int i) { return iso.alpha_at(i); });
}

template <typename T>
T averaged_magnetic(const IsotropicInvariants<T>& iso, T c) {
  return evaluate<T>(coeff::kMagneticAverage, [&](int i) { return iso.gprime_at(i); }) / c;
}

template <typename T>
T averaged_quadrupole(const IsotropicInvariants<T>& iso, T omega3, T omega4, T c) {
  auto at = [&](int i) { return iso.aquad_at(i); };
  const T probe = evaluate<T>(coeff::kQuadrupoleProbe, at);
  const T anti_stokes = evaluate<T>(coeff::kQuadrupoleAntiStokes, at);
  const T k3 = omega3 / c;
  const T k4 = omega4 / c;
  return -(k3 / T(3)) * probe + (k4 / T(3)) * anti_stokes;
}

template <typename T>
T electric_natural(const NaturalInvariants<T>& nat) {
  T acc{};
  for (std::size_t n = 0; n < coeff::kANaturalCount; ++n)
    acc += coefficient_as<T>(coeff::kElectricNatural[n]) * nat.a[n];
  return acc;
}

template <typename T>
T magnetic_natural(const NaturalInvariants<T>& nat, T c) {
  T acc{};
  for (std::size_t n = 0; n < coeff::kGNaturalCount; ++n)
    acc += coefficient_as<T>(coeff::kMagneticNatural[n]) * nat.g[n];
  return acc / c;
}

template <typename T>
T quadrupole_natural(const NaturalInvariants<T>& nat, T c) {
  T probe{};
  T anti_stokes{};
  for (std::size_t n = 0; n < coeff::kKNaturalCount; ++n) {
    probe += coefficient_as<T>(coeff::kQuadrupoleNaturalProbe[n]) * nat.k_omega3[n];
    anti_stokes += coefficient_as<T>(coeff::kQuadrupoleNaturalAntiStokes[n]) * nat.k_omega4[n];
  }
  return (probe + T(coeff::kAntiStokesBlockSign) * anti_stokes) / (T(3) * c);
}

AveragedTerms averaged_terms(const IsotropicInvariantSet& iso, double omega3, double omega4, double c);
AveragedTerms averaged_terms_natural(const NaturalInvariantSet& nat, double c);

// ---------------------------------------------------------------------------
// SO(3) oracles

/// Euler-angle product rule: uniform grids in alpha and gamma, Gauss-Legendre
/// in cos(beta).
struct QuadratureOrder {
  int alpha_nodes = 16;
  int beta_nodes = 32;
  int gamma_nodes = 16;

  QuadratureOrder doubled() const { return {2 * alpha_nodes, 2 * beta_nodes, 2 * gamma_nodes}; }
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Quadrature nodes on SO(3); the weights sum to 1.
kernels::RotationBatch so3_quadrature_grid(QuadratureOrder order);

/// `n` Haar-random rotations with weight 1/n each.
kernels::RotationBatch haar_batch(std::size_t n, std::uint64_t seed);

struct Estimate {
  double value = 0.0;
  /// Quadrature: |value(2 * order) - value(order)|. Monte Carlo: standard error.
  double uncertainty = 0.0;
  /// max(|value|, mean |integrand|), used for relative comparisons.
  double scale = 0.0;
};

/// Throws NonConvergence if doubling the order moves the result by more than
/// `tolerance` relative to the scale.
Estimate so3_quadrature_average(const std::function<double(const Rotation&)>& f,
                                QuadratureOrder order = {}, double tolerance = 1e-10);

/// Requires samples >= 1000.
Estimate mc_average(const std::function<double(const Rotation&)>& f, std::size_t samples,
                    std::uint64_t seed);

struct VvvrAverage {
  Estimate electric;
  Estimate magnetic;
  Estimate quadrupole;

  AveragedTerms terms() const { return {electric.value, magnetic.value, quadrupole.value}; }
};

/// Direct average of the lab-frame VVVR bracket (normalized prefactor).
VvvrAverage vvvr_quadrature_average(const PropertyTensorSet& tensors, double omega3, double omega4,
                                    double c, QuadratureOrder order = {}, double tolerance = 1e-10,
                                    kernels::SimdLevel level = kernels::detect_simd_level());

VvvrAverage vvvr_mc_average(const PropertyTensorSet& tensors, double omega3, double omega4,
                            double c, std::size_t samples, std::uint64_t seed,
                            kernels::SimdLevel level = kernels::detect_simd_level());

/// Weighted sum with Neumaier compensation, in index order.
double compensated_dot(const std::vector<double>& values, const std::vector<double>& weights);

// ---------------------------------------------------------------------------
// Verification report

struct VerifyOptions {
  QuadratureOrder order{};
  double convergence_tolerance = 1e-10;
  double quadrature_tolerance = 1e-9;
  double mc_sigmas = 5.0;
  std::size_t samples = 100000;
  std::uint64_t seed = 42;
};

struct OracleEntry {
  std::string term;       // electric, magnetic, quadrupole
  std::string rendition;  // isotropic or natural
  bool authoritative = false;
  double closed = 0.0;
  Estimate quadrature;
  Estimate monte_carlo;
  double quadrature_relative_error = 0.0;
  double mc_sigma_distance = 0.0;
  bool quadrature_pass = false;
  bool mc_pass = false;

  bool pass() const { return quadrature_pass && mc_pass; }
};

struct OracleReport {
  std::string case_name;
  double omega3 = 0.0;
  double omega4 = 0.0;
  double c = 0.0;
  VerifyOptions options;
  std::vector<OracleEntry> entries;

  bool authoritative_pass() const;
  bool natural_pass() const;
  /// 0 all pass, 2 only natural renditions fail, 1 an authoritative form fails.
  int exit_code() const;
  std::string to_text() const;
};

OracleReport verify_closed_forms(const PropertyTensorSet& tensors, double omega3, double omega4,
                                 double c, const VerifyOptions& options = {},
                                 std::string case_name = "custom");

}  // namespace cars
