#pragma once

// |M_FI|^2 for one molecular orientation: the general nine-term expression
// for arbitrary beams, its VVVR/VVVL specialization, and the golden-rule rate.

#include <array>

#include "cars/frequencies.hpp"
#include "cars/property_tensors.hpp"
#include "cars/tensor.hpp"

namespace cars {

struct Beam {
  double omega = 0.0;
  double wavenumber = 0.0;  // omega / c
  Vec3 direction{0.0, 0.0, 1.0};
  Vec3C polarization{};
  double photons = 1.0;
};

enum class Handedness { kRight, kLeft };

/// Unit circular polarization, (x -+ i y)/sqrt(2) for right/left.
Vec3C circular_polarization(Handedness h);
Vec3C linear_polarization(const Vec3& direction);

/// Beams 1..4 are pump, Stokes, probe and anti-Stokes.
struct BeamSet {
  std::array<Beam, 4> beams{};

  /// Co-linear beams along z with the given polarizations.
  static BeamSet collinear(const FrequencyQuad& w, double c, const std::array<Vec3C, 4>& polarizations);
  /// x-polarized pump, Stokes and probe; circular analysis of the anti-Stokes beam.
  static BeamSet vv_v_circular(const FrequencyQuad& w, double c, Handedness analysis);

  const Beam& operator[](std::size_t j) const { return beams[j]; }
  Beam& operator[](std::size_t j) { return beams[j]; }

  /// Unit directions and unit Hermitian-norm polarizations within 1e-12.
  void validate() const;
  bool collinear_along_z() const;
};

/// Atomic-unit constants entering the overall prefactor and the rate.
struct PhysicalContext {
  double hbar = 1.0;
  double c = kSpeedOfLightAu;
  double epsilon0 = 0.07957747154594767;  // 1 / (4 pi)
  double volume = 1.0;
  double rho_s = 1.0;
  double rho_f = 1.0;
  bool normalize = false;

  void validate() const;
  /// pi^2 rho_s^2 (hbar c / 2 eps0 V)^4 k1 k2 k3 k4 n1 n3 (n2 + 1)(n4 + 1), or 1.
  double prefactor(const BeamSet& beams) const;
  /// 2 pi rho_f / hbar, or 1.
  double rate_factor() const;
};

/// The nine bracketed terms of the general expression before the prefactor:
/// [0] electric, [1..4] G' terms, [5..8] A terms.
struct MSquaredTerms {
  std::array<double, 9> terms{};
  /// |Im| of the electric product, relative to its real part.
  double imaginary_residue = 0.0;

  double sum() const;
};

MSquaredTerms m_squared_general_terms(const PropertyTensorSet& tensors, const BeamSet& beams,
                                      double c);
double m_squared_general(const PropertyTensorSet& tensors, const BeamSet& beams,
                         const PhysicalContext& ctx);

/// Requires co-linear beams along z; polarizations are implied.
double m_squared_vvvr(const PropertyTensorSet& tensors, const BeamSet& beams, const PhysicalContext& ctx);
double m_squared_vvvl(const PropertyTensorSet& tensors, const BeamSet& beams, const PhysicalContext& ctx);

double transition_rate(double m_squared, const PhysicalContext& ctx);

}  // namespace cars
