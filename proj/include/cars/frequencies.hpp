#pragma once

namespace cars {

/// Speed of light in atomic units.
inline constexpr double kSpeedOfLightAu = 137.035999;
/// One wavenumber (cm^-1) in hartree.
inline constexpr double kHartreePerWavenumber = 4.556335252912e-6;

/// Pump, Stokes, probe and anti-Stokes angular frequencies (hartree, hbar = 1).
struct FrequencyQuad {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega3 = 0.0;
  double omega4 = 0.0;

  /// omega4 = omega1 - omega2 + omega3.
  static FrequencyQuad conserving(double omega1, double omega2, double omega3);
  /// All positive; energy conservation within 1e-12 unless `allow_mismatch`.
  void validate(bool allow_mismatch = false) const;
  double raman_shift() const { return omega1 - omega2; }
};

}  // namespace cars
