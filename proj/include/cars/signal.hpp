#pragma once

// Circular intensity difference Delta = (T_R - T_L) / (T_R + T_L), the
// per-mode VVVR/VVVL rates, and Raman-shift spectra.

#include <optional>
#include <string>
#include <vector>

#include "cars/averaging.hpp"
#include "cars/frequencies.hpp"
#include "cars/invariants.hpp"
#include "cars/property_tensors.hpp"
#include "cars/scattering.hpp"
#include "cars/sos.hpp"

namespace cars {

/// (magnetic + quadrupole) / electric. Throws DegenerateDenominator when
/// electric <= 1e-300.
double delta_from_averaged_terms(const AveragedTerms& terms);
/// Natural-invariant form with separate probe and anti-Stokes k blocks.
double delta_eq12(const NaturalInvariantSet& nat, double c);
/// Single-frequency form: every shared label enters as coef * (g - k/3),
/// with k taken at the probe frequency.
double delta_eq13(const NaturalInvariantSet& nat, double c);

struct SignalOptions {
  /// Relative deviation above which a rendition is flagged inconsistent.
  double consistency_tolerance = 1e-9;
  /// Also average the VVVR brackets by quadrature.
  bool with_oracle = false;
  QuadratureOrder order{};
};

struct Consistency {
  double deviation = 0.0;  // |value - reference| / max(|reference|, |value|)
  bool consistent = true;
};

struct SignalResult {
  AveragedTerms terms;
  double delta_from_terms = 0.0;
  double delta_eq12 = 0.0;
  double delta_eq13 = 0.0;
  std::optional<double> delta_oracle;
  double rate_R = 0.0;
  double rate_L = 0.0;
  Consistency eq12;
  Consistency eq13;
  std::optional<Consistency> oracle;
};

/// Averaged VVVR/VVVL signal of one tensor set. Rates use the beams of
/// BeamSet::vv_v_circular at `w` and the prefactor of `ctx`.
SignalResult evaluate_signal(const PropertyTensorSet& tensors, const FrequencyQuad& w,
                             const PhysicalContext& ctx, const SignalOptions& options = {});

Consistency compare(double value, double reference, double tolerance);

// ---------------------------------------------------------------------------
// Spectra

struct Mode {
  std::string name;
  double shift_cm1 = 0.0;
  PropertyTensorSet tensors;
};

/// Raman shifts start, start + step, ... up to stop (inclusive), in cm^-1.
struct ScanGrid {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  void validate() const;
  std::vector<double> points() const;
};

/// Presentation-only line shape: each mode's rates are weighted by
/// 1 / (1 + ((shift - shift_mode) / half_width)^2). Delta is never weighted.
struct LorentzianEnvelope {
  double half_width_cm1 = 10.0;
  double weight(double shift_cm1, double mode_shift_cm1) const;
};

struct SpectrumRequest {
  double omega1 = 0.0;
  double omega3 = 0.0;
  ScanGrid grid;
  std::optional<LorentzianEnvelope> envelope;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct SpectrumRow {
  double shift_cm1 = 0.0;
  double omega2 = 0.0;
  double rate_R = 0.0;
  double rate_L = 0.0;
  double delta = 0.0;
  /// Sum of envelope weights over modes, when an envelope is set.
  std::optional<double> weight;
};

/// Fixed per-mode tensors: rates summed over modes at every grid point.
std::vector<SpectrumRow> spectrum(const std::vector<Mode>& modes, const SpectrumRequest& request,
                                  const PhysicalContext& ctx);
/// Tensors rebuilt from the model at every grid point; the envelope, if
/// any, is centred on the model's s - g energy gap.
std::vector<SpectrumRow> spectrum(const MolecularModel& model, const SpectrumRequest& request,
                                  const PhysicalContext& ctx, const SosOptions& sos = {});

/// omega2 = omega1 - shift, omega4 = omega1 - omega2 + omega3.
FrequencyQuad frequencies_at_shift(double omega1, double omega3, double shift_cm1);

}  // namespace cars
