#include "cars/signal.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "cars/errors.hpp"

namespace cars {
namespace {

double checked_ratio(double numerator, double denominator) {
  if (!(denominator > 1e-300)) {
    std::ostringstream os;
    os << "electric average " << denominator << " is not positive; Delta is undefined";
    throw DegenerateDenominator(os.str());
  }
  return numerator / denominator;
}

struct ModeRates {
  double right = 0.0;
  double left = 0.0;
};

ModeRates rates_of(const AveragedTerms& t, const FrequencyQuad& w, const PhysicalContext& ctx) {
  const BeamSet beams = BeamSet::vv_v_circular(w, ctx.c, Handedness::kRight);
  const double p = ctx.prefactor(beams);
  const double chiral = t.magnetic + t.quadrupole;
  return {transition_rate(p * (t.electric + chiral), ctx), transition_rate(p * (t.electric - chiral), ctx)};
}

AveragedTerms closed_terms(const PropertyTensorSet& t, const FrequencyQuad& w, double c) {
  return averaged_terms(isotropic_invariants(t.alpha34, t.alpha12, t.gprime34, t.a34), w.omega3, w.omega4, c);
}

std::string shift_label(double shift) {
  std::ostringstream os;
  os.precision(10);
  os << "at Raman shift " << shift << " cm^-1: ";
  return os.str();
}

// Evaluates rows [0, n) with `row(i)`, in parallel, keeping index order.
template <typename F>
void for_each_row(std::size_t n, unsigned threads, F&& row) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) row(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) {
        try {
          row(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  // the first failing row in grid order wins
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

double delta_from_averaged_terms(const AveragedTerms& terms) {
  return checked_ratio(terms.magnetic + terms.quadrupole, terms.electric);
}

double delta_eq12(const NaturalInvariantSet& nat, double c) {
  return checked_ratio(magnetic_natural(nat, c) + quadrupole_natural(nat, c), electric_natural(nat));
}

double delta_eq13(const NaturalInvariantSet& nat, double c) {
  double numerator = 0.0;
  for (std::size_t n = 0; n < coeff::kGNaturalCount; ++n)
    numerator += coefficient_as<double>(coeff::kMagneticNatural[n]) * nat.g[n];
  for (std::size_t n = 0; n < coeff::kKNaturalCount; ++n)
    numerator += coefficient_as<double>(coeff::single_frequency_k_coefficient(static_cast<coeff::KNatural>(n))) *
                 nat.k_omega3[n];
  return checked_ratio(numerator / c, electric_natural(nat));
}

Consistency compare(double value, double reference, double tolerance) {
  const double scale = std::max(std::abs(value), std::abs(reference));
  Consistency out;
  out.deviation = scale > 0.0 ? std::abs(value - reference) / scale : 0.0;
  out.consistent = out.deviation <= tolerance;
  return out;
}

SignalResult evaluate_signal(const PropertyTensorSet& tensors, const FrequencyQuad& w,
                             const PhysicalContext& ctx, const SignalOptions& options) {
  ctx.validate();
  w.validate();
  const IsotropicInvariantSet iso =
      isotropic_invariants(tensors.alpha34, tensors.alpha12, tensors.gprime34, tensors.a34);
  const NaturalInvariantSet nat = natural_from_isotropic(iso, w.omega3, w.omega4);

  SignalResult r;
  r.terms = averaged_terms(iso, w.omega3, w.omega4, ctx.c);
  r.delta_from_terms = delta_from_averaged_terms(r.terms);
  r.delta_eq12 = delta_eq12(nat, ctx.c);
  r.delta_eq13 = delta_eq13(nat, ctx.c);
  const ModeRates rates = rates_of(r.terms, w, ctx);
  r.rate_R = rates.right;
  r.rate_L = rates.left;
  r.eq12 = compare(r.delta_eq12, r.delta_from_terms, options.consistency_tolerance);
  r.eq13 = compare(r.delta_eq13, r.delta_from_terms, options.consistency_tolerance);
  if (options.with_oracle) {
    const VvvrAverage avg = vvvr_quadrature_average(tensors, w.omega3, w.omega4, ctx.c, options.order);
    r.delta_oracle = delta_from_averaged_terms(avg.terms());
    r.oracle = compare(*r.delta_oracle, r.delta_from_terms, options.consistency_tolerance);
  }
  return r;
}

// ---------------------------------------------------------------------------

void ScanGrid::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step))
    throw ValidationError("scan grid values must be finite");
  if (!(step > 0.0)) throw ValidationError("scan step must be positive");
  if (stop < start) throw ValidationError("scan stop must not precede start");
}

std::vector<double> ScanGrid::points() const {
  validate();
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
  return out;
}

double LorentzianEnvelope::weight(double shift_cm1, double mode_shift_cm1) const {
  if (!(half_width_cm1 > 0.0)) throw ValidationError("Lorentzian half width must be positive");
  const double x = (shift_cm1 - mode_shift_cm1) / half_width_cm1;
  return 1.0 / (1.0 + x * x);
}

FrequencyQuad frequencies_at_shift(double omega1, double omega3, double shift_cm1) {
  const double omega2 = omega1 - shift_cm1 * kHartreePerWavenumber;
  if (!(omega2 > 0.0)) {
    std::ostringstream os;
    os << shift_label(shift_cm1) << "Stokes frequency " << omega2 << " is not positive";
    throw ValidationError(os.str());
  }
  return FrequencyQuad::conserving(omega1, omega2, omega3);
}

std::vector<SpectrumRow> spectrum(const std::vector<Mode>& modes, const SpectrumRequest& request,
                                  const PhysicalContext& ctx) {
  ctx.validate();
  if (modes.empty()) throw ValidationError("spectrum needs at least one mode");
  const std::vector<double> shifts = request.grid.points();
  std::vector<SpectrumRow> rows(shifts.size());
  for_each_row(rows.size(), request.threads, [&](std::size_t i) {
    const double shift = shifts[i];
    const FrequencyQuad w = frequencies_at_shift(request.omega1, request.omega3, shift);
    SpectrumRow row;
    row.shift_cm1 = shift;
    row.omega2 = w.omega2;
    double plain_r = 0.0, plain_l = 0.0, total_weight = 0.0;
    for (const Mode& m : modes) {
      const ModeRates r = rates_of(closed_terms(m.tensors, w, ctx.c), w, ctx);
      plain_r += r.right;
      plain_l += r.left;
      const double wt = request.envelope ? request.envelope->weight(shift, m.shift_cm1) : 1.0;
      total_weight += wt;
      row.rate_R += wt * r.right;
      row.rate_L += wt * r.left;
    }
    row.delta = checked_ratio(plain_r - plain_l, plain_r + plain_l);
    if (request.envelope) row.weight = total_weight;
    rows[i] = row;
  });
  return rows;
}

std::vector<SpectrumRow> spectrum(const MolecularModel& model, const SpectrumRequest& request,
                                  const PhysicalContext& ctx, const SosOptions& sos) {
  ctx.validate();
  model.validate();
  const double gap_cm1 =
      (model.level(model.roles.excited).energy - model.level(model.roles.ground).energy) / kHartreePerWavenumber;
  const std::vector<double> shifts = request.grid.points();
  std::vector<SpectrumRow> rows(shifts.size());
  for_each_row(rows.size(), request.threads, [&](std::size_t i) {
    const double shift = shifts[i];
    const FrequencyQuad w = frequencies_at_shift(request.omega1, request.omega3, shift);
    PropertyTensorSet tensors;
    try {
      tensors = build_property_tensors(model, w, sos).tensors;
    } catch (const ResonanceError& e) {
      throw ResonanceError(shift_label(shift) + e.what());
    }
    const AveragedTerms terms = closed_terms(tensors, w, ctx.c);
    const ModeRates r = rates_of(terms, w, ctx);
    SpectrumRow row;
    row.shift_cm1 = shift;
    row.omega2 = w.omega2;
    row.delta = checked_ratio(r.right - r.left, r.right + r.left);
    const double wt = request.envelope ? request.envelope->weight(shift, gap_cm1) : 1.0;
    row.rate_R = wt * r.right;
    row.rate_L = wt * r.left;
    if (request.envelope) row.weight = wt;
    rows[i] = row;
  });
  return rows;
}

}  // namespace cars
