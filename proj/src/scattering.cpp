#include "cars/scattering.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "cars/diagnostics.hpp"
#include "cars/errors.hpp"

namespace cars {
namespace {

using cd = std::complex<double>;

Vec3C conj(const Vec3C& v) { return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])}; }

Vec3C cross(const Vec3& k, const Vec3C& e) {
  return {k[1] * e[2] - k[2] * e[1], k[2] * e[0] - k[0] * e[2], k[0] * e[1] - k[1] * e[0]};
}

// u^T M v
template <typename M>
cd bilinear(const Vec3C& u, const M& m, const Vec3C& v) {
  cd s = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s += u[i] * m(i, j) * v[j];
  return s;
}

// sum_{a,b,n} u_a v_b w_n A_{a,bn}
cd trilinear(const Vec3C& u, const Vec3C& v, const Vec3C& w, const Rank3SymLast& a) {
  cd s = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t n = 0; n < 3; ++n) s += u[i] * v[j] * w[n] * a(i, j, n);
  return s;
}

Vec3C real_vec(const Vec3& v) { return {v[0], v[1], v[2]}; }

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

double vvv_circular(const PropertyTensorSet& t, const BeamSet& beams, const PhysicalContext& ctx,
                    double chiral_sign) {
  ctx.validate();
  require(beams.collinear_along_z(), "VVVR/VVVL evaluation needs co-linear beams along z");
  const double k3 = beams[2].omega / ctx.c;
  const double k4 = beams[3].omega / ctx.c;
  const double axx = t.alpha34(0, 0), ayx = t.alpha34(1, 0), bxx = t.alpha12(0, 0);
  const double bb = bxx * bxx;
  const double electric = 0.5 * axx * axx * bb + 0.5 * ayx * ayx * bb;
  const double magnetic = (t.gprime34(1, 1) * axx + t.gprime34(0, 0) * axx) * bb / ctx.c;
  const double quadrupole = -k3 / 3 * t.a34(1, 0, 2) * axx * bb + k3 / 3 * t.a34(0, 0, 2) * ayx * bb +
                            k4 / 3 * t.a34(0, 1, 2) * axx * bb - k4 / 3 * t.a34(0, 0, 2) * ayx * bb;
  return ctx.prefactor(beams) * (electric + chiral_sign * (magnetic + quadrupole));
}

}  // namespace

// ---------------------------------------------------------------------------

FrequencyQuad FrequencyQuad::conserving(double omega1, double omega2, double omega3) {
  FrequencyQuad w{omega1, omega2, omega3, omega1 - omega2 + omega3};
  w.validate();
  return w;
}

void FrequencyQuad::validate(bool allow_mismatch) const {
  for (double w : {omega1, omega2, omega3, omega4})
    require(std::isfinite(w) && w > 0.0, "frequencies must be positive and finite");
  const double mismatch = std::abs(omega4 - (omega1 - omega2 + omega3));
  if (!allow_mismatch && mismatch > 1e-12 * std::max({omega1, omega3, omega4})) {
    std::ostringstream os;
    os << "omega4 differs from omega1 - omega2 + omega3 by " << mismatch;
    throw ValidationError(os.str());
  }
}

Vec3C circular_polarization(Handedness h) {
  const double s = 1.0 / std::numbers::sqrt2;
  return {cd(s, 0.0), cd(0.0, h == Handedness::kRight ? -s : s), cd(0.0, 0.0)};
}

Vec3C linear_polarization(const Vec3& direction) { return real_vec(direction); }

BeamSet BeamSet::collinear(const FrequencyQuad& w, double c, const std::array<Vec3C, 4>& polarizations) {
  BeamSet b;
  const double omegas[4] = {w.omega1, w.omega2, w.omega3, w.omega4};
  for (std::size_t j = 0; j < 4; ++j) {
    b.beams[j].omega = omegas[j];
    b.beams[j].wavenumber = omegas[j] / c;
    b.beams[j].direction = {0.0, 0.0, 1.0};
    b.beams[j].polarization = polarizations[j];
  }
  b.validate();
  return b;
}

BeamSet BeamSet::vv_v_circular(const FrequencyQuad& w, double c, Handedness analysis) {
  const Vec3C x = linear_polarization({1.0, 0.0, 0.0});
  return collinear(w, c, {x, x, x, circular_polarization(analysis)});
}

void BeamSet::validate() const {
  for (std::size_t j = 0; j < 4; ++j) {
    const Beam& b = beams[j];
    const Vec3& k = b.direction;
    const double kn = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    double en = 0.0;
    for (const cd& e : b.polarization) en += std::norm(e);
    std::ostringstream os;
    os << "beam " << j + 1 << ": ";
    require(std::abs(kn - 1.0) <= 1e-12, os.str() + "wavevector direction is not a unit vector");
    require(std::abs(en - 1.0) <= 1e-12, os.str() + "polarization does not have unit norm");
    require(b.photons >= 0.0, os.str() + "negative photon number");
  }
}

bool BeamSet::collinear_along_z() const {
  return std::all_of(beams.begin(), beams.end(), [](const Beam& b) {
    return std::abs(b.direction[0]) <= 1e-12 && std::abs(b.direction[1]) <= 1e-12 &&
           std::abs(b.direction[2] - 1.0) <= 1e-12;
  });
}

void PhysicalContext::validate() const {
  for (double v : {hbar, c, epsilon0, volume, rho_s, rho_f})
    require(std::isfinite(v) && v > 0.0, "physical constants must be positive and finite");
}

double PhysicalContext::prefactor(const BeamSet& b) const {
  if (normalize) return 1.0;
  const double field = hbar * c / (2.0 * epsilon0 * volume);
  const double f2 = field * field;
  return std::numbers::pi * std::numbers::pi * rho_s * rho_s * f2 * f2 * b[0].wavenumber *
         b[1].wavenumber * b[2].wavenumber * b[3].wavenumber * b[0].photons * b[2].photons *
         (b[1].photons + 1.0) * (b[3].photons + 1.0);
}

double PhysicalContext::rate_factor() const {
  return normalize ? 1.0 : 2.0 * std::numbers::pi * rho_f / hbar;
}

double MSquaredTerms::sum() const {
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

MSquaredTerms m_squared_general_terms(const PropertyTensorSet& t, const BeamSet& beams, double c) {
  beams.validate();
  const Vec3C& e1 = beams[0].polarization;
  const Vec3C& e2 = beams[1].polarization;
  const Vec3C& e3 = beams[2].polarization;
  const Vec3C& e4 = beams[3].polarization;
  const Vec3C e1b = conj(e1), e2b = conj(e2), e3b = conj(e3), e4b = conj(e4);

  // wavevectors k_j = (omega_j / c) khat_j
  std::array<Vec3C, 4> k{};
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t n = 0; n < 3; ++n) k[j][n] = beams[j].omega / c * beams[j].direction[n];

  const Rank2 zero2{};
  const Rank3SymLast zero3{};
  if (!t.gprime12 || !t.a12) {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true))
      warn("pump/Stokes G' or A not supplied; those terms are taken as zero");
  }
  const Rank2& g12 = t.gprime12 ? *t.gprime12 : zero2;
  const Rank3SymLast& a12 = t.a12 ? *t.a12 : zero3;

  const cd x = bilinear(e4b, t.alpha34, e3) * bilinear(e2b, t.alpha12, e1);
  const cd probe = bilinear(e4, t.alpha34, e3b);  // e4 alpha34 e3bar
  const cd pump = bilinear(e2, t.alpha12, e1b);   // e2 alpha12 e1bar

  MSquaredTerms out;
  const cd electric = probe * pump * x;
  out.terms[0] = electric.real();
  out.imaginary_residue =
      std::abs(electric.imag()) / std::max(std::abs(electric.real()), std::numeric_limits<double>::min());

  out.terms[1] = -2.0 / c * (probe * bilinear(e2, g12, cross(beams[0].direction, e1b)) * x).imag();
  out.terms[2] = 2.0 / c * (probe * bilinear(e1b, g12, cross(beams[1].direction, e2)) * x).imag();
  out.terms[3] = -2.0 / c * (bilinear(e4, t.gprime34, cross(beams[2].direction, e3b)) * pump * x).imag();
  out.terms[4] = 2.0 / c * (bilinear(e3b, t.gprime34, cross(beams[3].direction, e4)) * pump * x).imag();

  out.terms[5] = 2.0 / 3.0 * (probe * trilinear(e2, e1b, k[0], a12) * x).imag();
  out.terms[6] = -2.0 / 3.0 * (probe * trilinear(e1b, e2, k[1], a12) * x).imag();
  out.terms[7] = 2.0 / 3.0 * (trilinear(e4, e3b, k[2], t.a34) * pump * x).imag();
  out.terms[8] = -2.0 / 3.0 * (trilinear(e3b, e4, k[3], t.a34) * pump * x).imag();
  return out;
}

double m_squared_general(const PropertyTensorSet& tensors, const BeamSet& beams, const PhysicalContext& ctx) {
  ctx.validate();
  return ctx.prefactor(beams) * m_squared_general_terms(tensors, beams, ctx.c).sum();
}

double m_squared_vvvr(const PropertyTensorSet& tensors, const BeamSet& beams, const PhysicalContext& ctx) {
  return vvv_circular(tensors, beams, ctx, +1.0);
}

double m_squared_vvvl(const PropertyTensorSet& tensors, const BeamSet& beams, const PhysicalContext& ctx) {
  return vvv_circular(tensors, beams, ctx, -1.0);
}

double transition_rate(double m_squared, const PhysicalContext& ctx) {
  ctx.validate();
  if (m_squared < 0.0) throw ValidationError("transition rate needs a nonnegative |M|^2");
  return ctx.rate_factor() * m_squared;
}

}  // namespace cars
