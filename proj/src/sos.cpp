#include "cars/sos.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>

#include "cars/diagnostics.hpp"
#include "cars/errors.hpp"

namespace cars {
namespace {

void require_finite(std::span<const double> v, const std::string& what) {
  for (double x : v)
    if (!std::isfinite(x)) throw ValidationError(what + " has a non-finite component");
}

std::string pair_name(const std::string& bra, const std::string& ket) {
  return "<" + bra + "|...|" + ket + ">";
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double relative_difference(std::span<const double> a, std::span<const double> b) {
  double num = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) num = std::max(num, std::abs(a[i] - b[i]));
  const double den = std::max(max_abs(a), max_abs(b));
  return den > 0.0 ? num / den : 0.0;
}

// Energy denominators of one intermediate.
struct Denominators {
  double resonant;      // E_t,ket - omega_a
  double antiresonant;  // E_t,ket + omega_b
};

Denominators denominators(const MolecularModel& model, const std::string& ket, const std::string& t,
                          double omega_a, double omega_b, const SosOptions& o) {
  const double e = model.level(t).energy - model.level(ket).energy;
  const Denominators d{e - omega_a, e + omega_b};
  for (double v : {d.resonant, d.antiresonant}) {
    if (std::abs(v) < o.resonance_threshold) {
      std::ostringstream os;
      os << "intermediate '" << t << "' is resonant: energy denominator " << v << " below "
         << o.resonance_threshold;
      throw ResonanceError(os.str());
    }
  }
  return d;
}

Vec3 dipole_or_throw(const MolecularModel& m, const std::string& bra, const std::string& ket) {
  auto mu = m.dipole(bra, ket);
  if (!mu) throw MissingMomentError("no transition dipole for " + pair_name(bra, ket));
  return *mu;
}

// Optical-activity moments that are absent in both orderings are zero.
Vec3 magnetic_or_zero(const MolecularModel& m, const std::string& bra, const std::string& ket) {
  return m.magnetic(bra, ket).value_or(Vec3{});
}

Mat3 quadrupole_or_zero(const MolecularModel& m, const std::string& bra, const std::string& ket) {
  return m.quadrupole(bra, ket).value_or(Mat3{});
}

void check_inputs(const MolecularModel& model, const std::string& bra, const std::string& ket,
                  const std::vector<std::string>& intermediates, double omega_a, double omega_b) {
  model.level(bra);
  model.level(ket);
  for (const auto& t : intermediates) model.level(t);
  if (!std::isfinite(omega_a) || !std::isfinite(omega_b))
    throw ValidationError("sum-over-states frequencies must be finite");
}

Mat3 symmetrized(const Mat3& a) {
  Mat3 s{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s[3 * i + j] = 0.5 * (a[3 * i + j] + a[3 * j + i]);
  return s;
}

SymRank2 symmetric_alpha(const SosRank2& a, const char* label) {
  if (a.defect > kSymmetryReject) {
    std::ostringstream os;
    os << label << " from the sum over states is asymmetric (relative defect " << a.defect
       << "); symmetrized";
    warn(os.str());
  }
  return SymRank2(symmetrized(a.tensor.data()), label);
}

}  // namespace

// ---------------------------------------------------------------------------

void MolecularModel::add_level(const std::string& id, double energy) {
  if (id.empty()) throw ValidationError("level id must not be empty");
  if (!std::isfinite(energy)) throw ValidationError("level '" + id + "' has a non-finite energy");
  if (index_.count(id)) throw ValidationError("duplicate level '" + id + "'");
  index_[id] = levels_.size();
  levels_.push_back({id, energy});
}

const Level& MolecularModel::level(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw RoleError("unknown level '" + id + "'");
  return levels_[it->second];
}

void MolecularModel::set_dipole(const std::string& bra, const std::string& ket, const Vec3& mu) {
  level(bra);
  level(ket);
  require_finite(mu, "dipole " + pair_name(bra, ket));
  mu_[{bra, ket}] = mu;
}

void MolecularModel::set_magnetic(const std::string& bra, const std::string& ket, const Vec3& m_tilde) {
  level(bra);
  level(ket);
  require_finite(m_tilde, "magnetic moment " + pair_name(bra, ket));
  m_[{bra, ket}] = m_tilde;
}

void MolecularModel::set_quadrupole(const std::string& bra, const std::string& ket, const Mat3& q) {
  level(bra);
  level(ket);
  const std::string label = "quadrupole " + pair_name(bra, ket);
  require_finite(q, label);
  // validates symmetry under the shared policy
  q_[{bra, ket}] = SymRank2(q, label).data();
}

std::optional<Vec3> MolecularModel::dipole(const std::string& bra, const std::string& ket) const {
  if (auto it = mu_.find({bra, ket}); it != mu_.end()) return it->second;
  if (auto it = mu_.find({ket, bra}); it != mu_.end()) return it->second;
  return std::nullopt;
}

std::optional<Vec3> MolecularModel::magnetic(const std::string& bra, const std::string& ket) const {
  if (auto it = m_.find({bra, ket}); it != m_.end()) return it->second;
  if (auto it = m_.find({ket, bra}); it != m_.end()) {
    const Vec3& v = it->second;
    return Vec3{-v[0], -v[1], -v[2]};
  }
  return std::nullopt;
}

std::optional<Mat3> MolecularModel::quadrupole(const std::string& bra, const std::string& ket) const {
  if (auto it = q_.find({bra, ket}); it != q_.end()) return it->second;
  if (auto it = q_.find({ket, bra}); it != q_.end()) return it->second;
  return std::nullopt;
}

void MolecularModel::require_level(const std::string& id, const char* what) const {
  if (id.empty()) throw RoleError(std::string("role '") + what + "' is not assigned");
  if (!has_level(id)) throw RoleError(std::string("role '") + what + "' names unknown level '" + id + "'");
}

void MolecularModel::validate() const {
  require_level(roles.ground, "g");
  require_level(roles.excited, "s");
  require_level(roles.final_state, "f");
  if (roles.pump_intermediates.empty()) throw RoleError("no pump/Stokes intermediates (t)");
  if (roles.probe_intermediates.empty()) throw RoleError("no probe/anti-Stokes intermediates (r)");
  for (const auto& t : roles.pump_intermediates) require_level(t, "t");
  for (const auto& r : roles.probe_intermediates) require_level(r, "r");
}

SosRank2 polarizability_sos(const MolecularModel& model, const std::string& bra, const std::string& ket,
                            const std::vector<std::string>& intermediates, double omega_a, double omega_b,
                            const SosOptions& options) {
  check_inputs(model, bra, ket, intermediates, omega_a, omega_b);
  Mat3 a{};
  for (const auto& t : intermediates) {
    const Denominators d = denominators(model, ket, t, omega_a, omega_b, options);
    const Vec3 bt = dipole_or_throw(model, bra, t);
    const Vec3 tk = dipole_or_throw(model, t, ket);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        a[3 * i + j] += bt[i] * tk[j] / d.resonant + bt[j] * tk[i] / d.antiresonant;
  }
  SosRank2 out;
  out.tensor = Rank2(a);
  Mat3 at{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) at[3 * i + j] = a[3 * j + i];
  out.defect = relative_difference(a, at);
  return out;
}

SosRank2 gyration_sos(const MolecularModel& model, const std::string& bra, const std::string& ket,
                      const std::vector<std::string>& intermediates, double omega_a, double omega_b,
                      const SosOptions& options) {
  check_inputs(model, bra, ket, intermediates, omega_a, omega_b);
  // With <a|m|b> = i m~:  i G^(1)_ij = -S1_ij  and  -i G^(2)_ji = S2_ij.
  Mat3 route1{}, route2{};
  for (const auto& t : intermediates) {
    const Denominators d = denominators(model, ket, t, omega_a, omega_b, options);
    const Vec3 mu_bt = dipole_or_throw(model, bra, t);
    const Vec3 mu_tk = dipole_or_throw(model, t, ket);
    const Vec3 m_bt = magnetic_or_zero(model, bra, t);
    const Vec3 m_tk = magnetic_or_zero(model, t, ket);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        route1[3 * i + j] -= mu_bt[i] * m_tk[j] / d.resonant + m_bt[j] * mu_tk[i] / d.antiresonant;
        route2[3 * i + j] += m_bt[j] * mu_tk[i] / d.resonant + mu_bt[i] * m_tk[j] / d.antiresonant;
      }
  }
  return {Rank2(route1), relative_difference(route1, route2)};
}

SosRank3 quadrupole_activity_sos(const MolecularModel& model, const std::string& bra, const std::string& ket,
                                 const std::vector<std::string>& intermediates, double omega_a,
                                 double omega_b, const SosOptions& options) {
  check_inputs(model, bra, ket, intermediates, omega_a, omega_b);
  Rank3SymLast::Storage route1{}, route2{};
  for (const auto& t : intermediates) {
    const Denominators d = denominators(model, ket, t, omega_a, omega_b, options);
    const Vec3 mu_bt = dipole_or_throw(model, bra, t);
    const Vec3 mu_tk = dipole_or_throw(model, t, ket);
    const Mat3 q_bt = quadrupole_or_zero(model, bra, t);
    const Mat3 q_tk = quadrupole_or_zero(model, t, ket);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t n = 0; n < 3; ++n) {
          const std::size_t jn = 3 * j + n;
          const std::size_t at = Rank3SymLast::index(i, j, n);
          route1[at] += mu_bt[i] * q_tk[jn] / d.resonant + q_bt[jn] * mu_tk[i] / d.antiresonant;
          route2[at] += q_bt[jn] * mu_tk[i] / d.resonant + mu_bt[i] * q_tk[jn] / d.antiresonant;
        }
  }
  return {Rank3SymLast(route1, "A"), relative_difference(route1, route2)};
}

SosTensors build_property_tensors(const MolecularModel& model, const FrequencyQuad& w,
                                  const SosOptions& options) {
  model.validate();
  w.validate(true);
  const Roles& r = model.roles;

  const SosRank2 a34 = polarizability_sos(model, r.final_state, r.excited, r.probe_intermediates, w.omega3,
                                          w.omega4, options);
  const SosRank2 a12 = polarizability_sos(model, r.excited, r.ground, r.pump_intermediates, w.omega1,
                                          w.omega2, options);
  const SosRank2 g34 =
      gyration_sos(model, r.final_state, r.excited, r.probe_intermediates, w.omega3, w.omega4, options);
  const SosRank2 g12 =
      gyration_sos(model, r.excited, r.ground, r.pump_intermediates, w.omega1, w.omega2, options);
  const SosRank3 q34 = quadrupole_activity_sos(model, r.final_state, r.excited, r.probe_intermediates,
                                               w.omega3, w.omega4, options);
  const SosRank3 q12 = quadrupole_activity_sos(model, r.excited, r.ground, r.pump_intermediates, w.omega1,
                                               w.omega2, options);

  SosTensors out;
  out.tensors.alpha34 = symmetric_alpha(a34, "alpha (probe/anti-Stokes)");
  out.tensors.alpha12 = symmetric_alpha(a12, "alpha (pump/Stokes)");
  out.tensors.gprime34 = g34.tensor;
  out.tensors.a34 = q34.tensor;
  out.tensors.gprime12 = g12.tensor;
  out.tensors.a12 = q12.tensor;
  out.defects = {a34.defect, a12.defect, g34.defect, g12.defect, q34.defect, q12.defect};
  return out;
}

}  // namespace cars
