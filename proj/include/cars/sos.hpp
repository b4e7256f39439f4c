#pragma once

// Sum-over-states construction of alpha, G' and A from level energies and
// transition moments. Energies in hartree, moments in atomic units.
//
// Storage conventions for a (bra, ket) entry:
//   dipole      mu        real, <ket|mu|bra> = mu
//   magnetic    m~        <bra|m|ket> = i m~, so <ket|m|bra> = -i m~
//   quadrupole  q         real symmetric, <ket|q|bra> = q
// A missing entry falls back to its Hermitian partner.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cars/frequencies.hpp"
#include "cars/property_tensors.hpp"
#include "cars/tensor.hpp"

namespace cars {

struct Level {
  std::string id;
  double energy = 0.0;
};

/// g: ground, s: vibrationally excited, f: final; t and r are the
/// intermediates of the pump/Stokes and probe/anti-Stokes transitions.
struct Roles {
  std::string ground;
  std::string excited;
  std::string final_state;
  std::vector<std::string> pump_intermediates;
  std::vector<std::string> probe_intermediates;
};

class MolecularModel {
 public:
  void add_level(const std::string& id, double energy);
  void set_dipole(const std::string& bra, const std::string& ket, const Vec3& mu);
  void set_magnetic(const std::string& bra, const std::string& ket, const Vec3& m_tilde);
  void set_quadrupole(const std::string& bra, const std::string& ket, const Mat3& q);

  const std::vector<Level>& levels() const { return levels_; }
  const Level& level(const std::string& id) const;
  bool has_level(const std::string& id) const { return index_.count(id) != 0; }

  /// With Hermitian closure; empty when neither ordering is stored.
  std::optional<Vec3> dipole(const std::string& bra, const std::string& ket) const;
  std::optional<Vec3> magnetic(const std::string& bra, const std::string& ket) const;
  std::optional<Mat3> quadrupole(const std::string& bra, const std::string& ket) const;

  /// Stored entries only, in insertion-independent (sorted) order.
  const std::map<std::pair<std::string, std::string>, Vec3>& dipole_table() const { return mu_; }
  const std::map<std::pair<std::string, std::string>, Vec3>& magnetic_table() const { return m_; }
  const std::map<std::pair<std::string, std::string>, Mat3>& quadrupole_table() const { return q_; }

  Roles roles;
  /// Throws RoleError for roles naming unknown levels.
  void validate() const;

 private:
  void require_level(const std::string& id, const char* what) const;

  std::vector<Level> levels_;
  std::map<std::string, std::size_t> index_;
  std::map<std::pair<std::string, std::string>, Vec3> mu_;
  std::map<std::pair<std::string, std::string>, Vec3> m_;
  std::map<std::pair<std::string, std::string>, Mat3> q_;
};

struct SosOptions {
  /// |E - omega| below this (hartree) is treated as resonant.
  double resonance_threshold = 1e-8;
};

struct SosRank2 {
  Rank2 tensor;
  /// alpha: max|T_ij - T_ji| / max|T|. G': disagreement of the two routes.
  double defect = 0.0;
};

struct SosRank3 {
  Rank3SymLast tensor;
  /// Disagreement of the two routes, relative to max|A|.
  double defect = 0.0;
};

/// alpha_ij = sum_t [<bra|mu_i|t><t|mu_j|ket>/(E_t,ket - wa) + <bra|mu_j|t><t|mu_i|ket>/(E_t,ket + wb)]
SosRank2 polarizability_sos(const MolecularModel& model, const std::string& bra, const std::string& ket,
                            const std::vector<std::string>& intermediates, double omega_a, double omega_b,
                            const SosOptions& options = {});
/// G' = i G^(1); the route through G^(2) is compared and reported.
SosRank2 gyration_sos(const MolecularModel& model, const std::string& bra, const std::string& ket,
                      const std::vector<std::string>& intermediates, double omega_a, double omega_b,
                      const SosOptions& options = {});
/// A = A^(1); the route through A^(2) is compared and reported.
SosRank3 quadrupole_activity_sos(const MolecularModel& model, const std::string& bra, const std::string& ket,
                                 const std::vector<std::string>& intermediates, double omega_a,
                                 double omega_b, const SosOptions& options = {});

struct SosDefects {
  double alpha34 = 0.0;
  double alpha12 = 0.0;
  double gprime34 = 0.0;
  double gprime12 = 0.0;
  double a34 = 0.0;
  double a12 = 0.0;
};

struct SosTensors {
  PropertyTensorSet tensors;
  SosDefects defects;
};

/// Both pairs: (f, s, {r}, omega3, omega4) and (s, g, {t}, omega1, omega2).
/// alpha is symmetrized, with a warning when its defect exceeds 1e-6.
SosTensors build_property_tensors(const MolecularModel& model, const FrequencyQuad& w,
                                  const SosOptions& options = {});

}  // namespace cars
