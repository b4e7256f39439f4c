#pragma once

// Fixed-size Cartesian tensors over {x,y,z} -> {0,1,2}, proper rotations and
// the Levi-Civita contraction used by the quadrupole invariants.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>

namespace cars {

using Vec3 = std::array<double, 3>;
using Vec3C = std::array<std::complex<double>, 3>;
/// Row-major 3x3 storage, element (i,j) at 3*i + j.
using Mat3 = std::array<double, 9>;

enum Axis : std::size_t { kX = 0, kY = 1, kZ = 2 };

/// Symmetrization policy shared by SymRank2 and Rank3SymLast: defects up to
/// kSymmetryQuiet are absorbed silently, up to kSymmetryReject with a warning,
/// anything larger is a SymmetryError.
inline constexpr double kSymmetryQuiet = 1e-12;
inline constexpr double kSymmetryReject = 1e-6;

constexpr int levi_civita(std::size_t i, std::size_t j, std::size_t k) {
  if (i == j || j == k || i == k) return 0;
  // even permutations of (0,1,2)
  if ((i == 0 && j == 1) || (i == 1 && j == 2) || (i == 2 && j == 0)) return 1;
  return -1;
}

constexpr double kronecker(std::size_t i, std::size_t j) { return i == j ? 1.0 : 0.0; }

/// General real rank-2 tensor (no symmetry assumed).
class Rank2 {
 public:
  Rank2() = default;
  explicit Rank2(const Mat3& values);

  static Rank2 identity();
  static Rank2 diagonal(double xx, double yy, double zz);

  double operator()(std::size_t i, std::size_t j) const { return m_[3 * i + j]; }
  const Mat3& data() const { return m_; }

  double trace() const { return m_[0] + m_[4] + m_[8]; }
  Rank2 transposed() const;
  Rank2 scaled(double s) const;
  double max_abs() const;

  friend bool operator==(const Rank2&, const Rank2&) = default;

 private:
  Mat3 m_{};
};

/// Real symmetric rank-2 tensor; construction enforces symmetry.
class SymRank2 {
 public:
  SymRank2() = default;
  /// `label` names the tensor in diagnostics.
  explicit SymRank2(const Mat3& values, std::string_view label = "symmetric tensor");

  static SymRank2 identity();
  static SymRank2 diagonal(double xx, double yy, double zz);

  double operator()(std::size_t i, std::size_t j) const { return m_[3 * i + j]; }
  const Mat3& data() const { return m_; }
  Rank2 as_rank2() const { return Rank2(m_); }

  double trace() const { return m_[0] + m_[4] + m_[8]; }
  SymRank2 scaled(double s) const;

  friend bool operator==(const SymRank2&, const SymRank2&) = default;

 private:
  Mat3 m_{};
};

/// A[i][j][n] with A[i][j][n] == A[i][n][j] exactly.
class Rank3SymLast {
 public:
  using Storage = std::array<double, 27>;

  Rank3SymLast() = default;
  explicit Rank3SymLast(const Storage& values, std::string_view label = "rank-3 tensor");

  static constexpr std::size_t index(std::size_t i, std::size_t j, std::size_t n) {
    return 9 * i + 3 * j + n;
  }

  double operator()(std::size_t i, std::size_t j, std::size_t n) const { return a_[index(i, j, n)]; }
  const Storage& data() const { return a_; }

  Rank3SymLast scaled(double s) const;
  bool is_totally_symmetric(double tol = 0.0) const;

  friend bool operator==(const Rank3SymLast&, const Rank3SymLast&) = default;

 private:
  Storage a_{};
};

/// Proper rotation matrix: R R^T = I and det R = +1 within 1e-12.
class Rotation {
 public:
  static constexpr double kTolerance = 1e-12;

  Rotation() : r_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}
  explicit Rotation(const Mat3& r);

  static Rotation identity() { return {}; }
  /// Right-handed rotation by `angle` about a coordinate axis.
  static Rotation about_axis(Axis axis, double angle);
  /// Unit quaternion (w, x, y, z); normalized on entry.
  static Rotation from_quaternion(double w, double x, double y, double z);
  /// R = Rz(alpha) Ry(beta) Rz(gamma).
  static Rotation from_euler_zyz(double alpha, double beta, double gamma);

  double operator()(std::size_t i, std::size_t j) const { return r_[3 * i + j]; }
  const Mat3& data() const { return r_; }

  Rotation operator*(const Rotation& rhs) const;
  Rotation inverse() const;

 private:
  struct Unchecked {};
  Rotation(const Mat3& r, Unchecked) : r_(r) {}

  Mat3 r_;
};

/// T'_{ij} = R_{ia} R_{jb} T_{ab}
Rank2 rotate_rank2(const Rotation& r, const Rank2& t);
SymRank2 rotate_rank2(const Rotation& r, const SymRank2& t);
/// A'_{ijn} = R_{ia} R_{jb} R_{nc} A_{abc}
Rank3SymLast rotate_rank3(const Rotation& r, const Rank3SymLast& a);

/// B_{ij} = eps_{mni} A_{m,nj}
Rank2 epsilon_contract(const Rank3SymLast& a);

/// Deterministic Haar-distributed rotations from uniform unit quaternions.
/// One sampler per worker; sequences depend only on the seed.
class HaarSampler {
 public:
  explicit HaarSampler(std::uint64_t seed) : engine_(seed) {}
  Rotation next();

 private:
  double uniform();  // [0, 1) with 53 random bits, platform independent
  std::mt19937_64 engine_;
};

namespace mat3 {

Mat3 multiply(const Mat3& a, const Mat3& b);
Mat3 transpose(const Mat3& a);
/// Frobenius inner product sum_ij a_ij b_ij.
double frobenius(const Mat3& a, const Mat3& b);
double trace(const Mat3& a);
double max_abs(std::span<const double> v);

}  // namespace mat3

}  // namespace cars
