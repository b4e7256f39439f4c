#include "cars/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cars/diagnostics.hpp"
#include "cars/errors.hpp"

namespace cars {
namespace mat3 {

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t j = 0; j < 3; ++j) c[3 * i + j] += a[3 * i + k] * b[3 * k + j];
  return c;
}

Mat3 transpose(const Mat3& a) {
  return {a[0], a[3], a[6], a[1], a[4], a[7], a[2], a[5], a[8]};
}

double frobenius(const Mat3& a, const Mat3& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < 9; ++k) s += a[k] * b[k];
  return s;
}

double trace(const Mat3& a) { return a[0] + a[4] + a[8]; }

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace mat3

namespace {

void require_finite(std::span<const double> v, std::string_view label) {
  for (double x : v)
    if (!std::isfinite(x)) throw ValidationError(std::string(label) + ": non-finite component");
}

// Shared symmetrize-or-reject policy. `defect` is relative to max|T|.
void check_defect(double defect, std::string_view label) {
  if (defect > kSymmetryReject) {
    std::ostringstream os;
    os << label << ": asymmetry defect " << defect << " exceeds " << kSymmetryReject;
    throw SymmetryError(os.str());
  }
  if (defect > kSymmetryQuiet) {
    std::ostringstream os;
    os << label << ": symmetrized input with relative defect " << defect;
    warn(os.str());
  }
}

}  // namespace

// ---------------------------------------------------------------- Rank2

Rank2::Rank2(const Mat3& values) : m_(values) { require_finite(m_, "rank-2 tensor"); }

Rank2 Rank2::identity() { return Rank2(Mat3{1, 0, 0, 0, 1, 0, 0, 0, 1}); }

Rank2 Rank2::diagonal(double xx, double yy, double zz) {
  return Rank2(Mat3{xx, 0, 0, 0, yy, 0, 0, 0, zz});
}

Rank2 Rank2::transposed() const { return Rank2(mat3::transpose(m_)); }

Rank2 Rank2::scaled(double s) const {
  Mat3 out = m_;
  for (double& x : out) x *= s;
  return Rank2(out);
}

double Rank2::max_abs() const { return mat3::max_abs(m_); }

// ---------------------------------------------------------------- SymRank2

SymRank2::SymRank2(const Mat3& values, std::string_view label) {
  require_finite(values, label);
  const double scale = mat3::max_abs(values);
  double defect = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      defect = std::max(defect, std::abs(values[3 * i + j] - values[3 * j + i]));
  if (scale > 0.0) check_defect(defect / scale, label);
  for (std::size_t i = 0; i < 3; ++i) {
    m_[3 * i + i] = values[3 * i + i];
    for (std::size_t j = i + 1; j < 3; ++j) {
      const double avg = 0.5 * (values[3 * i + j] + values[3 * j + i]);
      m_[3 * i + j] = avg;
      m_[3 * j + i] = avg;
    }
  }
}

SymRank2 SymRank2::identity() { return SymRank2(Mat3{1, 0, 0, 0, 1, 0, 0, 0, 1}); }

SymRank2 SymRank2::diagonal(double xx, double yy, double zz) {
  return SymRank2(Mat3{xx, 0, 0, 0, yy, 0, 0, 0, zz});
}

SymRank2 SymRank2::scaled(double s) const {
  Mat3 out = m_;
  for (double& x : out) x *= s;
  return SymRank2(out);
}

// ---------------------------------------------------------------- Rank3SymLast

Rank3SymLast::Rank3SymLast(const Storage& values, std::string_view label) {
  require_finite(values, label);
  const double scale = mat3::max_abs(values);
  double defect = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t n = j + 1; n < 3; ++n)
        defect = std::max(defect, std::abs(values[index(i, j, n)] - values[index(i, n, j)]));
  if (scale > 0.0) check_defect(defect / scale, label);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      a_[index(i, j, j)] = values[index(i, j, j)];
      for (std::size_t n = j + 1; n < 3; ++n) {
        const double avg = 0.5 * (values[index(i, j, n)] + values[index(i, n, j)]);
        a_[index(i, j, n)] = avg;
        a_[index(i, n, j)] = avg;
      }
    }
}

Rank3SymLast Rank3SymLast::scaled(double s) const {
  Storage out = a_;
  for (double& x : out) x *= s;
  return Rank3SymLast(out);
}

bool Rank3SymLast::is_totally_symmetric(double tol) const {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t n = 0; n < 3; ++n)
        if (std::abs(a_[index(i, j, n)] - a_[index(j, i, n)]) > tol) return false;
  return true;
}

// ---------------------------------------------------------------- Rotation

Rotation::Rotation(const Mat3& r) : r_(r) {
  require_finite(r_, "rotation");
  const Mat3 rrt = mat3::multiply(r_, mat3::transpose(r_));
  double orth = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      orth = std::max(orth, std::abs(rrt[3 * i + j] - kronecker(i, j)));
  const double det = r_[0] * (r_[4] * r_[8] - r_[5] * r_[7]) -
                     r_[1] * (r_[3] * r_[8] - r_[5] * r_[6]) +
                     r_[2] * (r_[3] * r_[7] - r_[4] * r_[6]);
  if (orth > kTolerance) throw ValidationError("rotation: matrix is not orthogonal");
  if (std::abs(det - 1.0) > kTolerance) throw ValidationError("rotation: determinant is not +1");
}

Rotation Rotation::about_axis(Axis axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  switch (axis) {
    case kX:
      return Rotation(Mat3{1, 0, 0, 0, c, -s, 0, s, c});
    case kY:
      return Rotation(Mat3{c, 0, s, 0, 1, 0, -s, 0, c});
    case kZ:
    default:
      return Rotation(Mat3{c, -s, 0, s, c, 0, 0, 0, 1});
  }
}

Rotation Rotation::from_quaternion(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(n > 0.0)) throw ValidationError("rotation: zero quaternion");
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  return Rotation(Mat3{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
                       2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
                       2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)});
}

Rotation Rotation::from_euler_zyz(double alpha, double beta, double gamma) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const double cg = std::cos(gamma), sg = std::sin(gamma);
  return Rotation(Mat3{ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb,
                       sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb,
                       -sb * cg, sb * sg, cb});
}

Rotation Rotation::operator*(const Rotation& rhs) const {
  return Rotation(mat3::multiply(r_, rhs.r_), Unchecked{});
}

Rotation Rotation::inverse() const { return Rotation(mat3::transpose(r_), Unchecked{}); }

// ---------------------------------------------------------------- rotations of tensors

namespace {

Mat3 rotate_mat(const Mat3& r, const Mat3& t) {
  return mat3::multiply(mat3::multiply(r, t), mat3::transpose(r));
}

}  // namespace

Rank2 rotate_rank2(const Rotation& r, const Rank2& t) { return Rank2(rotate_mat(r.data(), t.data())); }

SymRank2 rotate_rank2(const Rotation& r, const SymRank2& t) {
  return SymRank2(rotate_mat(r.data(), t.data()));
}

Rank3SymLast rotate_rank3(const Rotation& r, const Rank3SymLast& a) {
  // Three successive single-index transforms.
  Rank3SymLast::Storage s1{}, s2{}, s3{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (std::size_t a_ = 0; a_ < 3; ++a_) acc += r(i, a_) * a(a_, b, c);
        s1[Rank3SymLast::index(i, b, c)] = acc;
      }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (std::size_t b = 0; b < 3; ++b) acc += r(j, b) * s1[Rank3SymLast::index(i, b, c)];
        s2[Rank3SymLast::index(i, j, c)] = acc;
      }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t n = 0; n < 3; ++n) {
        double acc = 0.0;
        for (std::size_t c = 0; c < 3; ++c) acc += r(n, c) * s2[Rank3SymLast::index(i, j, c)];
        s3[Rank3SymLast::index(i, j, n)] = acc;
      }
  return Rank3SymLast(s3);
}

Rank2 epsilon_contract(const Rank3SymLast& a) {
  Mat3 b{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (std::size_t m = 0; m < 3; ++m)
        for (std::size_t n = 0; n < 3; ++n) {
          const int e = levi_civita(m, n, i);
          if (e != 0) acc += e * a(m, n, j);
        }
      b[3 * i + j] = acc;
    }
  return Rank2(b);
}

// ---------------------------------------------------------------- Haar sampling

double HaarSampler::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Rotation HaarSampler::next() {
  // Shoemake's uniform random unit quaternion.
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  const double u1 = uniform();
  const double u2 = uniform();
  const double u3 = uniform();
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  return Rotation::from_quaternion(a * std::sin(kTwoPi * u2), a * std::cos(kTwoPi * u2),
                                   b * std::sin(kTwoPi * u3), b * std::cos(kTwoPi * u3));
}

}  // namespace cars
