#include "cars/kernels.hpp"

namespace cars::kernels {

void RotationBatch::reserve(std::size_t n) {
  for (auto& v : r_) v.reserve(n);
  weight_.reserve(n);
}

void RotationBatch::push_back(const Rotation& rotation, double weight) {
  for (std::size_t ij = 0; ij < 9; ++ij) r_[ij].push_back(rotation.data()[ij]);
  weight_.push_back(weight);
}

Rotation RotationBatch::rotation(std::size_t n) const {
  Mat3 m{};
  for (std::size_t ij = 0; ij < 9; ++ij) m[ij] = r_[ij][n];
  return Rotation(m);
}

void BracketColumns::resize(std::size_t n) {
  electric.resize(n);
  magnetic.resize(n);
  quad_probe.resize(n);
  quad_anti_stokes.resize(n);
}

void vvvr_brackets_scalar(const MolecularFrameTensors& t, const RotationBatch& batch,
                          std::size_t begin, std::size_t end, BracketColumns& out) {
  for (std::size_t n = begin; n < end; ++n) {
    double row[3][3];
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) row[i][j] = batch.entry(3 * i + j)[n];
    const double* x = row[0];
    const double* y = row[1];
    const double* z = row[2];

    // T'_{pq} = x_p-row . T . q-row
    auto bilinear = [](const Mat3& m, const double* u, const double* v) {
      double s = 0.0;
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) s += u[a] * m[3 * a + b] * v[b];
      return s;
    };
    const double axx = bilinear(t.alpha34, x, x);
    const double ayx = bilinear(t.alpha34, y, x);
    const double bxx = bilinear(t.alpha12, x, x);
    const double gxx = bilinear(t.gprime34, x, x);
    const double gyy = bilinear(t.gprime34, y, y);

    double w_xz[3] = {0, 0, 0};  // sum_bc A_abc x_b z_c
    double w_yz[3] = {0, 0, 0};  // sum_bc A_abc y_b z_c
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        for (std::size_t c = 0; c < 3; ++c) {
          const double v = t.a34[9 * a + 3 * b + c];
          w_xz[a] += v * x[b] * z[c];
          w_yz[a] += v * y[b] * z[c];
        }
    const double a_yxz = y[0] * w_xz[0] + y[1] * w_xz[1] + y[2] * w_xz[2];
    const double a_xxz = x[0] * w_xz[0] + x[1] * w_xz[1] + x[2] * w_xz[2];
    const double a_xyz = x[0] * w_yz[0] + x[1] * w_yz[1] + x[2] * w_yz[2];

    const double bb = bxx * bxx;
    out.electric[n] = 0.5 * (axx * axx + ayx * ayx) * bb;
    out.magnetic[n] = (gyy + gxx) * axx * bb;
    out.quad_probe[n] = (-a_yxz * axx + a_xxz * ayx) * bb / 3.0;
    out.quad_anti_stokes[n] = (a_xyz * axx - a_xxz * ayx) * bb / 3.0;
  }
}

}  // namespace cars::kernels
