#pragma once

// Batched lab-frame evaluation of the VVVR bracket over many orientations.
//
// For each rotation R only nine lab-frame components are needed
// (alpha34_xx, alpha34_yx, alpha12_xx, G'_xx, G'_yy, A_{y,xz}, A_{x,xz},
// A_{x,yz}); each is a short chain of dot products with the rows of R, which
// vectorizes across rotations. A scalar reference kernel and an AVX2/FMA
// kernel compute the same columns; `vvvr_brackets` picks one at runtime.

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "cars/tensor.hpp"

namespace cars::kernels {

struct MolecularFrameTensors {
  Mat3 alpha34{};
  Mat3 alpha12{};
  Mat3 gprime34{};
  std::array<double, 27> a34{};
};

/// Structure-of-arrays batch of rotations with integration weights.
/// Entry (i,j) of rotation n is r[3*i + j][n].
class RotationBatch {
 public:
  void reserve(std::size_t n);
  void push_back(const Rotation& rotation, double weight);
  std::size_t size() const { return weight_.size(); }

  const double* entry(std::size_t ij) const { return r_[ij].data(); }
  const std::vector<double>& weights() const { return weight_; }
  Rotation rotation(std::size_t n) const;

 private:
  std::array<std::vector<double>, 9> r_;
  std::vector<double> weight_;
};

/// Per-orientation bracket pieces, without the 1/c and wavenumber factors:
///   electric         = 1/2 (a_xx^2 + a_yx^2) b_xx^2
///   magnetic         = (G'_yy + G'_xx) a_xx b_xx^2              (times 1/c)
///   quad_probe       = (-A_{y,xz} a_xx + A_{x,xz} a_yx) b_xx^2/3  (times k3)
///   quad_anti_stokes = ( A_{x,yz} a_xx - A_{x,xz} a_yx) b_xx^2/3  (times k4)
/// with a = alpha34 and b = alpha12 in the lab frame.
struct BracketColumns {
  std::vector<double> electric;
  std::vector<double> magnetic;
  std::vector<double> quad_probe;
  std::vector<double> quad_anti_stokes;

  void resize(std::size_t n);
  std::size_t size() const { return electric.size(); }
};

enum class SimdLevel { kScalar, kAvx2 };

/// Best level supported by both the build and the running CPU.
SimdLevel detect_simd_level();
bool simd_level_available(SimdLevel level);
std::string_view to_string(SimdLevel level);

/// Fills out[begin, end). `out` must already be sized to the batch.
void vvvr_brackets_scalar(const MolecularFrameTensors& t, const RotationBatch& batch,
                          std::size_t begin, std::size_t end, BracketColumns& out);
void vvvr_brackets_avx2(const MolecularFrameTensors& t, const RotationBatch& batch,
                        std::size_t begin, std::size_t end, BracketColumns& out);

/// Whole-batch evaluation at the requested level (falls back to scalar when
/// the level is unavailable).
BracketColumns vvvr_brackets(const MolecularFrameTensors& t, const RotationBatch& batch,
                             SimdLevel level = detect_simd_level());

}  // namespace cars::kernels
