#include "cars/kernels.hpp"

namespace cars::kernels {

bool avx2_compiled();  // defined in kernels_avx2.cpp

bool simd_level_available(SimdLevel level) {
  switch (level) {
    case SimdLevel::kScalar:
      return true;
    case SimdLevel::kAvx2:
#if defined(__x86_64__) || defined(__i386__)
      return avx2_compiled() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

SimdLevel detect_simd_level() {
  static const SimdLevel level =
      simd_level_available(SimdLevel::kAvx2) ? SimdLevel::kAvx2 : SimdLevel::kScalar;
  return level;
}

std::string_view to_string(SimdLevel level) {
  return level == SimdLevel::kAvx2 ? "avx2" : "scalar";
}

BracketColumns vvvr_brackets(const MolecularFrameTensors& t, const RotationBatch& batch,
                             SimdLevel level) {
  BracketColumns out;
  out.resize(batch.size());
  if (level == SimdLevel::kAvx2 && simd_level_available(SimdLevel::kAvx2))
    vvvr_brackets_avx2(t, batch, 0, batch.size(), out);
  else
    vvvr_brackets_scalar(t, batch, 0, batch.size(), out);
  return out;
}

}  // namespace cars::kernels
