#include "cars/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace cars::kernels {
namespace {

struct Rows {
  __m256d x[3], y[3], z[3];
};

// u^T M v with M broadcast from a row-major 3x3.
inline __m256d bilinear(const Mat3& m, const __m256d* u, const __m256d* v) {
  __m256d s = _mm256_setzero_pd();
  for (std::size_t a = 0; a < 3; ++a) {
    __m256d mv = _mm256_mul_pd(_mm256_set1_pd(m[3 * a]), v[0]);
    mv = _mm256_fmadd_pd(_mm256_set1_pd(m[3 * a + 1]), v[1], mv);
    mv = _mm256_fmadd_pd(_mm256_set1_pd(m[3 * a + 2]), v[2], mv);
    s = _mm256_fmadd_pd(u[a], mv, s);
  }
  return s;
}

inline __m256d dot3(const __m256d* u, const __m256d* v) {
  __m256d s = _mm256_mul_pd(u[0], v[0]);
  s = _mm256_fmadd_pd(u[1], v[1], s);
  return _mm256_fmadd_pd(u[2], v[2], s);
}

}  // namespace

void vvvr_brackets_avx2(const MolecularFrameTensors& t, const RotationBatch& batch,
                        std::size_t begin, std::size_t end, BracketColumns& out) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d third = _mm256_set1_pd(1.0 / 3.0);
  std::size_t n = begin;
  for (; n + 4 <= end; n += 4) {
    Rows r;
    for (std::size_t j = 0; j < 3; ++j) {
      r.x[j] = _mm256_loadu_pd(batch.entry(j) + n);
      r.y[j] = _mm256_loadu_pd(batch.entry(3 + j) + n);
      r.z[j] = _mm256_loadu_pd(batch.entry(6 + j) + n);
    }
    const __m256d axx = bilinear(t.alpha34, r.x, r.x);
    const __m256d ayx = bilinear(t.alpha34, r.y, r.x);
    const __m256d bxx = bilinear(t.alpha12, r.x, r.x);
    const __m256d gxx = bilinear(t.gprime34, r.x, r.x);
    const __m256d gyy = bilinear(t.gprime34, r.y, r.y);

    __m256d w_xz[3], w_yz[3];
    for (std::size_t a = 0; a < 3; ++a) {
      // slice A_{a,bc} as a 3x3 in (b,c)
      Mat3 slice{};
      for (std::size_t bc = 0; bc < 9; ++bc) slice[bc] = t.a34[9 * a + bc];
      __m256d sz[3];
      for (std::size_t b = 0; b < 3; ++b) {
        sz[b] = _mm256_mul_pd(_mm256_set1_pd(slice[3 * b]), r.z[0]);
        sz[b] = _mm256_fmadd_pd(_mm256_set1_pd(slice[3 * b + 1]), r.z[1], sz[b]);
        sz[b] = _mm256_fmadd_pd(_mm256_set1_pd(slice[3 * b + 2]), r.z[2], sz[b]);
      }
      w_xz[a] = dot3(r.x, sz);
      w_yz[a] = dot3(r.y, sz);
    }
    const __m256d a_yxz = dot3(r.y, w_xz);
    const __m256d a_xxz = dot3(r.x, w_xz);
    const __m256d a_xyz = dot3(r.x, w_yz);

    const __m256d bb = _mm256_mul_pd(bxx, bxx);
    const __m256d e = _mm256_mul_pd(
        _mm256_mul_pd(half, _mm256_fmadd_pd(axx, axx, _mm256_mul_pd(ayx, ayx))), bb);
    const __m256d m = _mm256_mul_pd(_mm256_mul_pd(_mm256_add_pd(gyy, gxx), axx), bb);
    const __m256d qp = _mm256_mul_pd(
        _mm256_mul_pd(_mm256_fmsub_pd(a_xxz, ayx, _mm256_mul_pd(a_yxz, axx)), bb), third);
    const __m256d qa = _mm256_mul_pd(
        _mm256_mul_pd(_mm256_fmsub_pd(a_xyz, axx, _mm256_mul_pd(a_xxz, ayx)), bb), third);
    _mm256_storeu_pd(out.electric.data() + n, e);
    _mm256_storeu_pd(out.magnetic.data() + n, m);
    _mm256_storeu_pd(out.quad_probe.data() + n, qp);
    _mm256_storeu_pd(out.quad_anti_stokes.data() + n, qa);
  }
  if (n < end) vvvr_brackets_scalar(t, batch, n, end, out);
}

bool avx2_compiled() { return true; }

}  // namespace cars::kernels

#else

namespace cars::kernels {

void vvvr_brackets_avx2(const MolecularFrameTensors& t, const RotationBatch& batch,
                        std::size_t begin, std::size_t end, BracketColumns& out) {
  vvvr_brackets_scalar(t, batch, begin, end, out);
}

bool avx2_compiled() { return false; }

}  // namespace cars::kernels

#endif
