#include "cars/invariants.hpp"

#include <algorithm>
#include <cmath>

namespace cars {
namespace {

// The fourteen contraction patterns with a general first factor `g`, second
// and fourth factor `b` (pump/Stokes alpha) and third factor `a`
// (probe/anti-Stokes alpha). Index placement follows the printed list.
std::array<double, 14> four_factor_patterns(const Mat3& g, const Mat3& b, const Mat3& a) {
  auto G = [&](std::size_t i, std::size_t j) { return g[3 * i + j]; };
  auto B = [&](std::size_t i, std::size_t j) { return b[3 * i + j]; };
  auto A = [&](std::size_t i, std::size_t j) { return a[3 * i + j]; };

  const double tg = mat3::trace(g);
  const double tb = mat3::trace(b);
  const double ta = mat3::trace(a);
  const double ab = mat3::frobenius(a, b);
  const double bb = mat3::frobenius(b, b);
  const double gb = mat3::frobenius(g, b);
  const double ga = mat3::frobenius(g, a);

  double b_jk_a_jl_b_kl = 0.0;
  double g_ij_b_ik_a_jk = 0.0;
  double g_ij_b_ik_a_jl_b_kl = 0.0;
  double g_ij_b_ik_a_kl_b_jl = 0.0;
  double g_ij_b_ik_b_jk = 0.0;
  double g_ij_b_jk_a_ik = 0.0;
  double g_ij_b_jk_a_il_b_kl = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        g_ij_b_ik_a_jk += G(i, j) * B(i, k) * A(j, k);
        g_ij_b_ik_b_jk += G(i, j) * B(i, k) * B(j, k);
        g_ij_b_jk_a_ik += G(i, j) * B(j, k) * A(i, k);
        b_jk_a_jl_b_kl += B(j, k) * A(j, i) * B(k, i);  // i plays the role of l
        for (std::size_t l = 0; l < 3; ++l) {
          g_ij_b_ik_a_jl_b_kl += G(i, j) * B(i, k) * A(j, l) * B(k, l);
          g_ij_b_ik_a_kl_b_jl += G(i, j) * B(i, k) * A(k, l) * B(j, l);
          g_ij_b_jk_a_il_b_kl += G(i, j) * B(j, k) * A(i, l) * B(k, l);
        }
      }

  return {
      tg * tb * ta * tb,            // 1  G_ii b_jj a_kk b_ll
      tg * tb * ab,                 // 2  G_ii b_jj a_kl b_kl
      tg * b_jk_a_jl_b_kl,          // 3  G_ii b_jk a_jl b_kl
      tg * ta * bb,                 // 4  G_ii b_jk a_ll b_jk
      gb * ta * tb,                 // 5  G_ij b_ij a_kk b_ll
      gb * ab,                      // 6  G_ij b_ij a_kl b_kl
      g_ij_b_ik_a_jk * tb,          // 7  G_ij b_ik a_jk b_ll
      g_ij_b_ik_a_jl_b_kl,          // 8
      g_ij_b_ik_a_kl_b_jl,          // 9
      g_ij_b_ik_b_jk * ta,          // 10 G_ij b_ik a_ll b_jk
      g_ij_b_jk_a_ik * tb,          // 11 G_ij b_jk a_ik b_ll
      g_ij_b_jk_a_il_b_kl,          // 12
      ga * tb * tb,                 // 13 G_ij b_kk a_ij b_ll
      ga * bb,                      // 14 G_ij b_kl a_ij b_kl
  };
}

template <std::size_t N>
double max_weighted_term(const coeff::Combination& c, const std::array<double, N>& values, int offset) {
  double m = 0.0;
  for (const coeff::Term& t : c.terms())
    m = std::max(m, std::abs(t.coefficient.to_double() * values[static_cast<std::size_t>(t.index - offset)]));
  return m;
}

}  // namespace

std::array<double, 10> alpha_invariants(const SymRank2& alpha34, const SymRank2& alpha12) {
  // With the first factor equal to alpha34 the [G'] patterns 1,2,3,4,6,7,8,9,13,14
  // are exactly [alpha]_1..10.
  const auto p = four_factor_patterns(alpha34.data(), alpha12.data(), alpha34.data());
  return {p[0], p[1], p[2], p[3], p[5], p[6], p[7], p[8], p[12], p[13]};
}

std::array<double, 14> gprime_invariants(const Rank2& gprime, const SymRank2& alpha34,
                                         const SymRank2& alpha12) {
  return four_factor_patterns(gprime.data(), alpha12.data(), alpha34.data());
}

std::array<double, 10> aquad_invariants(const Rank3SymLast& a, const SymRank2& alpha34,
                                        const SymRank2& alpha12) {
  const Rank2 b = epsilon_contract(a);
  const auto p = four_factor_patterns(b.data(), alpha12.data(), alpha34.data());
  std::array<double, 10> out{};
  std::copy(p.begin() + 4, p.end(), out.begin());
  return out;
}

IsotropicInvariantSet isotropic_invariants(const SymRank2& alpha34, const SymRank2& alpha12,
                                           const Rank2& gprime, const Rank3SymLast& a) {
  return {alpha_invariants(alpha34, alpha12), gprime_invariants(gprime, alpha34, alpha12),
          aquad_invariants(a, alpha34, alpha12)};
}

double dependence_scale_alpha(const IsotropicInvariantSet& iso) {
  return max_weighted_term(coeff::kAlphaRelation, iso.alpha, 1);
}

double dependence_scale_gprime(const IsotropicInvariantSet& iso) {
  return max_weighted_term(coeff::kGPrimeRelation, iso.gprime, 1);
}

double dependence_scale_aquad(const IsotropicInvariantSet& iso) {
  return max_weighted_term(coeff::kAQuadRelation, iso.aquad, 5);
}

}  // namespace cars
