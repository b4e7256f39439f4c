#pragma once

// Isotropic invariants of the four-factor tensor products entering the VVVR
// bracket, their overcompleteness relations, and the natural invariants.
//
// Factor order is fixed everywhere: (probe/anti-Stokes tensor, pump/Stokes
// alpha, probe/anti-Stokes alpha, pump/Stokes alpha). In code the
// probe/anti-Stokes polarizability is `alpha34` and the pump/Stokes one is
// `alpha12`.

#include <array>
#include <cstddef>

#include "cars/coefficients.hpp"
#include "cars/rational.hpp"
#include "cars/tensor.hpp"

namespace cars {

template <typename T>
struct IsotropicInvariants {
  std::array<T, 10> alpha{};   // [alpha]_1..10
  std::array<T, 14> gprime{};  // [G']_1..14
  std::array<T, 10> aquad{};   // [A]_5..14

  T alpha_at(int i) const { return alpha[static_cast<std::size_t>(i - 1)]; }
  T gprime_at(int i) const { return gprime[static_cast<std::size_t>(i - 1)]; }
  T aquad_at(int i) const { return aquad[static_cast<std::size_t>(i - 5)]; }
};

using IsotropicInvariantSet = IsotropicInvariants<double>;

template <typename T>
struct NaturalInvariants {
  std::array<T, coeff::kANaturalCount> a{};
  std::array<T, coeff::kGNaturalCount> g{};
  std::array<T, coeff::kKNaturalCount> k_omega3{};  // k evaluated at the probe frequency
  std::array<T, coeff::kKNaturalCount> k_omega4{};  // k evaluated at the anti-Stokes frequency

  enum class VanishingK { k0_11, k0_12, k2_11, k2_12 };
  /// These k invariants would need [A]_1..4, which do not exist.
  static constexpr T k_vanishing(VanishingK) { return T{}; }
};

using NaturalInvariantSet = NaturalInvariants<double>;

std::array<double, 10> alpha_invariants(const SymRank2& alpha34, const SymRank2& alpha12);
std::array<double, 14> gprime_invariants(const Rank2& gprime, const SymRank2& alpha34,
                                         const SymRank2& alpha12);
/// Built from B = epsilon_contract(A) with the [G']_5..14 patterns.
std::array<double, 10> aquad_invariants(const Rank3SymLast& a, const SymRank2& alpha34,
                                        const SymRank2& alpha12);

IsotropicInvariantSet isotropic_invariants(const SymRank2& alpha34, const SymRank2& alpha12,
                                           const Rank2& gprime, const Rank3SymLast& a);

/// Sum of coefficient * invariant over a combination; `at(i)` returns invariant i.
template <typename T, typename Accessor>
T evaluate(const coeff::Combination& combination, Accessor&& at) {
  T acc{};
  for (const coeff::Term& term : combination.terms())
    acc += coefficient_as<T>(term.coefficient) * at(term.index);
  return acc;
}

template <typename T>
T dependence_residual_alpha(const IsotropicInvariants<T>& iso) {
  return evaluate<T>(coeff::kAlphaRelation, [&](int i) { return iso.alpha_at(i); });
}

template <typename T>
T dependence_residual_gprime(const IsotropicInvariants<T>& iso) {
  return evaluate<T>(coeff::kGPrimeRelation, [&](int i) { return iso.gprime_at(i); });
}

template <typename T>
T dependence_residual_aquad(const IsotropicInvariants<T>& iso) {
  return evaluate<T>(coeff::kAQuadRelation, [&](int i) { return iso.aquad_at(i); });
}

/// Scale for judging a residual: the largest |coefficient * invariant| term.
double dependence_scale_alpha(const IsotropicInvariantSet& iso);
double dependence_scale_gprime(const IsotropicInvariantSet& iso);
double dependence_scale_aquad(const IsotropicInvariantSet& iso);

template <typename T>
NaturalInvariants<T> natural_from_isotropic(const IsotropicInvariants<T>& iso, T omega3, T omega4) {
  NaturalInvariants<T> nat;
  for (std::size_t n = 0; n < coeff::kANaturalCount; ++n)
    nat.a[n] = evaluate<T>(coeff::kANaturalDefinition[n], [&](int i) { return iso.alpha_at(i); });
  for (std::size_t n = 0; n < coeff::kGNaturalCount; ++n)
    nat.g[n] = evaluate<T>(coeff::kGNaturalDefinition[n], [&](int i) { return iso.gprime_at(i); });
  for (std::size_t n = 0; n < coeff::kKNaturalCount; ++n) {
    const T per_omega =
        evaluate<T>(coeff::kKNaturalDefinition[n], [&](int i) { return iso.aquad_at(i); });
    nat.k_omega3[n] = omega3 * per_omega;
    nat.k_omega4[n] = omega4 * per_omega;
  }
  return nat;
}

}  // namespace cars
