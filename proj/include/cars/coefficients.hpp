#pragma once

// Every rational coefficient used by the closed-form rotational averages,
// the dependence relations and the natural invariants lives in this file.
// Values are transcribed term by term from the printed expressions; nothing
// here is derived or corrected. Invariant indices are 1-based as printed:
// [alpha]_1..10, [G']_1..14, [A]_5..14.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>

#include "cars/rational.hpp"

namespace cars::coeff {

struct Term {
  int index = 0;
  Rational coefficient;
};

/// Sparse linear combination of isotropic invariants.
class Combination {
 public:
  constexpr Combination(std::initializer_list<Term> terms) {
    for (const Term& t : terms) terms_[size_++] = t;
  }
  constexpr std::span<const Term> terms() const { return {terms_.data(), size_}; }

 private:
  std::array<Term, 14> terms_{};
  std::size_t size_ = 0;
};

// ---------------------------------------------------------------------------
// Closed-form orientational averages of the VVVR bracket.

// <1/2 a_xx b_xx a_xx b_xx + 1/2 a_yx b_xx a_yx b_xx> in terms of [alpha]_i
inline constexpr Combination kElectricAverage{
    {1, {1, 3780}},   {2, {8, 3780}},   {3, {16, 3780}}, {4, {2, 3780}},
    {5, {8, 3780}},   {6, {52, 3780}},  {7, {104, 3780}}, {8, {16, 3780}},
    {9, {11, 3780}},  {10, {22, 3780}}};

// c * <G'_yy b_xx a_xx b_xx + G'_xx b_xx a_xx b_xx> in terms of [G']_i
inline constexpr Combination kMagneticAverage{
    {1, {40, 7560}},  {2, {160, 7560}}, {3, {320, 7560}}, {4, {80, 7560}},
    {5, {16, 7560}},  {6, {32, 7560}},  {7, {32, 7560}},  {8, {64, 7560}},
    {9, {64, 7560}},  {10, {32, 7560}}, {11, {32, 7560}}, {12, {64, 7560}},
    {13, {8, 7560}},  {14, {16, 7560}}};

// Quadrupole average = -(k3/3) * kQuadrupoleProbe + (k4/3) * kQuadrupoleAntiStokes
inline constexpr Combination kQuadrupoleProbe{
    {5, {48, 22680}},  {6, {96, 22680}},  {7, {96, 22680}},  {8, {192, 22680}},
    {9, {192, 22680}}, {10, {96, 22680}}, {11, {144, 22680}}, {12, {288, 22680}},
    {13, {36, 22680}}, {14, {72, 22680}}};
inline constexpr Combination kQuadrupoleAntiStokes{
    {11, {48, 22680}}, {12, {96, 22680}}, {13, {12, 22680}}, {14, {24, 22680}}};

// ---------------------------------------------------------------------------
// Linear dependences among the overcomplete invariants (Young tableau 2,2,2,2).

inline constexpr Combination kAlphaRelation{
    {1, 1}, {2, -4}, {3, 4}, {4, -1}, {5, 2}, {6, 4}, {7, -4}, {8, -2}, {9, -1}, {10, 1}};

inline constexpr Combination kGPrimeRelation{
    {1, 1},  {2, -2},  {3, 2},   {4, -1},  {5, -2},  {6, 2},   {7, 2},
    {8, -2}, {9, -2},  {10, 2},  {11, 2},  {12, -2}, {13, -1}, {14, 1}};

inline constexpr Combination kAQuadRelation{
    {5, -2}, {6, 2}, {7, 2}, {8, -2}, {9, -2}, {10, 2}, {11, 2}, {12, -2}, {13, -1}, {14, 1}};

// ---------------------------------------------------------------------------
// Natural invariants as combinations of isotropic invariants.

enum ANatural : std::size_t { a0_11, a0_12, a0_21, a0_22, a2_11, a2_12, a2_21, a2_22, a4_11, kANaturalCount };

inline constexpr std::array<Combination, kANaturalCount> kANaturalDefinition{{
    {{1, {2, 15}}},
    {{4, {-1, 15}}},
    {{9, {-1, 15}}},
    {{10, {1, 5}}},
    {{1, {-10, 21}}, {2, {10, 7}}},
    {{3, {-8, 7}}, {4, {8, 21}}},
    {{6, {-8, 7}}, {9, {8, 21}}},
    {{7, {12, 7}}, {10, {-4, 7}}},
    {{1, {-11, 70}}, {2, {4, 7}}, {3, {-6, 7}}, {4, {13, 70}}, {6, {-6, 7}},
     {7, {2, 7}}, {8, 1}, {9, {13, 70}}, {10, {-9, 70}}},
}};

enum GNatural : std::size_t {
  g0_11, g0_12, g0_21, g0_22,
  g2_11, g2_12, g2_21, g2_22, g2_31, g2_32, g2_41, g2_42,
  g4_11, kGNaturalCount
};

inline constexpr std::array<Combination, kGNaturalCount> kGNaturalDefinition{{
    {{1, {2, 15}}},
    {{4, {-1, 15}}},
    {{13, {-1, 15}}},
    {{14, {1, 5}}},
    {{1, {-5, 21}}, {2, {5, 7}}},
    {{3, {-4, 7}}, {4, {4, 21}}},
    {{11, {-4, 7}}, {13, {4, 21}}},
    {{12, {6, 7}}, {14, {-2, 7}}},
    {{7, {-4, 7}}, {13, {4, 21}}},
    {{8, {6, 7}}, {14, {-2, 7}}},
    {{1, {-5, 21}}, {5, {5, 7}}},
    {{4, {4, 21}}, {10, {-4, 7}}},
    {{1, {-153, 245}}, {2, {8, 7}}, {3, {-12, 7}}, {4, {184, 245}}, {5, {8, 7}},
     {7, {-12, 7}}, {8, {4, 7}}, {9, 4}, {10, {-12, 7}}, {11, {-12, 7}},
     {12, {4, 7}}, {13, {184, 245}}, {14, {-122, 245}}},
}};

// k invariants carry one explicit factor of the frequency; the combinations
// below are per unit frequency. k0_11, k0_12, k2_11 and k2_12 are identically
// zero and have no entry.
enum KNatural : std::size_t {
  k0_21, k0_22, k2_21, k2_22, k2_31, k2_32, k2_41, k2_42, k4_11, kKNaturalCount
};

inline constexpr std::array<Combination, kKNaturalCount> kKNaturalDefinition{{
    {{13, {-1, 15}}},
    {{14, {1, 5}}},
    {{11, {-4, 7}}, {13, {4, 21}}},
    {{12, {6, 7}}, {14, {-2, 7}}},
    {{7, {-4, 7}}, {13, {4, 21}}},
    {{8, {6, 7}}, {14, {-2, 7}}},
    {{5, {5, 7}}},
    {{10, {-4, 7}}},
    {{5, {8, 7}}, {7, {-12, 7}}, {8, {4, 7}}, {9, 4}, {10, {-12, 7}},
     {11, {-12, 7}}, {12, {4, 7}}, {13, {184, 245}}, {14, {-122, 245}}},
}};

/// The g invariant sharing weight and seniority labels with each k invariant.
inline constexpr std::array<GNatural, kKNaturalCount> kKPartner{
    g0_21, g0_22, g2_21, g2_22, g2_31, g2_32, g2_41, g2_42, g4_11};

// ---------------------------------------------------------------------------
// Natural-invariant renditions of the averages and of the chiral ratio.

/// Electric average (and the denominator of the chiral ratio) in a invariants.
inline constexpr std::array<Rational, kANaturalCount> kElectricNatural{
    {{1, 120}, {-1, 30}, {-7, 60}, {7, 90}, {1, 525}, {-1, 210}, {-11, 840}, {11, 630}, {2, 315}}};

/// c * magnetic average in g invariants.
inline constexpr std::array<Rational, kGNaturalCount> kMagneticNatural{
    {{514, 5145}, {-2056, 15435}, {-341, 5145}, {682, 15435},
     {16, 525}, {-8, 105}, {-1, 105}, {4, 315}, {-1, 105}, {4, 315}, {2, 525}, {-1, 105},
     {1, 315}}};

/// 3c * quadrupole average = probe block(k at omega3) - anti-Stokes block(k at omega4)
inline constexpr std::array<Rational, kKNaturalCount> kQuadrupoleNaturalProbe{
    {{7853, 92610}, {-7853, 138915}, {5, 378}, {-10, 567}, {1, 105}, {-4, 315},
     {-2, 525}, {1, 105}, {-1, 315}}};
inline constexpr std::array<Rational, kKNaturalCount> kQuadrupoleNaturalAntiStokes{
    {{1, 54}, {-1, 81}, {1, 270}, {-2, 405}, 0, 0, 0, 0, 0}};

/// Sign applied to the anti-Stokes block. The minus sign is the one for which
/// the omega3 == omega4 limit reproduces the single-frequency (g - k/3) form.
inline constexpr int kAntiStokesBlockSign = -1;

/// Coefficient of k in the single-frequency form, where each shared label
/// enters as coef * (g - k/3).
constexpr Rational single_frequency_k_coefficient(KNatural k) {
  return -kMagneticNatural[kKPartner[k]] / Rational(3);
}

}  // namespace cars::coeff
