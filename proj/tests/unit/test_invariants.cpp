#include <algorithm>
#include <array>
#include <cmath>

#include "cars/averaging.hpp"
#include "cars/invariants.hpp"
#include "cars/rational.hpp"
#include "doctest.h"
#include "support/contraction.hpp"
#include "support/random_tensors.hpp"

using namespace cars;

namespace {

IsotropicInvariants<Rational> exact(const std::array<int, 10>& alpha, const std::array<int, 14>& gprime,
                                    const std::array<int, 10>& aquad) {
  IsotropicInvariants<Rational> iso;
  for (std::size_t i = 0; i < 10; ++i) iso.alpha[i] = alpha[i];
  for (std::size_t i = 0; i < 14; ++i) iso.gprime[i] = gprime[i];
  for (std::size_t i = 0; i < 10; ++i) iso.aquad[i] = aquad[i];
  return iso;
}

constexpr std::array<int, 10> kIdentityAlpha{81, 27, 9, 27, 9, 9, 3, 3, 27, 9};
constexpr std::array<int, 14> kIdentityGPrime{81, 27, 9, 27, 27, 9, 9, 3, 3, 9, 9, 3, 27, 9};

template <std::size_t N>
double rel_diff(const std::array<double, N>& a, const std::array<double, N>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max({den, std::abs(a[i]), std::abs(b[i])});
  }
  return den > 0 ? num / den : num;
}

}  // namespace

TEST_CASE("alpha_invariants examples") {
  const auto id = alpha_invariants(SymRank2::identity(), SymRank2::identity());
  for (std::size_t i = 0; i < 10; ++i) CHECK(id[i] == kIdentityAlpha[i]);

  const auto xx = alpha_invariants(SymRank2::diagonal(1, 0, 0), SymRank2::diagonal(1, 0, 0));
  for (double v : xx) CHECK(v == 1.0);

  CHECK(alpha_invariants(SymRank2::diagonal(1, 2, 3), SymRank2::identity())[0] == 324.0);
}

TEST_CASE("gprime_invariants examples") {
  const auto id = gprime_invariants(Rank2::identity(), SymRank2::identity(), SymRank2::identity());
  for (std::size_t i = 0; i < 14; ++i) CHECK(id[i] == kIdentityGPrime[i]);

  testing_support::TensorFactory f(21);
  const SymRank2 a34 = f.sym(), a12 = f.sym();
  for (double v : gprime_invariants(Rank2{}, a34, a12)) CHECK(v == 0.0);

  const Rank2 g = f.general();
  CHECK(gprime_invariants(g, a34, a12)[0] ==
        doctest::Approx(g.trace() * a12.trace() * a34.trace() * a12.trace()).epsilon(1e-14));
}

TEST_CASE("aquad_invariants examples") {
  testing_support::TensorFactory f(22);
  const SymRank2 a34 = f.sym(), a12 = f.sym();
  for (double v : aquad_invariants(f.totally_symmetric_rank3(), a34, a12)) CHECK(std::abs(v) < 1e-14);
  for (double v : aquad_invariants(Rank3SymLast{}, a34, a12)) CHECK(v == 0.0);

  const Vec3 u{0.4, -0.9, 1.3};
  Rank3SymLast::Storage s{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s[Rank3SymLast::index(i, j, j)] = u[i];
  const Rank3SymLast a(s);
  const auto values = aquad_invariants(a, SymRank2::identity(), SymRank2::identity());
  CHECK(values[13 - 5] == 0.0);
  for (int i = 5; i <= 14; ++i)
    CHECK(values[static_cast<std::size_t>(i - 5)] ==
          doctest::Approx(oracle::aquad_invariant(i, a, SymRank2::identity(), SymRank2::identity()))
              .epsilon(1e-14));
}

TEST_CASE("oracle: every invariant matches brute-force contraction of the printed index strings") {
  testing_support::TensorFactory f(23);
  for (int trial = 0; trial < 10; ++trial) {
    const SymRank2 a34 = f.sym(), a12 = f.sym();
    const Rank2 g = f.general();
    const Rank3SymLast a = f.rank3();
    const IsotropicInvariantSet iso = isotropic_invariants(a34, a12, g, a);
    for (int i = 1; i <= 10; ++i)
      CHECK(iso.alpha_at(i) == doctest::Approx(oracle::alpha_invariant(i, a34, a12)).epsilon(1e-13));
    for (int i = 1; i <= 14; ++i)
      CHECK(iso.gprime_at(i) == doctest::Approx(oracle::gprime_invariant(i, g, a34, a12)).epsilon(1e-13));
    for (int i = 5; i <= 14; ++i)
      CHECK(iso.aquad_at(i) == doctest::Approx(oracle::aquad_invariant(i, a, a34, a12)).epsilon(1e-13));
  }
}

TEST_CASE("dependence residuals") {
  const auto id = exact(kIdentityAlpha, kIdentityGPrime, {});
  CHECK(dependence_residual_alpha(id) == Rational(0));
  CHECK(dependence_residual_gprime(id) == Rational(0));
  CHECK(dependence_residual_aquad(IsotropicInvariants<Rational>{}) == Rational(0));
  CHECK(dependence_residual_alpha(IsotropicInvariantSet{}) == 0.0);

  testing_support::TensorFactory f(24);
  for (int trial = 0; trial < 100; ++trial) {
    const IsotropicInvariantSet iso = isotropic_invariants(f.sym(), f.sym(), f.general(), f.rank3());
    CHECK(std::abs(dependence_residual_alpha(iso)) <= 1e-12 * dependence_scale_alpha(iso));
    CHECK(std::abs(dependence_residual_gprime(iso)) <= 1e-12 * dependence_scale_gprime(iso));
    CHECK(std::abs(dependence_residual_aquad(iso)) <= 1e-12 * dependence_scale_aquad(iso));
  }
}

TEST_CASE("natural invariants: exact isotropic values") {
  const auto nat = natural_from_isotropic(exact(kIdentityAlpha, kIdentityGPrime, {}), Rational(1),
                                          Rational(1));
  using namespace coeff;
  CHECK(nat.a[a0_11] == Rational(54, 5));
  CHECK(nat.a[a0_12] == Rational(-9, 5));
  CHECK(nat.a[a0_21] == Rational(-9, 5));
  CHECK(nat.a[a0_22] == Rational(9, 5));
  for (ANatural n : {a2_11, a2_12, a2_21, a2_22, a4_11}) CHECK(nat.a[n] == Rational(0));

  CHECK(nat.g[g0_11] == Rational(54, 5));
  CHECK(nat.g[g0_12] == Rational(-9, 5));
  CHECK(nat.g[g0_21] == Rational(-9, 5));
  CHECK(nat.g[g0_22] == Rational(9, 5));
  // The printed g4 combination does not vanish on pure weight-0 input.
  CHECK(nat.g[g4_11] == Rational(45, 49));

  for (std::size_t n = 0; n < kKNaturalCount; ++n) {
    CHECK(nat.k_omega3[n] == Rational(0));
    CHECK(nat.k_omega4[n] == Rational(0));
  }
}

TEST_CASE("natural invariants: structurally zero k") {
  using V = NaturalInvariantSet::VanishingK;
  for (V v : {V::k0_11, V::k0_12, V::k2_11, V::k2_12}) CHECK(NaturalInvariantSet::k_vanishing(v) == 0.0);
  static_assert(NaturalInvariants<Rational>::k_vanishing(NaturalInvariants<Rational>::VanishingK::k2_12) ==
                Rational(0));
}

TEST_CASE("natural invariants: k scales with frequency") {
  testing_support::TensorFactory f(25);
  const IsotropicInvariantSet iso = isotropic_invariants(f.sym(), f.sym(), f.general(), f.rank3());
  const auto nat = natural_from_isotropic(iso, 0.2, 0.6);
  for (std::size_t n = 0; n < coeff::kKNaturalCount; ++n)
    CHECK(nat.k_omega4[n] == doctest::Approx(3.0 * nat.k_omega3[n]).epsilon(1e-14));
}

TEST_CASE("property: invariants are rotation invariant") {
  testing_support::TensorFactory f(26);
  for (int trial = 0; trial < 20; ++trial) {
    const PropertyTensorSet t = f.tensor_set();
    const Rotation r = f.rotation();
    const PropertyTensorSet tr = t.rotated(r);
    const IsotropicInvariantSet a = isotropic_invariants(t.alpha34, t.alpha12, t.gprime34, t.a34);
    const IsotropicInvariantSet b = isotropic_invariants(tr.alpha34, tr.alpha12, tr.gprime34, tr.a34);
    CHECK(rel_diff(a.alpha, b.alpha) < 1e-12);
    CHECK(rel_diff(a.gprime, b.gprime) < 1e-12);
    CHECK(rel_diff(a.aquad, b.aquad) < 1e-12);
    const auto na = natural_from_isotropic(a, 0.1, 0.15);
    const auto nb = natural_from_isotropic(b, 0.1, 0.15);
    CHECK(rel_diff(na.a, nb.a) < 1e-12);
    CHECK(rel_diff(na.g, nb.g) < 1e-12);
    CHECK(rel_diff(na.k_omega3, nb.k_omega3) < 1e-12);
  }
}

TEST_CASE("property: enantiomer parity") {
  testing_support::TensorFactory f(27);
  for (int trial = 0; trial < 10; ++trial) {
    const PropertyTensorSet t = f.tensor_set();
    const PropertyTensorSet m = t.enantiomer();
    const IsotropicInvariantSet a = isotropic_invariants(t.alpha34, t.alpha12, t.gprime34, t.a34);
    const IsotropicInvariantSet b = isotropic_invariants(m.alpha34, m.alpha12, m.gprime34, m.a34);
    CHECK(a.alpha == b.alpha);
    for (std::size_t i = 0; i < 14; ++i) CHECK(b.gprime[i] == -a.gprime[i]);
    for (std::size_t i = 0; i < 10; ++i) CHECK(b.aquad[i] == -a.aquad[i]);
  }
}

TEST_CASE("property: weight-0 purity of the a invariants") {
  for (double s34 : {1.0, 2.5, -0.7})
    for (double s12 : {1.0, 0.3}) {
      const IsotropicInvariantSet iso =
          isotropic_invariants(SymRank2::identity().scaled(s34), SymRank2::identity().scaled(s12),
                               Rank2{}, Rank3SymLast{});
      const auto nat = natural_from_isotropic(iso, 1.0, 1.0);
      using namespace coeff;
      for (ANatural n : {a2_11, a2_12, a2_21, a2_22, a4_11}) CHECK(std::abs(nat.a[n]) < 1e-13 * std::abs(nat.a[a0_11]));
    }
}
