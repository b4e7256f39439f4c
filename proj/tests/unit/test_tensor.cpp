#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cars/diagnostics.hpp"
#include "cars/errors.hpp"
#include "cars/tensor.hpp"
#include "doctest.h"
#include "support/random_tensors.hpp"

using namespace cars;

namespace {

double max_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Captures warnings for the lifetime of the object.
struct WarningCapture {
  std::vector<std::string> messages;
  WarningSink previous;
  WarningCapture() {
    previous = set_warning_sink([this](std::string_view m) { messages.emplace_back(m); });
  }
  ~WarningCapture() { set_warning_sink(previous); }
};

}  // namespace

TEST_CASE("rotate_rank2 examples") {
  const Rank2 t = Rank2::diagonal(1, 2, 3);
  CHECK(rotate_rank2(Rotation::identity(), t) == t);

  const Rank2 half_turn = rotate_rank2(Rotation::about_axis(kZ, std::numbers::pi), t);
  CHECK(max_diff(half_turn.data(), t.data()) < 1e-15);

  const SymRank2 xx = SymRank2::diagonal(1, 0, 0);
  const SymRank2 yy = rotate_rank2(Rotation::about_axis(kZ, std::numbers::pi / 2), xx);
  CHECK(max_diff(yy.data(), SymRank2::diagonal(0, 1, 0).data()) < 1e-15);
}

TEST_CASE("rotate_rank3 examples") {
  testing_support::TensorFactory f(7);
  const Rank3SymLast a = f.rank3();
  CHECK(rotate_rank3(Rotation::identity(), a) == a);

  const Rank3SymLast sym = f.totally_symmetric_rank3();
  for (int trial = 0; trial < 10; ++trial)
    CHECK(rotate_rank3(f.rotation(), sym).is_totally_symmetric(1e-13));

  Rank3SymLast::Storage s{};
  s[Rank3SymLast::index(kX, kX, kX)] = 1.0;
  const Rank3SymLast r = rotate_rank3(Rotation::about_axis(kZ, std::numbers::pi / 2), Rank3SymLast(s));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t n = 0; n < 3; ++n) {
        const double expected = (i == kY && j == kY && n == kY) ? 1.0 : 0.0;
        CHECK(std::abs(r(i, j, n) - expected) < 1e-15);
      }
}

TEST_CASE("epsilon_contract examples") {
  testing_support::TensorFactory f(11);
  const Rank2 b = epsilon_contract(f.totally_symmetric_rank3());
  CHECK(b.max_abs() < 1e-15);

  CHECK(epsilon_contract(Rank3SymLast{}).max_abs() == 0.0);

  const Vec3 u{0.3, -1.2, 0.7};
  Rank3SymLast::Storage s{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s[Rank3SymLast::index(i, j, j)] = u[i];
  const Rank2 bu = epsilon_contract(Rank3SymLast(s));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double expected = 0.0;
      for (std::size_t m = 0; m < 3; ++m) expected += levi_civita(m, j, i) * u[m];
      CHECK(bu(i, j) == doctest::Approx(expected).epsilon(1e-15));
    }
}

TEST_CASE("Haar sampler is deterministic and has the right low moments") {
  HaarSampler s1(2024), s2(2024);
  for (int i = 0; i < 50; ++i) CHECK(s1.next().data() == s2.next().data());

  HaarSampler sampler(99);
  const int n = 100000;
  double m1 = 0, m1sq = 0, m2 = 0, m2sq = 0;
  for (int i = 0; i < n; ++i) {
    const double r = sampler.next()(0, 0);
    m1 += r;
    m1sq += r * r;
    m2 += r * r;
    m2sq += r * r * r * r;
  }
  m1 /= n;
  m2 /= n;
  const double se1 = std::sqrt((m1sq / n - m1 * m1) / n);
  const double se2 = std::sqrt((m2sq / n - m2 * m2) / n);
  CHECK(std::abs(m1) < 5 * se1);
  CHECK(std::abs(m2 - 1.0 / 3.0) < 5 * se2);
}

TEST_CASE("Rotation validation") {
  CHECK_THROWS_AS(Rotation(Mat3{1, 0, 0, 0, 1, 0, 0, 0, 1.001}), ValidationError);
  CHECK_THROWS_AS(Rotation(Mat3{1, 0, 0, 0, 1, 0, 0, 0, -1}), ValidationError);  // reflection
  const Rotation q = Rotation::from_quaternion(0.2, -0.5, 0.4, 0.7);
  const Mat3 rrt = mat3::multiply(q.data(), mat3::transpose(q.data()));
  CHECK(max_diff(rrt, Mat3{1, 0, 0, 0, 1, 0, 0, 0, 1}) < 1e-14);
}

TEST_CASE("symmetrize, warn or reject") {
  WarningCapture capture;
  CHECK_NOTHROW(SymRank2(Mat3{1, 1e-14, 0, 0, 1, 0, 0, 0, 1}));
  CHECK(capture.messages.empty());

  const SymRank2 s(Mat3{1, 1e-8, 0, 0, 1, 0, 0, 0, 1});
  CHECK(capture.messages.size() == 1);
  CHECK(s(0, 1) == s(1, 0));

  CHECK_THROWS_AS(SymRank2(Mat3{1, 1e-3, 0, 0, 1, 0, 0, 0, 1}), SymmetryError);

  Rank3SymLast::Storage a{};
  a[Rank3SymLast::index(0, 1, 2)] = 1.0;
  a[Rank3SymLast::index(0, 2, 1)] = 0.5;
  CHECK_THROWS_AS(Rank3SymLast{a}, SymmetryError);

  CHECK_THROWS_AS(Rank2(Mat3{NAN, 0, 0, 0, 0, 0, 0, 0, 0}), ValidationError);
}

TEST_CASE("property: rotation composition, all ranks") {
  testing_support::TensorFactory f(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Rotation r1 = f.rotation(), r2 = f.rotation();
    const Rank2 g = f.general();
    const SymRank2 s = f.sym();
    const Rank3SymLast a = f.rank3();
    CHECK(max_diff(rotate_rank2(r2, rotate_rank2(r1, g)).data(), rotate_rank2(r2 * r1, g).data()) < 1e-12);
    CHECK(max_diff(rotate_rank2(r2, rotate_rank2(r1, s)).data(), rotate_rank2(r2 * r1, s).data()) < 1e-12);
    CHECK(max_diff(rotate_rank3(r2, rotate_rank3(r1, a)).data(), rotate_rank3(r2 * r1, a).data()) < 1e-12);
  }
}

TEST_CASE("property: full contractions are rotation invariant") {
  testing_support::TensorFactory f(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Rotation r = f.rotation();
    const SymRank2 s = f.sym();
    const Rank3SymLast a = f.rank3();
    const SymRank2 sr = rotate_rank2(r, s);
    CHECK(sr.trace() == doctest::Approx(s.trace()).epsilon(1e-12));
    CHECK(mat3::frobenius(sr.data(), sr.data()) ==
          doctest::Approx(mat3::frobenius(s.data(), s.data())).epsilon(1e-12));
    CHECK(epsilon_contract(rotate_rank3(r, a)).trace() ==
          doctest::Approx(epsilon_contract(a).trace()).epsilon(1e-12));
  }
}

TEST_CASE("property: epsilon_contract is a rank-2 tensor under rotation") {
  testing_support::TensorFactory f(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Rotation r = f.rotation();
    const Rank3SymLast a = f.rank3();
    CHECK(max_diff(epsilon_contract(rotate_rank3(r, a)).data(),
                   rotate_rank2(r, epsilon_contract(a)).data()) < 1e-12);
  }
}
