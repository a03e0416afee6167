#include <doctest.h>

#include <cmath>
#include <random>

#include "totreal/testfunction.hpp"

using namespace totreal;

namespace {

ProjPoint sphere_point(std::mt19937& rng) {
  if (rng() % 61 == 0) return ProjPoint::infinity();
  std::cauchy_distribution<double> C(0.0, 1.0);
  return ProjPoint::at(static_cast<long double>(C(rng)), static_cast<long double>(C(rng)));
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("distance from any real point to i is 1/sqrt(2)") {
  const long double expected = 1 / std::sqrt(2.0L);
  const ProjPoint pole = ProjPoint::at(0.0L, 1.0L);
  for (const long double x : {0.0L, 0.7L, -3.0L, 12.5L, 1e6L})
    CHECK(std::fabs(chordal_distance(ProjPoint::at(x), pole) - expected) < 1e-15L);
}

TEST_CASE("distances involving infinity") {
  CHECK(chordal_distance(ProjPoint::at(0.0L), ProjPoint::infinity()) == 1.0L);
  CHECK(chordal_distance(ProjPoint::infinity(), ProjPoint::infinity()) == 0.0L);
  CHECK(std::fabs(chordal_distance(ProjPoint::at(1.0L), ProjPoint::infinity()) -
                  1 / std::sqrt(2.0L)) < 1e-18L);
}

TEST_CASE("hand-evaluated pair (1+i, 1-i)") {
  const long double d =
      chordal_distance(ProjPoint::at(1.0L, 1.0L), ProjPoint::at(1.0L, -1.0L));
  CHECK(std::fabs(d - 2.0L / 3) < 1e-18L);
}

TEST_CASE("metric axioms on random triples") {
  std::mt19937 rng(31);
  for (int i = 0; i < 10000; ++i) {
    const ProjPoint a = sphere_point(rng), b = sphere_point(rng), c = sphere_point(rng);
    const long double ab = chordal_distance(a, b);
    CHECK(ab == chordal_distance(b, a));
    CHECK(ab >= 0.0L);
    CHECK(ab <= 1.0L);
    CHECK(chordal_distance(a, a) == 0.0L);
    const bool same_point = (a.infinite && b.infinite) || (!a.infinite && !b.infinite && a.value == b.value);
    if (!same_point) CHECK(ab > 0.0L);
    CHECK(ab <= chordal_distance(a, c) + chordal_distance(c, b) + 1e-12L);
  }
}

TEST_CASE("inversion is an isometry") {
  std::mt19937 rng(32);
  std::cauchy_distribution<double> C(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const ProjPoint a = ProjPoint::at(C(rng) + 0.2, C(rng) + 0.1);
    const ProjPoint b = ProjPoint::at(C(rng) - 0.3, C(rng) - 0.2);
    if (a.value == Cplx<long double>{} || b.value == Cplx<long double>{}) continue;
    CHECK(std::fabs(chordal_distance(proj_inverse(a), proj_inverse(b)) -
                    chordal_distance(a, b)) < 1e-12L);
  }
}

TEST_CASE("test function reference values") {
  const TestFunction f3(3.0L);
  CHECK(eval_test_function(f3, ProjPoint::at(0.7L)) == 0.125L);
  CHECK(eval_test_function(f3, ProjPoint::at(0.0L, 1.0L)) == 0.0L);
  CHECK(eval_test_function(f3, ProjPoint::infinity()) == 0.125L);
  const long double c = std::sqrt(0.5L);
  const long double expected = c * c * c / 8;  // |cos(pi/4)|^3 / 2^3
  CHECK(std::fabs(eval_test_function(f3, ProjPoint::at(c, c)) - expected) < 1e-15L);
  CHECK(std::fabs(expected - 0.0441942L) < 1e-7L);
}

TEST_CASE("exponent must exceed 1") {
  CHECK_THROWS_AS(TestFunction(1.0L), std::invalid_argument);
  CHECK_THROWS_AS(TestFunction(0.5L), std::invalid_argument);
  CHECK_NOTHROW(TestFunction(1.0000001L));
}

TEST_CASE("symmetries and range of f_p") {
  std::mt19937 rng(33);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  for (const long double p : {2.0L, 3.0L, 3.3L, 4.0L}) {
    const TestFunction tf(p);
    const long double fmax = std::pow(2.0L, -p);
    for (int i = 0; i < 2500; ++i) {
      const Cplx<long double> z(U(rng), U(rng));
      if (z == Cplx<long double>{}) continue;
      const long double f = eval_test_function(tf, ProjPoint::at(z));
      CHECK(std::fabs(f - eval_test_function(tf, ProjPoint::at(z.conj()))) < 1e-12L);
      CHECK(std::fabs(f - eval_test_function(tf, ProjPoint::at(-z))) < 1e-12L);
      CHECK(std::fabs(f - eval_test_function(tf, ProjPoint::at(inverse(z)))) < 1e-12L);
      CHECK(f >= 0.0L);
      CHECK(f <= fmax);
    }
    // the sup over the real line is attained exactly
    for (int i = 0; i < 200; ++i)
      CHECK(eval_test_function(tf, ProjPoint::at((long double)U(rng))) == fmax);
  }
}

TEST_CASE("gradient vanishes at the origin and at the poles") {
  const TestFunction f3(3.0L);
  auto [gx0, gy0] = gradient(f3, Cplx<long double>(0.0L, 0.0L));
  CHECK(gx0 == 0.0L);
  CHECK(gy0 == 0.0L);
  auto [gxi, gyi] = gradient(f3, Cplx<long double>(0.0L, 1.0L));
  CHECK(gxi == 0.0L);
  CHECK(gyi == 0.0L);
}

TEST_CASE("gradient matches central finite differences at a spot point") {
  const TestFunction f3(3.0L);
  const Cplx<long double> z(0.5L, 0.25L);
  const long double h = 1e-6L;
  const auto eval = [&](long double x, long double y) {
    return eval_test_function(f3, ProjPoint::at(x, y));
  };
  const long double fdx = (eval(z.re + h, z.im) - eval(z.re - h, z.im)) / (2 * h);
  const long double fdy = (eval(z.re, z.im + h) - eval(z.re, z.im - h)) / (2 * h);
  const auto [gx, gy] = gradient(f3, z);
  CHECK(std::fabs(gx - fdx) / std::fabs(fdx) < 1e-8L);
  CHECK(std::fabs(gy - fdy) / std::fabs(fdy) < 1e-8L);
}

TEST_CASE("circle restriction closed form") {
  const TestFunction f3(3.0L);
  CHECK(circle_restriction(f3, 0.0L) == 0.125L);
  CHECK(circle_restriction(f3, math::pi<long double>() / 2) < 1e-50L);
  const TestFunction f2(2.0L);
  CHECK(std::fabs(circle_restriction(f2, math::pi<long double>() / 3) - 1.0L / 16) < 1e-15L);
}

TEST_CASE("circle restriction agrees with direct evaluation on the circle") {
  std::mt19937 rng(34);
  std::uniform_real_distribution<double> U(0.0, 2 * 3.14159265358979);
  const TestFunction tf(3.0L);
  for (int i = 0; i < 1000; ++i) {
    const long double t = U(rng);
    const ProjPoint z = ProjPoint::at(std::cos(t), std::sin(t));
    CHECK(std::fabs(circle_restriction(tf, t) - eval_test_function(tf, z)) < 1e-14L);
  }
}

TEST_CASE("lipschitz bracket orders and tightens") {
  for (const long double p : {2.0L, 3.0L, 4.0L}) {
    const LipschitzBracket b = lipschitz_estimate(TestFunction(p), 64);
    CHECK(b.lower <= b.upper);
    CHECK(b.lower > 0.0L);
  }
  const LipschitzBracket b = lipschitz_estimate(TestFunction(3.0L), 256);
  CHECK(b.upper / b.lower <= math::pi<long double>() / 2 + 0.1L);
  // the pair (0, i) alone gives |1/8 - 0| / (1/sqrt 2)
  CHECK(b.lower >= 0.1767767L);
  // the bracket has stabilized at this density
  const LipschitzBracket half = lipschitz_estimate(TestFunction(3.0L), 128);
  CHECK(std::fabs(half.upper - b.upper) < 1e-3L);
  CHECK(std::fabs(half.lower - b.lower) < 1e-3L);
  CHECK_THROWS_AS(lipschitz_estimate(TestFunction(3.0L), 4), std::invalid_argument);
}

}  // TEST_SUITE
