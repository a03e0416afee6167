#include <doctest.h>

#include <cmath>
#include <random>

#include "totreal/quadrature.hpp"

using namespace totreal;

TEST_SUITE("quadrature") {

TEST_CASE("circle integral reproduces 1/(6 pi) at p = 3") {
  const IntegralResult r = circle_integral(TestFunction(3.0L));
  CHECK(r.converged);
  CHECK(std::fabs(r.value - 1 / (6 * math::pi<long double>())) < 1e-11L);
}

TEST_CASE("circle integral at p = 2 is exactly 1/8") {
  const IntegralResult r = circle_integral(TestFunction(2.0L));
  CHECK(r.converged);
  CHECK(std::fabs(r.value - 0.125L) < 1e-12L);
}

TEST_CASE("circle integral matches the Gamma closed form across exponents") {
  for (int k = 0; k < 20; ++k) {
    const long double p = 1.1L + k * (6.0L - 1.1L) / 19;
    const IntegralResult r = circle_integral(TestFunction(p));
    CHECK(r.converged);
    CHECK(std::fabs(r.value - circle_integral_gamma_form(p)) < 1e-9L);
  }
}

TEST_CASE("haar measure is a probability measure (p = 0 integrand)") {
  // the restriction formula degenerates to the constant 1; run the raw engine
  QuadratureConfig cfg;
  const long double half_pi = math::pi<long double>() / 2;
  const IntegralResult raw =
      quad::adaptive_1d<long double>([](long double) { return 1.0L; }, 0.0L, half_pi, cfg);
  CHECK(raw.converged);
  CHECK(std::fabs(raw.value * 2 / math::pi<long double>() - 1) < 1e-15L);
}

TEST_CASE("converged results satisfy the tolerance contract") {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-7L;
  cfg.rel_tol = 1e-7L;
  for (const long double p : {1.3L, 2.0L, 3.0L}) {
    const IntegralResult r = circle_integral(TestFunction(p), cfg);
    REQUIRE(r.converged);
    CHECK(r.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(r.value)));
  }
}

TEST_CASE("dirichlet energy reproduces 3/140 at p = 3") {
  const IntegralResult r = dirichlet_energy(TestFunction(3.0L));
  CHECK(r.converged);
  CHECK(std::fabs(r.value - 3.0L / 140) < 1e-9L);
}

TEST_CASE("zero integrand has zero energy") {
  QuadratureConfig cfg;
  const IntegralResult r = quad::adaptive_2d<long double>(
      [](long double, long double) { return 0.0L; }, 0.0L, 1.0L, 0.0L, 1.0L, cfg);
  CHECK(r.converged);
  CHECK(r.value == 0.0L);
}

TEST_CASE("energy at p = 2 agrees with a plain Monte Carlo estimate") {
  // 10^7 uniform samples of |grad f_2|^2 over the closed unit disk; the
  // average is E(2) itself because the disk doubling cancels the 1/(2 pi)
  // normalization against the disk area.
  std::mt19937_64 rng(123456789);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int n = 10000000;
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < n; ++i) {
    const double r = std::sqrt(U(rng));
    const double t = 2 * 3.14159265358979323846 * U(rng);
    const auto [gx, gy] =
        detail::grad_fp<double>(2.0, Cplx<double>(r * std::cos(t), r * std::sin(t)));
    const double g = gx * gx + gy * gy;
    sum += g;
    sum_sq += g * g;
  }
  const double mean = sum / n;
  const double stderr_mc = std::sqrt((sum_sq / n - mean * mean) / n);
  const IntegralResult r = dirichlet_energy(TestFunction(2.0L));
  CHECK(std::fabs(static_cast<double>(r.value) - mean) <= 3 * stderr_mc);
}

TEST_CASE("pairing diagonal equals the energy") {
  const TestFunction f3(3.0L);
  const IntegralResult e = dirichlet_energy(f3);
  const IntegralResult p = dirichlet_pairing(f3, f3);
  CHECK(std::fabs(e.value - p.value) < 1e-10L);
}

TEST_CASE("pairing is symmetric and satisfies Cauchy-Schwarz") {
  const TestFunction f2(2.0L), f3(3.0L);
  const long double p23 = dirichlet_pairing(f2, f3).value;
  const long double p32 = dirichlet_pairing(f3, f2).value;
  CHECK(std::fabs(p23 - p32) < 1e-10L);
  const long double e2 = dirichlet_energy(f2).value;
  const long double e3 = dirichlet_energy(f3).value;
  CHECK(p23 <= std::sqrt(e2 * e3) + 1e-12L);
  CHECK(p23 > 0.0L);
}

TEST_CASE("pairing is linear in a scaled integrand") {
  QuadratureConfig cfg;
  const auto base = [](long double r, long double t) {
    const auto [gx, gy] = detail::grad_fp<long double>(2.0L, Cplx<long double>(r * std::cos(t), r * std::sin(t)));
    const auto [hx, hy] = detail::grad_fp<long double>(3.0L, Cplx<long double>(r * std::cos(t), r * std::sin(t)));
    return (gx * hx + gy * hy) * r;
  };
  const IntegralResult unscaled = quad::adaptive_2d<long double>(base, 0.0L, 1.0L, 0.0L, 1.0L, cfg);
  const IntegralResult scaled = quad::adaptive_2d<long double>(
      [&](long double r, long double t) { return 5.0L * base(r, t); }, 0.0L, 1.0L, 0.0L, 1.0L,
      cfg);
  CHECK(std::fabs(scaled.value - 5 * unscaled.value) < 1e-10L);
}

TEST_CASE("error estimate is non-increasing as the budget doubles") {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-30L;  // force the budget to bind
  cfg.rel_tol = 1e-30L;
  long double prev = -1;
  for (int budget : {8, 16, 32, 64}) {
    cfg.max_subdivisions = budget;
    const IntegralResult r = dirichlet_energy(TestFunction(3.0L), cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.error_estimate > 0.0L);
    if (prev >= 0) CHECK(r.error_estimate <= prev);
    prev = r.error_estimate;
  }
}

TEST_CASE("non-convergence is reported, not thrown") {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-30L;
  cfg.rel_tol = 1e-30L;
  cfg.max_subdivisions = 4;
  const IntegralResult r = circle_integral(TestFunction(1.2L), cfg);
  CHECK_FALSE(r.converged);
  CHECK(std::fabs(r.value - circle_integral_gamma_form(1.2L)) < 1e-6L);  // best estimate
}

TEST_CASE("config validation") {
  QuadratureConfig cfg;
  cfg.abs_tol = 0;
  CHECK_THROWS_AS(circle_integral(TestFunction(3.0L), cfg), std::invalid_argument);
  cfg = {};
  cfg.max_subdivisions = 3;
  CHECK_THROWS_AS(dirichlet_energy(TestFunction(3.0L), cfg), std::invalid_argument);
}

TEST_CASE("identical configurations give identical results") {
  const IntegralResult a = dirichlet_energy(TestFunction(3.3L));
  const IntegralResult b = dirichlet_energy(TestFunction(3.3L));
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.subdivisions_used == b.subdivisions_used);
}

TEST_CASE("working precision rungs agree") {
  QuadratureConfig cfg;
  cfg.working_precision = 53;
  const long double coarse = circle_integral(TestFunction(3.0L), cfg).value;
  cfg.working_precision = 113;
  const long double fine = circle_integral(TestFunction(3.0L), cfg).value;
  CHECK(std::fabs(coarse - fine) < 1e-9L);
}

}  // TEST_SUITE
