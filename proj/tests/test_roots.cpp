#include <doctest.h>

#include <cmath>
#include <random>

#include "totreal/roots.hpp"

using namespace totreal;

namespace {

// long double Horner evaluation used to check residuals independently
Cplx<long double> eval_poly(const IntPolynomial& p, Cplx<long double> z) {
  Cplx<long double> acc(math::from_mpz<long double>(p.coeffs.back()));
  for (std::size_t k = p.coeffs.size() - 1; k-- > 0;)
    acc = acc * z + Cplx<long double>(math::from_mpz<long double>(p.coeffs[k]));
  return acc;
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("quadratic roots match the closed form") {
  const RootSet rs = roots(parse_polynomial("x^2 - x - 1"));
  REQUIRE(rs.roots.size() == 2);
  const long double golden = (1 + std::sqrt(5.0L)) / 2;
  CHECK(std::fabs(rs.roots[0].re - (1 - std::sqrt(5.0L)) / 2) < 1e-17L);
  CHECK(std::fabs(rs.roots[1].re - golden) < 1e-17L);
  CHECK(std::fabs(rs.roots[0].im) < 1e-30L);
  CHECK(std::fabs(rs.roots[1].im) < 1e-30L);
}

TEST_CASE("x^2 + 1 has roots at the poles") {
  const RootSet rs = roots(parse_polynomial("x^2 + 1"));
  REQUIRE(rs.roots.size() == 2);
  CHECK(std::fabs(rs.roots[0].re) < 1e-30L);
  CHECK(std::fabs(rs.roots[0].im + 1) < 1e-18L);
  CHECK(std::fabs(rs.roots[1].im - 1) < 1e-18L);
}

TEST_CASE("x^4 + 1 gives the four primitive 8th roots of unity") {
  const RootSet rs = roots(parse_polynomial("x^4 + 1"));
  REQUIRE(rs.roots.size() == 4);
  const long double c = std::sqrt(0.5L);
  for (const auto& z : rs.roots) {
    CHECK(std::fabs(std::fabs(z.re) - c) < 1e-15L);
    CHECK(std::fabs(std::fabs(z.im) - c) < 1e-15L);
    // z^4 = -1 directly
    const Cplx<long double> z2 = z * z;
    const Cplx<long double> z4 = z2 * z2;
    CHECK(std::fabs(z4.re + 1) < 1e-15L);
    CHECK(std::fabs(z4.im) < 1e-15L);
  }
  // deterministic ordering: ascending real part, then imaginary part
  for (std::size_t i = 1; i < rs.roots.size(); ++i) {
    const bool ordered = rs.roots[i - 1].re < rs.roots[i].re ||
                         (rs.roots[i - 1].re == rs.roots[i].re &&
                          rs.roots[i - 1].im <= rs.roots[i].im);
    CHECK(ordered);
  }
}

TEST_CASE("identical calls produce identical output") {
  const IntPolynomial p = parse_polynomial("x^7 - 3x^5 + x^2 - 4");
  const RootSet a = roots(p);
  const RootSet b = roots(p);
  REQUIRE(a.roots.size() == b.roots.size());
  for (std::size_t i = 0; i < a.roots.size(); ++i) {
    CHECK(a.roots[i].re == b.roots[i].re);
    CHECK(a.roots[i].im == b.roots[i].im);
    CHECK(a.radii[i] == b.radii[i]);
  }
}

TEST_CASE("128-bit request meets the radius contract") {
  for (const char* text : {"x^2 - x - 1", "x^4 + 1", "x^5 - x - 1"}) {
    const auto rs = roots<widest_real>(parse_polynomial(text), 128);
    CHECK(rs.precision_bits >= 113);
    const long double target = std::pow(2.0L, -64.0L);
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
      const long double radius = static_cast<long double>(rs.radii[i]);
      const long double scale = 1 + static_cast<long double>(totreal::abs(rs.roots[i]));
      CHECK(radius <= target * scale);
    }
  }
}

TEST_CASE("residuals are consistent with the reported radii") {
  for (const char* text : {"x^3 - 2", "x^2 - x - 1", "x^6 - x - 1"}) {
    const IntPolynomial p = parse_polynomial(text);
    const RootSet rs = roots(p);
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
      // |p(z)| <= radius * |p'(z)| up to curvature slack for a simple root
      const Cplx<long double> pv = eval_poly(p, rs.roots[i]);
      std::vector<mpz_class> dc;
      for (std::size_t k = 1; k < p.coeffs.size(); ++k) dc.push_back(p.coeffs[k] * (long)k);
      const Cplx<long double> dv = eval_poly(IntPolynomial(std::move(dc)), rs.roots[i]);
      CHECK(totreal::abs(pv) <=
            8 * rs.radii[i] * (1 + totreal::abs(dv)) + 1e-25L);
    }
  }
}

TEST_CASE("zero roots are exact and sorted into place") {
  const RootSet rs = roots(parse_polynomial("x^3 + x"));
  REQUIRE(rs.roots.size() == 3);
  CHECK(rs.roots[1].re == 0.0L);
  CHECK(rs.roots[1].im == 0.0L);
  CHECK(rs.radii[1] == 0.0L);
  CHECK(std::fabs(rs.roots[0].im + 1) < 1e-18L);
  CHECK(std::fabs(rs.roots[2].im - 1) < 1e-18L);
}

TEST_CASE("high degree symmetric polynomial") {
  // x^64 + 1: all roots on the unit circle, well separated
  std::vector<mpz_class> c(65, mpz_class(0));
  c[0] = 1;
  c[64] = 1;
  const RootSet rs = roots(IntPolynomial(std::move(c)));
  REQUIRE(rs.roots.size() == 64);
  for (const auto& z : rs.roots) CHECK(std::fabs(totreal::abs(z) - 1) < 1e-16L);
}

TEST_CASE("iteration cap is reported as an error with the achieved residual") {
  try {
    roots(parse_polynomial("x^5 - x - 1"), 128, 1);
    FAIL("expected root_error");
  } catch (const root_error& e) {
    CHECK(e.residual() > 0);
    CHECK(std::string(e.what()).find("did not converge") != std::string::npos);
  }
}

TEST_CASE("precision ladder selects the matching type") {
  const IntPolynomial p = parse_polynomial("x^3 - 2");
  CHECK(roots(p, 48).precision_bits == 53);
  CHECK(roots(p, 64).precision_bits == 64);
  CHECK(roots(p, 128).precision_bits == 113);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(roots(parse_polynomial("7")), std::invalid_argument);
  CHECK_THROWS_AS(roots(parse_polynomial("x - 1"), 1000), std::invalid_argument);
}

TEST_CASE("random polynomials: root multiset satisfies the defining equation") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> deg(1, 8), coeff(-9, 9);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<mpz_class> c(deg(rng) + 1);
    for (auto& v : c) v = coeff(rng);
    const IntPolynomial p(std::move(c));
    if (p.degree() < 1) continue;
    const RootSet rs = roots(p);
    CHECK(static_cast<int>(rs.roots.size()) == p.degree());
    for (std::size_t i = 0; i < rs.roots.size(); ++i)
      if (rs.radii[i] < 1e-6L)  // well-separated roots only
        CHECK(totreal::abs(eval_poly(p, rs.roots[i])) < 1e-10L);
  }
}

}  // TEST_SUITE
