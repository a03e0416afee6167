#include <doctest.h>

#include <cmath>

#include "totreal/bounds.hpp"

using namespace totreal;

TEST_SUITE("bounds") {

TEST_CASE("certificate at p = 3 reproduces the 0.241573 bound") {
  const BoundReport rep = lower_bound(3.0L);
  CHECK(rep.converged);
  CHECK(std::fabs(rep.bound - 0.241573L) < 1e-5L);
  CHECK(rep.main_term > 0.0L);
  CHECK(std::fabs(rep.circle_integral - 1 / (6 * math::pi<long double>())) < 1e-10L);
  CHECK(std::fabs(rep.energy - 3.0L / 140) < 1e-9L);
  // internal consistency of the assembled report
  CHECK(std::fabs(rep.bound * rep.energy - rep.main_term * rep.main_term) <=
        1e-12L * rep.bound * rep.energy);
}

TEST_CASE("certificate at p = 3.3 reproduces the 0.241713 bound") {
  const BoundReport rep = lower_bound(3.3L);
  CHECK(rep.converged);
  CHECK(std::fabs(rep.bound - 0.241713L) < 1e-5L);
}

TEST_CASE("certificate at p = 2 matches the (1/64)/E(2) form") {
  const BoundReport rep = lower_bound(2.0L);
  CHECK(std::fabs(rep.main_term - 0.125L) < 1e-10L);
  CHECK(std::fabs(rep.bound - (1.0L / 64) / rep.energy) < 1e-12L);
}

TEST_CASE("exponent at or below 1 is rejected") {
  CHECK_THROWS_AS(lower_bound(1.0L), std::invalid_argument);
  CHECK_THROWS_AS(lower_bound(0.3L), std::invalid_argument);
}

TEST_CASE("sweep produces the inclusive grid with an interior maximum") {
  const auto rows = sweep(2.0L, 5.0L, 0.5L);
  REQUIRE(rows.size() == 7);
  std::size_t best = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].ok);
    CHECK(std::fabs(rows[i].report.exponent - (2.0L + 0.5L * i)) < 1e-12L);
    const auto& r = rows[i].report;
    CHECK(r.main_term > 0.0L);
    CHECK(std::fabs(r.bound * r.energy - r.main_term * r.main_term) <=
          1e-12L * r.bound * r.energy);
    if (r.bound > rows[best].report.bound) best = i;
  }
  CHECK(best > 0);
  CHECK(best + 1 < rows.size());
}

TEST_CASE("sweep degenerates to a single point when the range is below one step") {
  const auto rows = sweep(3.0L, 3.0000005L, 1e-6L);
  REQUIRE(rows.size() == 1);
  const BoundReport direct = lower_bound(3.0L);
  CHECK(rows[0].report.bound == direct.bound);
}

TEST_CASE("sweep across the flat top stays within the known window") {
  const auto rows = sweep(3.2L, 3.4L, 0.05L);
  REQUIRE(rows.size() == 5);
  for (const auto& pt : rows) {
    CHECK(pt.report.bound >= 0.2415L);
    CHECK(pt.report.bound <= 0.2418L);
  }
}

TEST_CASE("sweep argument validation") {
  CHECK_THROWS_AS(sweep(3.0L, 2.0L, 0.1L), std::invalid_argument);
  CHECK_THROWS_AS(sweep(2.0L, 5.0L, 0.0L), std::invalid_argument);
  CHECK_THROWS_AS(sweep(0.5L, 5.0L, 0.1L), std::invalid_argument);
}

TEST_CASE("optimizer beats the documented exponents") {
  const auto [p_star, rep] = optimize_exponent(2.0L, 5.0L, 1e-4L);
  CHECK(rep.bound >= 0.241713L);
  CHECK(p_star >= 3.0L);
  CHECK(p_star <= 3.8L);
  CHECK(rep.bound >= lower_bound(2.0L).bound);
  CHECK(rep.bound >= lower_bound(5.0L).bound);
}

TEST_CASE("optimizer on a bracket enclosing p = 3") {
  const auto [p_star, rep] = optimize_exponent(2.9L, 3.1L, 1e-4L);
  CHECK(rep.bound >= 0.241573L);
  CHECK(p_star >= 2.9L);
  CHECK(p_star <= 3.1L);
}

TEST_CASE("optimizer degenerate bracket returns a consistent midpoint report") {
  const long double tol = 1e-4L;
  const auto [p_star, rep] = optimize_exponent(3.3L, 3.3L + 2 * tol, tol);
  CHECK(p_star >= 3.3L);
  CHECK(p_star <= 3.3L + 2 * tol);
  const BoundReport direct = lower_bound(p_star);
  CHECK(std::fabs(rep.bound - direct.bound) < 1e-14L);
}

TEST_CASE("optimizer dominates a fine sweep inside its bracket") {
  const auto [p_star, rep] = optimize_exponent(2.0L, 5.0L, 1e-4L, {}, 8);
  const auto rows = sweep(2.0L, 5.0L, 0.05L, {}, 8);
  for (const auto& pt : rows) CHECK(rep.bound >= pt.report.bound - 1e-12L);
}

TEST_CASE("optimizer argument validation") {
  CHECK_THROWS_AS(optimize_exponent(1.0L, 5.0L, 1e-4L), std::invalid_argument);
  CHECK_THROWS_AS(optimize_exponent(3.0L, 2.0L, 1e-4L), std::invalid_argument);
  CHECK_THROWS_AS(optimize_exponent(2.0L, 5.0L, 0.0L), std::invalid_argument);
}

TEST_CASE("bound changes less than its error estimate under tighter tolerances") {
  QuadratureConfig loose;
  loose.abs_tol = loose.rel_tol = 1e-7L;
  QuadratureConfig tight;
  tight.abs_tol = tight.rel_tol = 5e-8L;
  const BoundReport a = lower_bound(3.0L, loose);
  const BoundReport b = lower_bound(3.0L, tight);
  CHECK(std::fabs(a.bound - b.bound) <= a.bound_error + 1e-18L);
}

TEST_CASE("discrepancy terms for the golden ratio") {
  const DiscrepancyTerms t =
      discrepancy_terms(parse_polynomial("x^2 - x - 1"), TestFunction(3.0L), 1.0L);
  CHECK(t.degree == 2);
  CHECK(std::fabs(t.height - 0.2406059L) < 1e-6L);
  CHECK(std::fabs(t.galois_avg - 0.125L) < 1e-10L);
  CHECK(std::fabs(t.discrepancy_lhs - 0.0719484L) < 1e-6L);
  CHECK(t.energy_root > 0.0L);
  CHECK(t.holds);
}

TEST_CASE("discrepancy terms for x^4 + 1") {
  const DiscrepancyTerms t =
      discrepancy_terms(parse_polynomial("x^4 + 1"), TestFunction(3.0L), 0.0L);
  CHECK(std::fabs(t.discrepancy_lhs - 0.0088574L) < 1e-6L);
  CHECK(t.height < 1e-10L);
}

TEST_CASE("discrepancy terms for a degree-1 point") {
  const DiscrepancyTerms t =
      discrepancy_terms(parse_polynomial("x - 1"), TestFunction(3.0L), 0.0L);
  CHECK(t.degree == 1);
  CHECK(t.height == 0.0L);
  const long double expected = std::fabs(0.125L - 1 / (6 * math::pi<long double>()));
  CHECK(std::fabs(t.discrepancy_lhs - expected) < 1e-10L);
  // with c = 0 and h = 0 the right side is the Lipschitz term alone
  CHECK(t.rhs == t.lip_term);
  CHECK(t.holds == (t.discrepancy_lhs <= t.rhs));
}

TEST_CASE("discrepancy argument validation") {
  CHECK_THROWS_AS(discrepancy_terms(parse_polynomial("5"), TestFunction(3.0L), 0.0L),
                  std::invalid_argument);
  CHECK_THROWS_AS(discrepancy_terms(parse_polynomial("x - 1"), TestFunction(3.0L), -1.0L),
                  std::invalid_argument);
}

TEST_CASE("empirical constant for the singleton corpus {x^2 + 1}") {
  const EmpiricalC fit = empirical_c({parse_polynomial("x^2 + 1")}, TestFunction(3.0L));
  CHECK(fit.c == 0.0L);
}

TEST_CASE("empirical constant is stable under corpus growth") {
  const TestFunction tf(3.0L);
  const EmpiricalC small = empirical_c(cyclotomic_corpus(4, 64), tf);
  const EmpiricalC large = empirical_c(cyclotomic_corpus(4, 128), tf);
  CHECK(small.c >= 0.0L);
  CHECK(large.c >= 0.0L);
  CHECK(std::fabs(small.c - large.c) <= std::max(0.05L * std::max(small.c, large.c), 1e-9L));
}

TEST_CASE("a high-height member cannot raise the empirical constant") {
  const TestFunction tf(3.0L);
  std::vector<IntPolynomial> corpus = cyclotomic_corpus(4, 16);
  const long double before = empirical_c(corpus, tf).c;
  corpus.push_back(parse_polynomial("x^2 - x - 1"));
  const long double after = empirical_c(corpus, tf).c;
  CHECK(after <= before + 1e-12L);
}

TEST_CASE("empirical constant argument validation") {
  CHECK_THROWS_AS(empirical_c({}, TestFunction(3.0L)), std::invalid_argument);
  CHECK_THROWS_AS(empirical_c({parse_polynomial("x - 1")}, TestFunction(3.0L)),
                  std::invalid_argument);
}

}  // TEST_SUITE
