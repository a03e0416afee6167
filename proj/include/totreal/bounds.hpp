#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "totreal/families.hpp"
#include "totreal/heights.hpp"
#include "totreal/quadrature.hpp"

namespace totreal {

// One certificate evaluation: with I(p) the circle integral and E(p) the
// Dirichlet energy of f_p, every totally real number of large degree has
// height at least (2^-p - I(p))^2 / E(p).  The Lipschitz bracket is attached
// for reporting; it enters the finite-degree inequality but not the bound,
// where it is divided by the degree and vanishes in the limit.
struct BoundReport {
  long double exponent = 0;
  long double circle_integral = 0;
  long double circle_error = 0;
  long double energy = 0;
  long double energy_error = 0;
  long double main_term = 0;   // 2^-p - I(p)
  long double bound = 0;       // main_term^2 / E(p)
  long double bound_error = 0; // first-order propagation of the two estimates
  LipschitzBracket lipschitz;
  int circle_subdivisions = 0;
  int energy_subdivisions = 0;
  bool converged = false;
};

namespace detail {

inline BoundReport assemble_bound(long double p, const IntegralResult& circle,
                                  const IntegralResult& energy) {
  BoundReport rep;
  rep.exponent = p;
  rep.circle_integral = circle.value;
  rep.circle_error = circle.error_estimate;
  rep.energy = energy.value;
  rep.energy_error = energy.error_estimate;
  rep.main_term = std::pow(2.0L, -p) - circle.value;
  rep.bound = rep.main_term * rep.main_term / energy.value;
  rep.bound_error = 2 * std::fabs(rep.main_term) / energy.value * circle.error_estimate +
                    rep.bound / energy.value * energy.error_estimate;
  rep.circle_subdivisions = circle.subdivisions_used;
  rep.energy_subdivisions = energy.subdivisions_used;
  rep.converged = circle.converged && energy.converged;
  return rep;
}

}  // namespace detail

/// Evaluate the height lower bound certificate at exponent p > 1.
/// A non-converged quadrature is propagated through `converged` rather than
/// thrown; the report still carries the best estimates.
inline BoundReport lower_bound(long double p, const QuadratureConfig& cfg = {},
                               int lip_density = 128) {
  const TestFunction tf(p);
  BoundReport rep = detail::assemble_bound(p, circle_integral(tf, cfg), dirichlet_energy(tf, cfg));
  rep.lipschitz = lipschitz_estimate(tf, lip_density);
  return rep;
}

struct SweepPoint {
  BoundReport report;
  bool ok = false;
  std::string error;
};

/// Certificate reports on the inclusive grid p = lo, lo+step, ..., hi.
/// Failures are recorded per grid point.
inline std::vector<SweepPoint> sweep(long double p_lo, long double p_hi, long double step,
                                     const QuadratureConfig& cfg = {}, int lip_density = 128) {
  if (!(p_lo > 1)) throw std::invalid_argument("sweep: exponents must exceed 1");
  if (!(p_hi >= p_lo)) throw std::invalid_argument("sweep: p_hi must be at least p_lo");
  if (!(step > 0)) throw std::invalid_argument("sweep: step must be positive");
  const int count = static_cast<int>(std::floor((p_hi - p_lo) / step + 1e-9L)) + 1;
  std::vector<SweepPoint> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const long double p = p_lo + k * step;
    SweepPoint pt;
    try {
      pt.report = lower_bound(p, cfg, lip_density);
      pt.ok = pt.report.converged;
      if (!pt.ok) pt.error = "quadrature did not converge";
    } catch (const std::exception& e) {
      pt.ok = false;
      pt.error = e.what();
      pt.report.exponent = p;
    }
    out.push_back(std::move(pt));
  }
  return out;
}

/// Golden-section maximization of bound(p) on [p_lo, p_hi], assuming
/// unimodality (empirically validated by sweeps).  Returns the best probed
/// exponent once the bracket width drops to `tol`; quadrature failures abort.
inline std::pair<long double, BoundReport> optimize_exponent(long double p_lo, long double p_hi,
                                                             long double tol,
                                                             const QuadratureConfig& cfg = {},
                                                             int lip_density = 128) {
  if (!(p_lo > 1) || !(p_hi > p_lo)) throw std::invalid_argument("optimize_exponent: bad bracket");
  if (!(tol > 0)) throw std::invalid_argument("optimize_exponent: tol must be positive");

  const auto probe = [&cfg](long double p) {
    const TestFunction tf(p);
    const IntegralResult circle = circle_integral(tf, cfg);
    const IntegralResult energy = dirichlet_energy(tf, cfg);
    if (!circle.converged || !energy.converged)
      throw std::runtime_error("optimize_exponent: quadrature did not converge at p = " +
                               std::to_string(static_cast<double>(p)));
    return detail::assemble_bound(p, circle, energy);
  };

  long double best_p = (p_lo + p_hi) / 2;
  long double best_val = probe(best_p).bound;
  const auto consider = [&](long double p, long double val) {
    if (val > best_val) {
      best_val = val;
      best_p = p;
    }
  };
  consider(p_lo, probe(p_lo).bound);
  consider(p_hi, probe(p_hi).bound);

  const long double invphi = (std::sqrt(5.0L) - 1) / 2;
  long double a = p_lo, b = p_hi;
  long double x1 = b - invphi * (b - a);
  long double x2 = a + invphi * (b - a);
  long double f1 = probe(x1).bound;
  long double f2 = probe(x2).bound;
  consider(x1, f1);
  consider(x2, f2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = probe(x2).bound;
      consider(x2, f2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = probe(x1).bound;
      consider(x1, f1);
    }
  }

  BoundReport rep = lower_bound(best_p, cfg, lip_density);
  return {best_p, rep};
}

// Term-by-term evaluation of the quantitative equidistribution inequality
//
//   |avg_{Galois orbit} f - I(p)|  <=  Lip(f)/d + (h + c log d / d)^(1/2) E(p)^(1/2)
//
// for one algebraic number given by its polynomial.  The Lipschitz term uses
// the upper bracket, keeping the reported right side conservative.
struct DiscrepancyTerms {
  int degree = 0;
  long double height = 0;
  long double galois_avg = 0;
  long double circle_integral = 0;
  long double discrepancy_lhs = 0;  // |galois_avg - I(p)|
  long double lip_term = 0;         // Lip upper bracket / degree
  long double energy_root = 0;      // sqrt(E(p))
  long double c = 0;
  long double rhs = 0;
  bool holds = false;
};

namespace detail {

struct DiscrepancyContext {
  long double circle = 0;
  long double energy = 0;
  long double lip_upper = 0;
};

inline DiscrepancyContext discrepancy_context(const TestFunction& tf, const QuadratureConfig& cfg,
                                              int lip_density) {
  const IntegralResult circle = circle_integral(tf, cfg);
  const IntegralResult energy = dirichlet_energy(tf, cfg);
  return {circle.value, energy.value, lipschitz_estimate(tf, lip_density).upper};
}

inline DiscrepancyTerms discrepancy_terms_in(const IntPolynomial& poly, const TestFunction& tf,
                                             long double c, const DiscrepancyContext& ctx,
                                             int precision) {
  DiscrepancyTerms t;
  t.degree = poly.degree();
  t.height = weil_height(poly, precision).value;
  t.galois_avg = galois_average(poly, tf, precision);
  t.circle_integral = ctx.circle;
  t.discrepancy_lhs = std::fabs(t.galois_avg - ctx.circle);
  t.lip_term = ctx.lip_upper / t.degree;
  t.energy_root = std::sqrt(ctx.energy);
  t.c = c;
  const long double log_term = t.degree > 1 ? c * std::log((long double)t.degree) / t.degree : 0;
  t.rhs = t.lip_term + std::sqrt(std::max(0.0L, t.height + log_term)) * t.energy_root;
  t.holds = t.discrepancy_lhs <= t.rhs;
  return t;
}

}  // namespace detail

inline DiscrepancyTerms discrepancy_terms(const IntPolynomial& poly, const TestFunction& tf,
                                          long double c, const QuadratureConfig& cfg = {},
                                          int lip_density = 128, int precision = 128) {
  if (poly.degree() < 1) throw std::invalid_argument("discrepancy_terms: degree must be at least 1");
  if (!(c >= 0)) throw std::invalid_argument("discrepancy_terms: c must be nonnegative");
  return detail::discrepancy_terms_in(poly, tf, c,
                                      detail::discrepancy_context(tf, cfg, lip_density), precision);
}

// Smallest c >= 0 making the inequality hold across a corpus.  Members whose
// discrepancy is already absorbed by the Lipschitz term impose c = 0.
// Because the Lipschitz term uses the upper bracket, the fitted value is a
// lower estimate of any truly admissible constant.
struct EmpiricalC {
  long double c = 0;
  std::vector<long double> per_member;
  std::size_t argmax = 0;
};

inline EmpiricalC empirical_c(const std::vector<IntPolynomial>& corpus, const TestFunction& tf,
                              const QuadratureConfig& cfg = {}, int lip_density = 128,
                              int precision = 128) {
  if (corpus.empty()) throw std::invalid_argument("empirical_c: corpus must be nonempty");
  for (const auto& poly : corpus)
    if (poly.degree() < 2)
      throw std::invalid_argument("empirical_c: corpus members must have degree at least 2");
  const auto ctx = detail::discrepancy_context(tf, cfg, lip_density);
  EmpiricalC out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto t = detail::discrepancy_terms_in(corpus[i], tf, 0.0L, ctx, precision);
    const long double slack = t.discrepancy_lhs - t.lip_term;
    long double c_i = 0;
    if (slack > 0) {
      const long double need = slack * slack / ctx.energy;  // required h + c log d / d
      c_i = std::max(0.0L, (need - t.height) * t.degree / std::log((long double)t.degree));
    }
    out.per_member.push_back(c_i);
    if (c_i > out.c) {
      out.c = c_i;
      out.argmax = i;
    }
  }
  return out;
}

}  // namespace totreal
