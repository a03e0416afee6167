#pragma once

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <vector>

#include "totreal/testfunction.hpp"

namespace totreal {

struct QuadratureConfig {
  long double abs_tol = 1e-9L;
  long double rel_tol = 1e-9L;
  int max_subdivisions = 40000;
  int working_precision = 64;

  void validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0))
      throw std::invalid_argument("quadrature tolerances must be positive");
    if (max_subdivisions < 4)
      throw std::invalid_argument("max_subdivisions must be at least 4");
  }
};

struct IntegralResult {
  long double value = 0;
  long double error_estimate = 0;
  int subdivisions_used = 0;
  bool converged = false;
};

namespace quad {

template <class R>
struct GaussRule {
  std::vector<R> nodes;    // on (-1, 1)
  std::vector<R> weights;
};

// Gauss-Legendre rule computed at runtime to the precision of R: Newton on
// P_n from the Chebyshev initial guesses, weights 2/((1-x^2) P_n'(x)^2).
template <class R>
GaussRule<R> make_gauss_rule(int n) {
  GaussRule<R> rule;
  rule.nodes.assign(n, R(0));
  rule.weights.assign(n, R(0));
  const R one = 1;
  for (int k = 1; k <= (n + 1) / 2; ++k) {
    R x = math::cos(math::pi<R>() * (R(k) - R(0.25L)) / (R(n) + R(0.5L)));
    R dp = 0;
    for (int it = 0; it < 100; ++it) {
      R p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const R p2 = ((R(2 * j - 1) * x * p1) - R(j - 1) * p0) / R(j);
        p0 = p1;
        p1 = p2;
      }
      dp = R(n) * (x * p1 - p0) / (x * x - one);
      const R step = p1 / dp;
      x -= step;
      if (math::abs(step) <= R(2) * math::eps<R>() * math::abs(x)) break;
    }
    const R w = R(2) / ((one - x * x) * dp * dp);
    rule.nodes[k - 1] = -x;
    rule.nodes[n - k] = x;
    rule.weights[k - 1] = w;
    rule.weights[n - k] = w;
  }
  return rule;
}

template <class R>
const GaussRule<R>& gauss7() {
  static const GaussRule<R> rule = make_gauss_rule<R>(7);
  return rule;
}
template <class R>
const GaussRule<R>& gauss15() {
  static const GaussRule<R> rule = make_gauss_rule<R>(15);
  return rule;
}

template <class R>
struct Panel1 {
  R a, b, value, err;
  long id;
};

template <class R>
struct Panel2 {
  R x0, x1, y0, y1, value, err;
  int split_axis;
  long id;
};

template <class P>
struct WorstFirst {
  bool operator()(const P& a, const P& b) const {
    if (a.err != b.err) return a.err < b.err;
    return a.id > b.id;  // ties resolved toward the older panel
  }
};

template <class R, class F>
Panel1<R> eval_panel(const F& f, R a, R b, long id) {
  const auto& fine = gauss15<R>();
  const auto& coarse = gauss7<R>();
  const R mid = (a + b) / R(2), half = (b - a) / R(2);
  R v15 = 0, v7 = 0;
  for (int i = 0; i < 15; ++i) v15 += fine.weights[i] * f(mid + half * fine.nodes[i]);
  for (int i = 0; i < 7; ++i) v7 += coarse.weights[i] * f(mid + half * coarse.nodes[i]);
  v15 *= half;
  v7 *= half;
  return {a, b, v15, math::abs(v15 - v7), id};
}

// Embedded tensor estimates on one rectangle.  The g15xg15 sum is the value;
// dropping to the 7-point rule along one axis at a time gives two error
// estimates, and the split is made along the axis with the larger one.
template <class R, class G>
Panel2<R> eval_panel(const G& g, R x0, R x1, R y0, R y1, long id) {
  const auto& fine = gauss15<R>();
  const auto& coarse = gauss7<R>();
  const R xm = (x0 + x1) / R(2), xh = (x1 - x0) / R(2);
  const R ym = (y0 + y1) / R(2), yh = (y1 - y0) / R(2);

  R xs[22], ys[22];
  for (int i = 0; i < 15; ++i) xs[i] = xm + xh * fine.nodes[i];
  for (int i = 0; i < 7; ++i) xs[15 + i] = xm + xh * coarse.nodes[i];
  for (int j = 0; j < 15; ++j) ys[j] = ym + yh * fine.nodes[j];
  for (int j = 0; j < 7; ++j) ys[15 + j] = ym + yh * coarse.nodes[j];

  R vals[22][22];
  for (int i = 0; i < 22; ++i)
    for (int j = 0; j < 22; ++j) vals[i][j] = g(xs[i], ys[j]);

  R v_ff = 0, v_fc = 0, v_cf = 0;
  for (int i = 0; i < 15; ++i) {
    R row_f = 0, row_c = 0;
    for (int j = 0; j < 15; ++j) row_f += fine.weights[j] * vals[i][j];
    for (int j = 0; j < 7; ++j) row_c += coarse.weights[j] * vals[i][15 + j];
    v_ff += fine.weights[i] * row_f;
    v_fc += fine.weights[i] * row_c;
  }
  for (int i = 0; i < 7; ++i) {
    R row_f = 0;
    for (int j = 0; j < 15; ++j) row_f += fine.weights[j] * vals[15 + i][j];
    v_cf += coarse.weights[i] * row_f;
  }
  const R scale = xh * yh;
  v_ff *= scale;
  v_fc *= scale;
  v_cf *= scale;

  const R err_x = math::abs(v_ff - v_cf);
  const R err_y = math::abs(v_ff - v_fc);
  Panel2<R> p;
  p.x0 = x0;
  p.x1 = x1;
  p.y0 = y0;
  p.y1 = y1;
  p.value = v_ff;
  p.err = math::max(err_x, err_y);
  p.split_axis = err_x >= err_y ? 0 : 1;
  p.id = id;
  return p;
}

template <class R, class F>
IntegralResult adaptive_1d(const F& f, R a, R b, const QuadratureConfig& cfg) {
  cfg.validate();
  const R abs_tol = static_cast<R>(cfg.abs_tol);
  const R rel_tol = static_cast<R>(cfg.rel_tol);
  const R min_width = R(64) * math::eps<R>() * math::max(math::abs(a), math::abs(b));

  long next_id = 0;
  std::priority_queue<Panel1<R>, std::vector<Panel1<R>>, WorstFirst<Panel1<R>>> open;
  std::vector<Panel1<R>> closed;
  open.push(eval_panel(f, a, b, next_id++));
  R total_value = open.top().value;
  R total_err = open.top().err;

  int splits = 0;
  while (splits < cfg.max_subdivisions && !open.empty()) {
    if (total_err <= math::max(abs_tol, rel_tol * math::abs(total_value))) break;
    Panel1<R> worst = open.top();
    open.pop();
    if (worst.err == R(0) || (worst.b - worst.a) <= min_width) {
      closed.push_back(worst);
      continue;
    }
    const R mid = (worst.a + worst.b) / R(2);
    Panel1<R> left = eval_panel(f, worst.a, mid, next_id++);
    Panel1<R> right = eval_panel(f, mid, worst.b, next_id++);
    total_value += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    open.push(left);
    open.push(right);
    ++splits;
  }

  while (!open.empty()) {
    closed.push_back(open.top());
    open.pop();
  }
  std::sort(closed.begin(), closed.end(),
            [](const Panel1<R>& p, const Panel1<R>& q) { return p.a < q.a; });
  R value = 0, err = 0;
  for (const auto& p : closed) {
    value += p.value;
    err += p.err;
  }
  IntegralResult res;
  res.value = static_cast<long double>(value);
  res.error_estimate = static_cast<long double>(err);
  res.subdivisions_used = splits;
  res.converged = err <= math::max(abs_tol, rel_tol * math::abs(value));
  return res;
}

template <class R, class G>
IntegralResult adaptive_2d(const G& g, R x0, R x1, R y0, R y1, const QuadratureConfig& cfg) {
  cfg.validate();
  const R abs_tol = static_cast<R>(cfg.abs_tol);
  const R rel_tol = static_cast<R>(cfg.rel_tol);
  const R min_wx = R(64) * math::eps<R>() * math::max(math::abs(x0), math::abs(x1));
  const R min_wy = R(64) * math::eps<R>() * math::max(math::abs(y0), math::abs(y1));

  long next_id = 0;
  std::priority_queue<Panel2<R>, std::vector<Panel2<R>>, WorstFirst<Panel2<R>>> open;
  std::vector<Panel2<R>> closed;
  open.push(eval_panel(g, x0, x1, y0, y1, next_id++));
  R total_value = open.top().value;
  R total_err = open.top().err;

  int splits = 0;
  while (splits < cfg.max_subdivisions && !open.empty()) {
    if (total_err <= math::max(abs_tol, rel_tol * math::abs(total_value))) break;
    Panel2<R> worst = open.top();
    open.pop();
    const bool splittable_x = (worst.x1 - worst.x0) > min_wx;
    const bool splittable_y = (worst.y1 - worst.y0) > min_wy;
    if (worst.err == R(0) || (!splittable_x && !splittable_y)) {
      closed.push_back(worst);
      continue;
    }
    int axis = worst.split_axis;
    if (axis == 0 && !splittable_x) axis = 1;
    if (axis == 1 && !splittable_y) axis = 0;
    Panel2<R> first, second;
    if (axis == 0) {
      const R xm = (worst.x0 + worst.x1) / R(2);
      first = eval_panel(g, worst.x0, xm, worst.y0, worst.y1, next_id++);
      second = eval_panel(g, xm, worst.x1, worst.y0, worst.y1, next_id++);
    } else {
      const R ym = (worst.y0 + worst.y1) / R(2);
      first = eval_panel(g, worst.x0, worst.x1, worst.y0, ym, next_id++);
      second = eval_panel(g, worst.x0, worst.x1, ym, worst.y1, next_id++);
    }
    total_value += first.value + second.value - worst.value;
    total_err += first.err + second.err - worst.err;
    open.push(first);
    open.push(second);
    ++splits;
  }

  while (!open.empty()) {
    closed.push_back(open.top());
    open.pop();
  }
  std::sort(closed.begin(), closed.end(), [](const Panel2<R>& p, const Panel2<R>& q) {
    if (p.x0 != q.x0) return p.x0 < q.x0;
    return p.y0 < q.y0;
  });
  R value = 0, err = 0;
  for (const auto& p : closed) {
    value += p.value;
    err += p.err;
  }
  IntegralResult res;
  res.value = static_cast<long double>(value);
  res.error_estimate = static_cast<long double>(err);
  res.subdivisions_used = splits;
  res.converged = err <= math::max(abs_tol, rel_tol * math::abs(value));
  return res;
}

}  // namespace quad

namespace detail {

template <class R>
IntegralResult circle_integral_impl(long double exponent, const QuadratureConfig& cfg) {
  const R p = static_cast<R>(exponent);
  const long double factor =
      std::pow(2.0L, -exponent) * 2.0L / math::pi<long double>();
  QuadratureConfig scaled = cfg;
  scaled.abs_tol = cfg.abs_tol / factor;
  IntegralResult res = quad::adaptive_1d<R>(
      [p](R u) { return math::pow(math::max(R(0), math::cos(u)), p); }, R(0),
      math::pi<R>() / R(2), scaled);
  res.value *= factor;
  res.error_estimate *= factor;
  return res;
}

template <class R>
IntegralResult gradient_pairing_impl(long double p1, long double p2,
                                     const QuadratureConfig& cfg) {
  const R q1 = static_cast<R>(p1), q2 = static_cast<R>(p2);
  const long double factor = 4.0L / math::pi<long double>();
  QuadratureConfig scaled = cfg;
  scaled.abs_tol = cfg.abs_tol / factor;
  IntegralResult res = quad::adaptive_2d<R>(
      [q1, q2](R r, R t) {
        const Cplx<R> z(r * math::cos(t), r * math::sin(t));
        const auto [ax, ay] = grad_fp(q1, z);
        if (q1 == q2) return (ax * ax + ay * ay) * r;
        const auto [bx, by] = grad_fp(q2, z);
        return (ax * bx + ay * by) * r;
      },
      R(0), R(1), R(0), math::pi<R>() / R(2), scaled);
  res.value *= factor;
  res.error_estimate *= factor;
  return res;
}

}  // namespace detail

/// Haar-circle integral (1/2pi) int f_p(e^{i theta}) d theta, via the closed
/// form restriction |cos|^p / 2^p.  Cross-check: the Gamma closed form below.
inline IntegralResult circle_integral(const TestFunction& tf, const QuadratureConfig& cfg = {}) {
  if (cfg.working_precision <= math::mantissa_bits<double>())
    return detail::circle_integral_impl<double>(tf.exponent, cfg);
  if (cfg.working_precision <= math::mantissa_bits<long double>())
    return detail::circle_integral_impl<long double>(tf.exponent, cfg);
  return detail::circle_integral_impl<widest_real>(tf.exponent, cfg);
}

/// Exact value of the circle integral:
/// 2^-p Gamma((p+1)/2) / (sqrt(pi) Gamma(p/2+1)).
inline long double circle_integral_gamma_form(long double p) {
  return std::pow(2.0L, -p) *
         std::exp(std::lgamma((p + 1) / 2) - std::lgamma(p / 2 + 1)) /
         std::sqrt(math::pi<long double>());
}

/// Dirichlet energy <f_p, f_p> = (1/2pi) int_C |grad f_p|^2 dx dy.
///
/// The inversion symmetry f_p(1/z) = f_p(z) and conformal invariance of the
/// gradient integrand reduce the plane to twice the closed unit disk, and
/// the evenness of f_p in x and y reduces the disk to four times the first
/// quadrant; the integral runs over the quarter disk in polar coordinates.
inline IntegralResult dirichlet_energy(const TestFunction& tf, const QuadratureConfig& cfg = {}) {
  if (cfg.working_precision <= math::mantissa_bits<double>())
    return detail::gradient_pairing_impl<double>(tf.exponent, tf.exponent, cfg);
  if (cfg.working_precision <= math::mantissa_bits<long double>())
    return detail::gradient_pairing_impl<long double>(tf.exponent, tf.exponent, cfg);
  return detail::gradient_pairing_impl<widest_real>(tf.exponent, tf.exponent, cfg);
}

/// Dirichlet pairing <f_p1, f_p2> with the same normalization and domain
/// reduction as the energy.
inline IntegralResult dirichlet_pairing(const TestFunction& tf1, const TestFunction& tf2,
                                        const QuadratureConfig& cfg = {}) {
  if (cfg.working_precision <= math::mantissa_bits<double>())
    return detail::gradient_pairing_impl<double>(tf1.exponent, tf2.exponent, cfg);
  if (cfg.working_precision <= math::mantissa_bits<long double>())
    return detail::gradient_pairing_impl<long double>(tf1.exponent, tf2.exponent, cfg);
  return detail::gradient_pairing_impl<widest_real>(tf1.exponent, tf2.exponent, cfg);
}

}  // namespace totreal
