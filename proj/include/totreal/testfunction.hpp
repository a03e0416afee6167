#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "totreal/projective.hpp"

namespace totreal {

// The test-function family f_p(z) = d(z,i)^p * d(z,-i)^p with the pole pair
// fixed at +-i.  Using |z-i||z+i| = |z^2+1| this collapses to
//
//   f_p(z) = ( |z^2+1| / (2 (1+|z|^2)) )^p,
//
// which is constant 2^-p on the real line and on it attains its maximum.
// The exponent must exceed 1 so that f_p is C^1 at the poles.
struct TestFunction {
  long double exponent;

  explicit TestFunction(long double p) : exponent(p) {
    if (!(p > 1.0L)) throw std::invalid_argument("test function exponent must exceed 1");
  }
};

namespace detail {

// A = |z^2+1|^2 and B = 1+|z|^2 as functions of z = x+iy.
template <class R>
void pole_product_terms(R x, R y, R* a, R* b) {
  const R t = x * x - y * y + R(1);
  const R s = R(2) * x * y;
  *a = t * t + s * s;
  *b = R(1) + x * x + y * y;
}

template <class R>
R eval_fp(R p, Cplx<R> z) {
  if (z.im == R(0)) return math::pow(R(2), -p);  // exact on the real line
  if (norm(z) > R(1)) z = inverse(z);            // f_p(1/z) = f_p(z), keeps A,B well ranged
  R a, b;
  pole_product_terms(z.re, z.im, &a, &b);
  const R v = math::pow(math::sqrt(a) / (R(2) * b), p);
  return math::min(v, math::pow(R(2), -p));
}

// Closed-form partials:
//   df/dx = p * 4 x y^2         * A^{(p-2)/2} / (2^{p-1} B^{p+1})
//   df/dy = p * 2 y (y^2-x^2-1) * A^{(p-2)/2} / (2^{p-1} B^{p+1})
// At the poles A = 0 and both limits vanish for p > 1.
template <class R>
std::pair<R, R> grad_fp(R p, Cplx<R> z) {
  R a, b;
  pole_product_terms(z.re, z.im, &a, &b);
  if (a == R(0)) return {R(0), R(0)};
  const R scale =
      p * math::pow(a, (p - R(2)) / R(2)) / (math::pow(R(2), p - R(1)) * math::pow(b, p + R(1)));
  const R x = z.re, y = z.im;
  return {scale * R(4) * x * y * y, scale * R(2) * y * (y * y - x * x - R(1))};
}

// (1+|z|^2) |grad f_p(z)|: the gradient with respect to the spherical metric,
// invariant under z -> 1/conj(z).
template <class R>
R spherical_gradient(R p, Cplx<R> z) {
  const auto [gx, gy] = grad_fp(p, z);
  R a, b;
  pole_product_terms(z.re, z.im, &a, &b);
  return b * math::hypot(gx, gy);
}

}  // namespace detail

template <class R>
R eval_test_function(const TestFunction& tf, const ProjPointT<R>& z) {
  const R p = static_cast<R>(tf.exponent);
  if (z.infinite) return math::pow(R(2), -p);
  return detail::eval_fp(p, z.value);
}

inline long double eval_test_function(const TestFunction& tf, const ProjPoint& z) {
  return eval_test_function<long double>(tf, z);
}

/// Partial derivatives (df/dx, df/dy) at a finite point; (0,0) at the poles.
inline std::pair<long double, long double> gradient(const TestFunction& tf,
                                                    Cplx<long double> z) {
  return detail::grad_fp(tf.exponent, z);
}

/// f_p restricted to the unit circle: |cos theta|^p / 2^p.
inline long double circle_restriction(const TestFunction& tf, long double theta) {
  const long double p = tf.exponent;
  return std::pow(std::fabs(std::cos(theta)), p) * std::pow(2.0L, -p);
}

// Bracket for the Lipschitz constant of f_p in the chordal metric.
// `lower` is a maximum of finite difference quotients |f(x)-f(y)|/d(x,y), so
// it never exceeds the true constant.  `upper` is (pi/2) times the supremum
// of the spherical gradient: chord >= (2/pi) * geodesic on the sphere, and
// the geodesic rate of change of f is the spherical gradient.
struct LipschitzBracket {
  long double lower = 0;
  long double upper = 0;
};

inline LipschitzBracket lipschitz_estimate(const TestFunction& tf, int grid_density = 128) {
  using L = long double;
  if (grid_density < 8) throw std::invalid_argument("lipschitz_estimate: grid_density >= 8");
  const L p = tf.exponent;
  const L half_pi = math::pi<L>() / 2;

  // f_p and the spherical gradient are even in x and in y and invariant
  // under inversion, so the closed quarter disk sees every value.
  L sup = 0;
  L best_r = 0, best_t = 0;
  for (int i = 0; i <= grid_density; ++i) {
    const L r = static_cast<L>(i) / grid_density;
    for (int j = 0; j <= grid_density; ++j) {
      const L t = half_pi * j / grid_density;
      const L s = detail::spherical_gradient(p, Cplx<L>(r * std::cos(t), r * std::sin(t)));
      if (s > sup) {
        sup = s;
        best_r = r;
        best_t = t;
      }
    }
  }
  // local refinement around the grid argmax
  L dr = 1.0L / grid_density, dt = half_pi / grid_density;
  for (int pass = 0; pass < 48; ++pass) {
    L cr = best_r, ct = best_t;
    for (int i = -4; i <= 4; ++i) {
      for (int j = -4; j <= 4; ++j) {
        const L r = std::clamp(cr + dr * i / 4, 0.0L, 1.0L);
        const L t = std::clamp(ct + dt * j / 4, 0.0L, half_pi);
        const L s = detail::spherical_gradient(p, Cplx<L>(r * std::cos(t), r * std::sin(t)));
        if (s > sup) {
          sup = s;
          best_r = r;
          best_t = t;
        }
      }
    }
    dr *= 0.5L;
    dt *= 0.5L;
  }

  LipschitzBracket out;
  out.upper = half_pi * sup;

  // Difference quotients: a coarse all-pairs scan plus short steps along the
  // gradient direction, which approach the spherical gradient from below.
  std::vector<ProjPoint> pts;
  pts.push_back(ProjPoint::infinity());
  const int coarse = std::min(grid_density, 16);
  for (int i = 0; i <= coarse; ++i) {
    const L r = static_cast<L>(i) / coarse;
    for (int j = 0; j <= coarse; ++j) {
      const L t = half_pi * j / coarse;
      const Cplx<L> z(r * std::cos(t), r * std::sin(t));
      pts.push_back(ProjPoint::at(z));
      if (norm(z) > 0.25L) pts.push_back(ProjPoint::at(inverse(z)));
    }
  }
  L lower = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const L fi = eval_test_function(tf, pts[i]);
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const L d = chordal_distance(pts[i], pts[j]);
      if (d <= 0) continue;
      lower = std::max(lower, std::fabs(fi - eval_test_function(tf, pts[j])) / d);
    }
  }
  for (int i = 0; i <= grid_density; ++i) {
    const L r = static_cast<L>(i) / grid_density;
    for (int j = 0; j <= grid_density; ++j) {
      const L t = half_pi * j / grid_density;
      const Cplx<L> z(r * std::cos(t), r * std::sin(t));
      const auto [gx, gy] = detail::grad_fp(p, z);
      const L g = math::hypot(gx, gy);
      if (g == 0) continue;
      const L h = 1e-5L * (1 + norm(z)) / g;
      const ProjPoint za = ProjPoint::at(z);
      const ProjPoint zb = ProjPoint::at(z + Cplx<L>(gx * h, gy * h));
      const L d = chordal_distance(za, zb);
      if (d <= 0) continue;
      lower = std::max(
          lower, std::fabs(eval_test_function(tf, za) - eval_test_function(tf, zb)) / d);
    }
  }
  // the refined argmax is the sharpest spot; probe it the same way
  {
    const Cplx<L> z(best_r * std::cos(best_t), best_r * std::sin(best_t));
    const auto [gx, gy] = detail::grad_fp(p, z);
    const L g = math::hypot(gx, gy);
    if (g > 0) {
      for (L h : {1e-4L, 1e-5L, 1e-6L}) {
        const L step = h * (1 + norm(z)) / g;
        const ProjPoint za = ProjPoint::at(z);
        const ProjPoint zb = ProjPoint::at(z + Cplx<L>(gx * step, gy * step));
        const L d = chordal_distance(za, zb);
        if (d > 0)
          lower = std::max(
              lower, std::fabs(eval_test_function(tf, za) - eval_test_function(tf, zb)) / d);
      }
    }
  }
  out.lower = std::min(lower, out.upper);
  return out;
}

}  // namespace totreal
