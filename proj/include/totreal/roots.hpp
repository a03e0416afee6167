#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "totreal/cplx.hpp"
#include "totreal/fp.hpp"
#include "totreal/polynomial.hpp"

namespace totreal {

/// Thrown when the simultaneous iteration fails to settle within the cap.
class root_error : public std::runtime_error {
 public:
  root_error(const std::string& what, long double residual)
      : std::runtime_error(what), residual_(residual) {}
  long double residual() const { return residual_; }

 private:
  long double residual_;
};

// All complex roots of an integer polynomial, with per-root error radii.
// `roots` is sorted by real part, then imaginary part; radii are a
// posteriori bounds (Weierstrass, capped by the geometric-mean bound for
// clustered approximants).  `precision_bits` is the significand width of
// the floating type the roots were computed with.
template <class R>
struct RootSetT {
  std::vector<Cplx<R>> roots;
  std::vector<R> radii;
  IntPolynomial source;
  int precision_bits = 0;
  int iterations = 0;
};

using RootSet = RootSetT<long double>;

namespace detail {

template <class R>
struct AberthOutcome {
  std::vector<Cplx<R>> roots;
  std::vector<R> radii;
  bool converged = false;
  int iterations = 0;
  R worst_correction = 0;
};

// p(z) and p'(z) by Horner, plus a running bound on the evaluation error
// (~2n eps sum |a_k||z|^k) used to keep the radii honest near convergence.
template <class R>
void horner_all(const std::vector<R>& a, Cplx<R> z, Cplx<R>* p, Cplx<R>* dp, R* err) {
  Cplx<R> v(a.back());
  Cplx<R> d(R(0));
  R s = math::abs(a.back());
  const R az = totreal::abs(z);
  for (std::size_t k = a.size() - 1; k-- > 0;) {
    d = d * z + v;
    v = v * z + Cplx<R>(a[k]);
    s = s * az + math::abs(a[k]);
  }
  *p = v;
  *dp = d;
  *err = R(2 * a.size()) * math::eps<R>() * s;
}

// Per-root a posteriori error bounds.  The Weierstrass radius
// n |p(z_i)| / |lc prod_{j != i} (z_i - z_j)| is tight for well-separated
// roots; the geometric-mean bound (|p(z_i)|/|lc|)^(1/n) stays finite when
// approximants coincide at a multiple root.  Horner evaluation error is
// folded into the numerators.
template <class R>
std::vector<R> weierstrass_radii(const std::vector<R>& a, const std::vector<Cplx<R>>& z) {
  const int n = static_cast<int>(z.size());
  std::vector<R> radii(n);
  const R lead = math::abs(a.back());
  for (int i = 0; i < n; ++i) {
    Cplx<R> p, dp;
    R everr;
    horner_all(a, z[i], &p, &dp, &everr);
    const R num = totreal::abs(p) + everr;
    const R mean_bound = math::pow(num / lead, R(1) / R(n));
    R denom = lead;
    for (int j = 0; j < n; ++j) {
      if (j != i) denom *= totreal::abs(z[i] - z[j]);
    }
    radii[i] = denom > R(0) ? math::min(R(n) * num / denom, mean_bound) : mean_bound;
  }
  return radii;
}

template <class R>
R fujiwara_bound(const std::vector<R>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  const R lead = math::abs(a[n]);
  R best = 0;
  for (int k = 1; k <= n; ++k) {
    R t = math::abs(a[n - k]) / lead;
    if (k == n) t /= R(2);
    if (t == R(0)) continue;
    best = math::max(best, math::pow(t, R(1) / R(k)));
  }
  return best > R(0) ? R(2) * best : R(1);
}

template <class R>
AberthOutcome<R> solve_quadratic(const std::vector<R>& a) {
  AberthOutcome<R> out;
  out.converged = true;
  if (a.size() == 2) {
    out.roots = {Cplx<R>(-a[0] / a[1])};
  } else {
    const R c = a[0], b = a[1], q2 = a[2];
    Cplx<R> r1, r2;
    if (b == R(0)) {
      const R v = -c / q2;
      if (v >= R(0)) {
        r1 = Cplx<R>(-math::sqrt(v));
        r2 = Cplx<R>(math::sqrt(v));
      } else {
        r1 = Cplx<R>(R(0), -math::sqrt(-v));
        r2 = Cplx<R>(R(0), math::sqrt(-v));
      }
    } else {
      const R disc = b * b - R(4) * q2 * c;
      if (disc >= R(0)) {
        const R s = math::sqrt(disc);
        const R q = -(b + (b >= R(0) ? s : -s)) / R(2);
        r1 = Cplx<R>(q / q2);
        r2 = Cplx<R>(c / q);
      } else {
        const R s = math::sqrt(-disc) / (R(2) * q2);
        r1 = Cplx<R>(-b / (R(2) * q2), -s);
        r2 = Cplx<R>(-b / (R(2) * q2), s);
      }
    }
    out.roots = {r1, r2};
  }
  out.radii = weierstrass_radii(a, out.roots);
  return out;
}

// Aberth-Ehrlich simultaneous iteration (Gauss-Seidel sweep order) with
// starting points on a perturbed circle at the Fujiwara root bound.
// Coefficients are real; the iteration runs in the complex plane.
template <class R>
AberthOutcome<R> aberth_solve(const std::vector<R>& a, int max_iterations) {
  const int n = static_cast<int>(a.size()) - 1;
  if (n == 1 || n == 2) return solve_quadratic(a);

  AberthOutcome<R> out;
  const R radius = fujiwara_bound(a);
  const R tau = R(2) * math::pi<R>();
  std::vector<Cplx<R>>& z = out.roots;
  z.resize(n);
  for (int j = 0; j < n; ++j) {
    // golden-ratio jitter breaks the rotation and conjugation symmetries
    // that can stall the iteration on symmetric inputs
    R frac = R(0.61803398874989484820L) * R(j + 1);
    frac -= math::floor(frac);
    const R theta = tau * (R(j) + R(0.3361) + R(0.04) * frac) / R(n);
    z[j] = Cplx<R>(radius * math::cos(theta), radius * math::sin(theta));
  }

  const R stop = R(8) * math::eps<R>();
  std::vector<bool> settled(n, false);
  R worst = 0;
  for (int iter = 1; iter <= max_iterations; ++iter) {
    bool all_settled = true;
    worst = 0;
    for (int i = 0; i < n; ++i) {
      if (settled[i]) continue;
      Cplx<R> p, dp;
      R everr;
      horner_all(a, z[i], &p, &dp, &everr);
      if (totreal::abs(p) <= everr) {
        settled[i] = true;
        continue;
      }
      if (p == Cplx<R>(R(0))) {
        settled[i] = true;
        continue;
      }
      if (dp == Cplx<R>(R(0))) {
        z[i] = z[i] * (R(1) + R(1024) * math::eps<R>()) + Cplx<R>(stop, stop);
        all_settled = false;
        continue;
      }
      const Cplx<R> newton = p / dp;
      Cplx<R> sum(R(0));
      bool collision = false;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const Cplx<R> diff = z[i] - z[j];
        if (diff == Cplx<R>(R(0))) {
          collision = true;
          break;
        }
        sum += Cplx<R>(R(1)) / diff;
      }
      if (collision) {
        z[i] = z[i] * (R(1) + R(1024) * math::eps<R>()) + Cplx<R>(stop, R(0));
        all_settled = false;
        continue;
      }
      const Cplx<R> denom = Cplx<R>(R(1)) - newton * sum;
      const Cplx<R> w = denom == Cplx<R>(R(0)) ? newton : newton / denom;
      z[i] -= w;
      const R rel = totreal::abs(w) / (R(1) + totreal::abs(z[i]));
      worst = math::max(worst, rel);
      if (rel < stop)
        settled[i] = true;
      else
        all_settled = false;
    }
    out.iterations = iter;
    if (all_settled) {
      out.converged = true;
      break;
    }
  }
  out.worst_correction = worst;
  out.radii = weierstrass_radii(a, z);
  return out;
}

template <class R, class T>
RootSetT<R> finish_rootset(const AberthOutcome<T>& raw, const IntPolynomial& source,
                           int zero_roots, int precision_bits) {
  RootSetT<R> rs;
  rs.source = source;
  rs.precision_bits = precision_bits;
  rs.iterations = raw.iterations;
  const R ulp = math::eps<R>();
  for (std::size_t i = 0; i < raw.roots.size(); ++i) {
    const Cplx<R> z = cplx_cast<R>(raw.roots[i]);
    rs.roots.push_back(z);
    rs.radii.push_back(static_cast<R>(raw.radii[i]) + ulp * (R(1) + totreal::abs(z)));
  }
  for (int i = 0; i < zero_roots; ++i) {
    rs.roots.push_back(Cplx<R>(R(0)));
    rs.radii.push_back(R(0));
  }
  std::vector<std::size_t> order(rs.roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (rs.roots[a].re != rs.roots[b].re) return rs.roots[a].re < rs.roots[b].re;
    return rs.roots[a].im < rs.roots[b].im;
  });
  RootSetT<R> sorted;
  sorted.source = rs.source;
  sorted.precision_bits = rs.precision_bits;
  sorted.iterations = rs.iterations;
  for (std::size_t i : order) {
    sorted.roots.push_back(rs.roots[i]);
    sorted.radii.push_back(rs.radii[i]);
  }
  return sorted;
}

template <class T>
bool radii_meet_target(const AberthOutcome<T>& raw, T target) {
  for (std::size_t i = 0; i < raw.roots.size(); ++i)
    if (raw.radii[i] > target * (T(1) + totreal::abs(raw.roots[i]))) return false;
  return true;
}

}  // namespace detail

/// All complex roots of `poly` with multiplicity, in a deterministic order
/// (ascending real part, then imaginary part).
///
/// `precision` is the target accuracy in bits: for well-separated roots the
/// returned radii satisfy radius <= 2^(-precision/2) * (1 + |root|).  The
/// computation starts at the narrowest floating type whose significand
/// covers the request (binary64 / 80-bit extended / binary128) and is re-run
/// one rung wider whenever the target is missed.  Exact zero roots are
/// stripped before iteration and reported with radius 0.
template <class R = long double>
RootSetT<R> roots(const IntPolynomial& poly, int precision = 128, int max_iterations = 400) {
  static_assert(is_real_v<R>);
  if (poly.degree() < 1) throw std::invalid_argument("roots: degree must be at least 1");
  if (precision < 2 || precision > 2 * math::mantissa_bits<widest_real>())
    throw std::invalid_argument("roots: unsupported precision request");

  IntPolynomial reduced = poly;
  int zero_roots = 0;
  while (!reduced.coeffs.empty() && reduced.coeffs.front() == 0) {
    reduced.coeffs.erase(reduced.coeffs.begin());
    ++zero_roots;
  }
  if (reduced.degree() < 1)
    return detail::finish_rootset<R>(detail::AberthOutcome<long double>{}, poly, zero_roots,
                                     math::mantissa_bits<R>());

  const long double target = std::pow(2.0L, -precision / 2.0L);
  int rung = precision <= math::mantissa_bits<double>()        ? 0
             : precision <= math::mantissa_bits<long double>() ? 1
                                                               : 2;
  long double residual = 0;
  for (; rung <= 2; ++rung) {
    if (rung == 0) {
      auto raw = detail::aberth_solve(to_real_coeffs<double>(reduced), max_iterations);
      residual = static_cast<long double>(raw.worst_correction);
      if (raw.converged && detail::radii_meet_target(raw, static_cast<double>(target)))
        return detail::finish_rootset<R>(raw, poly, zero_roots, math::mantissa_bits<double>());
    } else if (rung == 1) {
      auto raw = detail::aberth_solve(to_real_coeffs<long double>(reduced), max_iterations);
      residual = raw.worst_correction;
      if (raw.converged && detail::radii_meet_target(raw, target))
        return detail::finish_rootset<R>(raw, poly, zero_roots,
                                         math::mantissa_bits<long double>());
    } else {
      auto raw = detail::aberth_solve(to_real_coeffs<widest_real>(reduced), max_iterations);
      residual = static_cast<long double>(raw.worst_correction);
      if (raw.converged)
        return detail::finish_rootset<R>(raw, poly, zero_roots,
                                         math::mantissa_bits<widest_real>());
      throw root_error("root finding did not converge within " +
                           std::to_string(max_iterations) +
                           " iterations; best relative correction " +
                           math::to_string(residual, 6),
                       residual);
    }
  }
  throw root_error("root finding did not converge", residual);
}

}  // namespace totreal
