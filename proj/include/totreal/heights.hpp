#pragma once

#include <stdexcept>

#include "totreal/polynomial.hpp"
#include "totreal/roots.hpp"

namespace totreal {

// Absolute logarithmic Weil height in natural-log units.  For reducible
// input the value is log(Mahler measure)/degree of the polynomial as given;
// irreducibility is not checked.
struct HeightValue {
  long double value = 0;
  int precision_bits = 0;
};

struct MahlerResult {
  long double value = 0;      // |leading| * prod max(1, |root|)
  long double log_value = 0;  // accumulated in log space, immune to overflow
  long double error_bound = 0;
  int precision_bits = 0;
};

namespace detail {

template <class T>
MahlerResult mahler_from_roots(const RootSetT<T>& rs) {
  T log_m = math::log(math::abs(math::from_mpz<T>(rs.source.leading())));
  T err = 0;
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    const T m = totreal::abs(rs.roots[i]);
    const T r = rs.radii[i];
    if (m > T(1)) log_m += math::log(m);
    // an error disk straddling or outside the unit circle perturbs log max(1,|z|)
    if (m + r > T(1)) err += r / math::max(T(1), m - r);
  }
  MahlerResult out;
  out.log_value = static_cast<long double>(log_m);
  out.value = std::exp(out.log_value);
  out.error_bound = static_cast<long double>(err);
  out.precision_bits = rs.precision_bits;
  return out;
}

}  // namespace detail

inline MahlerResult mahler_measure(const IntPolynomial& poly, int precision = 128) {
  if (poly.degree() < 1) throw std::invalid_argument("mahler_measure: degree must be at least 1");
  if (precision <= math::mantissa_bits<double>())
    return detail::mahler_from_roots(roots<double>(poly, precision));
  if (precision <= math::mantissa_bits<long double>())
    return detail::mahler_from_roots(roots<long double>(poly, precision));
  return detail::mahler_from_roots(roots<widest_real>(poly, precision));
}

/// h(poly) = log(Mahler measure) / degree.  Nonnegative for integer
/// coefficients (the measure is at least |leading| >= 1); clamped at zero to
/// absorb root-finder noise on unit-circle roots.
inline HeightValue weil_height(const IntPolynomial& poly, int precision = 128) {
  if (poly.degree() < 1) throw std::invalid_argument("weil_height: degree must be at least 1");
  const MahlerResult m = mahler_measure(poly, precision);
  HeightValue h;
  h.value = std::max(0.0L, m.log_value / poly.degree());
  h.precision_bits = m.precision_bits;
  return h;
}

/// True iff every root is real to within tol * (1 + |root|).  The default
/// tolerance assumes the default 128-bit root computation, where genuinely
/// real roots carry imaginary parts at the 1e-33 level.
inline bool is_totally_real(const IntPolynomial& poly, long double tol = 1e-20L,
                            int precision = 128) {
  if (poly.degree() < 1) throw std::invalid_argument("is_totally_real: degree must be at least 1");
  const auto rs = roots<widest_real>(poly, precision);
  for (const auto& z : rs.roots) {
    const widest_real bound = static_cast<widest_real>(tol) * (widest_real(1) + totreal::abs(z));
    if (math::abs(z.im) > bound) return false;
  }
  return true;
}

}  // namespace totreal
