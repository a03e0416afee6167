#pragma once

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>

#if defined(__SIZEOF_FLOAT128__) && !defined(TOTREAL_NO_FLOAT128)
#define TOTREAL_HAVE_FLOAT128 1
#include <quadmath.h>
#endif

namespace totreal {

#if TOTREAL_HAVE_FLOAT128
using quadf = __float128;
#endif

template <class R>
struct is_real : std::is_floating_point<R> {};
#if TOTREAL_HAVE_FLOAT128
template <>
struct is_real<quadf> : std::true_type {};
#endif
template <class R>
inline constexpr bool is_real_v = is_real<R>::value;

#if TOTREAL_HAVE_FLOAT128
using widest_real = quadf;
#else
using widest_real = long double;
#endif

// Qualified math shims so the same templated code runs on double, the x87
// 80-bit long double, and IEEE binary128.  Call as math::sqrt(x) etc.
namespace math {

template <class R>
constexpr int mantissa_bits() {
  static_assert(is_real_v<R>);
#if TOTREAL_HAVE_FLOAT128
  if constexpr (std::is_same_v<R, quadf>) return FLT128_MANT_DIG;
#endif
  return std::numeric_limits<R>::digits;
}

// FLT128_EPSILON / M_PIq need -fext-numeric-literals; build the values
// instead so the headers stay usable under plain -std=c++20.
template <class R>
R eps() {
#if TOTREAL_HAVE_FLOAT128
  if constexpr (std::is_same_v<R, quadf>) {
    static const quadf v = [] {
      quadf x = 1;
      for (int i = 0; i < FLT128_MANT_DIG - 1; ++i) x /= 2;
      return x;
    }();
    return v;
  }
#endif
  return std::numeric_limits<R>::epsilon();
}

template <class R>
R pi() {
#if TOTREAL_HAVE_FLOAT128
  if constexpr (std::is_same_v<R, quadf>) {
    static const quadf v =
        strtoflt128("3.14159265358979323846264338327950288419716939937511", nullptr);
    return v;
  }
#endif
  return static_cast<R>(3.14159265358979323846264338327950288L);
}

template <class R>
R infinity() {
#if TOTREAL_HAVE_FLOAT128
  // numeric_limits<__float128> is unspecialized under strict -std modes
  if constexpr (std::is_same_v<R, quadf>) return HUGE_VALQ;
#endif
  return std::numeric_limits<R>::infinity();
}

#if TOTREAL_HAVE_FLOAT128
#define TOTREAL_SHIM1(name, stdfn, qfn)            \
  template <class R>                               \
  R name(R x) {                                    \
    if constexpr (std::is_same_v<R, quadf>)        \
      return qfn(x);                               \
    else                                           \
      return stdfn(x);                             \
  }
#define TOTREAL_SHIM2(name, stdfn, qfn)            \
  template <class R>                               \
  R name(R x, R y) {                               \
    if constexpr (std::is_same_v<R, quadf>)        \
      return qfn(x, y);                            \
    else                                           \
      return stdfn(x, y);                          \
  }
#else
#define TOTREAL_SHIM1(name, stdfn, qfn) \
  template <class R>                    \
  R name(R x) { return stdfn(x); }
#define TOTREAL_SHIM2(name, stdfn, qfn) \
  template <class R>                    \
  R name(R x, R y) { return stdfn(x, y); }
#endif

TOTREAL_SHIM1(sqrt, std::sqrt, sqrtq)
TOTREAL_SHIM1(abs, std::fabs, fabsq)
TOTREAL_SHIM1(log, std::log, logq)
TOTREAL_SHIM1(log1p, std::log1p, log1pq)
TOTREAL_SHIM1(exp, std::exp, expq)
TOTREAL_SHIM1(cos, std::cos, cosq)
TOTREAL_SHIM1(sin, std::sin, sinq)
TOTREAL_SHIM1(floor, std::floor, floorq)
TOTREAL_SHIM1(lgamma, std::lgamma, lgammaq)
TOTREAL_SHIM2(pow, std::pow, powq)
TOTREAL_SHIM2(atan2, std::atan2, atan2q)
TOTREAL_SHIM2(hypot, std::hypot, hypotq)

#undef TOTREAL_SHIM1
#undef TOTREAL_SHIM2

template <class R>
bool isfinite(R x) {
#if TOTREAL_HAVE_FLOAT128
  if constexpr (std::is_same_v<R, quadf>) return !isnanq(x) && !isinfq(x);
#endif
  return std::isfinite(x);
}

template <class R>
R max(R a, R b) { return a < b ? b : a; }
template <class R>
R min(R a, R b) { return b < a ? b : a; }

template <class R>
std::string to_string(R x, int digits = 21) {
  char buf[64];
#if TOTREAL_HAVE_FLOAT128
  if constexpr (std::is_same_v<R, quadf>) {
    quadmath_snprintf(buf, sizeof buf, "%.*Qg", digits, x);
    return buf;
  }
#endif
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, static_cast<long double>(x));
  return buf;
}

}  // namespace math
}  // namespace totreal
