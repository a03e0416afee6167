#pragma once

#include "totreal/fp.hpp"

namespace totreal {

// Minimal complex value type usable with every real type in the precision
// ladder (std::complex is only specified for the standard floating types).
template <class R>
struct Cplx {
  R re{};
  R im{};

  Cplx() = default;
  Cplx(R r, R i = R(0)) : re(r), im(i) {}

  Cplx operator-() const { return {-re, -im}; }
  Cplx conj() const { return {re, -im}; }

  friend Cplx operator+(Cplx a, Cplx b) { return {a.re + b.re, a.im + b.im}; }
  friend Cplx operator-(Cplx a, Cplx b) { return {a.re - b.re, a.im - b.im}; }
  friend Cplx operator*(Cplx a, Cplx b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cplx operator*(Cplx a, R s) { return {a.re * s, a.im * s}; }
  friend Cplx operator*(R s, Cplx a) { return a * s; }

  // Smith's scaled division, robust against intermediate overflow.
  friend Cplx operator/(Cplx a, Cplx b) {
    if (math::abs(b.re) >= math::abs(b.im)) {
      const R t = b.im / b.re;
      const R d = b.re + b.im * t;
      return {(a.re + a.im * t) / d, (a.im - a.re * t) / d};
    }
    const R t = b.re / b.im;
    const R d = b.re * t + b.im;
    return {(a.re * t + a.im) / d, (a.im * t - a.re) / d};
  }
  friend Cplx operator/(Cplx a, R s) { return {a.re / s, a.im / s}; }

  Cplx& operator+=(Cplx o) { return *this = *this + o; }
  Cplx& operator-=(Cplx o) { return *this = *this - o; }
  Cplx& operator*=(Cplx o) { return *this = *this * o; }

  friend bool operator==(Cplx a, Cplx b) { return a.re == b.re && a.im == b.im; }
};

template <class R>
R abs(Cplx<R> z) { return math::hypot(z.re, z.im); }

// |z|^2; overflows to +inf for |z| beyond the format range, which callers
// use only for >1 comparisons.
template <class R>
R norm(Cplx<R> z) { return z.re * z.re + z.im * z.im; }

template <class R>
Cplx<R> inverse(Cplx<R> z) { return Cplx<R>(R(1)) / z; }

template <class T, class R>
Cplx<T> cplx_cast(Cplx<R> z) {
  return {static_cast<T>(z.re), static_cast<T>(z.im)};
}

}  // namespace totreal
