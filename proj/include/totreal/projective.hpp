#pragma once

#include "totreal/cplx.hpp"
#include "totreal/fp.hpp"

namespace totreal {

// A point of the projective line: a finite complex value or the point at
// infinity.
template <class R = long double>
struct ProjPointT {
  Cplx<R> value{};
  bool infinite = false;

  ProjPointT() = default;

  static ProjPointT at(Cplx<R> z) { return {z, false}; }
  static ProjPointT at(R x, R y = R(0)) { return {Cplx<R>(x, y), false}; }
  static ProjPointT infinity() { return {Cplx<R>{}, true}; }

 private:
  ProjPointT(Cplx<R> z, bool inf) : value(z), infinite(inf) {}
};

using ProjPoint = ProjPointT<long double>;

// Chordal metric, normalized to [0, 1]: |a-b| / (sqrt(1+|a|^2) sqrt(1+|b|^2))
// for finite points, 1/sqrt(1+|a|^2) against infinity.
template <class R>
R chordal_distance(const ProjPointT<R>& a, const ProjPointT<R>& b) {
  if (a.infinite && b.infinite) return R(0);
  if (a.infinite || b.infinite) {
    const Cplx<R> z = a.infinite ? b.value : a.value;
    return R(1) / math::hypot(R(1), totreal::abs(z));
  }
  const R num = totreal::abs(a.value - b.value);
  const R den = math::hypot(R(1), totreal::abs(a.value)) * math::hypot(R(1), totreal::abs(b.value));
  return math::min(R(1), num / den);
}

template <class R>
ProjPointT<R> proj_inverse(const ProjPointT<R>& p) {
  if (p.infinite) return ProjPointT<R>::at(R(0));
  if (p.value == Cplx<R>{}) return ProjPointT<R>::infinity();
  return ProjPointT<R>::at(inverse(p.value));
}

}  // namespace totreal
