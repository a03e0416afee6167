#pragma once

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "totreal/bounds.hpp"
#include "totreal/dynamics.hpp"

namespace totreal {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

namespace verify_detail {

inline std::string fmt(long double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10Lg", v);
  return buf;
}

inline ProjPoint random_point(std::mt19937& rng) {
  if (rng() % 61 == 0) return ProjPoint::infinity();
  std::cauchy_distribution<double> C(0.0, 1.0);  // stereographic spread over the sphere
  return ProjPoint::at(static_cast<long double>(C(rng)), static_cast<long double>(C(rng)));
}

// ---- invariant suites bundled under one criterion ----

inline bool metric_axioms(std::string* why) {
  std::mt19937 rng(11);
  for (int i = 0; i < 10000; ++i) {
    const ProjPoint a = random_point(rng), b = random_point(rng), c = random_point(rng);
    const long double ab = chordal_distance(a, b);
    const long double ba = chordal_distance(b, a);
    if (std::fabs(ab - ba) > 1e-18L) { *why = "symmetry violated"; return false; }
    if (!(ab >= 0 && ab <= 1)) { *why = "range violated"; return false; }
    if (chordal_distance(a, a) != 0) { *why = "d(a,a) != 0"; return false; }
    const long double ac = chordal_distance(a, c), bc = chordal_distance(b, c);
    if (ab > ac + bc + 1e-12L) { *why = "triangle inequality violated"; return false; }
  }
  return true;
}

inline bool inversion_isometry(std::string* why) {
  std::mt19937 rng(12);
  std::cauchy_distribution<double> C(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const ProjPoint a = ProjPoint::at(C(rng) + 0.1, C(rng) + 0.1);
    const ProjPoint b = ProjPoint::at(C(rng) - 0.1, C(rng) + 0.2);
    const long double d1 = chordal_distance(a, b);
    const long double d2 = chordal_distance(proj_inverse(a), proj_inverse(b));
    if (std::fabs(d1 - d2) > 1e-12L) {
      *why = "inversion isometry off by " + fmt(std::fabs(d1 - d2));
      return false;
    }
  }
  return true;
}

inline bool testfunction_symmetries(std::string* why) {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  for (const long double p : {2.0L, 3.0L, 3.3L, 4.0L}) {
    const TestFunction tf(p);
    for (int i = 0; i < 2500; ++i) {
      const Cplx<long double> z(U(rng), U(rng));
      if (z == Cplx<long double>{}) continue;
      const long double f = eval_test_function(tf, ProjPoint::at(z));
      const long double f_conj = eval_test_function(tf, ProjPoint::at(z.conj()));
      const long double f_neg = eval_test_function(tf, ProjPoint::at(-z));
      const long double f_inv = eval_test_function(tf, ProjPoint::at(inverse(z)));
      if (std::fabs(f - f_conj) > 1e-12L || std::fabs(f - f_neg) > 1e-12L ||
          std::fabs(f - f_inv) > 1e-12L) {
        *why = "f_p symmetry violated at p = " + fmt(p);
        return false;
      }
      if (!(f >= 0 && f <= std::pow(2.0L, -p))) {
        *why = "f_p out of range at p = " + fmt(p);
        return false;
      }
    }
    // the supremum is attained on the real line, exactly
    for (int i = 0; i < 100; ++i) {
      const long double x = U(rng);
      if (eval_test_function(tf, ProjPoint::at(x)) != std::pow(2.0L, -p)) {
        *why = "real-line value of f_p is not the exact maximum";
        return false;
      }
    }
  }
  return true;
}

inline bool gradient_vs_finite_difference(std::string* why) {
  std::mt19937 rng(14);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  const TestFunction tf(3.0L);
  const long double h = 1e-6L;
  int checked = 0;
  while (checked < 1000) {
    const Cplx<long double> z(U(rng), U(rng));
    if (math::hypot(z.re, z.im - 1) < 0.05L || math::hypot(z.re, z.im + 1) < 0.05L) continue;
    const auto eval = [&](long double x, long double y) {
      return eval_test_function(tf, ProjPoint::at(x, y));
    };
    const long double fdx = (eval(z.re + h, z.im) - eval(z.re - h, z.im)) / (2 * h);
    const long double fdy = (eval(z.re, z.im + h) - eval(z.re, z.im - h)) / (2 * h);
    const long double fd_norm = math::hypot(fdx, fdy);
    if (fd_norm < 1e-4L) continue;  // relative comparison is ill-posed at gradient zeros
    const auto [gx, gy] = gradient(tf, z);
    const long double err = math::hypot(gx - fdx, gy - fdy) / fd_norm;
    if (err > 1e-7L) {
      *why = "gradient mismatch " + fmt(err) + " at (" + fmt(z.re) + "," + fmt(z.im) + ")";
      return false;
    }
    ++checked;
  }
  return true;
}

inline bool cauchy_schwarz(std::string* why, const QuadratureConfig& cfg) {
  const TestFunction f2(2.0L), f3(3.0L);
  const long double e2 = dirichlet_energy(f2, cfg).value;
  const long double e3 = dirichlet_energy(f3, cfg).value;
  const long double p23 = dirichlet_pairing(f2, f3, cfg).value;
  const long double p32 = dirichlet_pairing(f3, f2, cfg).value;
  if (std::fabs(p23 - p32) > 1e-10L) { *why = "pairing asymmetry"; return false; }
  if (p23 > std::sqrt(e2 * e3) + 1e-12L) {
    *why = "Cauchy-Schwarz violated: " + fmt(p23) + " > " + fmt(std::sqrt(e2 * e3));
    return false;
  }
  return true;
}

inline bool height_reversal(std::string* why) {
  std::mt19937 rng(15);
  std::uniform_int_distribution<int> deg_pick(1, 8), coeff_pick(-9, 9);
  int checked = 0;
  while (checked < 100) {
    const int deg = deg_pick(rng);
    std::vector<mpz_class> c(deg + 1);
    for (auto& v : c) v = coeff_pick(rng);
    if (c[0] == 0 || c[deg] == 0) continue;
    const IntPolynomial poly(std::move(c));
    const long double h1 = weil_height(poly).value;
    const long double h2 = weil_height(poly.reversed()).value;
    if (std::fabs(h1 - h2) > 1e-10L) {
      *why = "height reversal off by " + fmt(std::fabs(h1 - h2)) + " for " + poly.to_string();
      return false;
    }
    ++checked;
  }
  return true;
}

}  // namespace verify_detail

/// The acceptance checks behind the `verify` command: target values, stated
/// tolerances and runtime ceilings, and the invariant suites, evaluated at
/// the default configuration.
inline std::vector<CriterionResult> run_acceptance() {
  using verify_detail::fmt;
  using clock = std::chrono::steady_clock;
  const QuadratureConfig cfg;
  std::vector<CriterionResult> results;

  const auto run = [&](int id, const std::string& name, double time_limit,
                       const std::function<bool(std::string*)>& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    const auto t0 = clock::now();
    try {
      r.pass = body(&r.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    if (r.pass && r.seconds >= time_limit) {
      r.pass = false;
      r.detail = "runtime " + std::to_string(r.seconds) + " s exceeded " +
                 std::to_string(time_limit) + " s";
    }
    results.push_back(r);
  };

  run(1, "golden-ratio-height", 0.1, [&](std::string* d) {
    const long double h = weil_height(parse_polynomial("x^2 - x - 1")).value;
    *d = "h = " + fmt(h);
    return std::fabs(h - 0.2406059L) <= 1e-6L;
  });

  run(2, "circle-integral", 1.0, [&](std::string* d) {
    const long double target = 1.0L / (6 * math::pi<long double>());
    const long double got = circle_integral(TestFunction(3.0L), cfg).value;
    *d = "I(3) = " + fmt(got) + ", 1/(6pi) = " + fmt(target);
    if (std::fabs(got - target) > 1e-9L) return false;
    for (int k = 0; k < 20; ++k) {
      const long double p = 1.1L + k * (6.0L - 1.1L) / 19;
      const long double v = circle_integral(TestFunction(p), cfg).value;
      const long double ref = circle_integral_gamma_form(p);
      if (std::fabs(v - ref) > 1e-9L) {
        *d = "gamma-form mismatch " + fmt(std::fabs(v - ref)) + " at p = " + fmt(p);
        return false;
      }
    }
    return true;
  });

  run(3, "dirichlet-energy", 30.0, [&](std::string* d) {
    const long double e = dirichlet_energy(TestFunction(3.0L), cfg).value;
    *d = "E(3) = " + fmt(e) + ", 3/140 = " + fmt(3.0L / 140);
    return std::fabs(e - 3.0L / 140) <= 1e-6L;
  });

  run(4, "lower-bound-p3", 30.0, [&](std::string* d) {
    const BoundReport rep = lower_bound(3.0L, cfg);
    *d = "bound(3) = " + fmt(rep.bound);
    return rep.converged && std::fabs(rep.bound - 0.241573L) <= 1e-5L;
  });

  run(5, "exponent-optimization", 300.0, [&](std::string* d) {
    const BoundReport at33 = lower_bound(3.3L, cfg);
    if (std::fabs(at33.bound - 0.241713L) > 1e-5L) {
      *d = "bound(3.3) = " + fmt(at33.bound);
      return false;
    }
    const auto [p_star, rep] = optimize_exponent(2.0L, 5.0L, 1e-4L, cfg);
    *d = "bound(3.3) = " + fmt(at33.bound) + ", optimized bound = " + fmt(rep.bound) +
         " at p = " + fmt(p_star);
    return rep.bound >= 0.241713L - 1e-5L;
  });

  run(6, "backward-iteration-limit", 10.0, [&](std::string* d) {
    const auto seq = smyth_height_sequence(14);
    const long double limit = 0.27328L;
    const long double golden = 0.5L * std::log((1 + std::sqrt(5.0L)) / 2);
    *d = "estimate(14) = " + fmt(seq[14].second);
    if (std::fabs(seq[14].second - limit) >= 0.01L) return false;
    if (std::fabs(seq[1].second - golden) > 1e-9L) {
      *d = "depth-1 value " + fmt(seq[1].second) + " != (1/2) log golden ratio";
      return false;
    }
    for (int k = 2; k <= 14; ++k) {
      const long double gap = std::fabs(seq[k].second - seq[k - 1].second);
      const long double prev = std::fabs(seq[k - 1].second - seq[k - 2].second);
      if (gap > prev) {
        *d = "gap grew from depth " + std::to_string(k - 1) + " to " + std::to_string(k);
        return false;
      }
    }
    return true;
  });

  run(7, "totally-real-average", 5.0, [&](std::string* d) {
    const TestFunction tf(3.0L);
    const auto corpus = real_rooted_corpus(50);
    long double worst = 0;
    for (const auto& poly : corpus)
      worst = std::max(worst, std::fabs(galois_average(poly, tf) - 0.125L));
    *d = "50 polynomials, worst |avg - 1/8| = " + fmt(worst);
    return worst <= 1e-10L;
  });

  run(8, "equidistribution-trend", 5.0, [&](std::string* d) {
    const TestFunction tf(3.0L);
    const long double target = 1.0L / (6 * math::pi<long double>());
    long double prev = 2;
    long double last = 0;
    for (const int n : {8, 16, 32, 64, 128}) {
      last = std::fabs(galois_average(cyclotomic(n), tf) - target);
      if (last >= prev) {
        *d = "discrepancy increased at n = " + std::to_string(n);
        return false;
      }
      prev = last;
    }
    *d = "discrepancy at n=128: " + fmt(last);
    return last < 0.01L;
  });

  run(9, "invariant-suites", 120.0, [&](std::string* d) {
    std::string why;
    if (!verify_detail::metric_axioms(&why)) { *d = why; return false; }
    if (!verify_detail::inversion_isometry(&why)) { *d = why; return false; }
    if (!verify_detail::testfunction_symmetries(&why)) { *d = why; return false; }
    if (!verify_detail::gradient_vs_finite_difference(&why)) { *d = why; return false; }
    if (!verify_detail::cauchy_schwarz(&why, cfg)) { *d = why; return false; }
    if (!verify_detail::height_reversal(&why)) { *d = why; return false; }
    *d = "metric axioms, inversion isometry, f_p symmetries, gradient, Cauchy-Schwarz, reversal";
    return true;
  });

  run(10, "schinzel-floor", 10.0, [&](std::string* d) {
    std::vector<IntPolynomial> corpus = real_rooted_corpus(50, 777);
    for (int depth = 1; depth <= 6; ++depth)
      corpus.push_back(family_polynomial(Family::smyth_preimages(depth)));
    for (long long b : {2, 3, 5, 7})
      corpus.push_back(family_polynomial(Family::radical(b, 2)));
    const long double floor_value = 0.2406059L - 1e-6L;
    long double min_h = 1e9L;
    for (const auto& poly : corpus) {
      // tolerance wide enough to keep the ill-conditioned degree-64
      // preimage members in the totally real bucket they belong to
      if (!is_totally_real(poly, 1e-12L)) continue;
      min_h = std::min(min_h, weil_height(poly).value);
      if (min_h < floor_value) {
        *d = "height " + fmt(min_h) + " below the floor for " + poly.to_string();
        return false;
      }
    }
    *d = std::to_string(corpus.size()) + " members, min height = " + fmt(min_h);
    return true;
  });

  return results;
}

}  // namespace totreal
