#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include "totreal/dynamics.hpp"
#include "totreal/polynomial.hpp"
#include "totreal/roots.hpp"
#include "totreal/testfunction.hpp"

namespace totreal {

/// n-th cyclotomic polynomial: (x^n - 1) divided by every proper-divisor
/// cyclotomic, all of which are monic, so the division is exact.
inline IntPolynomial cyclotomic(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic: n must be at least 1");
  std::vector<mpz_class> c(n + 1, mpz_class(0));
  c[0] = -1;
  c[n] = 1;
  IntPolynomial phi(std::move(c));
  for (int d = 1; d < n; ++d)
    if (n % d == 0) phi = divide_exact(phi, cyclotomic(d));
  return phi;
}

inline IntPolynomial chebyshev(int n) {
  if (n < 0) throw std::invalid_argument("chebyshev: n must be nonnegative");
  IntPolynomial t0(std::vector<mpz_class>{1});
  if (n == 0) return t0;
  IntPolynomial t1(std::vector<mpz_class>{0, 1});
  IntPolynomial two_x(std::vector<mpz_class>{0, 2});
  for (int k = 2; k <= n; ++k) {
    IntPolynomial t2 = two_x * t1 - t0;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return t1;
}

enum class FamilyKind { roots_of_unity, radical, smyth_preimages };

// A generator of algebraic-number test corpora: cyclotomic polynomials,
// pure radicals x^n - b, or preimage polynomials of the map x - 1/x.
struct Family {
  FamilyKind kind = FamilyKind::roots_of_unity;
  int n = 1;
  long long base = 2;
  int depth = 0;
  Rational seed{1, 1};

  static Family roots_of_unity(int n) {
    if (n < 1) throw std::invalid_argument("roots_of_unity: n must be at least 1");
    Family f;
    f.kind = FamilyKind::roots_of_unity;
    f.n = n;
    return f;
  }
  static Family radical(long long base, int n) {
    if (base < 2) throw std::invalid_argument("radical: base must be at least 2");
    if (n < 1) throw std::invalid_argument("radical: n must be at least 1");
    Family f;
    f.kind = FamilyKind::radical;
    f.base = base;
    f.n = n;
    return f;
  }
  // The polynomial route expands the preimage recursion exactly and its
  // coefficients grow doubly exponentially; depths beyond 8 should use
  // preimage_tree instead.
  static Family smyth_preimages(int depth, Rational seed = {1, 1}) {
    if (depth < 0 || depth > 8)
      throw std::invalid_argument("smyth_preimages: depth must be in [0, 8]");
    const long long whole = seed.den == 1 ? seed.num
                            : seed.den == -1 ? -seed.num
                                             : 2;  // sentinel, rejected below
    if (whole != 0 && whole != 1 && whole != -1)
      throw std::invalid_argument(
          "smyth_preimages: seed must be preperiodic for x - 1/x (0, 1 or -1)");
    Family f;
    f.kind = FamilyKind::smyth_preimages;
    f.depth = depth;
    f.seed = seed;
    return f;
  }
};

inline IntPolynomial family_polynomial(const Family& fam) {
  switch (fam.kind) {
    case FamilyKind::roots_of_unity:
      return cyclotomic(fam.n);
    case FamilyKind::radical: {
      std::vector<mpz_class> c(fam.n + 1, mpz_class(0));
      c[0] = -mpz_class(static_cast<long>(fam.base));
      c[fam.n] = 1;
      return IntPolynomial(std::move(c));
    }
    case FamilyKind::smyth_preimages: {
      // Q_0 = den*x - num;  Q_{k+1}(x) = x^(deg Q_k) Q_k((x^2-1)/x), i.e.
      // coefficient a_j contributes a_j (x^2-1)^j x^(deg-j).
      IntPolynomial q(std::vector<mpz_class>{
          mpz_class(static_cast<long>(-fam.seed.num)), mpz_class(static_cast<long>(fam.seed.den))});
      IntPolynomial shift(std::vector<mpz_class>{-1, 0, 1});  // x^2 - 1
      for (int level = 0; level < fam.depth; ++level) {
        const int deg = q.degree();
        IntPolynomial next;
        IntPolynomial shift_pow(std::vector<mpz_class>{1});
        for (int j = 0; j <= deg; ++j) {
          std::vector<mpz_class> term(deg - j, mpz_class(0));
          for (const auto& s : shift_pow.coeffs) term.push_back(q.coeffs[j] * s);
          next = next + IntPolynomial(std::move(term));
          if (j < deg) shift_pow = shift_pow * shift;
        }
        q = std::move(next);
      }
      return q;
    }
  }
  throw std::logic_error("family_polynomial: unknown kind");
}

/// Mean of f_p over the full root multiset of poly.
inline long double galois_average(const IntPolynomial& poly, const TestFunction& tf,
                                  int precision = 128) {
  const auto rs = roots<long double>(poly, precision);
  long double sum = 0;
  for (const auto& z : rs.roots) sum += eval_test_function(tf, ProjPoint::at(z));
  return sum / static_cast<long double>(rs.roots.size());
}

inline std::vector<IntPolynomial> cyclotomic_corpus(int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("cyclotomic_corpus: bad range");
  std::vector<IntPolynomial> out;
  for (int n = n_lo; n <= n_hi; ++n) out.push_back(cyclotomic(n));
  return out;
}

// Deterministic corpus of polynomials with all-real roots, none of them
// 0 or +-1: preimage polynomials of x - 1/x, quadratic radicals, even-index
// Chebyshev polynomials (roots cos((2k-1)pi/4m)), and products of distinct
// integer linear factors.
inline std::vector<IntPolynomial> real_rooted_corpus(int count, unsigned rng_seed = 20260521) {
  std::mt19937 rng(rng_seed);
  std::vector<IntPolynomial> out;
  const long long radicands[] = {2, 3, 5, 6, 7, 8, 10, 11, 12, 13};
  int smyth_next = 1, radical_next = 0, cheb_next = 1;
  std::uniform_int_distribution<int> degree_pick(2, 6);
  std::uniform_int_distribution<int> root_pick(2, 9);
  std::uniform_int_distribution<int> sign_pick(0, 1);
  while (static_cast<int>(out.size()) < count) {
    switch (out.size() % 4) {
      case 0:
        out.push_back(family_polynomial(Family::smyth_preimages(1 + (smyth_next++ % 6))));
        break;
      case 1: {
        std::vector<mpz_class> c{-mpz_class(static_cast<long>(radicands[radical_next])), 0, 1};
        radical_next = (radical_next + 1) % 10;
        out.push_back(IntPolynomial(std::move(c)));
        break;
      }
      case 2:
        out.push_back(chebyshev(2 * (1 + (cheb_next++ % 12))));
        break;
      default: {
        IntPolynomial prod(std::vector<mpz_class>{1});
        const int deg = degree_pick(rng);
        std::vector<long> used;
        while (static_cast<int>(used.size()) < deg) {
          const long magnitude = root_pick(rng);
          const long a = sign_pick(rng) ? magnitude : -magnitude;
          bool fresh = true;
          for (long u : used) fresh = fresh && u != a;
          if (!fresh) continue;
          used.push_back(a);
          prod = prod * IntPolynomial(std::vector<mpz_class>{mpz_class(-a), 1});
        }
        out.push_back(std::move(prod));
        break;
      }
    }
  }
  return out;
}

}  // namespace totreal
