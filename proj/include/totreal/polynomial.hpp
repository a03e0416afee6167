#pragma once

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "totreal/fp.hpp"

namespace totreal {

/// Thrown on malformed polynomial text; `position` indexes into the input.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Exact-integer univariate polynomial, coefficients in ascending degree
// order.  The zero polynomial has an empty coefficient vector; otherwise the
// leading coefficient is nonzero.
struct IntPolynomial {
  std::vector<mpz_class> coeffs;

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> c) : coeffs(std::move(c)) { normalize(); }

  void normalize() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  const mpz_class& leading() const { return coeffs.back(); }
  mpz_class coeff(std::size_t k) const {
    return k < coeffs.size() ? coeffs[k] : mpz_class(0);
  }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs == b.coeffs;
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> c(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> c(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) - b.coeff(k);
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> c(a.coeffs.size() + b.coeffs.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
    return IntPolynomial(std::move(c));
  }

  // x^k * p(1/x): coefficients reversed.  Height-invariant when coeffs[0] != 0.
  IntPolynomial reversed() const {
    std::vector<mpz_class> c(coeffs.rbegin(), coeffs.rend());
    return IntPolynomial(std::move(c));
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const mpz_class& c = coeffs[k];
      if (c == 0) continue;
      const bool neg = c < 0;
      mpz_class a = abs(c);
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      if (k == 0) {
        out += a.get_str();
      } else {
        if (a != 1) out += a.get_str() + "*";
        out += "x";
        if (k > 1) out += "^" + std::to_string(k);
      }
    }
    return out;
  }
};

// Exact long division by a monic divisor; throws std::logic_error if the
// division leaves a remainder.
inline IntPolynomial divide_exact(const IntPolynomial& num, const IntPolynomial& den) {
  if (den.is_zero() || den.leading() != 1)
    throw std::logic_error("divide_exact requires a monic divisor");
  if (num.degree() < den.degree()) {
    if (!num.is_zero()) throw std::logic_error("non-exact polynomial division");
    return {};
  }
  std::vector<mpz_class> rem = num.coeffs;
  const int dn = den.degree();
  std::vector<mpz_class> quot(num.degree() - dn + 1, mpz_class(0));
  for (int k = num.degree(); k >= dn; --k) {
    mpz_class q = rem[k];
    if (q == 0) continue;
    quot[k - dn] = q;
    for (int j = 0; j <= dn; ++j) rem[k - dn + j] -= q * den.coeffs[j];
  }
  for (const auto& r : rem)
    if (r != 0) throw std::logic_error("non-exact polynomial division");
  return IntPolynomial(std::move(quot));
}

namespace math {

// Exact-to-eps conversion of an arbitrary-size integer, most significant
// limb first.
template <class R>
R from_mpz(const mpz_class& z) {
  static_assert(is_real_v<R>);
  const mpz_srcptr p = z.get_mpz_t();
  const std::size_t n = mpz_size(p);
  R base = 1;
  for (int b = 0; b < mp_bits_per_limb; ++b) base *= R(2);
  R v = 0;
  for (std::size_t i = n; i-- > 0;) v = v * base + R(mpz_getlimbn(p, i));
  return mpz_sgn(p) < 0 ? -v : v;
}

}  // namespace math

template <class R>
std::vector<R> to_real_coeffs(const IntPolynomial& p) {
  std::vector<R> out(p.coeffs.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = math::from_mpz<R>(p.coeffs[k]);
  return out;
}

namespace detail {

inline mpz_class parse_integer_token(const std::string& text, std::size_t token_start,
                                     const std::string& token) {
  std::size_t i = 0;
  const bool negative = !token.empty() && token[0] == '-';
  if (i < token.size() && (token[i] == '+' || token[i] == '-')) ++i;
  if (i == token.size())
    throw parse_error("expected an integer coefficient", token_start);
  for (std::size_t j = i; j < token.size(); ++j) {
    if (token[j] == '.' || token[j] == 'e' || token[j] == 'E')
      throw parse_error("non-integer coefficient", token_start + j);
    if (!std::isdigit(static_cast<unsigned char>(token[j])))
      throw parse_error("unexpected character in coefficient", token_start + j);
  }
  mpz_class v(token.substr(i), 10);
  return negative ? mpz_class(-v) : v;
}

inline IntPolynomial parse_coeff_list(const std::string& text) {
  std::vector<mpz_class> coeffs;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string raw = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t first = raw.find_first_not_of(" \t");
    if (first == std::string::npos) throw parse_error("empty coefficient entry", pos);
    std::size_t last = raw.find_last_not_of(" \t");
    coeffs.push_back(parse_integer_token(text, pos + first, raw.substr(first, last - first + 1)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return IntPolynomial(std::move(coeffs));
}

}  // namespace detail

// Accepts either a comma-separated ascending coefficient list ("-1,-1,1") or
// term syntax ("x^2 - x - 1"): terms c, x, x^k, c*x^k (the * may be omitted)
// joined by + and -.
inline IntPolynomial parse_polynomial(const std::string& text) {
  if (text.find(',') != std::string::npos) return detail::parse_coeff_list(text);

  std::map<unsigned long, mpz_class> by_power;
  std::size_t i = 0;
  const auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw parse_error("empty polynomial", 0);

  bool first_term = true;
  while (true) {
    skip_ws();
    if (i == text.size()) break;

    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip_ws();
    } else if (!first_term) {
      throw parse_error("expected '+' or '-' between terms", i);
    }
    first_term = false;

    mpz_class coeff = 1;
    bool saw_coeff = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i < text.size() && (text[i] == '.' || text[i] == 'e' || text[i] == 'E'))
        throw parse_error("non-integer coefficient", start);
      coeff = mpz_class(text.substr(start, i - start), 10);
      saw_coeff = true;
      skip_ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip_ws();
        if (i == text.size() || text[i] != 'x')
          throw parse_error("expected 'x' after '*'", i);
      }
    }

    unsigned long power = 0;
    if (i < text.size() && text[i] == 'x') {
      ++i;
      power = 1;
      skip_ws();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip_ws();
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) throw parse_error("expected an exponent after '^'", i);
        power = std::stoul(text.substr(start, i - start));
      }
    } else if (!saw_coeff) {
      throw parse_error("expected a term", i);
    }

    by_power[power] += sign * coeff;
  }

  std::vector<mpz_class> coeffs(by_power.empty() ? 0 : by_power.rbegin()->first + 1,
                                mpz_class(0));
  for (const auto& [power, c] : by_power) coeffs[power] = c;
  return IntPolynomial(std::move(coeffs));
}

}  // namespace totreal
