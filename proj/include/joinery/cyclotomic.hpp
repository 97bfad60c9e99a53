#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "joinery/rational.hpp"

namespace joinery {

// L-th cyclotomic polynomial, monic, ascending integer coefficients. Memoized.
const std::vector<Integer>& cyclotomic_polynomial(long order);

// An element of the cyclotomic field Q(zeta_L), zeta_L = e^{2*pi*i/L},
// stored as rational coordinates over the power basis
// 1, zeta, ..., zeta^{phi(L)-1} (residues mod Phi_L, so the zero test is
// coordinate-wise). Rational values collapse to order 1; mixed orders lift
// to the lcm. Gaussian rationals a+bi are the order-4 case.
class Cyclotomic {
 public:
  Cyclotomic() : order_(1), coeffs_{Rational(0)} {}
  Cyclotomic(const Rational& r) : order_(1), coeffs_{r} {}
  Cyclotomic(long n) : order_(1), coeffs_{Rational(n)} {}

  // zeta_order^power, reduced to minimal order via gcd.
  static Cyclotomic root_of_unity(long order, long power);
  static Cyclotomic i() { return root_of_unity(4, 1); }
  static Cyclotomic from_rect(const Rational& re, const Rational& im);

  long order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const { return order_ == 1; }
  // Present iff the value lies in Q.
  std::optional<Rational> rational_value() const;
  Rational rational_or_throw(const char* what) const;
  // Present iff the value lies in Q(i): (re, im).
  std::optional<std::pair<Rational, Rational>> gaussian_parts() const;

  Cyclotomic conj() const;
  Cyclotomic abs_sq() const { return *this * conj(); }

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }

  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  std::complex<double> to_complex() const;
  std::string to_string() const;

  // Coordinates lifted into Q(zeta_target), target a multiple of order().
  std::vector<Rational> lifted_coeffs(long target_order) const;

 private:
  Cyclotomic(long order, std::vector<Rational> coeffs)
      : order_(order), coeffs_(std::move(coeffs)) {}
  static Cyclotomic from_poly(long order, std::vector<Rational> poly);
  void shrink();

  long order_;
  std::vector<Rational> coeffs_;
};

}  // namespace joinery
