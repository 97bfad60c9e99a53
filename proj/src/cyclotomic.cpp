#include "joinery/cyclotomic.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace joinery {

namespace {

// Exact division of integer polynomials, divisor monic. Ascending coeffs.
std::vector<Integer> divide_monic(const std::vector<Integer>& num,
                                  const std::vector<Integer>& den) {
  std::vector<Integer> rem = num;
  const size_t dd = den.size() - 1;
  std::vector<Integer> quot(num.size() - dd, Integer(0));
  for (size_t qi = quot.size(); qi-- > 0;) {
    Integer c = rem[qi + dd];
    if (c != 0) {
      quot[qi] = c;
      for (size_t j = 0; j <= dd; ++j) rem[qi + j] -= c * den[j];
    }
  }
  return quot;
}

// Remainder of a rational polynomial mod a monic integer polynomial.
std::vector<Rational> reduce_mod(std::vector<Rational> poly,
                                 const std::vector<Integer>& mod) {
  const size_t dd = mod.size() - 1;
  for (size_t deg = poly.size(); deg-- > dd;) {
    if (poly[deg] == 0) continue;
    Rational c = poly[deg];
    poly[deg] = 0;
    for (size_t j = 0; j < dd; ++j) poly[deg - dd + j] -= c * mod[j];
  }
  poly.resize(dd);
  return poly;
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(long order) {
  static std::map<long, std::vector<Integer>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  // Phi_L = (x^L - 1) / prod_{d | L, d < L} Phi_d, computed recursively
  // inside the same lock (recursion unrolled via the divisor loop).
  std::function<const std::vector<Integer>&(long)> get = [&](long L)
      -> const std::vector<Integer>& {
    auto found = cache.find(L);
    if (found != cache.end()) return found->second;
    std::vector<Integer> poly(L + 1, Integer(0));
    poly[0] = -1;
    poly[L] = 1;
    for (long d = 1; d < L; ++d)
      if (L % d == 0) poly = divide_monic(poly, get(d));
    return cache.emplace(L, std::move(poly)).first->second;
  };
  return get(order);
}

Cyclotomic Cyclotomic::from_poly(long order, std::vector<Rational> poly) {
  const auto& phi = cyclotomic_polynomial(order);
  Cyclotomic out(order, reduce_mod(std::move(poly), phi));
  out.shrink();
  return out;
}

void Cyclotomic::shrink() {
  if (order_ == 1) return;
  for (size_t k = 1; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) return;
  Rational c = coeffs_[0];
  order_ = 1;
  coeffs_ = {c};
}

Cyclotomic Cyclotomic::root_of_unity(long order, long power) {
  if (order <= 0) fail(ErrorKind::invalid_input, "root order must be positive");
  power %= order;
  if (power < 0) power += order;
  long g = std::gcd(order, power == 0 ? order : power);
  order /= g;
  power /= g;
  std::vector<Rational> poly(power + 1, Rational(0));
  poly[power] = 1;
  return from_poly(order, std::move(poly));
}

Cyclotomic Cyclotomic::from_rect(const Rational& re, const Rational& im) {
  if (im == 0) return Cyclotomic(re);
  Cyclotomic z = Cyclotomic(im) * i();
  z += Cyclotomic(re);
  return z;
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

std::optional<Rational> Cyclotomic::rational_value() const {
  if (order_ != 1) return std::nullopt;
  return coeffs_[0];
}

Rational Cyclotomic::rational_or_throw(const char* what) const {
  auto r = rational_value();
  if (!r)
    fail(ErrorKind::invalid_input,
         std::string(what) + ": value is not rational (" + to_string() + ")");
  return *r;
}

std::optional<std::pair<Rational, Rational>> Cyclotomic::gaussian_parts() const {
  if (order_ == 1) return std::make_pair(coeffs_[0], Rational(0));
  Cyclotomic zbar = conj();
  Cyclotomic re2 = *this + zbar;                      // 2 re
  Cyclotomic im2 = (*this - zbar) * root_of_unity(4, 3);  // 2 im  (times -i)
  auto re = re2.rational_value();
  auto im = im2.rational_value();
  if (!re || !im) return std::nullopt;
  return std::make_pair(*re / 2, *im / 2);
}

std::vector<Rational> Cyclotomic::lifted_coeffs(long target_order) const {
  if (target_order == order_) return coeffs_;
  if (target_order % order_ != 0)
    fail(ErrorKind::internal, "bad cyclotomic lift");
  long stride = target_order / order_;
  std::vector<Rational> poly((coeffs_.size() - 1) * stride + 1, Rational(0));
  for (size_t k = 0; k < coeffs_.size(); ++k) poly[k * stride] = coeffs_[k];
  return reduce_mod(std::move(poly), cyclotomic_polynomial(target_order));
}

Cyclotomic Cyclotomic::conj() const {
  if (order_ == 1) return *this;
  std::vector<Rational> poly(order_, Rational(0));
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    long e = (order_ - static_cast<long>(k)) % order_;
    poly[e] += coeffs_[k];
  }
  return from_poly(order_, std::move(poly));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (order_ == o.order_) {
    for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    shrink();
    return *this;
  }
  long m = std::lcm(order_, o.order_);
  std::vector<Rational> a = lifted_coeffs(m);
  std::vector<Rational> b = o.lifted_coeffs(m);
  for (size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  order_ = m;
  coeffs_ = std::move(a);
  shrink();
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (o.order_ == 1) {  // scalar scale
    const Rational& s = o.coeffs_[0];
    if (s == 0) { *this = Cyclotomic(); return *this; }
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  if (order_ == 1) {
    Rational s = coeffs_[0];
    *this = o;
    return *this *= Cyclotomic(s);
  }
  long m = std::lcm(order_, o.order_);
  std::vector<Rational> a = lifted_coeffs(m);
  std::vector<Rational> b = o.lifted_coeffs(m);
  std::vector<Rational> prod(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      prod[i + j] += a[i] * b[j];
    }
  }
  *this = from_poly(m, std::move(prod));
  return *this;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  if (order_ == o.order_) return coeffs_ == o.coeffs_;
  long m = std::lcm(order_, o.order_);
  return lifted_coeffs(m) == o.lifted_coeffs(m);
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> acc(0.0, 0.0);
  const double tau = 6.283185307179586476925286766559;
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    double angle = tau * static_cast<double>(k) / static_cast<double>(order_);
    acc += to_double(coeffs_[k]) *
           std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return acc;
}

std::string Cyclotomic::to_string() const {
  if (order_ == 1) return format_rational(coeffs_[0]);
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    if (!first) os << " + ";
    os << "(" << format_rational(coeffs_[k]) << ")";
    if (k > 0) os << "*z" << order_ << "^" << k;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace joinery
