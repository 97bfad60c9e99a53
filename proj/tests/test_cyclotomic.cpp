#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "joinery/cyclotomic.hpp"

using joinery::Cyclotomic;
using joinery::Integer;
using joinery::Rational;
using joinery::cyclotomic_polynomial;

namespace {
std::vector<long> poly_longs(long order) {
  std::vector<long> out;
  for (const auto& c : cyclotomic_polynomial(order)) out.push_back(c.get_si());
  return out;
}
}  // namespace

TEST_CASE("cyclotomic polynomials match known values") {
  CHECK(poly_longs(1) == std::vector<long>{-1, 1});
  CHECK(poly_longs(2) == std::vector<long>{1, 1});
  CHECK(poly_longs(4) == std::vector<long>{1, 0, 1});
  CHECK(poly_longs(5) == std::vector<long>{1, 1, 1, 1, 1});
  CHECK(poly_longs(6) == std::vector<long>{1, -1, 1});
  CHECK(poly_longs(12) == std::vector<long>{1, 0, -1, 0, 1});
}

TEST_CASE("roots of unity satisfy the defining relations") {
  Cyclotomic z5 = Cyclotomic::root_of_unity(5, 1);
  Cyclotomic sum = Cyclotomic(1);
  Cyclotomic pow = Cyclotomic(1);
  for (int k = 1; k < 5; ++k) {
    pow *= z5;
    sum += pow;
  }
  CHECK(sum.is_zero());
  CHECK(pow * z5 == Cyclotomic(1));  // z5^5 = 1
  CHECK((Cyclotomic::i() * Cyclotomic::i()) == Cyclotomic(-1));
  CHECK(Cyclotomic::root_of_unity(10, 4) == Cyclotomic::root_of_unity(5, 2));
  CHECK(Cyclotomic::root_of_unity(6, 5) ==
        Cyclotomic::root_of_unity(2, 1) * Cyclotomic::root_of_unity(3, 1));
}

TEST_CASE("gaussian rationals embed and extract") {
  Rational re = joinery::parse_rational("3/2");
  Rational im = joinery::parse_rational("-7/3");
  Cyclotomic z = Cyclotomic::from_rect(re, im);
  auto parts = z.gaussian_parts();
  REQUIRE(parts.has_value());
  CHECK(parts->first == re);
  CHECK(parts->second == im);

  // (a+bi)(c+di) against hand expansion
  Cyclotomic w = Cyclotomic::from_rect(Rational(2), Rational(5));
  Cyclotomic prod = z * w;
  auto pp = prod.gaussian_parts();
  REQUIRE(pp.has_value());
  CHECK(pp->first == re * 2 - im * 5);
  CHECK(pp->second == re * 5 + im * 2);

  CHECK_FALSE(Cyclotomic::root_of_unity(5, 1).gaussian_parts().has_value());
}

TEST_CASE("conjugation and modulus") {
  Cyclotomic z5 = Cyclotomic::root_of_unity(5, 2);
  CHECK(z5.abs_sq() == Cyclotomic(1));
  CHECK(z5.conj() == Cyclotomic::root_of_unity(5, 3));
  Cyclotomic mix = z5 + Cyclotomic::from_rect(Rational(1, 2), Rational(3));
  CHECK(mix.conj().conj() == mix);
  auto r = (mix * mix.conj()).rational_value();
  // |1/2 + 3i + z5^2|^2 is not rational
  CHECK_FALSE(r.has_value());
  CHECK(mix.abs_sq() == mix.abs_sq().conj());  // real
}

TEST_CASE("rational fast paths collapse orders") {
  Cyclotomic z = Cyclotomic::root_of_unity(7, 3);
  Cyclotomic one = z * z.conj();
  CHECK(one.is_rational());
  CHECK(one.rational_value() == Rational(1));
  Cyclotomic zero = z - z;
  CHECK(zero.is_zero());
  CHECK(zero.is_rational());
  CHECK((Cyclotomic(Rational(3, 4)) * z + Cyclotomic(Rational(1, 4)) * z ==
         z * Cyclotomic(1)));
}

TEST_CASE("exact arithmetic agrees with complex doubles") {
  std::mt19937_64 rng(20080521);
  std::uniform_int_distribution<long> order_pick(0, 3);
  std::uniform_int_distribution<long> coeff(-4, 4);
  const long orders[] = {1, 4, 5, 6};
  for (int round = 0; round < 200; ++round) {
    auto make = [&]() {
      long L = orders[order_pick(rng)];
      Cyclotomic acc;
      for (long k = 0; k < L; ++k)
        acc += Cyclotomic(Rational(coeff(rng), 3)) *
               Cyclotomic::root_of_unity(L, k);
      return acc;
    };
    Cyclotomic a = make(), b = make();
    std::complex<double> lhs = (a * b + a.conj()).to_complex();
    std::complex<double> rhs =
        a.to_complex() * b.to_complex() + std::conj(a.to_complex());
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}
