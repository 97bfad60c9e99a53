#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "joinery/averages.hpp"
#include "joinery/error.hpp"
#include "oracles.hpp"

using namespace joinery;

namespace {

// independent direct-summation oracle
Observable brute_average(const SystemPtr& x, const std::vector<Observable>& fs,
                         long n_steps) {
  std::vector<Cyclotomic> acc(x->size());
  for (int p = 0; p < x->size(); ++p) {
    for (long n = 1; n <= n_steps; ++n) {
      Cyclotomic prod(1);
      for (int i = 0; i < x->dims(); ++i) {
        int q = p;
        for (long s = 0; s < n; ++s) q = x->map(i).apply(q);
        prod *= fs[i].value(q);
      }
      acc[p] += prod;
    }
    acc[p] *= Cyclotomic(rational(1, n_steps));
  }
  return Observable::exact(x, std::move(acc));
}

Rational sup_sq(const Observable& f) {
  Rational best(0);
  for (int p = 0; p < f.size(); ++p) {
    Rational v = f.value(p).abs_sq().rational_or_throw("sup norm");
    if (v > best) best = v;
  }
  return best;
}

}  // namespace

TEST_CASE("multiple average: constants and the identity-map reduction") {
  auto z5 = oracles::cycle_system(5, {1});
  Observable c = constant_observable(z5, Cyclotomic(Rational(3, 7)));
  for (long n : {1L, 4L, 9L})
    CHECK((multiple_average(z5, {c}, n) - c).norm_sq().is_zero());

  // T1 = Id: A_N = f1 times the single-transformation average of f2
  auto sys = oracles::cycle_system(5, {0, 2});
  Observable f1 = oracles::rational_family(sys)[2];
  Observable f2 = point_indicator(sys, 1);
  for (long n : {3L, 5L, 8L}) {
    Observable got = multiple_average(sys, {f1, f2}, n);
    Observable single = brute_average(sys, {f2}, n);
    // the d=1 average of f2 under T2 alone
    auto sys1 = make_system(sys->weights(), {sys->map(1)});
    Observable f2_only = Observable::exact(sys1, f2.values());
    Observable avg1 = multiple_average(sys1, {f2_only}, n);
    Observable expect = f1 * Observable::exact(sys, avg1.values());
    CHECK((got - expect).norm_sq().is_zero());
    CHECK((got - f1 * single).norm_sq().is_zero());
  }
}

TEST_CASE("multiple average matches the brute-force oracle") {
  auto z5 = oracles::cycle_system(5, {1, 2});
  std::vector<Observable> fs{point_indicator(z5, 0), point_indicator(z5, 0)};
  for (long n : {1L, 3L, 5L, 7L, 25L}) {
    Observable got = multiple_average(z5, fs, n);
    CHECK((got - brute_average(z5, fs, n)).norm_sq().is_zero());
  }
  // A_5 is (1/5) * indicator of the solvable fiber {0}
  Observable a5 = multiple_average(z5, fs, 5);
  CHECK(a5.value(0) == Cyclotomic(Rational(1, 5)));
  for (int p = 1; p < 5; ++p) CHECK(a5.value(p).is_zero());

  Observable fl = Observable::floating(z5, std::vector<std::complex<double>>(5));
  CHECK_THROWS_AS(multiple_average(z5, {fs[0], fl}, 3), Error);
}

TEST_CASE("exact limit average: degenerate and derived cases") {
  // identity maps: the limit is the plain product
  auto idsys = oracles::cycle_system(4, {0, 0});
  Observable g1 = oracles::rational_family(idsys)[2];
  Observable g2 = point_indicator(idsys, 2);
  CHECK((exact_limit_average(idsys, {g1, g2}) - g1 * g2).norm_sq().is_zero());

  // d = 1 ergodic rotation: the limit is the mean
  auto z5r = oracles::cycle_system(5, {1});
  Observable f = oracles::rational_family(z5r)[2];
  Observable lim = exact_limit_average(z5r, {f});
  for (int p = 0; p < 5; ++p) CHECK(lim.value(p) == f.integral());

  // Z5 (+1,+2) with indicators: (1/5) indicator{0}, integral 1/25 = lambda
  auto z5 = oracles::cycle_system(5, {1, 2});
  std::vector<Observable> fs{point_indicator(z5, 0), point_indicator(z5, 0)};
  Observable bar = exact_limit_average(z5, fs);
  CHECK(bar.value(0) == Cyclotomic(Rational(1, 5)));
  for (int p = 1; p < 5; ++p) CHECK(bar.value(p).is_zero());
  Coupling lam = furstenberg_self_joining(z5);
  CHECK(bar.integral() == Cyclotomic(lam.mass({0, 0})));
}

TEST_CASE("A_{kP} equals the limit; the 1/N bound holds (corpus sample)") {
  for (const auto& entry : oracles::corpus()) {
    if (entry.sys->size() > 30) continue;
    CAPTURE(entry.name);
    const auto& sys = entry.sys;
    std::vector<Observable> fs;
    auto family = oracles::rational_family(sys);
    for (int i = 0; i < sys->dims(); ++i) fs.push_back(family[i % family.size()]);

    long period = sys->period().get_si();
    Observable bar = exact_limit_average(sys, fs);
    for (long k : {1L, 2L, 3L})
      CHECK((multiple_average(sys, fs, k * period) - bar).norm_sq().is_zero());

    // || A_N - bar ||^2 <= (2 P M / N)^2 with M the sup norm of prod f_i
    Observable prod = fs[0];
    for (int i = 1; i < sys->dims(); ++i) prod = prod * fs[i];
    Rational m_sq = sup_sq(prod);
    for (long n : {1L, 2L, period + 1, 2 * period - 1}) {
      Rational lhs = (multiple_average(sys, fs, n) - bar)
                         .norm_sq()
                         .rational_or_throw("bound");
      Rational rhs =
          Rational(4) * Rational(period) * Rational(period) * m_sq /
          (Rational(n) * Rational(n));
      CHECK(lhs <= rhs);
    }
  }
}

TEST_CASE("limit_equals_projected: C-systems and measurable f1") {
  for (const auto& entry : oracles::corpus()) {
    if (entry.sys->size() > 30) continue;
    const auto& sys = entry.sys;
    if (!is_c_system(sys)) continue;
    CAPTURE(entry.name);
    std::vector<Observable> fs;
    auto family = oracles::rational_family(sys);
    for (int i = 0; i < sys->dims(); ++i) fs.push_back(family[(i + 1) % family.size()]);
    ProjectionCheck check = limit_equals_projected(sys, fs);
    CHECK(check.equal);
    CHECK(check.discrepancy_sq == Rational(0));
  }

  // f1 already measurable with respect to X_C: projection changes nothing
  auto sys = oracles::grid_system(5, {{1, 0}, {2, 0}});  // X_C = y-coordinate
  Partition c_factor = largest_c_factor(sys);
  Observable raw = oracles::rational_family(sys)[2];
  Observable f1 = conditional_expectation(raw, c_factor);
  Observable f2 = point_indicator(sys, 3);
  ProjectionCheck check = limit_equals_projected(sys, {f1, f2});
  CHECK(check.equal);
}

TEST_CASE("limit_equals_projected: fifth-root observable on Z5 (+1,+2)") {
  auto z5 = oracles::cycle_system(5, {1, 2});
  Observable f1 = oracles::character(z5, 5, 1);  // e^{2 pi i x/5}
  Observable f2 = oracles::character(z5, 5, 2);

  ProjectionCheck check = limit_equals_projected(z5, {f1, f2});
  CHECK_FALSE(check.equal);
  CHECK(check.discrepancy_sq == Rational(1));
  // the limit itself is the character zeta^{3x}
  Observable expect = oracles::character(z5, 5, 3);
  CHECK((check.limit - expect).norm_sq().is_zero());
  // while the resonance-free pair averages to zero
  ProjectionCheck off = limit_equals_projected(z5, {f1, f1});
  CHECK(off.equal);
}

TEST_CASE("vdc quantities: constant and alternating sequences") {
  auto z5 = oracles::cycle_system(5, {1});
  Observable v = oracles::rational_family(z5)[2];
  std::vector<Observable> constant(12, v);
  VdcExact r = vdc_quantities(constant, 6, 3);
  CHECK(Cyclotomic(r.lhs_sq) == v.norm_sq());
  CHECK(r.corr == v.norm_sq());
  CHECK(r.lhs_sq <= r.rhs_bound);

  std::vector<Observable> alternating;
  for (int n = 0; n < 12; ++n)
    alternating.push_back(n % 2 ? v : v.scaled(Cyclotomic(-1)));
  VdcExact ra = vdc_quantities(alternating, 6, 3);
  CHECK(ra.lhs_sq == Rational(0));
  CHECK(ra.lhs_sq <= ra.rhs_bound);

  CHECK_THROWS_AS(vdc_quantities(alternating, 10, 3), Error);  // too short
}

TEST_CASE("vdc inequality on random exact sequences") {
  std::mt19937_64 rng(oracles::test_seed() ^ 0x42);
  auto sys = oracles::cycle_system(6, {2, 3});
  std::uniform_int_distribution<long> num(-3, 3);
  for (int round = 0; round < 25; ++round) {
    std::vector<Observable> us;
    for (int n = 0; n < 14; ++n) {
      std::vector<Cyclotomic> vals;
      for (int p = 0; p < 6; ++p)
        vals.push_back(Cyclotomic::from_rect(rational(num(rng), 2),
                                             rational(num(rng), 3)));
      us.push_back(Observable::exact(sys, std::move(vals)));
    }
    VdcExact r = vdc_quantities(us, 10, 4);
    CHECK(r.lhs_sq <= r.rhs_bound);
  }
}

TEST_CASE("vdc on the twisted sequence: corr vanishes over full periods") {
  // Z5 x Z5 acting in the x direction only; f1 = f2 = zeta^x has
  // E[f1 | X_C] = 0 (zero mean on every row)
  auto sys = oracles::grid_system(5, {{1, 0}, {2, 0}});
  Observable f = oracles::grid_character(sys, 5, 1, 0);
  Observable proj = conditional_expectation(f, largest_c_factor(sys));
  REQUIRE(proj.norm_sq().is_zero());

  std::vector<Observable> us = twisted_products(sys, {f, f}, 130);
  VdcExact r = vdc_quantities(us, 125, 5);
  CHECK(r.lhs_sq <= r.rhs_bound);
  CHECK(r.corr.is_zero());  // average of zeta^{-3h} over a full period

  // between full periods the correlation is nonzero
  VdcExact partial = vdc_quantities(us, 125, 3);
  CHECK_FALSE(partial.corr.is_zero());
}

TEST_CASE("vdc float mode mirrors the exact formulas") {
  std::mt19937_64 rng(oracles::test_seed() ^ 0x7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::vector<double>> us;
    for (int n = 0; n < 20; ++n) {
      std::vector<double> v(4);
      for (auto& c : v) c = u(rng);
      us.push_back(std::move(v));
    }
    VdcFloat r = vdc_quantities(us, 12, 6);
    CHECK(r.lhs_sq <= r.rhs_bound * (1 + 1e-12));
    CHECK(r.lhs == doctest::Approx(std::sqrt(r.lhs_sq)));
  }
}

TEST_CASE("vanishing check: zero function and the Z5 counterexample") {
  auto z5 = oracles::cycle_system(5, {1, 2});

  Observable zero = constant_observable(z5, Cyclotomic(0));
  VanishingReport rz = vanishing_check(z5, {zero, point_indicator(z5, 0)});
  CHECK(rz.vanishes);
  CHECK(rz.implication_holds);

  // f1 = zeta^x, f2 = zeta^{2x}: the resonant pair; the integral is 1
  Observable f1 = oracles::character(z5, 5, 1);
  Observable f2 = oracles::character(z5, 5, 2);
  VanishingReport r = vanishing_check(z5, {f1, f2});
  CHECK(r.f1_projection_zero);
  CHECK_FALSE(r.vanishes);
  CHECK(r.integral == Cyclotomic(1));
  CHECK(r.residual_sq > 0);  // the system is not sated, consistently
  CHECK(r.implication_holds);

  // cross-module consistency: the integral equals the full-period vdc corr
  std::vector<Observable> us = twisted_products(z5, {f1, f2}, 30);
  VdcExact v = vdc_quantities(us, 25, 5);
  CHECK(v.corr == r.integral);
}

TEST_CASE("vanishing check: premises force vanishing (corpus)") {
  for (const auto& entry : oracles::corpus()) {
    if (entry.sys->size() > 10) continue;
    CAPTURE(entry.name);
    const auto& sys = entry.sys;
    std::vector<Observable> fs;
    auto family = oracles::rational_family(sys);
    fs.push_back(oracles::recentred_indicator(sys, 0));
    for (int i = 1; i < sys->dims(); ++i)
      fs.push_back(family[i % family.size()]);
    VanishingReport r = vanishing_check(sys, fs);
    CHECK(r.implication_holds);
    if (r.premises_hold) CHECK(r.vanishes);
  }
}

TEST_CASE("limit integral equals the Furstenberg integral (corpus, indicators)") {
  for (const auto& entry : oracles::corpus()) {
    if (entry.sys->size() > 30) continue;
    CAPTURE(entry.name);
    const auto& sys = entry.sys;
    std::vector<Observable> fs;
    for (int i = 0; i < sys->dims(); ++i)
      fs.push_back(point_indicator(sys, i % sys->size()));
    Observable bar = exact_limit_average(sys, fs);
    Coupling lam = furstenberg_self_joining(sys);
    Cyclotomic lam_integral;
    for (const auto& [t, m] : lam.masses()) {
      Cyclotomic prod(1);
      for (int i = 0; i < sys->dims(); ++i) prod *= fs[i].value(t[i]);
      lam_integral += Cyclotomic(m) * prod;
    }
    CHECK(bar.integral() == lam_integral);
  }
}
