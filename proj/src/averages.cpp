#include "joinery/averages.hpp"

#include <cmath>

#include "joinery/error.hpp"
#include "joinery/satedness.hpp"

namespace joinery {

namespace {

void require_observable_family(const SystemPtr& x,
                               const std::vector<Observable>& fs) {
  if (static_cast<int>(fs.size()) != x->dims())
    fail(ErrorKind::invalid_input,
         "need exactly one observable per transformation");
  for (const auto& f : fs) {
    if (!f.is_exact())
      fail(ErrorKind::invalid_input, "float-mode observables rejected");
    if (!(*f.system() == *x))
      fail(ErrorKind::invalid_input, "observable on a different system");
  }
}

}  // namespace

Observable multiple_average(const SystemPtr& x,
                            const std::vector<Observable>& fs, long n_steps) {
  require_observable_family(x, fs);
  if (n_steps < 1) fail(ErrorKind::invalid_input, "N must be positive");
  const int n = x->size();
  const int d = x->dims();

  std::vector<std::vector<int>> pos(d, std::vector<int>(n));
  for (int i = 0; i < d; ++i)
    for (int p = 0; p < n; ++p) pos[i][p] = p;

  std::vector<Cyclotomic> acc(n);
  for (long step = 1; step <= n_steps; ++step) {
    for (int i = 0; i < d; ++i)
      for (int p = 0; p < n; ++p) pos[i][p] = x->map(i).apply(pos[i][p]);
    for (int p = 0; p < n; ++p) {
      Cyclotomic prod = fs[0].value(pos[0][p]);
      for (int i = 1; i < d; ++i) prod *= fs[i].value(pos[i][p]);
      acc[p] += prod;
    }
  }
  Cyclotomic inv(rational(1, n_steps));
  for (auto& v : acc) v *= inv;
  return Observable::exact(x, std::move(acc));
}

Observable exact_limit_average(const SystemPtr& x,
                               const std::vector<Observable>& fs,
                               long period_cap) {
  require_observable_family(x, fs);
  const int n = x->size();
  const int d = x->dims();
  std::vector<Cyclotomic> out(n);
  std::vector<int> pos(d);
  for (int p = 0; p < n; ++p) {
    long q = point_period(*x, p, period_cap);
    pos.assign(d, p);
    Cyclotomic acc;
    for (long step = 1; step <= q; ++step) {
      for (int i = 0; i < d; ++i) pos[i] = x->map(i).apply(pos[i]);
      Cyclotomic prod = fs[0].value(pos[0]);
      for (int i = 1; i < d; ++i) prod *= fs[i].value(pos[i]);
      acc += prod;
    }
    out[p] = acc * Cyclotomic(rational(1, q));
  }
  return Observable::exact(x, std::move(out));
}

ProjectionCheck limit_equals_projected(const SystemPtr& x,
                                       const std::vector<Observable>& fs,
                                       long period_cap) {
  require_observable_family(x, fs);
  std::vector<Observable> projected = fs;
  projected[0] = conditional_expectation(fs[0], largest_c_factor(x));

  Observable limit = exact_limit_average(x, fs, period_cap);
  Observable plimit = exact_limit_average(x, projected, period_cap);
  Rational disc =
      (limit - plimit).norm_sq().rational_or_throw("projection discrepancy");
  return ProjectionCheck{disc == 0, std::move(disc), std::move(limit),
                         std::move(plimit)};
}

std::vector<Observable> twisted_products(const SystemPtr& x,
                                         const std::vector<Observable>& fs,
                                         long count) {
  require_observable_family(x, fs);
  std::vector<Observable> out;
  out.reserve(count);
  std::vector<Observable> rotated = fs;
  for (long step = 1; step <= count; ++step) {
    for (int i = 0; i < x->dims(); ++i)
      rotated[i] = rotated[i].pullback(x->map(i));
    Observable prod = rotated[0];
    for (int i = 1; i < x->dims(); ++i) prod = prod * rotated[i];
    out.push_back(std::move(prod));
  }
  return out;
}

namespace {

Cyclotomic inner(const Observable& u, const Observable& v) {
  return (u * v.conjugate()).integral();
}

}  // namespace

VdcExact vdc_quantities(const std::vector<Observable>& us, long n_steps,
                        long h_steps) {
  if (n_steps < 1 || h_steps < 1)
    fail(ErrorKind::invalid_input, "N and H must be positive");
  if (static_cast<long>(us.size()) < n_steps + h_steps)
    fail(ErrorKind::invalid_input, "sequence shorter than N + H");
  for (const auto& u : us)
    if (!u.is_exact())
      fail(ErrorKind::invalid_input, "float-mode observables rejected");

  // B^2 = max squared norm over the whole list
  Rational b_sq(0);
  for (const auto& u : us) {
    Rational v = u.norm_sq().rational_or_throw("vdc norm");
    if (v > b_sq) b_sq = v;
  }

  const SystemPtr& sys = us.front().system();
  Observable mean = constant_observable(sys, Cyclotomic(0));
  for (long k = 0; k < n_steps; ++k) mean = mean + us[k];
  mean = mean.scaled(Cyclotomic(rational(1, n_steps)));
  Rational lhs_sq = mean.norm_sq().rational_or_throw("vdc lhs");

  Cyclotomic corr;
  for (long h = 1; h <= h_steps; ++h) {
    Cyclotomic acc;
    for (long k = 0; k < n_steps; ++k) acc += inner(us[k], us[k + h]);
    corr += acc * Cyclotomic(rational(1, n_steps));
  }
  corr *= Cyclotomic(rational(1, h_steps));

  Rational tail(0);
  for (long k = 0; k < n_steps; ++k) {
    Observable window = constant_observable(sys, Cyclotomic(0));
    for (long h = 1; h <= h_steps; ++h) window = window + us[k + h];
    window = window.scaled(Cyclotomic(rational(1, h_steps)));
    tail += window.norm_sq().rational_or_throw("vdc window");
  }
  Rational rhs = Rational(2) * tail / Rational(n_steps) +
                 Rational(8) * b_sq * Rational(h_steps) * Rational(h_steps) /
                     (Rational(n_steps) * Rational(n_steps));
  return VdcExact{std::move(lhs_sq), std::move(corr), std::move(rhs)};
}

VdcFloat vdc_quantities(const std::vector<std::vector<double>>& us,
                        long n_steps, long h_steps) {
  if (n_steps < 1 || h_steps < 1)
    fail(ErrorKind::invalid_input, "N and H must be positive");
  if (static_cast<long>(us.size()) < n_steps + h_steps)
    fail(ErrorKind::invalid_input, "sequence shorter than N + H");
  const size_t dim = us.front().size();
  for (const auto& u : us)
    if (u.size() != dim)
      fail(ErrorKind::invalid_input, "inconsistent vector dimensions");

  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0;
    for (size_t i = 0; i < dim; ++i) acc += a[i] * b[i];
    return acc;
  };

  double b_sq = 0;
  for (const auto& u : us) b_sq = std::max(b_sq, dot(u, u));

  std::vector<double> mean(dim, 0.0);
  for (long k = 0; k < n_steps; ++k)
    for (size_t i = 0; i < dim; ++i) mean[i] += us[k][i];
  for (auto& v : mean) v /= static_cast<double>(n_steps);
  double lhs_sq = dot(mean, mean);

  double corr = 0;
  for (long h = 1; h <= h_steps; ++h) {
    double acc = 0;
    for (long k = 0; k < n_steps; ++k) acc += dot(us[k], us[k + h]);
    corr += acc / static_cast<double>(n_steps);
  }
  corr /= static_cast<double>(h_steps);

  double tail = 0;
  std::vector<double> window(dim);
  for (long k = 0; k < n_steps; ++k) {
    std::fill(window.begin(), window.end(), 0.0);
    for (long h = 1; h <= h_steps; ++h)
      for (size_t i = 0; i < dim; ++i) window[i] += us[k + h][i];
    for (auto& v : window) v /= static_cast<double>(h_steps);
    tail += dot(window, window);
  }
  double rhs = 2.0 * tail / static_cast<double>(n_steps) +
               8.0 * b_sq * static_cast<double>(h_steps) *
                   static_cast<double>(h_steps) /
                   (static_cast<double>(n_steps) * static_cast<double>(n_steps));
  return VdcFloat{std::sqrt(lhs_sq), lhs_sq, corr, rhs};
}

VanishingReport vanishing_check(const SystemPtr& x,
                                const std::vector<Observable>& fs,
                                long period_cap) {
  require_observable_family(x, fs);
  BigSystem big = big_system(x, period_cap);
  const int d = x->dims();

  std::vector<Cyclotomic> tensor(big.system->size());
  for (int s = 0; s < big.system->size(); ++s) {
    Cyclotomic prod = fs[0].value(big.support[s][0]);
    for (int i = 1; i < d; ++i) prod *= fs[i].value(big.support[s][i]);
    tensor[s] = prod;
  }
  Observable f_tensor = Observable::exact(big.system, std::move(tensor));

  Partition iso_first = orbit_partition(big.system, big.system->map(0));
  Observable cond = conditional_expectation(f_tensor.conjugate(), iso_first);
  Cyclotomic integral = (f_tensor * cond).integral();
  bool vanishes = integral.is_zero();

  Observable f1_proj = conditional_expectation(fs[0], largest_c_factor(x));
  bool f1_zero =
      f1_proj.norm_sq().rational_or_throw("projection norm") == 0;

  // The lambda-derived joining: x (first coordinate) against the C-system
  // quotient of the big system by its largest C-factor.
  Partition big_c = largest_c_factor(big.system);
  Quotient cq = factor_quotient(big.system, big_c);
  if (!is_c_system(cq.system))
    fail(ErrorKind::internal, "C-factor quotient is not a C-system");
  std::map<Tuple, Rational> masses;
  for (int s = 0; s < big.system->size(); ++s) {
    if (big.system->weight(s) == 0) continue;
    masses[{big.support[s][0], cq.projection.apply(s)}] +=
        big.system->weight(s);
  }
  std::vector<SystemPtr> comps{x, cq.system};
  auto words = all_diagonal_words(comps);
  Coupling derived(std::move(comps), std::move(masses), std::move(words));

  Rational residual =
      satedness_certificate(x, cq.system, derived, fs[0]).residual_sq;

  bool premises = f1_zero && residual == 0;
  return VanishingReport{std::move(integral), vanishes,          f1_zero,
                         std::move(residual), premises,
                         !premises || vanishes};
}

}  // namespace joinery
