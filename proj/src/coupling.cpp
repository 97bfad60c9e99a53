#include "joinery/coupling.hpp"

#include <functional>
#include <numeric>
#include <sstream>

#include "joinery/error.hpp"

namespace joinery {

namespace {

std::string tuple_to_string(const Tuple& t) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ")";
  return os.str();
}

}  // namespace

Coupling::Coupling(std::vector<SystemPtr> components,
                   std::map<Tuple, Rational> masses,
                   std::vector<ProductWord> equivariances)
    : components_(std::move(components)),
      masses_(std::move(masses)),
      equivariances_(std::move(equivariances)) {
  if (components_.empty())
    fail(ErrorKind::invalid_input, "coupling needs at least one component");

  Rational total(0);
  for (auto it = masses_.begin(); it != masses_.end();) {
    const auto& [t, m] = *it;
    if (static_cast<int>(t.size()) != arity())
      fail(ErrorKind::invalid_input, "tuple arity mismatch");
    for (int i = 0; i < arity(); ++i)
      if (t[i] < 0 || t[i] >= components_[i]->size())
        fail(ErrorKind::invalid_input, "tuple index out of range");
    if (m < 0) fail(ErrorKind::invalid_input, "negative coupling mass");
    total += m;
    it = (m == 0) ? masses_.erase(it) : std::next(it);
  }
  if (total != 1)
    fail(ErrorKind::invalid_input,
         "coupling mass is " + format_rational(total) + ", not 1");

  for (int i = 0; i < arity(); ++i) {
    std::vector<Rational> marg = marginal(i);
    for (int p = 0; p < components_[i]->size(); ++p)
      if (marg[p] != components_[i]->weight(p))
        fail(ErrorKind::invalid_input,
             "marginal " + std::to_string(i) + " differs at point " +
                 std::to_string(p));
  }

  for (const auto& word : equivariances_) {
    EquivarianceReport report = check_equivariance(*this, word);
    if (!report.holds)
      fail(ErrorKind::invalid_input,
           "declared equivariance fails at tuple " +
               tuple_to_string(*report.witness));
  }
}

Rational Coupling::mass(const Tuple& t) const {
  auto it = masses_.find(t);
  return it == masses_.end() ? Rational(0) : it->second;
}

std::vector<Rational> Coupling::marginal(int slot) const {
  std::vector<Rational> out(components_[slot]->size(), Rational(0));
  for (const auto& [t, m] : masses_) out[t[slot]] += m;
  return out;
}

ProductWord diagonal_word(const std::vector<SystemPtr>& components, int j) {
  ProductWord word;
  for (const auto& sys : components) {
    if (j >= sys->dims())
      fail(ErrorKind::invalid_input, "diagonal word: map index out of range");
    std::vector<long> e(sys->dims(), 0);
    e[j] = 1;
    word.push_back(std::move(e));
  }
  return word;
}

std::vector<ProductWord> all_diagonal_words(
    const std::vector<SystemPtr>& components) {
  int d = components.front()->dims();
  for (const auto& sys : components)
    if (sys->dims() != d)
      fail(ErrorKind::invalid_input,
           "diagonal equivariances need equal map counts");
  std::vector<ProductWord> words;
  for (int j = 0; j < d; ++j) words.push_back(diagonal_word(components, j));
  return words;
}

std::map<Tuple, Rational> pushforward(const Coupling& c,
                                      const ProductWord& word) {
  if (static_cast<int>(word.size()) != c.arity())
    fail(ErrorKind::invalid_input, "product word arity mismatch");
  std::vector<Permutation> slot_maps;
  for (int i = 0; i < c.arity(); ++i)
    slot_maps.push_back(transform_word(*c.component(i), word[i]));
  std::map<Tuple, Rational> out;
  for (const auto& [t, m] : c.masses()) {
    Tuple image(t.size());
    for (size_t i = 0; i < t.size(); ++i) image[i] = slot_maps[i].apply(t[i]);
    out[image] += m;
  }
  return out;
}

EquivarianceReport check_equivariance(const Coupling& c,
                                      const ProductWord& word) {
  std::map<Tuple, Rational> pushed = pushforward(c, word);
  EquivarianceReport report;
  auto note = [&](const Tuple& t, const Rational& diff) {
    Rational d = abs_rational(diff);
    if (d == 0) return;
    if (report.holds) {
      report.holds = false;
      report.witness = t;
    }
    if (d > report.max_discrepancy) report.max_discrepancy = d;
  };
  for (const auto& [t, m] : c.masses()) note(t, m - [&] {
        auto it = pushed.find(t);
        return it == pushed.end() ? Rational(0) : it->second;
      }());
  for (const auto& [t, m] : pushed)
    if (c.masses().find(t) == c.masses().end()) note(t, m);
  return report;
}

Coupling product_coupling(std::vector<SystemPtr> systems) {
  if (systems.empty())
    fail(ErrorKind::invalid_input, "product of zero systems");
  std::map<Tuple, Rational> masses;
  Tuple t(systems.size(), 0);
  // odometer over positive-weight points
  std::function<void(size_t, Rational)> walk = [&](size_t slot, Rational m) {
    if (slot == systems.size()) {
      masses[t] = m;
      return;
    }
    for (int p = 0; p < systems[slot]->size(); ++p) {
      if (systems[slot]->weight(p) == 0) continue;
      t[slot] = p;
      walk(slot + 1, m * systems[slot]->weight(p));
    }
  };
  walk(0, Rational(1));
  auto words = all_diagonal_words(systems);
  return Coupling(std::move(systems), std::move(masses), std::move(words));
}

Coupling rel_indep_over_factor(const SystemPtr& x, const SystemPtr& y,
                               const FactorMap& fx, const FactorMap& fy) {
  if (!(*fx.source() == *x) || !(*fy.source() == *y))
    fail(ErrorKind::invalid_input, "factor maps do not match the systems");
  if (!(*fx.target() == *fy.target()))
    fail(ErrorKind::invalid_input, "factor maps target different systems");
  const FiniteSystem& base = *fx.target();

  std::vector<std::vector<int>> x_fiber(base.size()), y_fiber(base.size());
  for (int p = 0; p < x->size(); ++p) x_fiber[fx.apply(p)].push_back(p);
  for (int q = 0; q < y->size(); ++q) y_fiber[fy.apply(q)].push_back(q);

  std::map<Tuple, Rational> masses;
  for (int c = 0; c < base.size(); ++c) {
    const Rational& rho = base.weight(c);
    if (rho == 0) continue;
    for (int p : x_fiber[c]) {
      if (x->weight(p) == 0) continue;
      for (int q : y_fiber[c]) {
        if (y->weight(q) == 0) continue;
        masses[{p, q}] = x->weight(p) * y->weight(q) / rho;
      }
    }
  }
  std::vector<SystemPtr> comps{x, y};
  auto words = all_diagonal_words(comps);
  return Coupling(std::move(comps), std::move(masses), std::move(words));
}

Coupling rel_indep_self_joining(const SystemPtr& x, const Partition& p) {
  Quotient q = factor_quotient(x, p);
  return rel_indep_over_factor(x, x, q.projection, q.projection);
}

Coupling furstenberg_self_joining(const SystemPtr& x, long period_cap) {
  const FiniteSystem& sys = *x;
  const int d = sys.dims();
  std::map<Tuple, Rational> masses;
  for (int p = 0; p < sys.size(); ++p) {
    if (sys.weight(p) == 0) continue;
    long q = point_period(sys, p, period_cap);
    Rational share = sys.weight(p) / Rational(q);
    Tuple t(d, p);
    for (long n = 1; n <= q; ++n) {
      for (int i = 0; i < d; ++i) t[i] = sys.map(i).apply(t[i]);
      masses[t] += share;
    }
  }

  std::vector<SystemPtr> comps(d, x);
  std::vector<ProductWord> words = all_diagonal_words(comps);
  ProductWord staircase;
  for (int i = 0; i < d; ++i) {
    std::vector<long> e(d, 0);
    e[i] = 1;
    staircase.push_back(std::move(e));
  }
  words.push_back(std::move(staircase));
  return Coupling(std::move(comps), std::move(masses), std::move(words));
}

BigSystem big_system(const SystemPtr& x, long period_cap) {
  Coupling lambda = furstenberg_self_joining(x, period_cap);
  const int d = x->dims();

  std::vector<Tuple> support;
  std::map<Tuple, int> index;
  std::vector<Rational> weights;
  for (const auto& [t, m] : lambda.masses()) {
    index.emplace(t, static_cast<int>(support.size()));
    support.push_back(t);
    weights.push_back(m);
  }

  auto product_map = [&](auto&& coord_map) {
    std::vector<int> fwd(support.size());
    for (size_t s = 0; s < support.size(); ++s) {
      Tuple image(d);
      for (int i = 0; i < d; ++i) image[i] = coord_map(i, support[s][i]);
      auto it = index.find(image);
      if (it == index.end())
        fail(ErrorKind::internal, "product map leaves the support");
      fwd[s] = it->second;
    }
    return Permutation(std::move(fwd));
  };

  std::vector<Permutation> maps;
  maps.push_back(product_map(
      [&](int i, int p) { return x->map(i).apply(p); }));  // T_1 x ... x T_d
  for (int j = 1; j < d; ++j)
    maps.push_back(product_map(
        [&](int, int p) { return x->map(j).apply(p); }));  // T_j x ... x T_j

  SystemPtr big = make_system(std::move(weights), std::move(maps));

  std::vector<int> first_coord(support.size());
  for (size_t s = 0; s < support.size(); ++s) first_coord[s] = support[s][0];
  FactorMap to_base(big, x, std::move(first_coord));

  // Eq: the sigma-algebra of coordinates 2..d sits inside the largest
  // C-factor of the big system.
  std::map<Tuple, int> tail_classes;
  std::vector<int> tail_labels(support.size());
  for (size_t s = 0; s < support.size(); ++s) {
    Tuple tail(support[s].begin() + 1, support[s].end());
    auto [it, fresh] =
        tail_classes.try_emplace(tail, static_cast<int>(tail_classes.size()));
    tail_labels[s] = it->second;
    (void)fresh;
  }
  Partition tail(big, tail_labels);
  bool tail_in_c = largest_c_factor(big).refines(tail);

  return BigSystem{std::move(big), std::move(support), std::move(to_base),
                   std::move(lambda), tail_in_c};
}

TruncationResult lambda_infinity_truncation(const Coupling& lam, int k,
                                            const Observable& g,
                                            long support_cap) {
  if (lam.arity() != 2)
    fail(ErrorKind::invalid_input, "truncation needs a two-component coupling");
  if (k < 1) fail(ErrorKind::invalid_input, "k must be positive");
  const SystemPtr& x = lam.component(0);
  const SystemPtr& y = lam.component(1);
  if (!(*g.system() == *y))
    fail(ErrorKind::invalid_input, "g lives on the wrong system");
  if (!g.is_exact())
    fail(ErrorKind::invalid_input, "truncation: float-mode observables rejected");

  std::vector<std::vector<std::pair<int, Rational>>> fiber(x->size());
  for (const auto& [t, m] : lam.masses()) fiber[t[0]].emplace_back(t[1], m);

  // memory bound: sum over fibers of |fiber|^k
  long double projected = 0;
  for (const auto& f : fiber) {
    if (f.empty()) continue;
    long double c = 1;
    for (int j = 0; j < k; ++j) c *= static_cast<long double>(f.size());
    projected += c;
  }
  if (projected > static_cast<long double>(support_cap))
    fail(ErrorKind::bound_exceeded, "truncation memory bound exceeded");

  std::map<Tuple, Rational> masses;
  Tuple t(k + 1, 0);
  for (int p = 0; p < x->size(); ++p) {
    if (fiber[p].empty()) continue;
    const Rational& mu = x->weight(p);
    t[0] = p;
    std::function<void(int, Rational)> walk = [&](int slot, Rational m) {
      if (slot == k + 1) {
        masses[t] += m;
        return;
      }
      for (const auto& [q, lm] : fiber[p]) {
        t[slot] = q;
        walk(slot + 1, m * lm / mu);
      }
    };
    walk(1, mu);
  }

  std::vector<SystemPtr> comps;
  comps.push_back(x);
  for (int j = 0; j < k; ++j) comps.push_back(y);
  std::vector<ProductWord> words = all_diagonal_words(comps);
  Coupling trunc(std::move(comps), std::move(masses), std::move(words));

  // (a) invariance under the cyclic rotation of the y slots
  bool shift_ok = true;
  {
    std::map<Tuple, Rational> rotated;
    for (const auto& [tt, m] : trunc.masses()) {
      Tuple image(tt.size());
      image[0] = tt[0];
      for (int j = 1; j <= k; ++j) image[j] = tt[j == k ? 1 : j + 1];
      rotated[image] += m;
    }
    shift_ok = rotated == trunc.masses();
  }

  // (b) exact L2 distance of the slot average to E[g|x]
  std::vector<Cyclotomic> mean(x->size());
  for (int p = 0; p < x->size(); ++p) {
    if (x->weight(p) == 0 || fiber[p].empty()) continue;
    Cyclotomic acc;
    for (const auto& [q, m] : fiber[p]) acc += Cyclotomic(m) * g.value(q);
    mean[p] = acc * Cyclotomic(Rational(1) / x->weight(p));
  }
  Observable cond_mean = Observable::exact(x, mean);

  Cyclotomic dist_sq;
  Cyclotomic inv_k(rational(1, k));
  for (const auto& [tt, m] : trunc.masses()) {
    Cyclotomic avg;
    for (int j = 1; j <= k; ++j) avg += g.value(tt[j]);
    avg *= inv_k;
    dist_sq += Cyclotomic(m) * (avg - cond_mean.value(tt[0])).abs_sq();
  }

  // (c) the factor generated by E[g|x] is invariant and E[g|x] measurable
  Partition factor = generated_factor(x, {cond_mean});
  bool factor_ok = !invariance_violation(factor).has_value();
  Observable projected_mean = conditional_expectation(cond_mean, factor);
  bool measurable = true;
  for (int p = 0; p < x->size(); ++p) {
    if (x->weight(p) == 0) continue;
    if (!(projected_mean.value(p) == cond_mean.value(p))) {
      measurable = false;
      break;
    }
  }

  return TruncationResult{std::move(trunc), shift_ok,       std::move(dist_sq),
                          std::move(cond_mean), factor_ok, measurable};
}

}  // namespace joinery
