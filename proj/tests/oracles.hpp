// Shared test fixtures: the desk-scale corpus of translation systems,
// standard observables on them, and independent brute-force oracles the
// implementations are checked against.
#pragma once

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "joinery/coupling.hpp"
#include "joinery/partition.hpp"
#include "joinery/system.hpp"

namespace oracles {

using namespace joinery;

inline std::uint64_t test_seed() {
  if (const char* v = std::getenv("JOINERY_SEED"))
    return std::strtoull(v, nullptr, 10);
  return 20080521;
}

// Z_m with translations x -> x + step_j, uniform weights.
inline SystemPtr cycle_system(int m, const std::vector<int>& steps) {
  std::vector<Rational> weights(m, rational(1, m));
  std::vector<Permutation> maps;
  for (int s : steps) {
    std::vector<int> fwd(m);
    for (int p = 0; p < m; ++p) fwd[p] = (p + s % m + m) % m;
    maps.emplace_back(std::move(fwd));
  }
  return make_system(std::move(weights), std::move(maps));
}

// Z_m x Z_m with translation vectors, uniform weights. Point (x, y) has
// index x * m + y.
inline SystemPtr grid_system(int m,
                             const std::vector<std::pair<int, int>>& vecs) {
  std::vector<Rational> weights(m * m, rational(1, m * m));
  std::vector<Permutation> maps;
  for (auto [a, b] : vecs) {
    std::vector<int> fwd(m * m);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y)
        fwd[x * m + y] =
            ((x + a % m + m) % m) * m + ((y + b % m + m) % m);
    maps.emplace_back(std::move(fwd));
  }
  return make_system(std::move(weights), std::move(maps));
}

struct CorpusEntry {
  std::string name;
  SystemPtr sys;
};

// Every Z_m and Z_m x Z_m translation family used by the acceptance
// criteria: m <= 7, d <= 3.
inline std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  for (int m = 2; m <= 7; ++m) {
    std::string tag = std::to_string(m);
    out.push_back({"Z" + tag + " (+1)", cycle_system(m, {1})});
    out.push_back({"Z" + tag + " (+1,+1)", cycle_system(m, {1, 1})});
    out.push_back({"Z" + tag + " (+1,+2)", cycle_system(m, {1, 2})});
    out.push_back({"Z" + tag + " (+1,+2,+3)", cycle_system(m, {1, 2, 3})});
    out.push_back({"Z" + tag + "^2 diag", grid_system(m, {{1, 1}})});
    out.push_back({"Z" + tag + "^2 axes", grid_system(m, {{1, 0}, {0, 1}})});
    out.push_back(
        {"Z" + tag + "^2 skew", grid_system(m, {{1, 2}, {2, 2}})});
    out.push_back({"Z" + tag + "^2 x-only", grid_system(m, {{1, 0}, {2, 0}})});
    out.push_back({"Z" + tag + "^2 d3",
                   grid_system(m, {{1, 0}, {0, 1}, {1, 1}})});
  }
  return out;
}

// ---- standard observables ----

inline Observable character(const SystemPtr& sys, int m, int a) {
  std::vector<Cyclotomic> values;
  for (int p = 0; p < sys->size(); ++p)
    values.push_back(Cyclotomic::root_of_unity(m, a * p));
  return Observable::exact(sys, std::move(values));
}

// chi_{a,b}(x, y) = zeta_m^{a x + b y} on a grid system.
inline Observable grid_character(const SystemPtr& sys, int m, int a, int b) {
  std::vector<Cyclotomic> values;
  for (int p = 0; p < sys->size(); ++p)
    values.push_back(Cyclotomic::root_of_unity(m, a * (p / m) + b * (p % m)));
  return Observable::exact(sys, std::move(values));
}

inline Observable recentred_indicator(const SystemPtr& sys, int p) {
  Observable f = point_indicator(sys, p);
  return f - constant_observable(sys, f.integral());
}

// Rational-valued family for the exact-average criteria.
inline std::vector<Observable> rational_family(const SystemPtr& sys) {
  std::vector<Observable> out;
  out.push_back(point_indicator(sys, 0));
  out.push_back(recentred_indicator(sys, 0));
  std::vector<Cyclotomic> ramp;
  for (int p = 0; p < sys->size(); ++p)
    ramp.push_back(Cyclotomic(rational(p + 1, 2 * sys->size())));
  out.push_back(Observable::exact(sys, std::move(ramp)));
  return out;
}

// ---- brute-force oracles ----

// (1/N) sum_{n=1..N} of the diagonal measure pushed by (T_1^n, ..., T_d^n).
inline std::map<Tuple, Rational> cesaro_coupling(const SystemPtr& x, long n_steps) {
  const int d = x->dims();
  std::map<Tuple, Rational> masses;
  for (int p = 0; p < x->size(); ++p) {
    if (x->weight(p) == 0) continue;
    Tuple t(d, p);
    for (long n = 1; n <= n_steps; ++n) {
      for (int i = 0; i < d; ++i) t[i] = x->map(i).apply(t[i]);
      masses[t] += x->weight(p) / Rational(n_steps);
    }
  }
  return masses;
}

// All set partitions of {0..n-1} via restricted growth strings (n <= 8).
inline std::vector<std::vector<int>> all_set_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> rgs(n, 0);
  for (;;) {
    out.push_back(rgs);
    int i = n - 1;
    while (i > 0) {
      int mx = 0;
      for (int k = 0; k < i; ++k) mx = std::max(mx, rgs[k]);
      if (rgs[i] <= mx) break;
      --i;
    }
    if (i == 0) break;
    ++rgs[i];
    for (int k = i + 1; k < n; ++k) rgs[k] = 0;
  }
  return out;
}

// Is f constant on the positive-weight part of every block?
inline bool measurable_mod_null(const Observable& f, const Partition& p) {
  for (int b = 0; b < p.block_count(); ++b) {
    const Cyclotomic* seen = nullptr;
    for (int x : p.block(b)) {
      if (f.system()->weight(x) == 0) continue;
      if (!seen)
        seen = &f.value(x);
      else if (!(*seen == f.value(x)))
        return false;
    }
  }
  return true;
}

}  // namespace oracles
