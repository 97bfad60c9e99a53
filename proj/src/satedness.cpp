#include "joinery/satedness.hpp"

#include <algorithm>

#include "joinery/error.hpp"

namespace joinery {

namespace {

void require_joining_of(const Coupling& lam, const SystemPtr& x,
                        const SystemPtr& y) {
  if (lam.arity() != 2 || !(*lam.component(0) == *x) ||
      !(*lam.component(1) == *y))
    fail(ErrorKind::invalid_input, "coupling does not join the given systems");
  for (const auto& word : all_diagonal_words(lam.components()))
    if (!check_equivariance(lam, word).holds)
      fail(ErrorKind::invalid_input,
           "coupling lacks a diagonal equivariance");
}

}  // namespace

CertificateResult satedness_certificate(const SystemPtr& x, const SystemPtr& y,
                                        const Coupling& lam,
                                        const Observable& f) {
  if (!is_c_system(y))
    fail(ErrorKind::invalid_input, "certificate target is not a C-system");
  if (!f.is_exact() || !(*f.system() == *x))
    fail(ErrorKind::invalid_input, "f must be exact and live on x");
  require_joining_of(lam, x, y);

  Observable centred = f - conditional_expectation(f, largest_c_factor(x));

  std::vector<Cyclotomic> corr(y->size());
  for (const auto& [t, m] : lam.masses())
    corr[t[1]] += Cyclotomic(m) * centred.value(t[0]);

  CertificateResult out;
  out.residual_sq = Rational(0);
  for (int q = 0; q < y->size(); ++q) {
    Rational v = corr[q].abs_sq().rational_or_throw("certificate residual");
    if (v > out.residual_sq) {
      out.residual_sq = v;
      out.argmax_g = q;
    }
  }
  return out;
}

namespace {

// Orbits of the product action generated by T_j x S_j on X x Y.
struct ProductOrbits {
  std::vector<int> orbit_of;  // tuple id p * ny + q -> orbit id
  std::vector<std::vector<int>> members;
};

ProductOrbits product_orbits(const FiniteSystem& x, const FiniteSystem& y) {
  const int nx = x.size(), ny = y.size();
  ProductOrbits out;
  out.orbit_of.assign(nx * ny, -1);
  for (int start = 0; start < nx * ny; ++start) {
    if (out.orbit_of[start] != -1) continue;
    int orbit = static_cast<int>(out.members.size());
    out.members.emplace_back();
    std::vector<int> stack{start};
    out.orbit_of[start] = orbit;
    while (!stack.empty()) {
      int id = stack.back();
      stack.pop_back();
      out.members[orbit].push_back(id);
      int p = id / ny, q = id % ny;
      for (int j = 0; j < x.dims(); ++j) {
        int nid = x.map(j).apply(p) * ny + y.map(j).apply(q);
        if (out.orbit_of[nid] == -1) {
          out.orbit_of[nid] = orbit;
          stack.push_back(nid);
        }
      }
    }
    std::sort(out.members[orbit].begin(), out.members[orbit].end());
  }
  return out;
}

}  // namespace

FalsifierResult satedness_falsifier(const SystemPtr& x, const SystemPtr& y,
                                    long tuple_bound, FalsifierMethod method) {
  if (!is_c_system(y))
    fail(ErrorKind::invalid_input, "falsifier target is not a C-system");
  if (x->dims() != y->dims())
    fail(ErrorKind::invalid_input, "falsifier systems have different map counts");
  const long tuples = static_cast<long>(x->size()) * y->size();
  if (tuples > tuple_bound)
    fail(ErrorKind::bound_exceeded,
         "product point count " + std::to_string(tuples) + " exceeds bound " +
             std::to_string(tuple_bound));
  if (method == FalsifierMethod::vertex_enumeration && tuples > 64)
    fail(ErrorKind::bound_exceeded,
         "vertex enumeration fallback limited to 64 tuples");

  const int nx = x->size(), ny = y->size();
  ProductOrbits orbits = product_orbits(*x, *y);
  const int vars = static_cast<int>(orbits.members.size());

  // One variable per orbit: the common coupling value on its tuples.
  LinearProgram lp;
  lp.rows.assign(nx + ny, std::vector<Rational>(vars, Rational(0)));
  lp.rhs.resize(nx + ny);
  for (int k = 0; k < vars; ++k)
    for (int id : orbits.members[k]) {
      lp.rows[id / ny][k] += 1;
      lp.rows[nx + id % ny][k] += 1;
    }
  for (int p = 0; p < nx; ++p) lp.rhs[p] = x->weight(p);
  for (int q = 0; q < ny; ++q) lp.rhs[nx + q] = y->weight(q);
  lp.objective.assign(vars, Rational(0));

  Partition c_factor = largest_c_factor(x);

  FalsifierResult result;
  auto solve = [&](const LinearProgram& prog) {
    LpSolution s = method == FalsifierMethod::simplex
                       ? solve_simplex(prog)
                       : maximize_by_vertex_enumeration(prog);
    if (s.status != LpStatus::optimal)
      fail(ErrorKind::internal,
           "joining LP not optimal; the product coupling is always feasible");
    result.lp_pivots += s.pivots;
    return s;
  };

  for (int fp = 0; fp < nx; ++fp) {
    Observable centred =
        point_indicator(x, fp) -
        conditional_expectation(point_indicator(x, fp), c_factor);
    std::vector<Rational> fvals(nx);
    bool all_zero = true;
    for (int p = 0; p < nx; ++p) {
      fvals[p] = centred.value(p).rational_or_throw("falsifier objective");
      if (fvals[p] != 0) all_zero = false;
    }
    if (all_zero) continue;  // this f cannot witness anything

    for (int gq = 0; gq < ny; ++gq) {
      ++result.pairs_checked;
      for (int k = 0; k < vars; ++k) {
        Rational c(0);
        for (int id : orbits.members[k])
          if (id % ny == gq) c += fvals[id / ny];
        lp.objective[k] = c;
      }

      // |E| optimum = max of the two signed optima (both >= 0: the product
      // coupling is feasible with objective 0).
      LpSolution best = solve(lp);
      for (auto& c : lp.objective) c = -c;
      LpSolution neg = solve(lp);
      if (neg.value > best.value) best = std::move(neg);
      if (best.value <= 0) continue;

      std::map<Tuple, Rational> masses;
      for (int k = 0; k < vars; ++k) {
        if (best.x[k] == 0) continue;
        for (int id : orbits.members[k])
          masses[{id / ny, id % ny}] = best.x[k];
      }
      std::vector<SystemPtr> comps{x, y};
      auto words = all_diagonal_words(comps);
      Coupling vertex(std::move(comps), std::move(masses), std::move(words));
      result.witness = FalsifierWitness{fp, gq, best.value, std::move(vertex)};
      return result;
    }
  }
  return result;
}

ExtensionResult sated_extension_step(const SystemPtr& x, const FactorMap& fx,
                                     const SystemPtr& y, const FactorMap& fy) {
  Coupling joint = rel_indep_over_factor(x, y, fx, fy);

  std::vector<Tuple> support;
  std::map<Tuple, int> index;
  std::vector<Rational> weights;
  for (const auto& [t, m] : joint.masses()) {
    index.emplace(t, static_cast<int>(support.size()));
    support.push_back(t);
    weights.push_back(m);
  }

  std::vector<Permutation> maps;
  for (int j = 0; j < x->dims(); ++j) {
    std::vector<int> fwd(support.size());
    for (size_t s = 0; s < support.size(); ++s) {
      Tuple image{x->map(j).apply(support[s][0]), y->map(j).apply(support[s][1])};
      auto it = index.find(image);
      if (it == index.end())
        fail(ErrorKind::internal, "product map leaves the joining support");
      fwd[s] = it->second;
    }
    maps.emplace_back(std::move(fwd));
  }

  SystemPtr z = make_system(std::move(weights), std::move(maps));
  std::vector<int> first(support.size()), second(support.size());
  for (size_t s = 0; s < support.size(); ++s) {
    first[s] = support[s][0];
    second[s] = support[s][1];
  }
  FactorMap to_x(z, x, std::move(first));
  FactorMap to_y(z, y, std::move(second));
  return ExtensionResult{std::move(z), std::move(to_x), std::move(to_y),
                         std::move(joint)};
}

}  // namespace joinery
