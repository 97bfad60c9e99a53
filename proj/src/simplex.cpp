#include "joinery/simplex.hpp"

#include <algorithm>

#include "joinery/error.hpp"

namespace joinery {

namespace {

// Dictionary-form tableau: basis columns are kept as unit columns, the cost
// row holds reduced costs for the current basis.
struct Tableau {
  std::vector<std::vector<Rational>> a;  // m x n
  std::vector<Rational> b;               // m, kept >= 0
  std::vector<Rational> cost;            // n reduced costs (maximize)
  Rational obj = Rational(0);
  std::vector<int> basis;  // m column indices
  long pivots = 0;

  int m() const { return static_cast<int>(a.size()); }
  int n() const { return static_cast<int>(cost.size()); }

  void pivot(int r, int c) {
    ++pivots;
    Rational inv = Rational(1) / a[r][c];
    for (auto& v : a[r]) v *= inv;
    b[r] *= inv;
    for (int i = 0; i < m(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (int j = 0; j < n(); ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    if (cost[c] != 0) {
      Rational f = cost[c];
      for (int j = 0; j < n(); ++j) cost[j] -= f * a[r][j];
      obj += f * b[r];
    }
    basis[r] = c;
  }

  // Bland's rule: smallest improving column, ratio ties by smallest basis
  // index. Returns false when unbounded.
  bool run(int allowed_cols) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < allowed_cols; ++j)
        if (cost[j] > 0) {
          enter = j;
          break;
        }
      if (enter == -1) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m(); ++i) {
        if (a[i][enter] <= 0) continue;
        Rational ratio = b[i] / a[i][enter];
        if (leave == -1 || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == -1) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpSolution solve_simplex(const LinearProgram& lp) {
  const int m = static_cast<int>(lp.rows.size());
  const int n = static_cast<int>(lp.objective.size());
  for (const auto& row : lp.rows)
    if (static_cast<int>(row.size()) != n)
      fail(ErrorKind::invalid_input, "LP row length mismatch");
  if (static_cast<int>(lp.rhs.size()) != m)
    fail(ErrorKind::invalid_input, "LP rhs length mismatch");

  Tableau t;
  t.a.assign(m, std::vector<Rational>(n + m, Rational(0)));
  t.b.resize(m);
  t.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    bool flip = lp.rhs[i] < 0;
    for (int j = 0; j < n; ++j) t.a[i][j] = flip ? -lp.rows[i][j] : lp.rows[i][j];
    t.b[i] = flip ? -lp.rhs[i] : lp.rhs[i];
    t.a[i][n + i] = 1;  // artificial
    t.basis[i] = n + i;
  }

  // Phase 1: maximize minus the artificial sum; reduced costs for the
  // artificial basis are the column sums.
  t.cost.assign(n + m, Rational(0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) t.cost[j] += t.a[i][j];
  for (int i = 0; i < m; ++i) t.obj -= t.b[i];
  if (!t.run(n))
    fail(ErrorKind::internal, "phase-1 simplex reported unbounded");

  LpSolution out;
  out.pivots = t.pivots;
  if (t.obj != 0) {
    out.status = LpStatus::infeasible;
    return out;
  }

  // Drive leftover zero-valued artificials out of the basis; rows that are
  // zero on the structural columns are redundant constraints.
  std::vector<int> drop;
  for (int i = 0; i < t.m(); ++i) {
    if (t.basis[i] < n) continue;
    int col = -1;
    for (int j = 0; j < n; ++j)
      if (t.a[i][j] != 0) {
        col = j;
        break;
      }
    if (col >= 0)
      t.pivot(i, col);
    else
      drop.push_back(i);
  }
  for (auto it = drop.rbegin(); it != drop.rend(); ++it) {
    t.a.erase(t.a.begin() + *it);
    t.b.erase(t.b.begin() + *it);
    t.basis.erase(t.basis.begin() + *it);
  }

  // Phase 2: rebuild reduced costs for the true objective.
  t.cost.assign(n + m, Rational(0));
  for (int j = 0; j < n; ++j) t.cost[j] = lp.objective[j];
  t.obj = 0;
  for (int i = 0; i < t.m(); ++i) {
    const Rational& cb = lp.objective[t.basis[i]];
    if (cb == 0) continue;
    for (int j = 0; j < n; ++j) t.cost[j] -= cb * t.a[i][j];
    t.obj += cb * t.b[i];
  }
  bool bounded = t.run(n);
  out.pivots = t.pivots;
  if (!bounded) {
    out.status = LpStatus::unbounded;
    return out;
  }

  out.status = LpStatus::optimal;
  out.value = t.obj;
  out.x.assign(n, Rational(0));
  for (int i = 0; i < t.m(); ++i)
    if (t.basis[i] < n) out.x[t.basis[i]] = t.b[i];
  return out;
}

namespace {

// Row echelon over the rationals; returns pivot row indices of [A|b] and
// whether the system is consistent.
struct Echelon {
  std::vector<std::vector<Rational>> rows;  // reduced [A|b]
  int rank_a = 0;
  bool consistent = true;
};

Echelon reduce(const LinearProgram& lp) {
  Echelon e;
  const int n = static_cast<int>(lp.objective.size());
  for (size_t i = 0; i < lp.rows.size(); ++i) {
    std::vector<Rational> row = lp.rows[i];
    row.push_back(lp.rhs[i]);
    e.rows.push_back(std::move(row));
  }
  int r = 0;
  for (int c = 0; c <= n && r < static_cast<int>(e.rows.size()); ++c) {
    int p = -1;
    for (int i = r; i < static_cast<int>(e.rows.size()); ++i)
      if (e.rows[i][c] != 0) {
        p = i;
        break;
      }
    if (p == -1) continue;
    std::swap(e.rows[r], e.rows[p]);
    Rational inv = Rational(1) / e.rows[r][c];
    for (auto& v : e.rows[r]) v *= inv;
    for (int i = 0; i < static_cast<int>(e.rows.size()); ++i) {
      if (i == r || e.rows[i][c] == 0) continue;
      Rational f = e.rows[i][c];
      for (int j = 0; j <= n; ++j) e.rows[i][j] -= f * e.rows[r][j];
    }
    if (c < n)
      ++e.rank_a;
    else
      e.consistent = false;  // pivot in the rhs column
    ++r;
  }
  e.rows.resize(r);
  return e;
}

}  // namespace

LpSolution maximize_by_vertex_enumeration(const LinearProgram& lp,
                                          long max_bases) {
  const int n = static_cast<int>(lp.objective.size());
  Echelon e = reduce(lp);
  LpSolution out;
  if (!e.consistent) {
    out.status = LpStatus::infeasible;
    return out;
  }
  const int k = e.rank_a;
  if (k == 0) {
    out.status = LpStatus::optimal;
    out.x.assign(n, Rational(0));
    out.value = 0;
    return out;
  }

  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  long bases = 0;
  bool any = false;

  auto consider = [&](const std::vector<int>& cols) {
    if (++bases > max_bases)
      fail(ErrorKind::bound_exceeded, "vertex enumeration basis cap exceeded");
    // Solve the k x k system on the chosen columns from the reduced rows.
    std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k + 1));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) m[i][j] = e.rows[i][cols[j]];
      m[i][k] = e.rows[i].back();
    }
    for (int c = 0; c < k; ++c) {
      int p = -1;
      for (int i = c; i < k; ++i)
        if (m[i][c] != 0) {
          p = i;
          break;
        }
      if (p == -1) return;  // singular basis
      std::swap(m[c], m[p]);
      Rational inv = Rational(1) / m[c][c];
      for (auto& v : m[c]) v *= inv;
      for (int i = 0; i < k; ++i) {
        if (i == c || m[i][c] == 0) continue;
        Rational f = m[i][c];
        for (int j = c; j <= k; ++j) m[i][j] -= f * m[c][j];
      }
    }
    std::vector<Rational> x(n, Rational(0));
    for (int j = 0; j < k; ++j) {
      if (m[j][k] < 0) return;  // not feasible
      x[cols[j]] = m[j][k];
    }
    Rational value(0);
    for (int j = 0; j < n; ++j) value += lp.objective[j] * x[j];
    if (!any || value > out.value) {
      any = true;
      out.value = value;
      out.x = std::move(x);
    }
  };

  for (;;) {
    consider(pick);
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }

  out.status = any ? LpStatus::optimal : LpStatus::infeasible;
  return out;
}

}  // namespace joinery
