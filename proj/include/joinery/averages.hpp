#pragma once

#include <complex>

#include "joinery/coupling.hpp"
#include "joinery/partition.hpp"
#include "joinery/system.hpp"

namespace joinery {

// A_N = (1/N) sum_{n=1..N} prod_i f_i o T_i^n, exact. |fs| must equal the
// map count; float-mode observables are rejected.
Observable multiple_average(const SystemPtr& x,
                            const std::vector<Observable>& fs, long n_steps);

// The N -> infinity limit, exact via periodicity: each point is averaged
// over its own orbit period. A_{kP} equals this for every k >= 1.
Observable exact_limit_average(const SystemPtr& x,
                               const std::vector<Observable>& fs,
                               long period_cap = 1'000'000);

struct ProjectionCheck {
  bool equal;
  Rational discrepancy_sq;  // exact squared L2(mu) norm of the difference
  Observable limit;
  Observable projected_limit;  // f_1 replaced by E[f_1 | X_C]
};
ProjectionCheck limit_equals_projected(const SystemPtr& x,
                                       const std::vector<Observable>& fs,
                                       long period_cap = 1'000'000);

// u_n = prod_i f_i o T_i^n for n = 1..count, as observables on x.
std::vector<Observable> twisted_products(const SystemPtr& x,
                                         const std::vector<Observable>& fs,
                                         long count);

// Annex-A quantities with explicit constants. Guarantees
//   lhs^2 <= (2/N) sum_n || (1/H) sum_h u_{n+h} ||^2 + 8 B^2 H^2 / N^2
// where B is the max norm over the whole list (shift error <= 2HB/N and
// (a+b)^2 <= 2(a^2+b^2) give the constants).
struct VdcExact {
  Rational lhs_sq;     // || (1/N) sum_{n<=N} u_n ||^2
  Cyclotomic corr;     // (1/H) sum_h (1/N) sum_n <u_n, u_{n+h}>
  Rational rhs_bound;
};
VdcExact vdc_quantities(const std::vector<Observable>& us, long n_steps,
                        long h_steps);

struct VdcFloat {
  double lhs;
  double lhs_sq;
  double corr;
  double rhs_bound;
};
VdcFloat vdc_quantities(const std::vector<std::vector<double>>& us,
                        long n_steps, long h_steps);

struct VanishingReport {
  Cyclotomic integral;  // int (f_1 x...x f_d) E[conj | I^{first map}] dlambda
  bool vanishes;
  bool f1_projection_zero;  // E[f_1 | X_C] = 0 on x
  Rational residual_sq;     // certificate residual of the lambda joining of x
                            // with the C-quotient of the big system
  bool premises_hold;
  bool implication_holds;  // premises -> integral = 0
};
VanishingReport vanishing_check(const SystemPtr& x,
                                const std::vector<Observable>& fs,
                                long period_cap = 1'000'000);

}  // namespace joinery
