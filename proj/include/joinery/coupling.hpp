#pragma once

#include <map>
#include <optional>
#include <vector>

#include "joinery/partition.hpp"
#include "joinery/system.hpp"

namespace joinery {

using Tuple = std::vector<int>;
// One exponent vector per slot; slot i is acted on by a word in the maps of
// component i.
using ProductWord = std::vector<std::vector<long>>;

// Exact joint measure on a product of finite systems. Construction verifies
// total mass 1, every marginal, and every declared equivariance; only
// positive masses are stored (sparse, deterministic order).
class Coupling {
 public:
  Coupling(std::vector<SystemPtr> components, std::map<Tuple, Rational> masses,
           std::vector<ProductWord> equivariances);

  int arity() const { return static_cast<int>(components_.size()); }
  const std::vector<SystemPtr>& components() const { return components_; }
  const SystemPtr& component(int i) const { return components_[i]; }
  const std::map<Tuple, Rational>& masses() const { return masses_; }
  Rational mass(const Tuple& t) const;
  const std::vector<ProductWord>& equivariances() const { return equivariances_; }

  std::vector<Rational> marginal(int slot) const;

 private:
  std::vector<SystemPtr> components_;
  std::map<Tuple, Rational> masses_;
  std::vector<ProductWord> equivariances_;
};

// Word with T_j in every slot (all components need map index j).
ProductWord diagonal_word(const std::vector<SystemPtr>& components, int j);
std::vector<ProductWord> all_diagonal_words(const std::vector<SystemPtr>& components);

std::map<Tuple, Rational> pushforward(const Coupling& c, const ProductWord& word);

struct EquivarianceReport {
  bool holds = true;
  std::optional<Tuple> witness;  // first violating tuple in key order
  Rational max_discrepancy = Rational(0);
};
EquivarianceReport check_equivariance(const Coupling& c, const ProductWord& word);

// Independent product measure; all diagonal equivariances hold.
Coupling product_coupling(std::vector<SystemPtr> systems);

// mass(p,q) = mu(p) nu(q) / rho(c) on the fiber product over the common
// factor, 0 elsewhere; marginals mu and nu.
Coupling rel_indep_over_factor(const SystemPtr& x, const SystemPtr& y,
                               const FactorMap& fx, const FactorMap& fy);

// Both factor maps equal to the quotient by p (p must be invariant).
Coupling rel_indep_self_joining(const SystemPtr& x, const Partition& p);

// Cesaro limit of pushforwards of the diagonal under T_1^n x ... x T_d^n,
// computed exactly per starting point over that point's own cycle period.
// Verified invariant under every T_i x ... x T_i and under T_1 x ... x T_d,
// with all marginals equal to the base weights.
Coupling furstenberg_self_joining(const SystemPtr& x,
                                  long period_cap = 1'000'000);

struct BigSystem {
  SystemPtr system;            // supp(lambda) with measure lambda
  std::vector<Tuple> support;  // point id -> tuple in X^d
  FactorMap to_base;           // first coordinate
  Coupling lambda;
  bool tail_in_c_factor;  // coords 2..d generate inside largest_c_factor
};
// Product maps: first map T_1 x T_2 x ... x T_d, then T_i x ... x T_i.
BigSystem big_system(const SystemPtr& x, long period_cap = 1'000'000);

struct TruncationResult {
  Coupling coupling;          // on x times y^k
  bool shift_invariant;       // cyclic rotation of the y slots
  Cyclotomic dist_sq;         // || (1/k) sum g(q_j) - E[g|x] ||^2 exact
  Observable conditional_mean;  // E[g|x] on x
  bool factor_invariant;      // generated_factor(E[g|x]) is invariant
  bool mean_measurable;       // E[E[g|x] | factor] = E[g|x] exactly
};
// Relatively independent joining of k copies of lam over its x-leg
// (conditional product on each x-fiber).
TruncationResult lambda_infinity_truncation(const Coupling& lam, int k,
                                            const Observable& g,
                                            long support_cap = 500'000);

}  // namespace joinery
