#pragma once

#include <optional>

#include "joinery/coupling.hpp"
#include "joinery/simplex.hpp"

namespace joinery {

struct CertificateResult {
  // max over point indicators g on y of |E_lam[(f - E[f|X_C])(x) g(y)]|^2,
  // an exact rational; zero iff the joining is relatively independent over
  // the largest C-factor as far as f can see.
  Rational residual_sq;
  int argmax_g = -1;
};

// Pre: y is a C-system; lam couples x and y and is invariant under every
// diagonal T_j x S_j (verified, not trusted).
CertificateResult satedness_certificate(const SystemPtr& x, const SystemPtr& y,
                                        const Coupling& lam,
                                        const Observable& f);

enum class FalsifierMethod { simplex, vertex_enumeration };

struct FalsifierWitness {
  int f_point;  // indicator on x, recentred by E[.|X_C]
  int g_point;  // indicator on y
  Rational value;
  Coupling coupling;  // optimal vertex, expanded to tuple masses
};

struct FalsifierResult {
  std::optional<FalsifierWitness> witness;
  long lp_pivots = 0;
  long pairs_checked = 0;
};

// For each recentred indicator f on x and indicator g on y, maximizes
// |E_lambda[f g]| exactly over the polytope of couplings of x and y that are
// invariant under every T_j x S_j; returns the first strictly positive
// optimum. The polytope is parameterized by one variable per orbit of the
// product action (invariance under the generators is exactly constancy on
// those orbits), so the LP carries only the two marginal constraint groups.
FalsifierResult satedness_falsifier(const SystemPtr& x, const SystemPtr& y,
                                    long tuple_bound = 400,
                                    FalsifierMethod method = FalsifierMethod::simplex);

struct ExtensionResult {
  SystemPtr z;  // support of the relatively independent joining
  FactorMap to_x, to_y;
  Coupling coupling;  // the joining itself, on (x, y)
};

// Z = support of rel_indep_over_factor(x, y, fx, fy) with the product maps;
// Z extends x through the first coordinate and y embeds through the second.
ExtensionResult sated_extension_step(const SystemPtr& x, const FactorMap& fx,
                                     const SystemPtr& y, const FactorMap& fy);

}  // namespace joinery
