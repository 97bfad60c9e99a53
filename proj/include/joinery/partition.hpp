#pragma once

#include <optional>
#include <vector>

#include "joinery/system.hpp"

namespace joinery {

// A sub-sigma-algebra of a finite system as a labeled block partition,
// always kept canonical: every zero-weight point lives in one designated
// null block, and block ids follow first occurrence. Two partitions are
// equal as sigma-algebras mod mu iff their canonical labels are equal.
class Partition {
 public:
  Partition(SystemPtr sys, const std::vector<int>& raw_labels);

  static Partition discrete(SystemPtr sys);  // singletons (mod null block)
  static Partition trivial(SystemPtr sys);   // one block (plus null block)

  const SystemPtr& system() const { return sys_; }
  int size() const { return static_cast<int>(label_.size()); }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  int label(int p) const { return label_[p]; }
  const std::vector<int>& labels() const { return label_; }
  const std::vector<int>& block(int b) const { return blocks_[b]; }
  const Rational& block_mass(int b) const { return block_mass_[b]; }

  // Every block of *this lies inside a block of coarser.
  bool refines(const Partition& coarser) const;
  // True iff all pairs of positive-weight points are separated.
  bool separates_points() const;

  bool operator==(const Partition& o) const;

 private:
  SystemPtr sys_;
  std::vector<int> label_;
  std::vector<std::vector<int>> blocks_;
  std::vector<Rational> block_mass_;
};

// Orbit partition of transform_word(sys, exponents); the finite realization
// of the isotropy sigma-algebra of that word.
Partition isotropy_partition(SystemPtr sys, const std::vector<long>& exponents);
Partition orbit_partition(SystemPtr sys, const Permutation& t);

// Common refinement (join as sigma-algebras).
Partition join_partitions(const Partition& p, const Partition& q);

// I^{T1} v I^{T2 T1^-1} v ... v I^{Td T1^-1}; invariant under every map.
Partition largest_c_factor(SystemPtr sys);

// True iff largest_c_factor separates all pairs of positive-weight points.
bool is_c_system(const FiniteSystem& sys);
inline bool is_c_system(const SystemPtr& sys) { return is_c_system(*sys); }

// Blockwise weighted average; zero on zero-mass blocks. Exact mode only.
Observable conditional_expectation(const Observable& f, const Partition& p);

// If some map fails to send blocks onto blocks, returns a witness.
struct InvarianceViolation {
  int block;
  int map_index;
};
std::optional<InvarianceViolation> invariance_violation(const Partition& p);

struct Quotient {
  SystemPtr system;
  FactorMap projection;
};
// Quotient system on blocks; requires an invariant partition.
Quotient factor_quotient(SystemPtr sys, const Partition& p);

// Smallest invariant partition making every observable measurable: level
// sets refined by images under all maps and their inverses to a fixpoint.
Partition generated_factor(SystemPtr sys, const std::vector<Observable>& fs);

}  // namespace joinery
