#pragma once

#include <vector>

#include "joinery/rational.hpp"

namespace joinery {

bool is_permutation_vector(const std::vector<int>& fwd);

// Permutation of {0..n-1} with its inverse stored eagerly: words with
// negative exponents are hot paths.
class Permutation {
 public:
  explicit Permutation(std::vector<int> fwd);  // throws if not a bijection
  static Permutation identity(int n);

  int size() const { return static_cast<int>(fwd_.size()); }
  int apply(int p) const { return fwd_[p]; }
  int apply_inverse(int p) const { return inv_[p]; }
  const std::vector<int>& forward() const { return fwd_; }

  Permutation inverse() const;
  // (a.then_after(b))(p) = a(b(p))
  Permutation after(const Permutation& other) const;
  Permutation power(long exponent) const;

  bool commutes_with(const Permutation& other) const;
  bool is_identity() const;

  std::vector<std::vector<int>> orbits() const;
  long cycle_length_through(int p) const;
  Integer order() const;  // lcm of cycle lengths

  bool operator==(const Permutation& o) const { return fwd_ == o.fwd_; }

 private:
  std::vector<int> fwd_, inv_;
};

}  // namespace joinery
