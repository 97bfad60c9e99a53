#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "joinery/cyclotomic.hpp"
#include "joinery/permutation.hpp"
#include "joinery/rational.hpp"

namespace joinery {

// Raw description, possibly invalid; what the JSON files carry.
struct SystemData {
  int n = 0;
  std::vector<Rational> weights;
  std::vector<std::vector<int>> maps;
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

// Checks: shapes, bijectivity, total mass 1, nonnegative weights,
// weight preservation under every map, pairwise commutation.
ValidationReport validate_system(const SystemData& data);

// A finite measure-preserving Z^d-action: n points with exact weights and
// d commuting weight-preserving permutations. Construction validates; all
// instances are valid. Immutable.
class FiniteSystem {
 public:
  explicit FiniteSystem(const SystemData& data);
  FiniteSystem(std::vector<Rational> weights, std::vector<Permutation> maps);

  int size() const { return n_; }
  int dims() const { return static_cast<int>(maps_.size()); }
  const Rational& weight(int p) const { return weights_[p]; }
  const std::vector<Rational>& weights() const { return weights_; }
  const Permutation& map(int j) const { return maps_[j]; }
  const std::vector<Permutation>& maps() const { return maps_; }

  Integer period() const;  // lcm of map orders
  SystemData data() const;

  bool operator==(const FiniteSystem& o) const {
    return weights_ == o.weights_ && maps_raw() == o.maps_raw();
  }

 private:
  std::vector<std::vector<int>> maps_raw() const;

  int n_;
  std::vector<Rational> weights_;
  std::vector<Permutation> maps_;
};

using SystemPtr = std::shared_ptr<const FiniteSystem>;

inline SystemPtr make_system(std::vector<Rational> weights,
                             std::vector<Permutation> maps) {
  return std::make_shared<const FiniteSystem>(std::move(weights),
                                              std::move(maps));
}

// T_1^{e_1} ... T_d^{e_d}; composition order irrelevant by commutativity.
Permutation transform_word(const FiniteSystem& sys,
                           const std::vector<long>& exponents);

// lcm of the cycle lengths of p under every map: the period of the orbit
// n -> (T_1^n p, ..., T_d^n p). Throws bound_exceeded past the cap.
long point_period(const FiniteSystem& sys, int p, long period_cap);

// A function on the points of a system. Exact mode holds cyclotomic values
// (closed under the arithmetic the identities need); float mode holds
// complex doubles and is rejected by the exact operations.
class Observable {
 public:
  static Observable exact(SystemPtr sys, std::vector<Cyclotomic> values);
  static Observable floating(SystemPtr sys,
                             std::vector<std::complex<double>> values);

  bool is_exact() const { return exact_; }
  const SystemPtr& system() const { return sys_; }
  int size() const;

  const Cyclotomic& value(int p) const;
  const std::vector<Cyclotomic>& values() const;
  const std::vector<std::complex<double>>& float_values() const;

  Observable pullback(const Permutation& t) const;  // x -> f(t(x))
  Observable conjugate() const;
  Cyclotomic integral() const;  // sum mu(x) f(x)
  Cyclotomic norm_sq() const;   // sum mu(x) |f(x)|^2

  Observable operator*(const Observable& o) const;  // pointwise
  Observable operator+(const Observable& o) const;
  Observable operator-(const Observable& o) const;
  Observable scaled(const Cyclotomic& c) const;

 private:
  Observable(SystemPtr sys, bool exact, std::vector<Cyclotomic> ev,
             std::vector<std::complex<double>> fv);

  SystemPtr sys_;
  bool exact_;
  std::vector<Cyclotomic> exact_values_;
  std::vector<std::complex<double>> float_values_;
};

Observable constant_observable(SystemPtr sys, const Cyclotomic& c);
Observable point_indicator(SystemPtr sys, int p);

// Equivariant measure-preserving projection between systems. Construction
// verifies the pushforward and equivariance invariants.
class FactorMap {
 public:
  FactorMap(SystemPtr source, SystemPtr target, std::vector<int> assignment);
  static FactorMap identity(SystemPtr sys);

  const SystemPtr& source() const { return source_; }
  const SystemPtr& target() const { return target_; }
  int apply(int p) const { return assignment_[p]; }
  const std::vector<int>& assignment() const { return assignment_; }

 private:
  SystemPtr source_, target_;
  std::vector<int> assignment_;
};

}  // namespace joinery
