#include "joinery/permutation.hpp"

#include "joinery/error.hpp"

namespace joinery {

bool is_permutation_vector(const std::vector<int>& fwd) {
  const int n = static_cast<int>(fwd.size());
  std::vector<char> seen(n, 0);
  for (int v : fwd) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Permutation::Permutation(std::vector<int> fwd) : fwd_(std::move(fwd)) {
  if (!is_permutation_vector(fwd_))
    fail(ErrorKind::invalid_input, "map is not a permutation");
  inv_.assign(fwd_.size(), 0);
  for (int p = 0; p < size(); ++p) inv_[fwd_[p]] = p;
}

Permutation Permutation::identity(int n) {
  std::vector<int> fwd(n);
  for (int p = 0; p < n; ++p) fwd[p] = p;
  return Permutation(std::move(fwd));
}

Permutation Permutation::inverse() const {
  Permutation out = *this;
  std::swap(out.fwd_, out.inv_);
  return out;
}

Permutation Permutation::after(const Permutation& other) const {
  if (size() != other.size())
    fail(ErrorKind::invalid_input, "composing permutations of different sizes");
  std::vector<int> fwd(size());
  for (int p = 0; p < size(); ++p) fwd[p] = fwd_[other.fwd_[p]];
  return Permutation(std::move(fwd));
}

Permutation Permutation::power(long exponent) const {
  Permutation base = exponent >= 0 ? *this : inverse();
  unsigned long e = exponent >= 0 ? static_cast<unsigned long>(exponent)
                                  : static_cast<unsigned long>(-(exponent + 1)) + 1;
  Permutation acc = identity(size());
  while (e > 0) {
    if (e & 1) acc = acc.after(base);
    base = base.after(base);
    e >>= 1;
  }
  return acc;
}

bool Permutation::commutes_with(const Permutation& other) const {
  for (int p = 0; p < size(); ++p)
    if (fwd_[other.fwd_[p]] != other.fwd_[fwd_[p]]) return false;
  return true;
}

bool Permutation::is_identity() const {
  for (int p = 0; p < size(); ++p)
    if (fwd_[p] != p) return false;
  return true;
}

std::vector<std::vector<int>> Permutation::orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(size(), 0);
  for (int p = 0; p < size(); ++p) {
    if (seen[p]) continue;
    std::vector<int> orbit;
    for (int q = p; !seen[q]; q = fwd_[q]) {
      seen[q] = 1;
      orbit.push_back(q);
    }
    out.push_back(std::move(orbit));
  }
  return out;
}

long Permutation::cycle_length_through(int p) const {
  long len = 1;
  for (int q = fwd_[p]; q != p; q = fwd_[q]) ++len;
  return len;
}

Integer Permutation::order() const {
  Integer acc(1);
  for (const auto& orbit : orbits())
    acc = integer_lcm(acc, Integer(static_cast<long>(orbit.size())));
  return acc;
}

}  // namespace joinery
