#include "joinery/partition.hpp"

#include <map>
#include <utility>

#include "joinery/error.hpp"

namespace joinery {

Partition::Partition(SystemPtr sys, const std::vector<int>& raw_labels)
    : sys_(std::move(sys)) {
  const int n = sys_->size();
  if (static_cast<int>(raw_labels.size()) != n)
    fail(ErrorKind::invalid_input, "label list length differs from system size");

  // Canonical form: zero-weight points share one designated null class;
  // block ids follow first occurrence.
  constexpr int kNullClass = -1;
  std::vector<int> cls(n);
  for (int p = 0; p < n; ++p)
    cls[p] = sys_->weight(p) == 0 ? kNullClass : raw_labels[p];

  std::map<int, int> renumber;
  label_.assign(n, 0);
  for (int p = 0; p < n; ++p) {
    auto [it, fresh] = renumber.try_emplace(cls[p], static_cast<int>(renumber.size()));
    label_[p] = it->second;
    (void)fresh;
  }

  blocks_.assign(renumber.size(), {});
  block_mass_.assign(renumber.size(), Rational(0));
  for (int p = 0; p < n; ++p) {
    blocks_[label_[p]].push_back(p);
    block_mass_[label_[p]] += sys_->weight(p);
  }
}

Partition Partition::discrete(SystemPtr sys) {
  std::vector<int> labels(sys->size());
  for (int p = 0; p < sys->size(); ++p) labels[p] = p;
  return Partition(std::move(sys), labels);
}

Partition Partition::trivial(SystemPtr sys) {
  std::vector<int> labels(sys->size(), 0);
  return Partition(std::move(sys), labels);
}

bool Partition::refines(const Partition& coarser) const {
  if (!(*sys_ == *coarser.sys_))
    fail(ErrorKind::invalid_input, "partitions on different systems");
  std::vector<int> image(block_count(), -1);
  for (int p = 0; p < size(); ++p) {
    int& img = image[label_[p]];
    if (img == -1)
      img = coarser.label_[p];
    else if (img != coarser.label_[p])
      return false;
  }
  return true;
}

bool Partition::separates_points() const {
  for (const auto& block : blocks_) {
    int positive = 0;
    for (int p : block)
      if (sys_->weight(p) > 0 && ++positive > 1) return false;
  }
  return true;
}

bool Partition::operator==(const Partition& o) const {
  return *sys_ == *o.sys_ && label_ == o.label_;
}

Partition orbit_partition(SystemPtr sys, const Permutation& t) {
  std::vector<int> labels(sys->size(), -1);
  int next = 0;
  for (int p = 0; p < sys->size(); ++p) {
    if (labels[p] != -1) continue;
    for (int q = p; labels[q] == -1; q = t.apply(q)) labels[q] = next;
    ++next;
  }
  return Partition(std::move(sys), labels);
}

Partition isotropy_partition(SystemPtr sys, const std::vector<long>& exponents) {
  Permutation word = transform_word(*sys, exponents);
  return orbit_partition(std::move(sys), word);
}

Partition join_partitions(const Partition& p, const Partition& q) {
  if (!(*p.system() == *q.system()))
    fail(ErrorKind::invalid_input, "joining partitions on different systems");
  std::map<std::pair<int, int>, int> classes;
  std::vector<int> labels(p.size());
  for (int x = 0; x < p.size(); ++x) {
    auto key = std::make_pair(p.label(x), q.label(x));
    auto [it, fresh] = classes.try_emplace(key, static_cast<int>(classes.size()));
    labels[x] = it->second;
    (void)fresh;
  }
  return Partition(p.system(), labels);
}

Partition largest_c_factor(SystemPtr sys) {
  const int d = sys->dims();
  std::vector<long> word(d, 0);
  word[0] = 1;
  Partition acc = isotropy_partition(sys, word);  // I^{T1}
  for (int j = 1; j < d; ++j) {
    std::vector<long> diff(d, 0);
    diff[0] = -1;
    diff[j] = 1;  // T_j T_1^{-1}
    acc = join_partitions(acc, isotropy_partition(sys, diff));
  }
  return acc;
}

bool is_c_system(const FiniteSystem& sys) {
  auto shared = std::make_shared<const FiniteSystem>(sys);
  return largest_c_factor(shared).separates_points();
}

Observable conditional_expectation(const Observable& f, const Partition& p) {
  if (!f.is_exact())
    fail(ErrorKind::invalid_input,
         "conditional_expectation: float-mode observables rejected");
  if (!(*f.system() == *p.system()))
    fail(ErrorKind::invalid_input,
         "observable and partition on different systems");
  const auto& sys = *f.system();
  std::vector<Cyclotomic> block_value(p.block_count());
  for (int b = 0; b < p.block_count(); ++b) {
    if (p.block_mass(b) == 0) continue;  // value 0 on null blocks
    Cyclotomic acc;
    for (int x : p.block(b)) acc += Cyclotomic(sys.weight(x)) * f.value(x);
    acc *= Cyclotomic(Rational(1) / p.block_mass(b));
    block_value[b] = acc;
  }
  std::vector<Cyclotomic> values(sys.size());
  for (int x = 0; x < sys.size(); ++x) values[x] = block_value[p.label(x)];
  return Observable::exact(f.system(), std::move(values));
}

std::optional<InvarianceViolation> invariance_violation(const Partition& p) {
  const auto& sys = *p.system();
  for (int j = 0; j < sys.dims(); ++j) {
    const Permutation& t = sys.map(j);
    for (int b = 0; b < p.block_count(); ++b) {
      const auto& block = p.block(b);
      int img = p.label(t.apply(block.front()));
      for (int x : block)
        if (p.label(t.apply(x)) != img) return InvarianceViolation{b, j};
    }
  }
  return std::nullopt;
}

Quotient factor_quotient(SystemPtr sys, const Partition& p) {
  if (!(*sys == *p.system()))
    fail(ErrorKind::invalid_input, "partition on a different system");
  if (auto v = invariance_violation(p))
    fail(ErrorKind::invalid_input,
         "partition not invariant: map " + std::to_string(v->map_index) +
             " splits block " + std::to_string(v->block));

  const int B = p.block_count();
  std::vector<Rational> weights(B);
  for (int b = 0; b < B; ++b) weights[b] = p.block_mass(b);

  std::vector<Permutation> maps;
  maps.reserve(sys->dims());
  for (int j = 0; j < sys->dims(); ++j) {
    std::vector<int> fwd(B);
    for (int b = 0; b < B; ++b)
      fwd[b] = p.label(sys->map(j).apply(p.block(b).front()));
    maps.emplace_back(std::move(fwd));
  }

  SystemPtr quotient = make_system(std::move(weights), std::move(maps));
  FactorMap projection(sys, quotient, p.labels());
  return Quotient{std::move(quotient), std::move(projection)};
}

namespace {

// Group points by exact equality of observable values.
Partition level_sets(SystemPtr sys, const Observable& f) {
  const int n = sys->size();
  std::vector<int> labels(n, -1);
  std::vector<int> reps;
  for (int p = 0; p < n; ++p) {
    for (size_t r = 0; r < reps.size(); ++r) {
      if (f.value(reps[r]) == f.value(p)) {
        labels[p] = static_cast<int>(r);
        break;
      }
    }
    if (labels[p] == -1) {
      labels[p] = static_cast<int>(reps.size());
      reps.push_back(p);
    }
  }
  return Partition(std::move(sys), labels);
}

}  // namespace

Partition generated_factor(SystemPtr sys, const std::vector<Observable>& fs) {
  Partition acc = Partition::trivial(sys);
  for (const auto& f : fs) {
    if (!f.is_exact())
      fail(ErrorKind::invalid_input,
           "generated_factor: float-mode observables rejected");
    if (!(*f.system() == *sys))
      fail(ErrorKind::invalid_input, "observable on a different system");
    acc = join_partitions(acc, level_sets(sys, f));
  }

  // Refine by pullbacks under every map and inverse until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = 0; j < sys->dims(); ++j) {
      for (int dir = 0; dir < 2; ++dir) {
        const Permutation& t = sys->map(j);
        std::vector<int> pulled(sys->size());
        for (int x = 0; x < sys->size(); ++x)
          pulled[x] = acc.label(dir == 0 ? t.apply(x) : t.apply_inverse(x));
        Partition next = join_partitions(acc, Partition(sys, pulled));
        if (!(next == acc)) {
          acc = std::move(next);
          changed = true;
        }
      }
    }
  }
  return acc;
}

}  // namespace joinery
