#include "joinery/system.hpp"

#include <numeric>
#include <sstream>

#include "joinery/error.hpp"

namespace joinery {

ValidationReport validate_system(const SystemData& data) {
  ValidationReport report;
  auto issue = [&](const std::string& msg) { report.issues.push_back(msg); };

  if (data.n <= 0) issue("point count must be positive");
  if (static_cast<int>(data.weights.size()) != data.n)
    issue("weight list length differs from point count");
  if (data.maps.empty()) issue("at least one transformation is required");
  for (size_t j = 0; j < data.maps.size(); ++j)
    if (static_cast<int>(data.maps[j].size()) != data.n)
      issue("map " + std::to_string(j) + " has wrong length");
  if (!report.ok()) return report;  // shape errors make the rest unreadable

  Rational total(0);
  for (int p = 0; p < data.n; ++p) {
    if (data.weights[p] < 0)
      issue("negative weight at point " + std::to_string(p));
    total += data.weights[p];
  }
  if (total != 1) issue("weights sum to " + format_rational(total) + ", not 1");

  for (size_t j = 0; j < data.maps.size(); ++j) {
    if (!is_permutation_vector(data.maps[j])) {
      issue("map " + std::to_string(j) + " is not a bijection");
      continue;
    }
    for (int p = 0; p < data.n; ++p) {
      if (data.weights[data.maps[j][p]] != data.weights[p]) {
        issue("map " + std::to_string(j) +
              " breaks measure preservation at point " + std::to_string(p));
        break;
      }
    }
  }

  for (size_t a = 0; a < data.maps.size(); ++a) {
    if (!is_permutation_vector(data.maps[a])) continue;
    for (size_t b = a + 1; b < data.maps.size(); ++b) {
      if (!is_permutation_vector(data.maps[b])) continue;
      const auto& ta = data.maps[a];
      const auto& tb = data.maps[b];
      for (int p = 0; p < data.n; ++p) {
        if (ta[tb[p]] != tb[ta[p]]) {
          issue("maps " + std::to_string(a) + " and " + std::to_string(b) +
                " do not commute (witness point " + std::to_string(p) + ")");
          break;
        }
      }
    }
  }
  return report;
}

FiniteSystem::FiniteSystem(const SystemData& data) {
  ValidationReport report = validate_system(data);
  if (!report.ok()) {
    std::ostringstream os;
    os << "invalid system:";
    for (const auto& m : report.issues) os << " [" << m << "]";
    fail(ErrorKind::invalid_input, os.str());
  }
  n_ = data.n;
  weights_ = data.weights;
  maps_.reserve(data.maps.size());
  for (const auto& m : data.maps) maps_.emplace_back(m);
}

FiniteSystem::FiniteSystem(std::vector<Rational> weights,
                           std::vector<Permutation> maps) {
  SystemData data;
  data.n = static_cast<int>(weights.size());
  data.weights = weights;
  for (const auto& m : maps) data.maps.push_back(m.forward());
  *this = FiniteSystem(data);
}

Integer FiniteSystem::period() const {
  Integer acc(1);
  for (const auto& m : maps_) acc = integer_lcm(acc, m.order());
  return acc;
}

SystemData FiniteSystem::data() const {
  SystemData out;
  out.n = n_;
  out.weights = weights_;
  out.maps = maps_raw();
  return out;
}

std::vector<std::vector<int>> FiniteSystem::maps_raw() const {
  std::vector<std::vector<int>> out;
  out.reserve(maps_.size());
  for (const auto& m : maps_) out.push_back(m.forward());
  return out;
}

Permutation transform_word(const FiniteSystem& sys,
                           const std::vector<long>& exponents) {
  if (static_cast<int>(exponents.size()) != sys.dims())
    fail(ErrorKind::invalid_input, "word length differs from map count");
  Permutation acc = Permutation::identity(sys.size());
  for (int j = 0; j < sys.dims(); ++j)
    if (exponents[j] != 0) acc = acc.after(sys.map(j).power(exponents[j]));
  return acc;
}

long point_period(const FiniteSystem& sys, int p, long period_cap) {
  long acc = 1;
  for (int j = 0; j < sys.dims(); ++j) {
    long len = sys.map(j).cycle_length_through(p);
    acc = std::lcm(acc, len);
    if (acc > period_cap)
      fail(ErrorKind::bound_exceeded,
           "period cap exceeded at point " + std::to_string(p));
  }
  return acc;
}

Observable::Observable(SystemPtr sys, bool exact, std::vector<Cyclotomic> ev,
                       std::vector<std::complex<double>> fv)
    : sys_(std::move(sys)),
      exact_(exact),
      exact_values_(std::move(ev)),
      float_values_(std::move(fv)) {
  size_t len = exact_ ? exact_values_.size() : float_values_.size();
  if (!sys_ || static_cast<int>(len) != sys_->size())
    fail(ErrorKind::invalid_input, "observable length differs from system size");
}

Observable Observable::exact(SystemPtr sys, std::vector<Cyclotomic> values) {
  return Observable(std::move(sys), true, std::move(values), {});
}

Observable Observable::floating(SystemPtr sys,
                                std::vector<std::complex<double>> values) {
  return Observable(std::move(sys), false, {}, std::move(values));
}

int Observable::size() const { return sys_->size(); }

static void require_exact(const Observable& f, const char* what) {
  if (!f.is_exact())
    fail(ErrorKind::invalid_input,
         std::string(what) + ": float-mode observables rejected");
}

const Cyclotomic& Observable::value(int p) const {
  require_exact(*this, "value");
  return exact_values_[p];
}

const std::vector<Cyclotomic>& Observable::values() const {
  require_exact(*this, "values");
  return exact_values_;
}

const std::vector<std::complex<double>>& Observable::float_values() const {
  if (exact_)
    fail(ErrorKind::invalid_input, "float_values on exact observable");
  return float_values_;
}

Observable Observable::pullback(const Permutation& t) const {
  if (t.size() != size())
    fail(ErrorKind::invalid_input, "pullback size mismatch");
  if (exact_) {
    std::vector<Cyclotomic> out(size());
    for (int p = 0; p < size(); ++p) out[p] = exact_values_[t.apply(p)];
    return exact(sys_, std::move(out));
  }
  std::vector<std::complex<double>> out(size());
  for (int p = 0; p < size(); ++p) out[p] = float_values_[t.apply(p)];
  return floating(sys_, std::move(out));
}

Observable Observable::conjugate() const {
  if (exact_) {
    std::vector<Cyclotomic> out(size());
    for (int p = 0; p < size(); ++p) out[p] = exact_values_[p].conj();
    return exact(sys_, std::move(out));
  }
  std::vector<std::complex<double>> out(size());
  for (int p = 0; p < size(); ++p) out[p] = std::conj(float_values_[p]);
  return floating(sys_, std::move(out));
}

Cyclotomic Observable::integral() const {
  require_exact(*this, "integral");
  Cyclotomic acc;
  for (int p = 0; p < size(); ++p)
    acc += Cyclotomic(sys_->weight(p)) * exact_values_[p];
  return acc;
}

Cyclotomic Observable::norm_sq() const {
  require_exact(*this, "norm_sq");
  Cyclotomic acc;
  for (int p = 0; p < size(); ++p)
    acc += Cyclotomic(sys_->weight(p)) * exact_values_[p].abs_sq();
  return acc;
}

Observable Observable::operator*(const Observable& o) const {
  require_exact(*this, "product");
  require_exact(o, "product");
  if (!(*sys_ == *o.sys_))
    fail(ErrorKind::invalid_input, "observables on different systems");
  std::vector<Cyclotomic> out(size());
  for (int p = 0; p < size(); ++p) out[p] = exact_values_[p] * o.exact_values_[p];
  return exact(sys_, std::move(out));
}

Observable Observable::operator+(const Observable& o) const {
  require_exact(*this, "sum");
  require_exact(o, "sum");
  if (!(*sys_ == *o.sys_))
    fail(ErrorKind::invalid_input, "observables on different systems");
  std::vector<Cyclotomic> out(size());
  for (int p = 0; p < size(); ++p) out[p] = exact_values_[p] + o.exact_values_[p];
  return exact(sys_, std::move(out));
}

Observable Observable::operator-(const Observable& o) const {
  require_exact(*this, "difference");
  require_exact(o, "difference");
  if (!(*sys_ == *o.sys_))
    fail(ErrorKind::invalid_input, "observables on different systems");
  std::vector<Cyclotomic> out(size());
  for (int p = 0; p < size(); ++p) out[p] = exact_values_[p] - o.exact_values_[p];
  return exact(sys_, std::move(out));
}

Observable Observable::scaled(const Cyclotomic& c) const {
  require_exact(*this, "scaled");
  std::vector<Cyclotomic> out(size());
  for (int p = 0; p < size(); ++p) out[p] = exact_values_[p] * c;
  return exact(sys_, std::move(out));
}

Observable constant_observable(SystemPtr sys, const Cyclotomic& c) {
  return Observable::exact(sys, std::vector<Cyclotomic>(sys->size(), c));
}

Observable point_indicator(SystemPtr sys, int p) {
  std::vector<Cyclotomic> values(sys->size(), Cyclotomic(0));
  values[p] = Cyclotomic(1);
  return Observable::exact(std::move(sys), std::move(values));
}

FactorMap::FactorMap(SystemPtr source, SystemPtr target,
                     std::vector<int> assignment)
    : source_(std::move(source)),
      target_(std::move(target)),
      assignment_(std::move(assignment)) {
  if (static_cast<int>(assignment_.size()) != source_->size())
    fail(ErrorKind::invalid_input, "factor map assignment has wrong length");
  for (int v : assignment_)
    if (v < 0 || v >= target_->size())
      fail(ErrorKind::invalid_input, "factor map assignment out of range");
  if (source_->dims() != target_->dims())
    fail(ErrorKind::invalid_input, "factor map across different map counts");

  std::vector<Rational> push(target_->size(), Rational(0));
  for (int p = 0; p < source_->size(); ++p)
    push[assignment_[p]] += source_->weight(p);
  for (int q = 0; q < target_->size(); ++q)
    if (push[q] != target_->weight(q))
      fail(ErrorKind::invalid_input,
           "factor map pushforward differs from target weights at point " +
               std::to_string(q));

  for (int j = 0; j < source_->dims(); ++j)
    for (int p = 0; p < source_->size(); ++p)
      if (assignment_[source_->map(j).apply(p)] !=
          target_->map(j).apply(assignment_[p]))
        fail(ErrorKind::invalid_input,
             "factor map not equivariant for map " + std::to_string(j) +
                 " at point " + std::to_string(p));
}

FactorMap FactorMap::identity(SystemPtr sys) {
  std::vector<int> assignment(sys->size());
  for (int p = 0; p < sys->size(); ++p) assignment[p] = p;
  return FactorMap(sys, sys, std::move(assignment));
}

}  // namespace joinery
