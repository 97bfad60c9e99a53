#include "joinery/torus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace joinery {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;
constexpr double kResonanceTol = 1e-12;

double frac(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

// Dekker split so that n * hi is exact for n < 2^25: frac(n * theta)
// without the absolute-error blowup of a plain product at large n.
struct SplitAngle {
  double hi, lo;
  explicit SplitAngle(double theta) {
    const double splitter = 134217729.0;  // 2^27 + 1
    double c = splitter * theta;
    hi = c - (c - theta);
    lo = theta - hi;
  }
  double frac_times(long n) const {
    double a = std::fmod(static_cast<double>(n) * hi, 1.0);
    double b = std::fmod(static_cast<double>(n) * lo, 1.0);
    double s = std::fmod(a + b, 1.0);
    if (s < 0) s += 1.0;
    return s;
  }
};

double distance_to_integers(double x) {
  double f = frac(x);
  return std::min(f, 1.0 - f);
}

}  // namespace

TorusSystem TorusSystem::translations(
    std::vector<std::vector<double>> rotations) {
  if (rotations.empty())
    fail(ErrorKind::invalid_input, "need at least one rotation");
  TorusSystem sys;
  sys.dim = static_cast<int>(rotations.front().size());
  for (auto& r : rotations) {
    if (static_cast<int>(r.size()) != sys.dim)
      fail(ErrorKind::invalid_input, "rotation dimensions differ");
    for (auto& c : r) c = frac(c);
  }
  sys.rotations = std::move(rotations);
  return sys;
}

TorusSystem TorusSystem::from_base(double base,
                                   std::vector<std::vector<long>> multiples) {
  std::vector<std::vector<double>> rotations;
  for (const auto& row : multiples) {
    std::vector<double> r;
    for (long m : row) r.push_back(frac(static_cast<double>(m) * base));
    rotations.push_back(std::move(r));
  }
  TorusSystem sys = translations(std::move(rotations));
  sys.base_angle = base;
  sys.base_multiples = std::move(multiples);
  return sys;
}

TorusSystem TorusSystem::annexb(double alpha) {
  return from_base(alpha, {{1, 2}, {2, 2}});
}

FourierObservable::FourierObservable(int dim, std::vector<FourierTerm> terms)
    : dim_(dim) {
  for (auto& t : terms) {
    if (static_cast<int>(t.freq.size()) != dim_)
      fail(ErrorKind::invalid_input, "frequency dimension mismatch");
    if (t.coeff == std::complex<double>(0.0, 0.0)) continue;
    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const FourierTerm& u) { return u.freq == t.freq; });
    if (it == terms_.end())
      terms_.push_back(std::move(t));
    else
      it->coeff += t.coeff;
  }
}

FourierObservable FourierObservable::harmonic(std::vector<long> freq,
                                              std::complex<double> coeff) {
  int dim = static_cast<int>(freq.size());
  return FourierObservable(dim, {FourierTerm{std::move(freq), coeff}});
}

FourierObservable FourierObservable::constant(int dim,
                                              std::complex<double> c) {
  return FourierObservable(dim, {FourierTerm{std::vector<long>(dim, 0), c}});
}

std::complex<double> FourierObservable::evaluate(
    const std::vector<double>& z) const {
  std::complex<double> acc(0.0, 0.0);
  for (const auto& t : terms_) {
    double phase = 0;
    for (int i = 0; i < dim_; ++i)
      phase += static_cast<double>(t.freq[i]) * z[i];
    acc += t.coeff * std::polar(1.0, kTau * frac(phase));
  }
  return acc;
}

long FourierObservable::max_abs_frequency() const {
  long m = 0;
  for (const auto& t : terms_)
    for (long f : t.freq) m = std::max(m, std::labs(f));
  return m;
}

double FourierObservable::coeff_norm_sq() const {
  double acc = 0;
  for (const auto& t : terms_) acc += std::norm(t.coeff);
  return acc;
}

bool FourierObservable::operator==(const FourierObservable& o) const {
  if (dim_ != o.dim_ || terms_.size() != o.terms_.size()) return false;
  for (const auto& t : terms_) {
    auto it = std::find_if(o.terms_.begin(), o.terms_.end(),
                           [&](const FourierTerm& u) { return u.freq == t.freq; });
    if (it == o.terms_.end() || it->coeff != t.coeff) return false;
  }
  return true;
}

std::optional<long> frequency_pairing(const TorusSystem& sys, int map_index,
                                      const std::vector<long>& freq) {
  if (!sys.has_base()) return std::nullopt;
  long acc = 0;
  for (int i = 0; i < sys.dim; ++i)
    acc += freq[i] * sys.base_multiples[map_index][i];
  return acc;
}

FourierObservable rotate_observable(const FourierObservable& f,
                                    const TorusSystem& sys, int map_index,
                                    long power) {
  if (map_index < 0 || map_index >= sys.count())
    fail(ErrorKind::invalid_input, "rotation index out of range");
  if (f.dim() != sys.dim)
    fail(ErrorKind::invalid_input, "observable dimension mismatch");
  std::vector<FourierTerm> out;
  for (const auto& t : f.terms()) {
    std::complex<double> multiplier;
    if (auto pairing = frequency_pairing(sys, map_index, t.freq);
        pairing && *pairing == 0) {
      multiplier = 1.0;  // exact: the frequency does not see this rotation
    } else {
      double theta = 0;
      for (int i = 0; i < sys.dim; ++i)
        theta += static_cast<double>(t.freq[i]) * sys.rotations[map_index][i];
      multiplier = std::polar(1.0, kTau * SplitAngle(frac(theta)).frac_times(power));
    }
    out.push_back(FourierTerm{t.freq, t.coeff * multiplier});
  }
  return FourierObservable(f.dim(), std::move(out));
}

double weyl_closed_form(double theta, long n_steps) {
  double s = std::abs(std::sin(M_PI * frac(theta)));
  double num = std::abs(std::sin(M_PI * SplitAngle(frac(theta)).frac_times(n_steps)));
  return num / (static_cast<double>(n_steps) * s);
}

WeylResult weyl_sum(double theta, long n_steps) {
  if (n_steps < 1) fail(ErrorKind::invalid_input, "N must be positive");
  WeylResult out;
  out.theta = frac(theta);
  out.resonant = distance_to_integers(theta) <= kResonanceTol;

  SplitAngle split(out.theta);
  double re = 0, im = 0;
  for (long n = 1; n <= n_steps; ++n) {
    double phase = kTau * split.frac_times(n);
    re += std::cos(phase);
    im += std::sin(phase);
  }
  out.value = std::hypot(re, im) / static_cast<double>(n_steps);
  double s = std::abs(std::sin(M_PI * out.theta));
  out.bound = out.resonant
                  ? std::numeric_limits<double>::infinity()
                  : 1.0 / (static_cast<double>(n_steps) * s);
  return out;
}

WeylResult weyl_sum(const std::vector<long>& freq,
                    const std::vector<double>& rotation, long n_steps) {
  if (freq.size() != rotation.size())
    fail(ErrorKind::invalid_input, "frequency and rotation dimensions differ");
  bool nonzero = false;
  for (long f : freq) nonzero = nonzero || f != 0;
  if (!nonzero) fail(ErrorKind::invalid_input, "frequency must be nonzero");
  double theta = 0;
  for (size_t i = 0; i < freq.size(); ++i)
    theta += static_cast<double>(freq[i]) * rotation[i];
  return weyl_sum(theta, n_steps);
}

TorusAverageReport torus_multiple_average(
    const TorusSystem& sys, const std::vector<FourierObservable>& fs,
    int grid_q, long n_steps) {
  if (grid_q < 2) fail(ErrorKind::invalid_input, "grid must be at least 2");
  if (static_cast<int>(fs.size()) != sys.count())
    fail(ErrorKind::invalid_input, "need one observable per rotation");
  for (const auto& f : fs)
    if (f.dim() != sys.dim)
      fail(ErrorKind::invalid_input, "observable dimension mismatch");

  long points = 1;
  for (int i = 0; i < sys.dim; ++i) points *= grid_q;

  double sum_sq_n = 0, sum_sq_2n = 0, sum_sq_diff = 0, max_abs = 0;
  std::vector<double> z(sys.dim);
  const int d = sys.count();

  for (long g = 0; g < points; ++g) {
    long rem = g;
    for (int i = 0; i < sys.dim; ++i) {
      z[i] = static_cast<double>(rem % grid_q) / grid_q;
      rem /= grid_q;
    }
    // per map: current coefficient phases, stepped by <m, rot_i> each n
    std::vector<std::vector<std::complex<double>>> cur(d), step(d);
    for (int i = 0; i < d; ++i) {
      for (const auto& t : fs[i].terms()) {
        double at_z = 0, per_step = 0;
        for (int c = 0; c < sys.dim; ++c) {
          at_z += static_cast<double>(t.freq[c]) * z[c];
          per_step += static_cast<double>(t.freq[c]) * sys.rotations[i][c];
        }
        cur[i].push_back(t.coeff * std::polar(1.0, kTau * frac(at_z)));
        step[i].push_back(std::polar(1.0, kTau * frac(per_step)));
      }
    }
    std::complex<double> acc_n(0, 0), acc_2n(0, 0);
    for (long n = 1; n <= 2 * n_steps; ++n) {
      std::complex<double> prod(1, 0);
      for (int i = 0; i < d; ++i) {
        std::complex<double> value(0, 0);
        for (size_t t = 0; t < cur[i].size(); ++t) {
          cur[i][t] *= step[i][t];
          value += cur[i][t];
        }
        prod *= value;
      }
      acc_2n += prod;
      if (n == n_steps) acc_n = acc_2n;
    }
    std::complex<double> a_n = acc_n / static_cast<double>(n_steps);
    std::complex<double> a_2n = acc_2n / static_cast<double>(2 * n_steps);
    sum_sq_n += std::norm(a_n);
    sum_sq_2n += std::norm(a_2n);
    sum_sq_diff += std::norm(a_2n - a_n);
    max_abs = std::max(max_abs, std::abs(a_n));
  }

  double inv = 1.0 / static_cast<double>(points);
  return TorusAverageReport{grid_q,
                            n_steps,
                            std::sqrt(sum_sq_n * inv),
                            std::sqrt(sum_sq_2n * inv),
                            std::sqrt(sum_sq_diff * inv),
                            max_abs};
}

namespace {

// Minimal n in (from, budget] whose closed-form value is <= tol, or 0.
long next_weyl_candidate(double theta, double tol, long from, long budget) {
  SplitAngle split(theta);
  double s = std::abs(std::sin(M_PI * theta));
  for (long n = from + 1; n <= budget; ++n) {
    double tau = tol * static_cast<double>(n) * s;
    double d = distance_to_integers(split.frac_times(n));
    // sin(pi d) >= 2 d on [0, 1/2], so d > tau/2 cannot pass
    if (2.0 * d > tau) continue;
    if (std::sin(M_PI * d) <= tau) return n;
  }
  return 0;
}

}  // namespace

AnnexBReport annexb_experiment(double alpha, long budget, double tol,
                               int max_freq) {
  AnnexBReport report;
  report.alpha = alpha;
  report.tol = tol;
  report.budget = budget;
  report.max_freq = max_freq;

  TorusSystem sys = TorusSystem::annexb(alpha);

  // (a) frequency (2,-1) is blind to T1 = (a, 2a): 2*1 + (-1)*2 = 0.
  report.invariance_2x_minus_y = *frequency_pairing(sys, 0, {2, -1}) == 0;
  // (b) frequency (0,1) pairs identically with T1 and T2.
  report.y_action_equality =
      *frequency_pairing(sys, 0, {0, 1}) == *frequency_pairing(sys, 1, {0, 1});

  // The restricted action on the factor generated by 2x is (R_2a, R_4a);
  // the difference rotation 4a - 2a equals 2a exactly in fp arithmetic.
  double two_alpha = frac(2.0 * frac(alpha));
  double four_alpha = frac(2.0 * two_alpha);
  double diff = four_alpha - two_alpha;
  if (diff < 0) diff += 1.0;
  report.difference_rotation_matches = diff == two_alpha;

  for (int f = 1; f <= max_freq; ++f) {
    double theta = frac(static_cast<double>(f) * two_alpha);
    if (distance_to_integers(theta) <= kResonanceTol) {
      report.resonant = true;
      report.diagnostic = "resonant frequency " + std::to_string(f) +
                          ": <m, beta> integer within 1e-12";
      return report;
    }
  }

  report.weyl_ok = true;
  for (int f = 1; f <= max_freq; ++f) {
    double theta = frac(static_cast<double>(f) * two_alpha);
    long n = 0;
    WeylResult sum{};
    for (long from = 0;;) {
      n = next_weyl_candidate(theta, tol, from, budget);
      if (n == 0) break;
      sum = weyl_sum(theta, n);
      if (sum.value <= tol) break;
      from = n;  // fp boundary case; keep scanning
    }
    if (n == 0) {
      report.weyl_ok = false;
      double s = std::abs(std::sin(M_PI * theta));
      long required = static_cast<long>(std::ceil(1.0 / (tol * s)));
      report.required_n = std::max(report.required_n, required);
      report.diagnostic = "tolerance not met within budget at frequency " +
                          std::to_string(f);
      continue;
    }
    report.weyl.push_back(WeylCheck{f, n, sum.value, sum.bound});
  }

  report.verdict = report.invariance_2x_minus_y && report.y_action_equality &&
                   report.difference_rotation_matches && report.weyl_ok &&
                   !report.resonant;
  return report;
}

}  // namespace joinery
