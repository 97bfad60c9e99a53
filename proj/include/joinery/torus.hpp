#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "joinery/error.hpp"

namespace joinery {

// d translation vectors on the k-torus, double precision. Translations
// commute automatically. When every rotation component is an integer
// multiple of one base angle, the integer matrix is kept alongside so that
// frequency-level invariance checks are pure integer arithmetic.
struct TorusSystem {
  int dim = 1;                                    // k
  std::vector<std::vector<double>> rotations;     // d vectors, mod 1
  double base_angle = 0.0;
  std::vector<std::vector<long>> base_multiples;  // d x k; empty if absent

  int count() const { return static_cast<int>(rotations.size()); }
  bool has_base() const { return !base_multiples.empty(); }

  static TorusSystem translations(std::vector<std::vector<double>> rotations);
  // One base angle a, rotation j has components multiples[j][i] * a mod 1.
  static TorusSystem from_base(double base,
                               std::vector<std::vector<long>> multiples);
  // The Annex-B pair on the 2-torus: T1 = (a, 2a), T2 = (2a, 2a).
  static TorusSystem annexb(double alpha);
};

struct FourierTerm {
  std::vector<long> freq;
  std::complex<double> coeff;
};

// Finite Fourier polynomial sum_m c_m e^{2 pi i <m,z>}. Duplicate
// frequencies are merged; zero coefficients dropped.
class FourierObservable {
 public:
  FourierObservable(int dim, std::vector<FourierTerm> terms);
  static FourierObservable harmonic(std::vector<long> freq,
                                    std::complex<double> coeff = 1.0);
  static FourierObservable constant(int dim, std::complex<double> c);

  int dim() const { return dim_; }
  const std::vector<FourierTerm>& terms() const { return terms_; }
  std::complex<double> evaluate(const std::vector<double>& z) const;
  long max_abs_frequency() const;
  double coeff_norm_sq() const;  // sum |c_m|^2

  bool operator==(const FourierObservable& o) const;

 private:
  int dim_;
  std::vector<FourierTerm> terms_;
};

// f composed with n steps of rotation j: coefficient of m picks up
// e^{2 pi i n <m, rot_j>}; frequencies unchanged (unitary on coefficients).
FourierObservable rotate_observable(const FourierObservable& f,
                                    const TorusSystem& sys, int map_index,
                                    long power);

// <m, base_multiples[j]> when the integer structure is present: the
// multiplier of frequency m under map j is then e^{2 pi i n (that) a},
// so "multiplier == 1" and "same multiplier" are integer statements.
std::optional<long> frequency_pairing(const TorusSystem& sys, int map_index,
                                      const std::vector<long>& freq);

struct WeylResult {
  double value;    // |(1/N) sum_{n=1..N} e^{2 pi i n theta}|
  double bound;    // 1/(N |sin(pi theta)|), the geometric-series bound
  double theta;
  bool resonant;   // theta within 1e-12 of an integer; bound inapplicable
};
WeylResult weyl_sum(double theta, long n_steps);
WeylResult weyl_sum(const std::vector<long>& freq,
                    const std::vector<double>& rotation, long n_steps);

// |sin(pi N theta) / (N sin(pi theta))| - the exact magnitude of the
// geometric sum, used to predict where the average dips below a tolerance.
double weyl_closed_form(double theta, long n_steps);

struct TorusAverageReport {
  int grid;
  long n_steps;
  double l2_norm;           // grid quadrature of |A_N|
  double l2_norm_2n;        // of |A_2N|
  double cauchy_increment;  // grid quadrature of |A_2N - A_N|
  double max_abs;           // max over the grid of |A_N|
};
// (1/N) sum_n prod_i f_i(z + n rot_i) on the Q^k grid. The quadrature is
// exact for trigonometric polynomials once Q > 2 * max frequency.
TorusAverageReport torus_multiple_average(const TorusSystem& sys,
                                          const std::vector<FourierObservable>& fs,
                                          int grid_q, long n_steps);

struct WeylCheck {
  long freq;
  long n_used;   // minimal N with the closed form (and the sum) <= tol
  double value;
  double bound;  // 1/(n_used |sin(pi theta)|)
};

struct AnnexBReport {
  double alpha = 0;
  double tol = 0;
  long budget = 0;
  int max_freq = 0;
  bool resonant = false;
  std::string diagnostic;
  bool invariance_2x_minus_y = false;       // exact integer check
  bool y_action_equality = false;           // exact integer check
  bool difference_rotation_matches = false; // 4a - 2a == 2a exactly in fp
  std::vector<WeylCheck> weyl;
  bool weyl_ok = false;
  long required_n = 0;  // from the 1/(N sin) bound, when the budget fails
  bool verdict = false; // factor of a C-system that is not a C-system
};
// (a) e^{2 pi i (2x-y)} exactly T1-invariant; (b) e^{2 pi i y} has equal T1
// and T2 multipliers; (c) Weyl decay for frequencies 1..max_freq under the
// restricted rotations 2a and 4a-2a, each evaluated at the smallest N whose
// closed-form bound meets tol.
AnnexBReport annexb_experiment(double alpha, long budget = 10'000'000,
                               double tol = 1e-8, int max_freq = 8);

}  // namespace joinery
