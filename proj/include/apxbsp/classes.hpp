// Majorants, the Bari-type growth condition and finite-data diagnostics for
// membership in the classes defined by omega_alpha(f, delta)_p = O(omega(delta)).
//
// O(.) cannot be decided from finitely many samples. Every profile comes with a
// growth diagnostic: the largest ratio in the last dyadic block of the
// asymptotic variable (n, or 1/delta) divided by the largest ratio in the block
// three octaves earlier. A trend above 1.2 is reported as growing.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apxbsp/spectrum.hpp"

namespace apxbsp {

class Majorant {
 public:
  /// omega(delta) = delta^r
  static Majorant power(double r);
  /// Piecewise-linear through (t_i, v_i) on [0, 1]; below the first node the
  /// first value is held.
  static Majorant tabulated(std::vector<double> t, std::vector<double> v);
  /// "power:<r>" or "table:<path>" (two columns t, value; comma or whitespace separated)
  static Majorant parse(const std::string& spec);

  /// Throws std::domain_error for delta > 1 on tabulated majorants.
  double operator()(double delta) const;
  std::optional<double> power_exponent() const;
  std::string describe() const;

  const std::vector<double>& nodes() const { return t_; }
  const std::vector<double>& values() const { return v_; }

 private:
  Majorant() = default;
  std::optional<double> r_;
  std::vector<double> t_, v_;
};

/// Empty iff continuity, monotonicity, positivity on (0, 1] and omega(0+) = 0 hold.
std::vector<std::string> validate_majorant(const Majorant& w);

struct GrowthDiagnostic {
  double max_ratio = 0.0;
  double trend = 1.0;
  bool growing = false;
};

/// `ratios` ordered along the asymptotic variable `x` (ascending).
GrowthDiagnostic growth_diagnostic(const std::vector<double>& x, const std::vector<double>& ratios,
                                   double threshold = 1.2);

struct Profile {
  std::vector<double> x;       // n, or delta
  std::vector<double> ratio;
  GrowthDiagnostic diagnostic;
};

/// ratio_n = sum_{v <= n} lambda_v^{s-1} w(1/lambda_v) / (lambda_n^s w(1/lambda_n)) with
/// w = omega^power, for the first n_max rungs (0: all).
Profile bari_ratio(const Majorant& omega, double s, const ExponentLadder& ladder, int n_max = 0,
                   double power = 1.0);

/// ratio_n = E_{lambda_n}(f)_p / omega(1/lambda_n) over present n in [n_min, n_max] (n_max 0: all).
Profile membership_by_best_approx(const Spectrum& s, const Majorant& omega, int n_min = 1,
                                  int n_max = 0);

/// 24 log-spaced points in [1e-3, 1], descending.
std::vector<double> default_delta_grid();

/// ratio(delta) = omega_alpha(f, delta)_p / omega(delta).
Profile membership_by_modulus(const Spectrum& s, const Majorant& omega, double alpha,
                              const std::vector<double>& delta_grid, int modulus_grid = 4096);

struct HolderClassification {
  Profile best_approx;
  Profile modulus;
  bool in_class_best_approx = false;
  bool in_class_modulus = false;
  bool consistent = false;
  /// r in (alpha/p, alpha]: accepted, outside the corollary's stated range.
  bool beyond_corollary_range = false;
  double max_gap = 0.0;
  std::string verdict;  // "in class", "not in class", "inconsistent"
};

/// Both diagnostics with omega = power(r). Rejects r outside (0, alpha].
HolderClassification classify_holder(const Spectrum& s, double r, double alpha, int n_min = 1,
                                     int n_max = 0,
                                     const std::vector<double>& delta_grid = default_delta_grid(),
                                     int modulus_grid = 4096);

/// Arithmetic spectrum on 1..N with E_{lambda_n}^p = n^{-rp} exactly for n <= N,
/// the pair energy split evenly between +-n, and A_0 = 1.
Spectrum power_tail_spectrum(int N, double r, double p);

}  // namespace apxbsp
