// Adaptive quadrature and the special integrals and series used by the
// Jackson-type bounds.

#pragma once

#include <functional>
#include <stdexcept>

#include "apxbsp/spectrum.hpp"

namespace apxbsp {

struct QuadratureSettings {
  double abs_tol = 1e-10;
  int max_depth = 40;
  /// [a, b] is first cut into this many equal panels; oscillatory
  /// integrands need roughly one panel per half period.
  int panels = 1;
};

/// Thrown when the recursion limit is hit; carries the best estimate so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate) {}
  double best_estimate() const { return best_estimate_; }

 private:
  double best_estimate_;
};

/// Adaptive Simpson. Deterministic; requires a <= b.
double integrate(const std::function<double(double)>& g, double a, double b,
                 const QuadratureSettings& q = {});

/// F_beta(x) = (1/x) int_0^x |sin t|^beta dt
double f_beta(double x, double beta, const QuadratureSettings& q = {});

/// Minimum of a scan over ladder indices k in [n, kmax].
struct IndexScan {
  double value = 0.0;
  int argmin_k = 0;
  int scanned = 0;
  /// True when the ladder continues past kmax.
  bool truncated = false;
};

/// min_{n <= k <= kmax} int_0^pi (1 - cos(lambda_k t / lambda_n))^order sin t dt
IndexScan jackson_integral_sin(const ExponentLadder& ladder, int n, double order, int kmax,
                               const QuadratureSettings& q = {});

struct FlatScan : IndexScan {
  /// int_0^tau sin^exponent(t/2) dt, the k = n value.
  double closed_form = 0.0;
  /// Only meaningful for exponent >= 1, where the minimizer must be k = n.
  bool minimizer_at_n = false;
};

/// min_{n <= k <= kmax} int_0^tau |sin(lambda_k t / (2 lambda_n))|^exponent dt
/// with 0 < tau <= 3 pi / 4. For exponent >= 1 the scan must agree with the
/// k = n value to 1e-8; a disagreement throws std::logic_error.
FlatScan jackson_integral_flat(const ExponentLadder& ladder, int n, double exponent, double tau,
                               int kmax, const QuadratureSettings& q = {});

struct SeriesResult {
  double value = 0.0;
  /// Last summation index a.
  int last_index = 0;
  /// Estimated remainder added after truncation.
  double tail = 0.0;
};

/// Correction term sigma(s) of the sin-weighted lower bound
///
///   int_0^pi (1 - cos theta t)^s sin t dt >= 2^{s+1}/(s+1) + sigma(s),  theta >= 1.
///
/// Summation index a runs from [s/2] + 1; the inner denominators are
/// (2(a - j))^2 - 1. Zero for integer s.
SeriesResult sigma_series(double s, double tol = 1e-10);

/// Generalized binomial coefficient C(s, k) for real s via log-gamma.
double binomial(double s, int k);

/// Position of `n` in the ladder; throws when absent.
std::size_t ladder_position(const ExponentLadder& ladder, int n);

}  // namespace apxbsp
