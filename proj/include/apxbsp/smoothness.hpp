// Step weights, difference schemes and generalized moduli of smoothness.
//
// For a weight phi the difference norm is
//
//     ||Delta_h^phi f||_p = ( sum_k phi^p(lambda_k h) |A_k|^p )^{1/p}
//
// and the modulus is its supremum over |h| <= delta. Every weight is even and
// the exponents are symmetric, so the scan runs over h >= 0 only.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "apxbsp/spectrum.hpp"

namespace apxbsp {

/// Coefficients mu_0..mu_m with sum zero.
class DifferenceScheme {
 public:
  explicit DifferenceScheme(std::vector<Complex> mu);
  /// Binomial collection (-1)^j C(m, j), the classical m-th difference.
  static DifferenceScheme binomial(int order);

  const std::vector<Complex>& mu() const { return mu_; }
  /// sum_j mu_j exp(-i j t)
  Complex symbol(double t) const;

 private:
  std::vector<Complex> mu_;
};

class StepWeight {
 public:
  /// phi(t) = 2^alpha |sin(t/2)|^alpha
  static StepWeight alpha(double order);
  /// phi(t) = |sum_j mu_j exp(-i j t)|
  static StepWeight scheme(DifferenceScheme m);
  /// Piecewise-linear in |t| through the samples; samples at negative t are
  /// mirrored and must agree with their positive counterparts.
  static StepWeight tabulated(std::vector<double> t, std::vector<double> values);
  /// "alpha:<a>", "scheme:<mu0>,<mu1>,...", "table:<path>"
  static StepWeight parse(const std::string& spec);

  double operator()(double t) const;
  /// phi(t)^p, exactly zero where phi vanishes.
  double pow(double t, double p) const;

  std::optional<double> alpha_order() const;
  /// C(phi) = max phi. Exact for alpha and tabulated weights, sampled for schemes.
  std::optional<double> sup() const { return sup_; }
  bool sup_is_exact() const { return sup_exact_; }
  /// Largest |t| the weight is defined at (infinity for closed forms).
  double domain_limit() const;
  std::string describe() const;

  /// Largest mismatch seen while mirroring tabulated samples.
  double mirror_mismatch() const { return mirror_mismatch_; }

 private:
  struct Alpha {
    double order;
  };
  struct Scheme {
    DifferenceScheme m;
  };
  struct Table {
    std::vector<double> t;  // ascending, t[0] == 0
    std::vector<double> v;
  };

  explicit StepWeight(std::variant<Alpha, Scheme, Table> kind);

  std::variant<Alpha, Scheme, Table> kind_;
  std::optional<double> sup_;
  bool sup_exact_ = false;
  double mirror_mismatch_ = 0.0;
  std::string description_;
};

double phi_alpha(double t, double alpha);
StepWeight phi_from_scheme(const DifferenceScheme& m);

/// Sampled membership checks for the class of admissible weights.
struct WeightCheck {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  double zero_fraction = 0.0;
};

/// 1001-point symmetric grid on [-half_width, half_width].
WeightCheck check_step_weight(const StepWeight& phi, double half_width);

/// h -> sum_k phi^p(lambda_k h) |A_k|^p, with +-k folded together.
class DifferenceEnergy {
 public:
  DifferenceEnergy(const Spectrum& s, const StepWeight& phi);
  double operator()(double h) const;
  double p() const { return p_; }
  double total_weight() const;

 private:
  StepWeight phi_;
  double p_;
  std::vector<double> lambdas_;
  std::vector<double> weights_;
};

double weighted_difference_norm(const Spectrum& s, const StepWeight& phi, double h);

struct ModulusOptions {
  int grid = 4096;
  double refine_width = 1e-10;
  int refine_peaks = 4;
};

struct ModulusEstimate {
  double value = 0.0;          // refined estimate, a lower bound of the supremum
  double argmax = 0.0;         // step h attaining `value`
  double grid_value = 0.0;     // best value on the uniform grid alone
  double refinement_gap = 0.0; // value - grid_value
};

/// Scans h over a uniform grid on [0, delta], then golden-section refines
/// around the best local maxima.
ModulusEstimate modulus_estimate(const Spectrum& s, const StepWeight& phi, double delta,
                                 const ModulusOptions& options = {});

/// Same protocol on an arbitrary function of h >= 0 (already raised to the p-th power).
ModulusEstimate sup_on_interval(const std::function<double(double)>& energy, double delta,
                                const ModulusOptions& options);

double generalized_modulus(const Spectrum& s, const StepWeight& phi, double delta,
                           int grid = 4096);
double scheme_modulus(const Spectrum& s, const DifferenceScheme& m, double delta, int grid = 4096);

}  // namespace apxbsp
