// Inverse estimates: the modulus bounded by telescoped best approximations.
// Sums run over the present ladder rungs nu <= n with lambda_0 = 0.

#pragma once

#include <vector>

#include "apxbsp/jackson.hpp"
#include "apxbsp/smoothness.hpp"
#include "apxbsp/spectrum.hpp"

namespace apxbsp {

struct AbelResult {
  double lhs = 0.0;
  double rhs = 0.0;
  /// Magnitude scale for relative comparisons: max(|lhs|, |rhs|, max|beta| sum|c|).
  double scale = 0.0;
  double relative_discrepancy() const;
};

/// Summation by parts over nu = n1..n2 (1-based); c is finitely supported, so
/// its tail sums run to the end of the vector.
AbelResult abel_transform(const std::vector<double>& beta, const std::vector<double>& c, int n1,
                          int n2);

struct InverseBound {
  double lhs_p = 0.0;  // omega^p
  double rhs_p = 0.0;
  double refinement_gap = 0.0;  // in omega^p units
  int grid = 0;
};

struct HypothesisCheck {
  bool ok = true;
  std::string message;
};

/// phi nondecreasing on [0, tau] (2048 samples, tolerance 1e-12) and
/// phi(tau) attaining max phi.
HypothesisCheck check_inverse_hypotheses(const StepWeight& phi, double tau);

/// omega_phi^p(f, tau/lambda_n) <= sum_nu (phi^p(tau lambda_nu/lambda_n) - phi^p(tau lambda_{nu-1}/lambda_n)) E_nu^p
/// Throws std::invalid_argument when the hypotheses fail or n is not a present index.
InverseBound inverse_bound(const Spectrum& s, int n, const StepWeight& phi, double tau,
                           int grid = 4096);

/// omega_alpha^p(f, pi/lambda_n) <= alpha p (2 pi/lambda_n)^{alpha p} sum_nu lambda_nu^{alpha p - 1} (lambda_nu - lambda_{nu-1}) E_nu^p
/// Restricted to alpha p >= 1.
InverseBound inverse_bound_power(const Spectrum& s, int n, double alpha, int grid = 4096);

/// Largest ladder gap lambda_{nu+1} - lambda_nu, including lambda_1 - 0.
double max_gap(const Spectrum& s);

/// Power form with each gap replaced by C >= max_gap(s).
InverseBound inverse_bound_gap(const Spectrum& s, int n, double alpha, double C, int grid = 4096);

enum class InverseForm { general, power, gap };
InverseForm parse_inverse_form(const std::string& name);
std::string to_string(InverseForm f);

/// Report with direction "inverse"; C <= 0 means C = max_gap.
InequalityReport verify_inverse(const Spectrum& s, int n, const StepWeight& phi, double tau,
                                InverseForm form, double C = 0.0, int grid = 4096);

}  // namespace apxbsp
