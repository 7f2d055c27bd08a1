// Direct (Jackson-type) estimates E_{lambda_n}(f)_p <= C * omega(f, tau/lambda_n)_p
// and their averaged forms.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apxbsp/minimax.hpp"
#include "apxbsp/quadrature.hpp"
#include "apxbsp/smoothness.hpp"
#include "apxbsp/spectrum.hpp"

namespace apxbsp {

/// Nondecreasing step function on 0 = t_0 < ... < t_M = tau with jump mass[i] at t_i.
class WeightMeasure {
 public:
  WeightMeasure(std::vector<double> nodes, std::vector<double> mass);

  /// Single atom of mass 1 at tau.
  static WeightMeasure unit_jump(double tau);
  /// Jumps v(t_i) - v(t_{i-1}) placed at the right node t_i.
  static WeightMeasure from_cumulative(std::vector<double> nodes, const std::vector<double>& v);
  /// Absolutely continuous v' = density on [0, tau], discretized with composite
  /// Simpson weights on `intervals` (even) uniform intervals.
  static WeightMeasure from_density(const std::function<double(double)>& density, double tau,
                                    int intervals = 4096);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& mass() const { return mass_; }
  double tau() const { return nodes_.back(); }
  double total() const;

 private:
  std::vector<double> nodes_;
  std::vector<double> mass_;
};

/// min over ladder k in [n, kmax] of sum_i phi^p(lambda_k t_i / lambda_n) dv_i.
IndexScan stieltjes_phi_integral(const ExponentLadder& ladder, int n, const StepWeight& phi,
                                 double p, const WeightMeasure& v, int kmax);

/// ((sum dv) / stieltjes_phi_integral)^{1/p}; an upper bound for the sharp constant.
double constant_from_measure(const ExponentLadder& ladder, int n, const StepWeight& phi, double p,
                             const WeightMeasure& v, int kmax);

struct SharpConstant {
  /// J^{-1/p} for the min-max value J.
  double value = 0.0;
  /// Constant certified by the extremal measure, (sum dv / I(v))^{1/p}.
  double measure_constant = 0.0;
  std::vector<int> indices;
  std::vector<double> rho;
  std::optional<WeightMeasure> v_star;
  MinimaxSolution lp;
  bool truncated = false;
  int ugrid = 0;
};

/// Solves the discretized extremal problem with `ugrid` (>= 64) nodes on [0, tau].
SharpConstant sharp_constant(const ExponentLadder& ladder, int n, const StepWeight& phi, double p,
                             double tau, int ugrid, int kmax);

/// t -> omega_phi^p(f, t/lambda_n) on [0, horizon]. Between the nodes of a uniform
/// grid the value is max(running maximum at the grid, energy at t), a lower
/// bound for the true supremum that is exact for nondecreasing energies.
class ModulusProfile {
 public:
  ModulusProfile(const Spectrum& s, const StepWeight& phi, double lambda_n, double horizon,
                 int grid);
  double operator()(double t) const;
  /// int_0^horizon omega^p(t) w(t) dt, cell by cell.
  double integrate_against(const std::function<double(double)>& w) const;
  double max_value() const { return running_.back(); }
  int grid() const { return grid_; }

 private:
  DifferenceEnergy energy_;
  double lambda_n_;
  double horizon_;
  int grid_;
  std::vector<double> running_;
};

struct AveragedBound {
  double lhs = 0.0;       // E^p
  double rhs = 0.0;
  double ratio = 0.0;     // lhs / rhs, 0 when both vanish
  double integral = 0.0;  // I_n(alpha p / 2) or 2^{alpha p} int_0^tau sin^{alpha p}(t/2) dt
  double weighted_modulus = 0.0;  // int omega^p dmu
  int effective_n = 0;
  int argmin_k = 0;
  int grid = 0;
};

/// E^p <= int_0^pi omega_alpha^p(f, t/lambda_n) sin t dt / (2^{alpha p/2} I_n(alpha p/2)).
AveragedBound averaged_bound_sin(const Spectrum& s, int n, double alpha, int grid = 4096);

/// E^p <= int_0^tau omega_alpha^p(f, t/lambda_n) dt / (2^{alpha p} int_0^tau sin^{alpha p}(t/2) dt),
/// alpha p >= 1, 0 < tau <= 3 pi / 4.
AveragedBound averaged_bound_flat(const Spectrum& s, int n, double alpha, double tau,
                                  int grid = 4096);

struct UniformBound {
  double value = 0.0;
  std::string tag;
};

/// Smallest applicable closed-form bound for K_{n,alpha,p}(pi):
///   closed_form_integer_half_order  ((alpha p/2 + 1) / 2^{alpha p})^{1/p}, alpha p/2 integer
///   uniform                         (4/3)^{1/p} / 2^{alpha/2}
///   uniform_integer_order           (4 - 2 sqrt 2) / 2^{m/2}, alpha = m integer
/// With classical_m the order is m.
UniformBound uniform_bound(double alpha, double p, std::optional<int> classical_m = std::nullopt);

/// (2 / (2^s (2^{s+1}/(s+1) + sigma(s))))^{1/p} with s = alpha p / 2.
double sigma_corrected_bound(double alpha, double p);

/// gamma + beta e^{-i lambda_n x} + delta e^{i lambda_n x}; zero coefficients are omitted.
Spectrum extremal_spectrum(int n, double lambda_n, Complex gamma, Complex beta, Complex delta,
                           double p);

enum class Status { pass, fail, inconclusive, not_applicable };
std::string to_string(Status s);

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double constant = 0.0;
  std::string formula;
  int grid = 0;
  Status status = Status::not_applicable;
  std::string direction = "direct";
  /// Extra diagnostics (refinement gap, effective index, ...).
  std::vector<std::pair<std::string, double>> details;
  std::string note;
};

/// lhs <= rhs + 1e-8 (1 + |rhs|)
bool within_tolerance(double lhs, double rhs);

enum class DirectMode { pointwise_sharp, pointwise_uniform, averaged_sin, averaged_flat };
DirectMode parse_direct_mode(const std::string& name);
std::string to_string(DirectMode m);

struct DirectOptions {
  int grid = 4096;   // modulus / profile grid
  int ugrid = 512;   // extremal-problem grid
  int kmax = 0;      // 0: the spectrum's largest index
  double tau = 0.0;  // 0: pi for pointwise and averaged_sin, 3 pi / 4 for averaged_flat
};

/// Precomputed constant for pointwise checks (lets suites share one LP per ladder).
struct PointwiseConstant {
  double value = 0.0;
  std::string formula;
};

/// Verifies one direct estimate. Failures that shrink under an 8x finer
/// modulus grid are reported inconclusive, never as a violation.
InequalityReport verify_direct(const Spectrum& s, int n, const StepWeight& phi, DirectMode mode,
                               const DirectOptions& options = {},
                               std::optional<PointwiseConstant> constant = std::nullopt);

/// Smallest present ladder index >= n, or 0 when none.
int effective_index(const ExponentLadder& ladder, int n);

}  // namespace apxbsp
