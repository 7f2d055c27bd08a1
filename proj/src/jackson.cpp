#include "apxbsp/jackson.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace apxbsp {

namespace {

constexpr double kPi = std::numbers::pi;

double safe_ratio(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

const char* kEmptyTail = "no spectrum entries with |k| >= n; both sides vanish";

}  // namespace

WeightMeasure::WeightMeasure(std::vector<double> nodes, std::vector<double> mass)
    : nodes_(std::move(nodes)), mass_(std::move(mass)) {
  if (nodes_.size() < 2 || nodes_.size() != mass_.size())
    throw std::invalid_argument("weight measure: need matching node and mass lists (>= 2 nodes)");
  if (nodes_.front() != 0.0) throw std::invalid_argument("weight measure: first node must be 0");
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i] > nodes_[i - 1]))
      throw std::invalid_argument("weight measure: nodes must be strictly increasing");
  for (double m : mass_)
    if (!(m >= 0.0) || !std::isfinite(m))
      throw std::invalid_argument("weight measure: increments must be nonnegative");
  if (!(total() > 0.0)) throw std::invalid_argument("weight measure: zero total variation");
}

WeightMeasure WeightMeasure::unit_jump(double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("weight measure: tau must be positive");
  return WeightMeasure({0.0, tau}, {0.0, 1.0});
}

WeightMeasure WeightMeasure::from_cumulative(std::vector<double> nodes,
                                             const std::vector<double>& v) {
  if (nodes.size() != v.size())
    throw std::invalid_argument("weight measure: node and value lists differ in length");
  std::vector<double> mass(v.size(), 0.0);
  for (std::size_t i = 1; i < v.size(); ++i) {
    mass[i] = v[i] - v[i - 1];
    if (mass[i] < 0.0) throw std::invalid_argument("weight measure: v must be nondecreasing");
  }
  return WeightMeasure(std::move(nodes), std::move(mass));
}

WeightMeasure WeightMeasure::from_density(const std::function<double(double)>& density,
                                          double tau, int intervals) {
  if (!(tau > 0.0)) throw std::invalid_argument("weight measure: tau must be positive");
  if (intervals < 2 || intervals % 2 != 0)
    throw std::invalid_argument("weight measure: Simpson discretization needs an even count");
  std::vector<double> nodes(intervals + 1), mass(intervals + 1);
  const double h = tau / intervals;
  for (int i = 0; i <= intervals; ++i) {
    nodes[i] = i == intervals ? tau : i * h;
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double d = density(nodes[i]);
    if (d < 0.0) throw std::invalid_argument("weight measure: density must be nonnegative");
    mass[i] = w * h / 3.0 * d;
  }
  return WeightMeasure(std::move(nodes), std::move(mass));
}

double WeightMeasure::total() const { return std::accumulate(mass_.begin(), mass_.end(), 0.0); }

IndexScan stieltjes_phi_integral(const ExponentLadder& ladder, int n, const StepWeight& phi,
                                 double p, const WeightMeasure& v, int kmax) {
  if (kmax < n) throw std::invalid_argument("stieltjes integral: empty index range");
  const std::size_t start = ladder_position(ladder, n);
  const double ln = ladder[start].lambda;
  IndexScan out;
  out.value = std::numeric_limits<double>::infinity();
  std::size_t k = start;
  for (; k < ladder.size() && ladder[k].k <= kmax; ++k) {
    const double theta = ladder[k].lambda / ln;
    double sum = 0.0;
    for (std::size_t i = 0; i < v.nodes().size(); ++i)
      if (v.mass()[i] > 0.0) sum += phi.pow(theta * v.nodes()[i], p) * v.mass()[i];
    ++out.scanned;
    if (std::isinf(out.value) || sum < out.value - 1e-12 * (1.0 + out.value))
      out.value = sum, out.argmin_k = ladder[k].k;
  }
  out.truncated = k < ladder.size();
  return out;
}

double constant_from_measure(const ExponentLadder& ladder, int n, const StepWeight& phi, double p,
                             const WeightMeasure& v, int kmax) {
  const IndexScan scan = stieltjes_phi_integral(ladder, n, phi, p, v, kmax);
  if (!(scan.value > 0.0)) throw std::domain_error("measure concentrated on zero set of phi");
  return std::pow(v.total() / scan.value, 1.0 / p);
}

SharpConstant sharp_constant(const ExponentLadder& ladder, int n, const StepWeight& phi, double p,
                             double tau, int ugrid, int kmax) {
  if (ugrid < 64) throw std::invalid_argument("sharp constant: grid must have at least 64 nodes");
  const MinimaxProblem P = build_minimax_problem(ladder, n, phi, p, tau, ugrid, kmax);
  SharpConstant out;
  out.lp = solve_minimax(P);
  if (!(out.lp.value > 0.0) || !(out.lp.dual_value > 0.0))
    throw std::domain_error("measure concentrated on zero set of phi");
  out.value = std::pow(out.lp.value, -1.0 / p);
  out.indices = P.indices;
  out.rho = out.lp.rho;
  out.truncated = P.truncated;
  out.ugrid = ugrid;
  out.v_star.emplace(P.nodes, out.lp.dual_weights);
  out.measure_constant = constant_from_measure(ladder, n, phi, p, *out.v_star, kmax);
  if (std::abs(out.measure_constant - out.value) > 1e-6)
    throw std::logic_error("sharp constant: extremal measure does not reproduce the LP value");
  return out;
}

ModulusProfile::ModulusProfile(const Spectrum& s, const StepWeight& phi, double lambda_n,
                               double horizon, int grid)
    : energy_(s, phi), lambda_n_(lambda_n), horizon_(horizon), grid_(grid) {
  if (grid < 2) throw std::invalid_argument("modulus profile: grid must be >= 2");
  if (!(lambda_n > 0.0) || !(horizon > 0.0))
    throw std::invalid_argument("modulus profile: lambda_n and horizon must be positive");
  running_.resize(grid + 1);
  double best = 0.0;
  for (int i = 0; i <= grid; ++i) {
    best = std::max(best, energy_(horizon_ * i / grid / lambda_n_));
    running_[i] = best;
  }
}

double ModulusProfile::operator()(double t) const {
  const double x = std::clamp(t / horizon_ * grid_, 0.0, static_cast<double>(grid_));
  const int i = static_cast<int>(std::floor(x));
  return std::max(running_[i], energy_(t / lambda_n_));
}

double ModulusProfile::integrate_against(const std::function<double(double)>& w) const {
  const double scale = std::max(running_.back(), std::numeric_limits<double>::min());
  QuadratureSettings q;
  q.abs_tol = 1e-12 * scale * horizon_ / grid_;
  q.max_depth = 30;
  std::vector<double> parts(grid_);
  for (int i = 0; i < grid_; ++i) {
    const double a = horizon_ * i / grid_;
    const double b = i + 1 == grid_ ? horizon_ : horizon_ * (i + 1) / grid_;
    const double floor_value = running_[i];
    auto g = [&](double t) { return std::max(floor_value, energy_(t / lambda_n_)) * w(t); };
    try {
      parts[i] = integrate(g, a, b, q);
    } catch (const QuadratureError& e) {
      parts[i] = e.best_estimate();
    }
  }
  double sum = 0.0, comp = 0.0;
  for (double v : parts) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

int effective_index(const ExponentLadder& ladder, int n) {
  for (const auto& pt : ladder)
    if (pt.k >= n) return pt.k;
  return 0;
}

AveragedBound averaged_bound_sin(const Spectrum& s, int n, double alpha, int grid) {
  require_valid(s);
  if (!(alpha > 0.0)) throw std::invalid_argument("averaged bound: alpha must be positive");
  AveragedBound out;
  out.grid = grid;
  out.lhs = std::pow(best_approximation(s, n), s.p());
  const ExponentLadder ladder = s.ladder();
  out.effective_n = effective_index(ladder, n);
  if (out.effective_n == 0) return out;
  const double ap = alpha * s.p();
  const double lambda = s.lambda_at(out.effective_n);
  const IndexScan scan = jackson_integral_sin(ladder, out.effective_n, ap / 2.0, INT_MAX);
  out.integral = scan.value;
  out.argmin_k = scan.argmin_k;
  const ModulusProfile profile(s, StepWeight::alpha(alpha), lambda, kPi, grid);
  out.weighted_modulus = profile.integrate_against([](double t) { return std::sin(t); });
  out.rhs = out.weighted_modulus / (std::pow(2.0, ap / 2.0) * out.integral);
  out.ratio = safe_ratio(out.lhs, out.rhs);
  return out;
}

AveragedBound averaged_bound_flat(const Spectrum& s, int n, double alpha, double tau, int grid) {
  require_valid(s);
  if (!(alpha > 0.0)) throw std::invalid_argument("averaged bound: alpha must be positive");
  const double ap = alpha * s.p();
  if (ap < 1.0) throw std::invalid_argument("corollary requires alpha*p >= 1");
  if (!(tau > 0.0) || tau > 0.75 * kPi + 1e-15)
    throw std::invalid_argument("averaged bound: tau must lie in (0, 3pi/4]");
  AveragedBound out;
  out.grid = grid;
  out.lhs = std::pow(best_approximation(s, n), s.p());
  const ExponentLadder ladder = s.ladder();
  out.effective_n = effective_index(ladder, n);
  if (out.effective_n == 0) return out;
  const double lambda = s.lambda_at(out.effective_n);
  const FlatScan scan = jackson_integral_flat(ladder, out.effective_n, ap, tau, INT_MAX);
  out.integral = std::pow(2.0, ap) * scan.value;
  out.argmin_k = scan.argmin_k;
  const ModulusProfile profile(s, StepWeight::alpha(alpha), lambda, tau, grid);
  out.weighted_modulus = profile.integrate_against([](double) { return 1.0; });
  out.rhs = out.weighted_modulus / out.integral;
  out.ratio = safe_ratio(out.lhs, out.rhs);
  return out;
}

UniformBound uniform_bound(double alpha, double p, std::optional<int> classical_m) {
  if (classical_m) {
    if (*classical_m < 1) throw std::invalid_argument("uniform bound: m must be a positive integer");
    alpha = *classical_m;
  }
  if (!(alpha > 0.0)) throw std::invalid_argument("uniform bound: alpha must be positive");
  if (!(p >= 1.0)) throw std::invalid_argument("uniform bound: p must be >= 1");
  UniformBound best{std::pow(4.0 / 3.0, 1.0 / p) / std::pow(2.0, alpha / 2.0), "uniform"};
  auto consider = [&best](double v, const char* tag) {
    if (v < best.value) best = {v, tag};
  };
  if (alpha == std::floor(alpha))
    consider((4.0 - 2.0 * std::numbers::sqrt2) / std::pow(2.0, alpha / 2.0),
             "uniform_integer_order");
  const double s = alpha * p / 2.0;
  if (std::abs(s - std::round(s)) < 1e-12 && std::round(s) >= 1.0)
    consider(std::pow((s + 1.0) / std::pow(2.0, alpha * p), 1.0 / p),
             "closed_form_integer_half_order");
  return best;
}

double sigma_corrected_bound(double alpha, double p) {
  if (!(alpha > 0.0) || !(p >= 1.0))
    throw std::invalid_argument("sigma-corrected bound: need alpha > 0 and p >= 1");
  const double s = alpha * p / 2.0;
  const double lower = std::pow(2.0, s + 1.0) / (s + 1.0) + sigma_series(s).value;
  return std::pow(2.0 / (std::pow(2.0, s) * lower), 1.0 / p);
}

Spectrum extremal_spectrum(int n, double lambda_n, Complex gamma, Complex beta, Complex delta,
                           double p) {
  if (n < 1) throw std::invalid_argument("extremal spectrum: n must be positive");
  if (!(lambda_n > 0.0)) throw std::invalid_argument("extremal spectrum: lambda_n must be positive");
  std::vector<SpectrumEntry> entries;
  if (gamma != Complex{}) entries.push_back({0, 0.0, gamma});
  if (beta != Complex{}) entries.push_back({-n, -lambda_n, beta});
  if (delta != Complex{}) entries.push_back({n, lambda_n, delta});
  Spectrum s(std::move(entries), p);
  require_valid(s);
  return s;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
    case Status::not_applicable: return "n/a";
  }
  return "?";
}

bool within_tolerance(double lhs, double rhs) { return lhs <= rhs + 1e-8 * (1.0 + std::abs(rhs)); }

DirectMode parse_direct_mode(const std::string& name) {
  if (name == "pointwise" || name == "pointwise_sharp") return DirectMode::pointwise_sharp;
  if (name == "pointwise_uniform" || name == "uniform") return DirectMode::pointwise_uniform;
  if (name == "averaged_sin" || name == "sin") return DirectMode::averaged_sin;
  if (name == "averaged_flat" || name == "flat") return DirectMode::averaged_flat;
  throw std::invalid_argument("unknown mode '" + name +
                              "' (pointwise, pointwise_uniform, averaged_sin, averaged_flat)");
}

std::string to_string(DirectMode m) {
  switch (m) {
    case DirectMode::pointwise_sharp: return "pointwise";
    case DirectMode::pointwise_uniform: return "pointwise_uniform";
    case DirectMode::averaged_sin: return "averaged_sin";
    case DirectMode::averaged_flat: return "averaged_flat";
  }
  return "?";
}

namespace {

// Decides pass / inconclusive / fail given a coarse and an 8x refined rhs.
// A failure whose deficit could still be closed by the observed grid
// movement is inconclusive.
Status settle(double lhs, double rhs_coarse, double rhs_fine) {
  if (within_tolerance(lhs, rhs_fine)) return Status::pass;
  const double moved = rhs_fine - rhs_coarse;
  if (moved > 0.0 && lhs - rhs_fine <= 8.0 * moved) return Status::inconclusive;
  return Status::fail;
}

}  // namespace

InequalityReport verify_direct(const Spectrum& s, int n, const StepWeight& phi, DirectMode mode,
                               const DirectOptions& options,
                               std::optional<PointwiseConstant> constant) {
  require_valid(s);
  if (n < 1) throw std::invalid_argument("verify_direct: n must be >= 1");
  InequalityReport r;
  r.grid = options.grid;
  const double p = s.p();
  const ExponentLadder ladder = s.ladder();
  const int neff = effective_index(ladder, n);
  const int kmax = options.kmax > 0 ? options.kmax : std::max(s.max_index(), 1);
  r.details.push_back({"effective_n", static_cast<double>(neff)});
  if (neff == 0) {
    r.formula = to_string(mode);
    r.status = Status::pass;
    r.note = kEmptyTail;
    return r;
  }
  const double lambda = s.lambda_at(neff);
  const auto alpha = phi.alpha_order();

  if (mode == DirectMode::pointwise_sharp || mode == DirectMode::pointwise_uniform) {
    double tau = options.tau > 0.0 ? options.tau : kPi;
    if (mode == DirectMode::pointwise_uniform) {
      if (!alpha) {
        r.status = Status::not_applicable;
        r.note = "uniform constants need phi = alpha weight";
        return r;
      }
      if (std::abs(tau - kPi) > 1e-12) {
        r.status = Status::not_applicable;
        r.note = "uniform constants hold at tau = pi";
        return r;
      }
    }
    if (!constant) {
      if (mode == DirectMode::pointwise_uniform) {
        const UniformBound u = uniform_bound(*alpha, p);
        constant = PointwiseConstant{u.value, u.tag};
      } else {
        const SharpConstant k = sharp_constant(ladder, neff, phi, p, tau, options.ugrid, kmax);
        constant = PointwiseConstant{k.measure_constant, "sharp_constant_lp"};
        r.details.push_back({"ugrid", static_cast<double>(options.ugrid)});
        r.details.push_back({"lp_value", k.lp.value});
        r.details.push_back({"truncated", k.truncated ? 1.0 : 0.0});
      }
    }
    r.constant = constant->value;
    r.formula = constant->formula;
    r.lhs = best_approximation(s, n);
    ModulusOptions mo;
    mo.grid = options.grid;
    const ModulusEstimate w = modulus_estimate(s, phi, tau / lambda, mo);
    r.rhs = r.constant * w.value;
    r.details.push_back({"modulus", w.value});
    r.details.push_back({"refinement_gap", w.refinement_gap});
    r.details.push_back({"tau", tau});
    if (within_tolerance(r.lhs, r.rhs)) {
      r.status = Status::pass;
    } else {
      mo.grid = options.grid * 8;
      const ModulusEstimate fine = modulus_estimate(s, phi, tau / lambda, mo);
      const double rhs_fine = r.constant * fine.value;
      r.status = settle(r.lhs, r.rhs, rhs_fine);
      r.details.push_back({"rhs_refined", rhs_fine});
      if (rhs_fine > r.rhs) r.rhs = rhs_fine, r.grid = mo.grid;
    }
    r.ratio = safe_ratio(r.lhs, r.rhs);
    return r;
  }

  if (!alpha) {
    r.status = Status::not_applicable;
    r.note = "averaged estimates need phi = alpha weight";
    return r;
  }
  const bool flat = mode == DirectMode::averaged_flat;
  if (flat && *alpha * p < 1.0) {
    r.status = Status::not_applicable;
    r.note = "corollary requires alpha*p >= 1";
    return r;
  }
  const double tau = flat ? (options.tau > 0.0 ? options.tau : 0.75 * kPi) : kPi;
  auto run = [&](int grid) {
    return flat ? averaged_bound_flat(s, n, *alpha, tau, grid)
                : averaged_bound_sin(s, n, *alpha, grid);
  };
  AveragedBound b = run(options.grid);
  r.formula = to_string(mode);
  r.lhs = b.lhs;
  r.rhs = b.rhs;
  r.constant = 1.0 / b.integral;
  r.details.push_back({"integral", b.integral});
  r.details.push_back({"argmin_k", static_cast<double>(b.argmin_k)});
  r.details.push_back({"tau", tau});
  if (within_tolerance(r.lhs, r.rhs)) {
    r.status = Status::pass;
  } else {
    const AveragedBound fine = run(options.grid * 8);
    r.status = settle(r.lhs, r.rhs, fine.rhs);
    r.details.push_back({"rhs_refined", fine.rhs});
    if (fine.rhs > r.rhs) r.rhs = fine.rhs, r.grid = options.grid * 8;
  }
  r.ratio = safe_ratio(r.lhs, r.rhs);
  return r;
}

}  // namespace apxbsp
