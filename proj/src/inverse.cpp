#include "apxbsp/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace apxbsp {

namespace {

struct Neumaier {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Present rungs with k <= n, each with E_k^p.
struct Rung {
  double lambda;
  double tail_p;
};

std::vector<Rung> rungs_up_to(const Spectrum& s, int n) {
  const ExponentLadder ladder = s.ladder();
  bool present = false;
  std::vector<Rung> out;
  for (const auto& pt : ladder) {
    if (pt.k > n) break;
    present = pt.k == n;
    out.push_back({pt.lambda, std::pow(best_approximation(s, pt.k), s.p())});
  }
  if (!present)
    throw std::invalid_argument("inverse bound: n = " + std::to_string(n) +
                                " is not a present index of the spectrum");
  return out;
}

InverseBound modulus_side(const Spectrum& s, const StepWeight& phi, double delta, int grid) {
  ModulusOptions mo;
  mo.grid = grid;
  const ModulusEstimate w = modulus_estimate(s, phi, delta, mo);
  InverseBound out;
  out.lhs_p = std::pow(w.value, s.p());
  out.refinement_gap = out.lhs_p - std::pow(w.grid_value, s.p());
  out.grid = grid;
  return out;
}

// No positive exponents: f is constant, both sides vanish.
bool constant_spectrum(const Spectrum& s) { return s.ladder().empty(); }

void require_power_regime(double alpha, double p) {
  if (!(alpha > 0.0)) throw std::invalid_argument("inverse bound: alpha must be positive");
  if (alpha * p < 1.0) throw std::invalid_argument("inverse bound restricted to alpha*p >= 1");
}

}  // namespace

double AbelResult::relative_discrepancy() const {
  return scale > 0.0 ? std::abs(lhs - rhs) / scale : std::abs(lhs - rhs);
}

AbelResult abel_transform(const std::vector<double>& beta, const std::vector<double>& c, int n1,
                          int n2) {
  if (n1 < 1 || n2 < n1) throw std::invalid_argument("abel transform: need 1 <= N1 <= N2");
  if (static_cast<std::size_t>(n2) > beta.size() || static_cast<std::size_t>(n2) > c.size())
    throw std::invalid_argument("abel transform: N2 exceeds the sequence length");
  const int len = static_cast<int>(c.size());
  // tail[v] = sum_{i >= v} c_i, 1-based, tail[len + 1] = 0.
  std::vector<double> tail(len + 2, 0.0);
  {
    Neumaier acc;
    for (int v = len; v >= 1; --v) {
      acc.add(c[v - 1]);
      tail[v] = acc.value();
    }
  }
  auto b = [&](int v) { return beta[v - 1]; };
  Neumaier lhs, rhs;
  double bmax = 0.0, cabs = 0.0;
  for (int v = n1; v <= n2; ++v) lhs.add(b(v) * c[v - 1]), bmax = std::max(bmax, std::abs(b(v)));
  for (double x : c) cabs += std::abs(x);
  rhs.add(b(n1) * tail[n1]);
  for (int v = n1 + 1; v <= n2; ++v) rhs.add((b(v) - b(v - 1)) * tail[v]);
  rhs.add(-b(n2) * tail[n2 + 1]);
  AbelResult out{lhs.value(), rhs.value(), 0.0};
  out.scale = std::max({std::abs(out.lhs), std::abs(out.rhs), bmax * cabs});
  return out;
}

HypothesisCheck check_inverse_hypotheses(const StepWeight& phi, double tau) {
  HypothesisCheck out;
  std::ostringstream os;
  os.precision(12);
  if (!(tau > 0.0)) {
    out.ok = false;
    out.message = "tau must be positive";
    return out;
  }
  if (tau > phi.domain_limit()) {
    os << "tau = " << tau << " exceeds the weight's domain " << phi.domain_limit();
    out.ok = false;
    out.message = os.str();
    return out;
  }
  const int samples = 2048;
  double prev = phi(0.0);
  for (int i = 1; i <= samples; ++i) {
    const double t = tau * i / samples;
    const double v = phi(t);
    if (v < prev - 1e-12) {
      os << "phi decreases on [0, tau]: phi(" << t << ") = " << v << " < " << prev;
      out.ok = false;
      out.message = os.str();
      return out;
    }
    prev = v;
  }
  if (const auto sup = phi.sup()) {
    const double tol = phi.sup_is_exact() ? 1e-12 : 1e-9 * std::max(1.0, *sup);
    if (phi(tau) < *sup - tol) {
      os << "phi(tau) = " << phi(tau) << " is below max phi = " << *sup;
      out.ok = false;
      out.message = os.str();
    }
  }
  return out;
}

InverseBound inverse_bound(const Spectrum& s, int n, const StepWeight& phi, double tau, int grid) {
  require_valid(s);
  const HypothesisCheck h = check_inverse_hypotheses(phi, tau);
  if (!h.ok) throw std::invalid_argument("inverse bound hypotheses: " + h.message);
  if (constant_spectrum(s)) return InverseBound{0.0, 0.0, 0.0, grid};
  const std::vector<Rung> rungs = rungs_up_to(s, n);
  const double ln = rungs.back().lambda;
  InverseBound out = modulus_side(s, phi, tau / ln, grid);
  Neumaier rhs;
  double prev = phi.pow(0.0, s.p());
  for (const Rung& r : rungs) {
    const double cur = phi.pow(tau * r.lambda / ln, s.p());
    rhs.add((cur - prev) * r.tail_p);
    prev = cur;
  }
  out.rhs_p = rhs.value();
  return out;
}

InverseBound inverse_bound_power(const Spectrum& s, int n, double alpha, int grid) {
  require_valid(s);
  const double ap = alpha * s.p();
  require_power_regime(alpha, s.p());
  if (constant_spectrum(s)) return InverseBound{0.0, 0.0, 0.0, grid};
  const std::vector<Rung> rungs = rungs_up_to(s, n);
  const double ln = rungs.back().lambda;
  InverseBound out = modulus_side(s, StepWeight::alpha(alpha), std::numbers::pi / ln, grid);
  Neumaier sum;
  double prev = 0.0;
  for (const Rung& r : rungs) {
    sum.add(std::pow(r.lambda, ap - 1.0) * (r.lambda - prev) * r.tail_p);
    prev = r.lambda;
  }
  out.rhs_p = ap * std::pow(2.0 * std::numbers::pi / ln, ap) * sum.value();
  return out;
}

double max_gap(const Spectrum& s) {
  const ExponentLadder ladder = s.ladder();
  if (ladder.empty()) throw std::invalid_argument("max_gap: no positive exponents");
  double prev = 0.0, gap = 0.0;
  for (const auto& pt : ladder) {
    gap = std::max(gap, pt.lambda - prev);
    prev = pt.lambda;
  }
  return gap;
}

InverseBound inverse_bound_gap(const Spectrum& s, int n, double alpha, double C, int grid) {
  require_valid(s);
  const double ap = alpha * s.p();
  require_power_regime(alpha, s.p());
  if (constant_spectrum(s)) return InverseBound{0.0, 0.0, 0.0, grid};
  const double g = max_gap(s);
  if (!(C >= g)) {
    std::ostringstream os;
    os << "inverse bound: C = " << C << " is below the largest gap " << g;
    throw std::invalid_argument(os.str());
  }
  const std::vector<Rung> rungs = rungs_up_to(s, n);
  const double ln = rungs.back().lambda;
  InverseBound out = modulus_side(s, StepWeight::alpha(alpha), std::numbers::pi / ln, grid);
  Neumaier sum;
  for (const Rung& r : rungs) sum.add(std::pow(r.lambda, ap - 1.0) * r.tail_p);
  out.rhs_p = ap * std::pow(2.0 * std::numbers::pi, ap) / std::pow(ln, ap) * C * sum.value();
  return out;
}

InverseForm parse_inverse_form(const std::string& name) {
  if (name == "general") return InverseForm::general;
  if (name == "power") return InverseForm::power;
  if (name == "gap") return InverseForm::gap;
  throw std::invalid_argument("unknown inverse form '" + name + "' (general, power, gap)");
}

std::string to_string(InverseForm f) {
  switch (f) {
    case InverseForm::general: return "general";
    case InverseForm::power: return "power";
    case InverseForm::gap: return "gap";
  }
  return "?";
}

InequalityReport verify_inverse(const Spectrum& s, int n, const StepWeight& phi, double tau,
                                InverseForm form, double C, int grid) {
  InequalityReport r;
  r.direction = "inverse";
  r.grid = grid;
  InverseBound b;
  switch (form) {
    case InverseForm::general:
      b = inverse_bound(s, n, phi, tau, grid);
      r.formula = "telescoped_general";
      r.constant = 1.0;
      break;
    case InverseForm::power:
    case InverseForm::gap: {
      const auto alpha = phi.alpha_order();
      if (!alpha) {
        r.status = Status::not_applicable;
        r.note = "power forms need phi = alpha weight";
        return r;
      }
      if (*alpha * s.p() < 1.0) {
        r.status = Status::not_applicable;
        r.note = "restricted to alpha*p >= 1";
        return r;
      }
      const double ap = *alpha * s.p();
      if (form == InverseForm::power) {
        b = inverse_bound_power(s, n, *alpha, grid);
        r.formula = "telescoped_power";
        r.constant = ap * std::pow(2.0 * std::numbers::pi, ap);
      } else {
        const double c = C > 0.0 ? C : (s.ladder().empty() ? 0.0 : max_gap(s));
        b = inverse_bound_gap(s, n, *alpha, c, grid);
        r.formula = "bounded_gap";
        r.constant = ap * std::pow(2.0 * std::numbers::pi, ap) * c;
        r.details.push_back({"C", c});
      }
      break;
    }
  }
  r.lhs = b.lhs_p;
  r.rhs = b.rhs_p;
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : (r.lhs == 0.0 ? 0.0 : INFINITY);
  r.details.push_back({"refinement_gap", b.refinement_gap});
  r.status = within_tolerance(r.lhs, r.rhs) ? Status::pass : Status::fail;
  return r;
}

}  // namespace apxbsp
