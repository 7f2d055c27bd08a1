#include "apxbsp/classes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "apxbsp/inverse.hpp"
#include "apxbsp/smoothness.hpp"

namespace apxbsp {

Majorant Majorant::power(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("majorant: r must be positive");
  Majorant m;
  m.r_ = r;
  return m;
}

Majorant Majorant::tabulated(std::vector<double> t, std::vector<double> v) {
  if (t.size() < 2 || t.size() != v.size())
    throw std::invalid_argument("majorant: table needs at least two (t, value) rows");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(v[i]))
      throw std::invalid_argument("majorant: non-finite table entry");
    if (i > 0 && !(t[i] > t[i - 1]))
      throw std::invalid_argument("majorant: table nodes must be strictly increasing");
  }
  if (t.front() < 0.0 || t.back() > 1.0)
    throw std::invalid_argument("majorant: table nodes must lie in [0, 1]");
  Majorant m;
  m.t_ = std::move(t);
  m.v_ = std::move(v);
  return m;
}

Majorant Majorant::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("majorant: expected power:<r> or table:<path>");
  const std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
  if (kind == "power") {
    std::size_t used = 0;
    double r = 0.0;
    try {
      r = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size())
      throw std::invalid_argument("majorant: malformed exponent '" + arg + "'");
    return power(r);
  }
  if (kind == "table") {
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("majorant: cannot open table '" + arg + "'");
    std::vector<double> t, v;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      double a, b;
      if (!(ls >> a)) continue;  // blank line or header
      if (!(ls >> b))
        throw std::invalid_argument(arg + ":" + std::to_string(line_no) + ": expected two columns");
      t.push_back(a);
      v.push_back(b);
    }
    return tabulated(std::move(t), std::move(v));
  }
  throw std::invalid_argument("majorant: unknown kind '" + kind + "'");
}

double Majorant::operator()(double delta) const {
  if (r_) return delta <= 0.0 ? 0.0 : std::pow(delta, *r_);
  if (delta > 1.0 + 1e-12)
    throw std::domain_error("tabulated majorant is defined on [0, 1] only");
  if (delta <= t_.front()) return v_.front();
  if (delta >= t_.back()) return v_.back();
  const auto it = std::upper_bound(t_.begin(), t_.end(), delta);
  const std::size_t i = static_cast<std::size_t>(it - t_.begin());
  const double w = (delta - t_[i - 1]) / (t_[i] - t_[i - 1]);
  return v_[i - 1] + w * (v_[i] - v_[i - 1]);
}

std::optional<double> Majorant::power_exponent() const { return r_; }

std::string Majorant::describe() const {
  std::ostringstream os;
  if (r_)
    os << "power:" << *r_;
  else
    os << "table(" << t_.size() << " nodes)";
  return os.str();
}

std::vector<std::string> validate_majorant(const Majorant& w) {
  std::vector<std::string> report;
  if (w.power_exponent()) return report;
  const auto& t = w.nodes();
  const auto& v = w.values();
  if (t.back() < 1.0) report.push_back("table does not reach delta = 1");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1]) {
      report.push_back("not nondecreasing on [" + std::to_string(t[i - 1]) + ", " +
                       std::to_string(t[i]) + "]");
      break;
    }
  for (std::size_t i = 0; i < v.size(); ++i)
    if (t[i] > 0.0 && !(v[i] > 0.0)) {
      report.push_back("not strictly positive on (0, 1]");
      break;
    }
  const double top = w(std::min(1.0, t.back()));
  if (!(w(1e-6) < 1e-3 * top)) report.push_back("omega(0+) does not tend to 0");
  return report;
}

GrowthDiagnostic growth_diagnostic(const std::vector<double>& x, const std::vector<double>& ratios,
                                   double threshold) {
  if (x.size() != ratios.size()) throw std::invalid_argument("growth diagnostic: size mismatch");
  GrowthDiagnostic d;
  if (x.empty()) return d;
  d.max_ratio = *std::max_element(ratios.begin(), ratios.end());
  const double X = x.back();
  double last = 0.0, ref = 0.0;
  bool have_ref = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > X / 2.0) last = std::max(last, ratios[i]);
    if (x[i] > X / 16.0 && x[i] <= X / 8.0) ref = std::max(ref, ratios[i]), have_ref = true;
  }
  if (!have_ref) {
    // Short ranges: compare with the earliest point instead.
    ref = ratios.front();
  }
  if (ref > 0.0)
    d.trend = last / ref;
  else
    d.trend = last > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  d.growing = d.trend > threshold;
  return d;
}

Profile bari_ratio(const Majorant& omega, double s, const ExponentLadder& ladder, int n_max,
                   double power) {
  if (!(s > 0.0)) throw std::invalid_argument("bari ratio: s must be positive");
  Profile out;
  const std::size_t count =
      n_max > 0 ? std::min(ladder.size(), static_cast<std::size_t>(n_max)) : ladder.size();
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double l = ladder[i].lambda;
    const double w = std::pow(omega(1.0 / l), power);
    const double term = std::pow(l, s - 1.0) * w;
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    out.x.push_back(ladder[i].k);
    out.ratio.push_back((sum + comp) / (std::pow(l, s) * w));
  }
  out.diagnostic = growth_diagnostic(out.x, out.ratio);
  return out;
}

Profile membership_by_best_approx(const Spectrum& s, const Majorant& omega, int n_min, int n_max) {
  require_valid(s);
  Profile out;
  for (const auto& pt : s.ladder()) {
    if (pt.k < n_min) continue;
    if (n_max > 0 && pt.k > n_max) break;
    const double w = omega(1.0 / pt.lambda);
    if (!(w > 0.0)) throw std::domain_error("majorant vanishes at 1/lambda_n");
    out.x.push_back(pt.k);
    out.ratio.push_back(best_approximation(s, pt.k) / w);
  }
  out.diagnostic = growth_diagnostic(out.x, out.ratio);
  return out;
}

std::vector<double> default_delta_grid() {
  std::vector<double> g(24);
  for (int i = 0; i < 24; ++i) g[i] = std::pow(10.0, -3.0 * i / 23.0);
  return g;
}

Profile membership_by_modulus(const Spectrum& s, const Majorant& omega, double alpha,
                              const std::vector<double>& delta_grid, int modulus_grid) {
  require_valid(s);
  if (!(alpha > 0.0)) throw std::invalid_argument("membership: alpha must be positive");
  std::vector<double> deltas = delta_grid;
  for (double d : deltas)
    if (!(d > 0.0) || d > 1.0) throw std::invalid_argument("membership: delta grid must lie in (0, 1]");
  std::sort(deltas.begin(), deltas.end(), std::greater<>());
  const StepWeight phi = StepWeight::alpha(alpha);
  Profile out;
  std::vector<double> inv;
  for (double d : deltas) {
    const double w = omega(d);
    if (!(w > 0.0)) throw std::domain_error("majorant vanishes on the delta grid");
    out.x.push_back(d);
    out.ratio.push_back(generalized_modulus(s, phi, d, modulus_grid) / w);
    inv.push_back(1.0 / d);
  }
  out.diagnostic = growth_diagnostic(inv, out.ratio);
  return out;
}

HolderClassification classify_holder(const Spectrum& s, double r, double alpha, int n_min,
                                     int n_max, const std::vector<double>& delta_grid,
                                     int modulus_grid) {
  require_valid(s);
  if (!(alpha > 0.0)) throw std::invalid_argument("classify: alpha must be positive");
  if (!(r > 0.0) || r > alpha)
    throw std::invalid_argument("classify: r must lie in (0, alpha]");
  HolderClassification out;
  out.beyond_corollary_range = r > alpha / s.p();
  out.max_gap = s.ladder().empty() ? 0.0 : max_gap(s);
  const Majorant omega = Majorant::power(r);
  out.best_approx = membership_by_best_approx(s, omega, n_min, n_max);
  out.modulus = membership_by_modulus(s, omega, alpha, delta_grid, modulus_grid);
  out.in_class_best_approx = !out.best_approx.diagnostic.growing;
  out.in_class_modulus = !out.modulus.diagnostic.growing;
  out.consistent = out.in_class_best_approx == out.in_class_modulus;
  out.verdict = !out.consistent ? "inconsistent" : (out.in_class_best_approx ? "in class"
                                                                              : "not in class");
  return out;
}

Spectrum power_tail_spectrum(int N, double r, double p) {
  if (N < 1) throw std::invalid_argument("power tail spectrum: N must be >= 1");
  if (!(r > 0.0) || !(p >= 1.0))
    throw std::invalid_argument("power tail spectrum: need r > 0 and p >= 1");
  std::vector<SpectrumEntry> entries;
  entries.push_back({0, 0.0, 1.0});
  for (int n = 1; n <= N; ++n) {
    const double tail = std::pow(n, -r * p);
    const double next = n < N ? std::pow(n + 1, -r * p) : 0.0;
    const double a = std::pow((tail - next) / 2.0, 1.0 / p);
    entries.push_back({n, static_cast<double>(n), a});
    entries.push_back({-n, -static_cast<double>(n), a});
  }
  return Spectrum(std::move(entries), p);
}

}  // namespace apxbsp
