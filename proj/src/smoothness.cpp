#include "apxbsp/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace apxbsp {

namespace {

double guarded_pow(double base, double p) {
  if (base <= 0.0) return 0.0;
  return std::exp(p * std::log(base));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Golden-section search for a maximum of g on [a, b].
std::pair<double, double> golden_max(const std::function<double(double)>& g, double a, double b,
                                     double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c), gd = g(d);
  while (b - a > width) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
  }
  return gc >= gd ? std::pair{c, gc} : std::pair{d, gd};
}

double sampled_scheme_sup(const DifferenceScheme& m) {
  auto g = [&m](double t) { return std::abs(m.symbol(t)); };
  const int samples = 8192;
  const double step = 2.0 * std::numbers::pi / samples;
  int best = 0;
  double best_v = g(0.0);
  for (int i = 1; i < samples; ++i) {
    const double v = g(i * step);
    if (v > best_v) best_v = v, best = i;
  }
  auto [t, v] = golden_max(g, (best - 1) * step, (best + 1) * step, 1e-12);
  (void)t;
  return std::max(v, best_v);
}

}  // namespace

DifferenceScheme::DifferenceScheme(std::vector<Complex> mu) : mu_(std::move(mu)) {
  if (mu_.empty()) throw std::invalid_argument("difference scheme needs at least one coefficient");
  Complex sum{};
  double scale = 0.0;
  for (const auto& m : mu_) sum += m, scale += std::abs(m);
  if (scale == 0.0) throw std::invalid_argument("difference scheme coefficients are all zero");
  if (std::abs(sum) > 1e-12 * std::max(1.0, scale))
    throw std::invalid_argument("difference scheme coefficients must sum to zero");
}

DifferenceScheme DifferenceScheme::binomial(int order) {
  if (order < 1) throw std::invalid_argument("binomial scheme order must be >= 1");
  std::vector<Complex> mu;
  double c = 1.0;
  for (int j = 0; j <= order; ++j) {
    mu.emplace_back((j % 2 ? -1.0 : 1.0) * c, 0.0);
    c = c * (order - j) / (j + 1);
  }
  return DifferenceScheme(std::move(mu));
}

Complex DifferenceScheme::symbol(double t) const {
  Complex sum{};
  for (std::size_t j = 0; j < mu_.size(); ++j)
    sum += mu_[j] * std::polar(1.0, -static_cast<double>(j) * t);
  return sum;
}

StepWeight::StepWeight(std::variant<Alpha, Scheme, Table> kind) : kind_(std::move(kind)) {}

StepWeight StepWeight::alpha(double order) {
  if (!(order > 0.0)) throw std::invalid_argument("alpha must be positive");
  StepWeight w(Alpha{order});
  w.sup_ = std::exp2(order);
  w.sup_exact_ = true;
  w.description_ = "alpha:" + fmt(order);
  return w;
}

StepWeight StepWeight::scheme(DifferenceScheme m) {
  const double sup = sampled_scheme_sup(m);
  std::string desc = "scheme:";
  for (std::size_t j = 0; j < m.mu().size(); ++j) {
    if (j) desc += ",";
    desc += fmt(m.mu()[j].real());
    if (m.mu()[j].imag() != 0.0) desc += (m.mu()[j].imag() > 0 ? "+" : "") + fmt(m.mu()[j].imag()) + "i";
  }
  StepWeight w(Scheme{std::move(m)});
  w.sup_ = sup;
  w.description_ = std::move(desc);
  return w;
}

StepWeight StepWeight::tabulated(std::vector<double> t, std::vector<double> values) {
  if (t.size() != values.size() || t.size() < 2)
    throw std::invalid_argument("tabulated weight needs >= 2 matching (t, phi) samples");
  std::vector<std::pair<double, double>> samples;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(values[i]))
      throw std::invalid_argument("tabulated weight has non-finite samples");
    samples.emplace_back(std::abs(t[i]), values[i]);
  }
  std::sort(samples.begin(), samples.end());
  Table table;
  double mismatch = 0.0;
  for (const auto& [x, v] : samples) {
    if (!table.t.empty() && x == table.t.back()) {
      mismatch = std::max(mismatch, std::abs(v - table.v.back()));
      continue;
    }
    table.t.push_back(x);
    table.v.push_back(v);
  }
  if (table.t.front() != 0.0) throw std::invalid_argument("tabulated weight must include t = 0");
  if (table.t.size() < 2) throw std::invalid_argument("tabulated weight needs a positive node");
  const double sup = *std::max_element(table.v.begin(), table.v.end());
  const double limit = table.t.back();
  StepWeight w(std::move(table));
  w.sup_ = sup;
  w.sup_exact_ = true;
  w.mirror_mismatch_ = mismatch;
  w.description_ = "table[0," + fmt(limit) + "]";
  return w;
}

StepWeight StepWeight::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("weight spec must look like alpha:<a>, scheme:<mu,...> or table:<path>");
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (kind == "alpha") return alpha(std::stod(rest));
  if (kind == "scheme") {
    std::vector<Complex> mu;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) mu.emplace_back(std::stod(item), 0.0);
    return scheme(DifferenceScheme(std::move(mu)));
  }
  if (kind == "table") {
    std::ifstream in(rest);
    if (!in) throw std::invalid_argument("cannot open weight table '" + rest + "'");
    std::vector<double> t, v;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      double a = 0.0, b = 0.0;
      if (!(ls >> a >> b)) {
        if (line_no == 1) continue;  // header
        throw std::invalid_argument(rest + ":" + std::to_string(line_no) + ": expected t,phi");
      }
      t.push_back(a);
      v.push_back(b);
    }
    return tabulated(std::move(t), std::move(v));
  }
  throw std::invalid_argument("unknown weight kind '" + kind + "'");
}

double StepWeight::operator()(double t) const {
  return std::visit(
      [t](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Alpha>) {
          return phi_alpha(t, k.order);
        } else if constexpr (std::is_same_v<K, Scheme>) {
          return std::abs(k.m.symbol(t));
        } else {
          const double x = std::abs(t);
          if (x > k.t.back())
            throw std::domain_error("tabulated weight evaluated outside [-" + fmt(k.t.back()) +
                                    ", " + fmt(k.t.back()) + "]");
          auto it = std::upper_bound(k.t.begin(), k.t.end(), x);
          if (it == k.t.end()) return k.v.back();
          const std::size_t i = static_cast<std::size_t>(it - k.t.begin());
          const double w = (x - k.t[i - 1]) / (k.t[i] - k.t[i - 1]);
          return (1.0 - w) * k.v[i - 1] + w * k.v[i];
        }
      },
      kind_);
}

double StepWeight::pow(double t, double p) const {
  if (const auto* a = std::get_if<Alpha>(&kind_)) {
    const double s = std::abs(std::sin(0.5 * t));
    if (s == 0.0) return 0.0;
    const double r = a->order * p;
    return std::exp(r * (std::log(s) + std::numbers::ln2));
  }
  return guarded_pow((*this)(t), p);
}

std::optional<double> StepWeight::alpha_order() const {
  if (const auto* a = std::get_if<Alpha>(&kind_)) return a->order;
  return std::nullopt;
}

double StepWeight::domain_limit() const {
  if (const auto* tab = std::get_if<Table>(&kind_)) return tab->t.back();
  return std::numeric_limits<double>::infinity();
}

std::string StepWeight::describe() const { return description_; }

double phi_alpha(double t, double alpha) {
  const double s = std::abs(std::sin(0.5 * t));
  if (s == 0.0) return 0.0;
  return std::exp(alpha * (std::log(s) + std::numbers::ln2));
}

StepWeight phi_from_scheme(const DifferenceScheme& m) { return StepWeight::scheme(m); }

WeightCheck check_step_weight(const StepWeight& phi, double half_width) {
  WeightCheck out;
  const double limit = std::min(half_width, phi.domain_limit());
  const int samples = 1001;
  int zeros = 0;
  const double tol = 1e-12;
  if (std::abs(phi(0.0)) > tol) out.violations.push_back("phi(0) = " + fmt(phi(0.0)) + " != 0");
  for (int i = 0; i < samples; ++i) {
    const double t = -limit + 2.0 * limit * i / (samples - 1);
    const double v = phi(t);
    const double mirrored = phi(-t);
    if (v < -tol) {
      out.violations.push_back("phi(" + fmt(t) + ") < 0");
      break;
    }
    if (std::abs(v - mirrored) > tol * std::max(1.0, std::abs(v))) {
      out.violations.push_back("phi not even at t = " + fmt(t));
      break;
    }
    if (v <= tol) ++zeros;
  }
  if (phi.mirror_mismatch() > tol)
    out.violations.push_back("tabulated samples at -t and t disagree by " +
                             fmt(phi.mirror_mismatch()));
  // t = 0 is always a zero; only the remaining samples count.
  out.zero_fraction = static_cast<double>(std::max(0, zeros - 1)) / (samples - 1);
  if (out.zero_fraction > 0.01)
    out.warnings.push_back("phi vanishes on " + fmt(100.0 * out.zero_fraction) +
                           "% of the samples");
  return out;
}

DifferenceEnergy::DifferenceEnergy(const Spectrum& s, const StepWeight& phi)
    : phi_(phi), p_(s.p()) {
  for (const auto& e : s.entries()) {
    if (e.k < 0 && s.find(-e.k) != nullptr) continue;  // folded into +k below
    double w = std::pow(std::abs(e.coeff), p_);
    if (e.k > 0)
      if (const SpectrumEntry* mirror = s.find(-e.k)) w += std::pow(std::abs(mirror->coeff), p_);
    if (w == 0.0 || e.lambda == 0.0) continue;
    lambdas_.push_back(std::abs(e.lambda));
    weights_.push_back(w);
  }
}

double DifferenceEnergy::operator()(double h) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < lambdas_.size(); ++i) sum += weights_[i] * phi_.pow(lambdas_[i] * h, p_);
  return sum;
}

double DifferenceEnergy::total_weight() const {
  double sum = 0.0;
  for (double w : weights_) sum += w;
  return sum;
}

double weighted_difference_norm(const Spectrum& s, const StepWeight& phi, double h) {
  require_valid(s);
  const double e = DifferenceEnergy(s, phi)(h);
  return e == 0.0 ? 0.0 : std::pow(e, 1.0 / s.p());
}

ModulusEstimate sup_on_interval(const std::function<double(double)>& energy, double delta,
                                const ModulusOptions& options) {
  if (delta < 0.0) throw std::invalid_argument("delta must be nonnegative");
  if (options.grid < 2) throw std::invalid_argument("modulus grid must have >= 2 nodes");
  ModulusEstimate out;
  if (delta == 0.0) {
    out.value = out.grid_value = energy(0.0);
    return out;
  }
  const int n = options.grid;
  const double step = delta / (n - 1);
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = energy(i == n - 1 ? delta : i * step);

  int best = 0;
  for (int i = 1; i < n; ++i)
    if (values[static_cast<std::size_t>(i)] > values[static_cast<std::size_t>(best)]) best = i;
  out.grid_value = values[static_cast<std::size_t>(best)];
  out.value = out.grid_value;
  out.argmax = best == n - 1 ? delta : best * step;

  // Local maxima on the grid, best first.
  std::vector<int> peaks;
  for (int i = 0; i < n; ++i) {
    const double v = values[static_cast<std::size_t>(i)];
    const bool left_ok = i == 0 || v >= values[static_cast<std::size_t>(i - 1)];
    const bool right_ok = i == n - 1 || v >= values[static_cast<std::size_t>(i + 1)];
    if (left_ok && right_ok) peaks.push_back(i);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) {
    return values[static_cast<std::size_t>(a)] > values[static_cast<std::size_t>(b)];
  });
  if (static_cast<int>(peaks.size()) > options.refine_peaks) peaks.resize(static_cast<std::size_t>(options.refine_peaks));

  for (int i : peaks) {
    const double lo = std::max(0.0, (i - 1) * step);
    const double hi = std::min(delta, (i + 1) * step);
    if (hi <= lo) continue;
    auto [h, v] = golden_max(energy, lo, hi, options.refine_width);
    if (v > out.value) {
      out.value = v;
      out.argmax = h;
    }
  }
  out.refinement_gap = out.value - out.grid_value;
  return out;
}

ModulusEstimate modulus_estimate(const Spectrum& s, const StepWeight& phi, double delta,
                                 const ModulusOptions& options) {
  if (delta < 0.0) throw std::invalid_argument("delta must be nonnegative");
  require_valid(s);
  const DifferenceEnergy energy(s, phi);
  ModulusEstimate e = sup_on_interval(std::cref(energy), delta, options);
  const double inv_p = 1.0 / s.p();
  auto root = [inv_p](double v) { return v <= 0.0 ? 0.0 : std::pow(v, inv_p); };
  e.value = root(e.value);
  e.grid_value = root(e.grid_value);
  e.refinement_gap = e.value - e.grid_value;
  return e;
}

double generalized_modulus(const Spectrum& s, const StepWeight& phi, double delta, int grid) {
  ModulusOptions options;
  options.grid = grid;
  return modulus_estimate(s, phi, delta, options).value;
}

double scheme_modulus(const Spectrum& s, const DifferenceScheme& m, double delta, int grid) {
  return generalized_modulus(s, phi_from_scheme(m), delta, grid);
}

}  // namespace apxbsp
