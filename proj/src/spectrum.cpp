#include "apxbsp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace apxbsp {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double abs_pow(Complex z, double p) {
  const double a = std::abs(z);
  if (a == 0.0) return 0.0;
  return p == 1.0 ? a : std::pow(a, p);
}

}  // namespace

namespace detail {

double stable_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end(),
            [](double a, double b) { return std::abs(a) < std::abs(b); });
  double sum = 0.0;
  double comp = 0.0;
  for (double t : terms) {
    const double y = sum + t;
    if (std::abs(sum) >= std::abs(t))
      comp += (sum - y) + t;
    else
      comp += (t - y) + sum;
    sum = y;
  }
  return sum + comp;
}

}  // namespace detail

Spectrum::Spectrum(std::vector<SpectrumEntry> entries, double p)
    : entries_(std::move(entries)), p_(p) {
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.k < b.k; });
}

const SpectrumEntry* Spectrum::find(int k) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                             [](const SpectrumEntry& e, int key) { return e.k < key; });
  if (it == entries_.end() || it->k != k) return nullptr;
  return &*it;
}

Complex Spectrum::coeff(int k) const {
  const SpectrumEntry* e = find(k);
  return e ? e->coeff : Complex{};
}

ExponentLadder Spectrum::ladder() const {
  ExponentLadder out;
  for (const auto& e : entries_) {
    if (e.k > 0) {
      out.push_back({e.k, e.lambda});
    } else if (e.k < 0 && find(-e.k) == nullptr) {
      out.push_back({-e.k, -e.lambda});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const LadderPoint& a, const LadderPoint& b) { return a.k < b.k; });
  return out;
}

double Spectrum::lambda_at(int k) const {
  if (k == 0) return 0.0;
  if (const SpectrumEntry* e = find(k)) return e->lambda;
  if (const SpectrumEntry* e = find(-k)) return -e->lambda;
  throw std::out_of_range("index " + std::to_string(k) + " is not part of the spectrum");
}

int Spectrum::max_index() const {
  int m = 0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e.k));
  return m;
}

Spectrum Spectrum::scaled(Complex c) const {
  auto copy = entries_;
  for (auto& e : copy) e.coeff *= c;
  return Spectrum(std::move(copy), p_);
}

Spectrum Spectrum::with_p(double p) const { return Spectrum(entries_, p); }

InvalidSpectrum::InvalidSpectrum(std::vector<std::string> violations)
    : std::invalid_argument([&] {
        std::string msg = "invalid spectrum:";
        for (const auto& v : violations) msg += " [" + v + "]";
        return msg;
      }()),
      violations_(std::move(violations)) {}

std::vector<std::string> validate_spectrum(const Spectrum& s) {
  std::vector<std::string> report;
  if (!(s.p() >= 1.0) || !std::isfinite(s.p()))
    report.push_back("p = " + fmt_double(s.p()) + " outside [1, inf)");

  const auto& es = s.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto& e = es[i];
    if (i > 0 && es[i - 1].k == e.k) report.push_back("duplicate index " + std::to_string(e.k));
    if (!std::isfinite(e.lambda) || !std::isfinite(e.coeff.real()) ||
        !std::isfinite(e.coeff.imag()))
      report.push_back("non-finite value at index " + std::to_string(e.k));
    if (e.k == 0 && e.lambda != 0.0)
      report.push_back("lambda(0) = " + fmt_double(e.lambda) + " must be 0");
    if (e.k > 0 && !(e.lambda > 0.0))
      report.push_back("lambda(" + std::to_string(e.k) + ") must be positive");
    if (e.k < 0 && !(e.lambda < 0.0))
      report.push_back("lambda(" + std::to_string(e.k) + ") must be negative");
    if (e.k > 0) {
      if (const SpectrumEntry* mirror = s.find(-e.k)) {
        const double scale = std::max(1.0, std::abs(e.lambda));
        if (std::abs(mirror->lambda + e.lambda) > 1e-12 * scale)
          report.push_back("lambda(" + std::to_string(-e.k) + ") != -lambda(" +
                           std::to_string(e.k) + ")");
        if (std::abs(e.coeff) + std::abs(mirror->coeff) == 0.0)
          report.push_back("|A_" + std::to_string(e.k) + "|+|A_" + std::to_string(-e.k) +
                           "| = 0");
      } else if (std::abs(e.coeff) == 0.0) {
        report.push_back("|A_" + std::to_string(e.k) + "|+|A_" + std::to_string(-e.k) + "| = 0");
      }
    }
    if (e.k < 0 && s.find(-e.k) == nullptr && std::abs(e.coeff) == 0.0)
      report.push_back("|A_" + std::to_string(-e.k) + "|+|A_" + std::to_string(e.k) + "| = 0");
  }

  const ExponentLadder ladder = s.ladder();
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (!(ladder[i].lambda > ladder[i - 1].lambda))
      report.push_back("exponents not strictly increasing between indices " +
                       std::to_string(ladder[i - 1].k) + " and " + std::to_string(ladder[i].k));
  }
  return report;
}

void require_valid(const Spectrum& s) {
  auto report = validate_spectrum(s);
  if (!report.empty()) throw InvalidSpectrum(std::move(report));
}

double lp_norm(const Spectrum& s) {
  require_valid(s);
  std::vector<double> terms;
  terms.reserve(s.size());
  for (const auto& e : s.entries()) terms.push_back(abs_pow(e.coeff, s.p()));
  const double sum = detail::stable_sum(std::move(terms));
  return sum == 0.0 ? 0.0 : std::pow(sum, 1.0 / s.p());
}

Complex evaluate(const Spectrum& s, double x) {
  Complex sum{};
  for (const auto& e : s.entries()) sum += e.coeff * std::polar(1.0, e.lambda * x);
  return sum;
}

double best_approximation(const Spectrum& s, int n) {
  if (n < 1) throw std::invalid_argument("best_approximation: n must be >= 1");
  require_valid(s);
  std::vector<double> terms;
  for (const auto& e : s.entries())
    if (std::abs(e.k) >= n) terms.push_back(abs_pow(e.coeff, s.p()));
  const double sum = detail::stable_sum(std::move(terms));
  return sum == 0.0 ? 0.0 : std::pow(sum, 1.0 / s.p());
}

double pair_energy(const Spectrum& s, int nu) {
  return abs_pow(s.coeff(nu), s.p()) + (nu == 0 ? 0.0 : abs_pow(s.coeff(-nu), s.p()));
}

Complex estimate_coefficient(const std::function<Complex(double)>& f, double lambda, double period,
                             int steps) {
  if (!(period > 0.0)) throw std::invalid_argument("estimate_coefficient: T must be positive");
  if (steps < 2) throw std::invalid_argument("estimate_coefficient: steps must be >= 2");
  if (steps % 2 != 0) ++steps;
  const double h = period / steps;
  auto integrand = [&](int i) {
    const double x = i * h;
    return f(x) * std::polar(1.0, -lambda * x);
  };
  Complex odd{}, even{};
  for (int i = 1; i < steps; ++i) (i % 2 ? odd : even) += integrand(i);
  const Complex total = integrand(0) + integrand(steps) + 4.0 * odd + 2.0 * even;
  return total * (h / 3.0) / period;
}

Complex estimate_coefficient(const Spectrum& s, double lambda, double period, int steps) {
  return estimate_coefficient([&s](double x) { return evaluate(s, x); }, lambda, period, steps);
}

SpectrumKind parse_spectrum_kind(const std::string& name) {
  if (name == "arithmetic") return SpectrumKind::arithmetic;
  if (name == "lacunary") return SpectrumKind::lacunary;
  if (name == "perturbed") return SpectrumKind::perturbed;
  throw std::invalid_argument("unknown spectrum kind '" + name + "'");
}

std::string to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::arithmetic: return "arithmetic";
    case SpectrumKind::lacunary: return "lacunary";
    case SpectrumKind::perturbed: return "perturbed";
  }
  return "?";
}

std::uint64_t Rng::next() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next() % span);
}

ExponentLadder make_ladder(SpectrumKind kind, int size, std::uint64_t seed) {
  if (size < 1) throw std::invalid_argument("ladder size must be >= 1");
  ExponentLadder out;
  out.reserve(static_cast<std::size_t>(size));
  Rng rng(seed ^ 0x6C61646465720000ULL);
  for (int k = 1; k <= size; ++k) {
    double lambda = 0.0;
    switch (kind) {
      case SpectrumKind::arithmetic: lambda = k; break;
      case SpectrumKind::lacunary: lambda = std::ldexp(1.0, k - 1); break;
      case SpectrumKind::perturbed: lambda = k + rng.uniform(-0.4, 0.4); break;
    }
    if (!std::isfinite(lambda) || (!out.empty() && !(lambda > out.back().lambda)))
      throw std::invalid_argument("generator parameters produce non-monotone exponents");
    out.push_back({k, lambda});
  }
  return out;
}

Spectrum generate_spectrum(SpectrumKind kind, int size, double decay, std::uint64_t seed,
                           double p) {
  const ExponentLadder ladder = make_ladder(kind, size, seed);
  Rng rng(seed);
  std::vector<Complex> pos, neg;
  for (const auto& rung : ladder) {
    const double mag = std::pow(rung.lambda, -decay);
    pos.push_back(std::polar(mag, rng.uniform(0.0, 2.0 * std::numbers::pi)));
    neg.push_back(std::polar(mag, rng.uniform(0.0, 2.0 * std::numbers::pi)));
  }
  const Complex mean = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
  Spectrum s = spectrum_on_ladder(ladder, pos, neg, mean, p);
  require_valid(s);
  return s;
}

Spectrum spectrum_on_ladder(const ExponentLadder& ladder, std::span<const Complex> positive,
                            std::span<const Complex> negative, Complex mean, double p) {
  if (positive.size() != ladder.size() || negative.size() != ladder.size())
    throw std::invalid_argument("coefficient count does not match the ladder");
  std::vector<SpectrumEntry> entries;
  entries.reserve(2 * ladder.size() + 1);
  entries.push_back({0, 0.0, mean});
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    entries.push_back({ladder[i].k, ladder[i].lambda, positive[i]});
    entries.push_back({-ladder[i].k, -ladder[i].lambda, negative[i]});
  }
  return Spectrum(std::move(entries), p);
}

}  // namespace apxbsp
