// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "apxbsp/classes.hpp"
#include "apxbsp/inverse.hpp"
#include "apxbsp/jackson.hpp"
#include "apxbsp/quadrature.hpp"
#include "apxbsp/suite.hpp"

using namespace apxbsp;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < budget_s;
  const bool pass = o.ok && in_time;
  if (!pass) ++failures;
  std::printf("%s #%d %s: %s [%.2f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), secs, budget_s, in_time ? "" : ", over budget");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string suite_detail(const char* kind, const SuiteSummary& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s %d/%d pass, %d fail, %d inconclusive, %d n/a; ", kind, s.passed,
                s.checks, s.failed, s.inconclusive, s.not_applicable);
  return buf;
}

}  // namespace

int main() {
  const ExponentLadder arith64 = make_ladder(SpectrumKind::arithmetic, 64, 1);

  criterion(1, "I_n(s) closed form", 1.0, [&] {
    double worst = 0.0;
    bool argmin_ok = true;
    for (int s = 1; s <= 4; ++s) {
      const IndexScan r = jackson_integral_sin(arith64, 1, s, 64);
      worst = std::max(worst, std::abs(r.value - std::pow(2.0, s + 1) / (s + 1)));
      argmin_ok = argmin_ok && r.argmin_k == 1;
    }
    return Outcome{worst <= 1e-8 && argmin_ok, fmt("max |I - 2^{s+1}/(s+1)| = %.2e (tol 1e-8)", worst)};
  });

  criterion(2, "sigma vanishes at integers", 1.0, [&] {
    double worst = 0.0;
    for (int s = 1; s <= 3; ++s) worst = std::max(worst, std::abs(sigma_series(s).value));
    return Outcome{worst <= 1e-8, fmt("max |sigma(s)| = %.2e (tol 1e-8)", worst)};
  });

  criterion(3, "extremal function equality", 10.0, [&] {
    double worst = 0.0;
    const Complex gamma(0.5, 0.25), beta(1.0, 0.0), delta(0.0, 2.0);
    for (int n : {1, 5})
      for (int half : {1, 2})
        for (double p : {1.0, 2.0}) {
          const double alpha = 2.0 * half / p;
          const Spectrum f = extremal_spectrum(n, n, gamma, beta, delta, p);
          worst = std::max(worst, std::abs(averaged_bound_sin(f, n, alpha).ratio - 1.0));
          for (double tau : {0.5, 3 * pi / 4})
            worst = std::max(worst, std::abs(averaged_bound_flat(f, n, alpha, tau).ratio - 1.0));
        }
    return Outcome{worst <= 1e-6, fmt("max |ratio - 1| = %.2e (tol 1e-6)", worst)};
  });

  SharpConstant k1, k2;
  criterion(4, "sharp constant reproduction", 60.0, [&] {
    k1 = sharp_constant(arith64, 1, StepWeight::alpha(1), 2, pi, 2048, 64);
    k2 = sharp_constant(arith64, 1, StepWeight::alpha(2), 2, pi, 2048, 64);
    const bool ok = k1.value > 0.60 && k1.value <= std::sqrt(0.5) + 1e-3 &&
                    k2.value <= std::sqrt(3.0) / 4 + 1e-3;
    return Outcome{ok, fmt("K(alpha=1) = %.7f in (0.60, %.7f], K(alpha=2) = %.7f", k1.value,
                           std::sqrt(0.5) + 1e-3, k2.value) +
                           fmt(" <= %.7f", std::sqrt(3.0) / 4 + 1e-3)};
  });

  criterion(5, "extremal measure self-consistency", 1.0, [&] {
    if (!k1.v_star || !k2.v_star) return Outcome{false, "criterion 4 produced no measure"};
    const double c1 = constant_from_measure(arith64, 1, StepWeight::alpha(1), 2, *k1.v_star, 64);
    const double c2 = constant_from_measure(arith64, 1, StepWeight::alpha(2), 2, *k2.v_star, 64);
    const double d = std::max(std::abs(c1 - k1.value), std::abs(c2 - k2.value));
    return Outcome{d <= 1e-6, fmt("max |C(v*) - K| = %.2e (tol 1e-6)", d)};
  });

  const std::uint64_t seed = 20261018;
  criterion(6, "direct inequality suite", 300.0, [&] {
    std::string detail;
    bool ok = true;
    for (SpectrumKind k : {SpectrumKind::arithmetic, SpectrumKind::perturbed, SpectrumKind::lacunary}) {
      const SuiteSummary s = run_direct_suite(expand_orders(make_corpus(k, 200, seed)));
      ok = ok && s.failed == 0;
      detail += suite_detail(to_string(k).c_str(), s);
      for (std::size_t i = 0; i < s.failures.size() && i < 3; ++i)
        detail += "[" + s.failures[i].case_id + " " + s.failures[i].check + " " + s.failures[i].status + "] ";
    }
    return Outcome{ok, detail + "200 spectra x 6 (alpha, p) per kind"};
  });

  criterion(7, "inverse inequality suite", 300.0, [&] {
    std::string detail;
    bool ok = true;
    for (SpectrumKind k : {SpectrumKind::arithmetic, SpectrumKind::perturbed, SpectrumKind::lacunary}) {
      const SuiteSummary s = run_inverse_suite(expand_orders(make_corpus(k, 200, seed)));
      ok = ok && s.failed == 0 && s.inconclusive == 0;
      detail += suite_detail(to_string(k).c_str(), s);
      for (std::size_t i = 0; i < s.failures.size() && i < 3; ++i)
        detail += "[" + s.failures[i].case_id + " " + s.failures[i].check + "] ";
    }
    return Outcome{ok, detail + "dominance chain at 1e-10"};
  });

  criterion(8, "Abel identity", 1.0, [&] {
    Rng rng(seed + 8);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const int len = rng.uniform_int(1, 80);
      std::vector<double> b(len), c(len);
      for (int i = 0; i < len; ++i) b[i] = rng.uniform(-10, 10), c[i] = rng.uniform(-10, 10);
      const int n1 = rng.uniform_int(1, len), n2 = rng.uniform_int(n1, len);
      worst = std::max(worst, abel_transform(b, c, n1, n2).relative_discrepancy());
    }
    return Outcome{worst <= 1e-12, fmt("max relative discrepancy %.2e over 1000 instances (tol 1e-12)", worst)};
  });

  criterion(9, "best approximation optimality", 5.0, [&] {
    Rng rng(seed + 9);
    double worst = INFINITY;
    for (int t = 0; t < 100; ++t) {
      const double p = rng.uniform(1.0, 4.0);
      const Spectrum f = generate_spectrum(SpectrumKind(t % 3), rng.uniform_int(2, 24),
                                           rng.uniform(0.0, 2.0), rng.next(), p);
      const int n = rng.uniform_int(1, f.max_index());
      // competitor g supported on |k| < n; f - g keeps the exponents of f
      std::vector<SpectrumEntry> diff;
      for (SpectrumEntry e : f.entries()) {
        if (std::abs(e.k) < n) e.coeff -= Complex(rng.uniform(-2, 2), rng.uniform(-2, 2));
        if (std::abs(e.k) < n && e.k != 0 && std::abs(e.coeff) == 0.0) e.coeff = 1e-300;
        diff.push_back(e);
      }
      worst = std::min(worst, lp_norm(Spectrum(diff, p)) - best_approximation(f, n));
    }
    return Outcome{worst >= -1e-12, fmt("min (||f - g|| - E) = %.3e over 100 competitors (tol -1e-12)", worst)};
  });

  criterion(10, "Holder class diagnostics", 30.0, [&] {
    const int N = 1024;
    std::vector<double> deltas;
    for (int i = 0; i < 24; ++i) deltas.push_back(std::pow(8.0 / N, i / 23.0));
    std::string detail;
    bool ok = true;
    for (double r : {0.25, 0.5}) {
      const Spectrum s = power_tail_spectrum(N, r, 2.0);
      const HolderClassification in = classify_holder(s, r, 1.0, 1, 0, deltas, 1024);
      const HolderClassification out = classify_holder(s, 2 * r, 1.0, 1, 0, deltas, 1024);
      ok = ok && in.verdict == "in class" && out.verdict == "not in class";
      detail += fmt("r=%.2f: ", r) + "power(r) " + in.verdict +
                fmt(" (trends %.3f/%.3f), ", in.best_approx.diagnostic.trend, in.modulus.diagnostic.trend) +
                "power(2r) " + out.verdict +
                fmt(" (trends %.3f/%.3f); ", out.best_approx.diagnostic.trend, out.modulus.diagnostic.trend);
    }
    const Profile bari = bari_ratio(Majorant::power(1.0), 2.0, make_ladder(SpectrumKind::arithmetic, 200, 1), 0, 1.0);
    double dev = 0.0;
    for (double v : bari.ratio) dev = std::max(dev, std::abs(v - 1.0));
    ok = ok && dev <= 1e-10;
    return Outcome{ok, detail + fmt("bari cancellation max |ratio - 1| = %.2e", dev)};
  });

  std::printf("%s: %d criterion/criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
