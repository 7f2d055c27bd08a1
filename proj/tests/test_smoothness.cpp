#include <algorithm>
#include <cmath>

#include "apxbsp/smoothness.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace apxbsp;
using testing::pi;

namespace {

// Dense-sample modulus with its own weight formula.
double brute_modulus(const Spectrum& s, double alpha, double delta, int samples) {
  double best = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double h = delta * i / samples;
    double acc = 0.0;
    for (const auto& e : s.entries()) {
      const double w = std::pow(2.0 * std::abs(std::sin(e.lambda * h / 2.0)), alpha);
      acc += std::pow(w * std::abs(e.coeff), s.p());
    }
    best = std::max(best, acc);
  }
  return std::pow(best, 1.0 / s.p());
}

}  // namespace

TEST_SUITE("smoothness") {

TEST_CASE("phi_alpha examples") {
  CHECK(phi_alpha(pi, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  for (double a : {0.3, 1.0, 2.5}) CHECK(phi_alpha(0.0, a) == 0.0);
  CHECK(phi_alpha(pi / 2, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  // 2^{a/2}(1 - cos t)^{a/2} form
  for (double t : {0.1, 1.0, 2.9, -4.0})
    CHECK(phi_alpha(t, 1.7) ==
          doctest::Approx(std::pow(2.0, 0.85) * std::pow(1 - std::cos(t), 0.85)).epsilon(1e-12));
}

TEST_CASE("scheme weights") {
  const StepWeight d1 = phi_from_scheme(DifferenceScheme({1.0, -1.0}));
  for (double t : {0.0, 0.4, 1.0, 3.0, -2.2})
    CHECK(d1(t) == doctest::Approx(phi_alpha(t, 1.0)).epsilon(1e-14));
  const StepWeight d2 = phi_from_scheme(DifferenceScheme({1.0, -2.0, 1.0}));
  CHECK(d2(pi) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(d2(pi) == doctest::Approx(phi_alpha(pi, 2.0)).epsilon(1e-14));
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    std::vector<Complex> mu;
    Complex sum = 0;
    for (int j = 0; j < 4; ++j) mu.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1)), sum += mu.back();
    mu.push_back(-sum);
    CHECK(phi_from_scheme(DifferenceScheme(mu))(0.0) <= 1e-15);
  }
  CHECK_THROWS(DifferenceScheme({1.0, 1.0}));
  CHECK_THROWS(DifferenceScheme({0.0, 0.0}));
  const DifferenceScheme cubic = DifferenceScheme::binomial(3);
  const auto& b = cubic.mu();
  REQUIRE(b.size() == 4);
  CHECK(b[0] == Complex(1));
  CHECK(b[1] == Complex(-3));
  CHECK(b[2] == Complex(3));
  CHECK(b[3] == Complex(-1));
}

TEST_CASE("weight specs and checks") {
  CHECK(StepWeight::parse("alpha:2")(pi) == doctest::Approx(4.0));
  CHECK(StepWeight::parse("scheme:1,-1")(pi) == doctest::Approx(2.0));
  CHECK(*StepWeight::parse("alpha:1.5").alpha_order() == 1.5);
  CHECK_THROWS(StepWeight::parse("gauss:1"));
  CHECK_THROWS(StepWeight::parse("alpha:-1"));
  CHECK(check_step_weight(StepWeight::alpha(1), pi).violations.empty());

  // mirrored table vanishing on a visible piece of the grid
  const StepWeight flat = StepWeight::tabulated({0.0, 1.0, 2.0, 4.0}, {0.0, 0.0, 1.0, 1.0});
  const WeightCheck wc = check_step_weight(flat, 4.0);
  CHECK(wc.violations.empty());
  CHECK(wc.zero_fraction > 0.01);
  CHECK_FALSE(wc.warnings.empty());
  CHECK(flat(-1.5) == doctest::Approx(0.5));

  const StepWeight bad = StepWeight::tabulated({-1.0, 0.0, 1.0}, {0.5, 0.0, 1.0});
  CHECK_FALSE(check_step_weight(bad, 1.0).violations.empty());
}

TEST_CASE("difference norm examples") {
  const StepWeight phi1 = StepWeight::alpha(1);
  CHECK(weighted_difference_norm(Spectrum({{0, 0.0, 3.0}}, 2.0), phi1, 0.7) == 0.0);
  Rng rng(32);
  const Spectrum r = testing::random_on(testing::arithmetic(6), rng, 1.5);
  CHECK(weighted_difference_norm(r, phi1, 0.0) == 0.0);
  for (double alpha : {0.5, 1.0, 2.0, 3.0})
    for (double p : {1.0, 2.0, 3.0})
      for (double h : {0.1, 0.5, 1.3}) {
        const int n = 3;
        const Complex ap(0.6, -0.2), am(-0.1, 0.9);
        const Spectrum s = testing::pair(n, n, ap, am, p);
        const double expected = std::pow(2.0, alpha / 2) * std::pow(1 - std::cos(n * h), alpha / 2) *
                                std::pow(std::pow(std::abs(ap), p) + std::pow(std::abs(am), p), 1 / p);
        CHECK(weighted_difference_norm(s, StepWeight::alpha(alpha), h) ==
              doctest::Approx(expected).epsilon(1e-12));
      }
}

TEST_CASE("modulus examples") {
  const StepWeight phi1 = StepWeight::alpha(1);
  Rng rng(33);
  const Spectrum r = testing::random_on(testing::arithmetic(5), rng, 2.0);
  CHECK(generalized_modulus(r, phi1, 0.0) == 0.0);
  CHECK(scheme_modulus(r, DifferenceScheme({1.0, -1.0}), 0.0) == 0.0);

  for (double lambda : {1.0, 2.5, 7.0}) {
    const Spectrum s = testing::pair(4, lambda, 0.3, Complex(0, -1.2), 2.0);
    CHECK(generalized_modulus(s, phi1, pi / lambda) ==
          doctest::Approx(2.0 * std::sqrt(0.09 + 1.44)).epsilon(1e-12));
  }

  const Spectrum a = generate_spectrum(SpectrumKind::arithmetic, 4, 1.0, 5, 2.0);
  const double brute = brute_modulus(a, 1.0, 0.7, 1000000);
  CHECK(std::abs(generalized_modulus(a, phi1, 0.7) - brute) <= 1e-6);
}

TEST_CASE("property: modulus matches dense sampling on random spectra") {
  Rng rng(34);
  for (int t = 0; t < 12; ++t) {
    const double p = 1.0 + t % 3, alpha = 0.5 + 0.5 * (t % 4);
    const Spectrum s = generate_spectrum(SpectrumKind(t % 3), 3 + t, 0.8, 200 + t, p);
    const double delta = rng.uniform(0.1, 3.0);
    const double est = generalized_modulus(s, StepWeight::alpha(alpha), delta);
    const double brute = brute_modulus(s, alpha, delta, 200000);
    CHECK(est >= brute - 1e-9);
    CHECK(est <= brute * (1 + 1e-4) + 1e-9);
  }
}

TEST_CASE("property: monotone in delta") {
  Rng rng(35);
  for (int t = 0; t < 30; ++t) {
    const Spectrum s = generate_spectrum(SpectrumKind(t % 3), 4 + t % 20, 1.0, 300 + t, 1 + t % 3);
    const StepWeight phi = StepWeight::alpha(1 + t % 2);
    double d1 = rng.uniform(0, 2), d2 = rng.uniform(0, 2);
    if (d1 > d2) std::swap(d1, d2);
    CHECK(generalized_modulus(s, phi, d1) <= generalized_modulus(s, phi, d2) + 1e-12);
  }
}

TEST_CASE("property: triangle inequality on a shared grid") {
  Rng rng(36);
  for (int t = 0; t < 30; ++t) {
    const double p = 1.0 + t % 3;
    const auto ladder = make_ladder(SpectrumKind(t % 3), 6 + t % 10, 400 + t);
    const Spectrum f = testing::random_on(ladder, rng, p);
    const Spectrum g = testing::random_on(ladder, rng, p);
    std::vector<SpectrumEntry> sum = f.entries();
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i].coeff += g.entries()[i].coeff;
    const Spectrum fg(sum, p);
    if (!validate_spectrum(fg).empty()) continue;
    const StepWeight phi = StepWeight::alpha(1.5);
    const double d = rng.uniform(0.2, 2.0);
    CHECK(generalized_modulus(fg, phi, d) <=
          generalized_modulus(f, phi, d) + generalized_modulus(g, phi, d) + 2e-9);
  }
}

TEST_CASE("property: bounded by max phi times the norm") {
  Rng rng(37);
  for (int t = 0; t < 30; ++t) {
    const Spectrum s = generate_spectrum(SpectrumKind(t % 3), 3 + t, 0.5, 500 + t, 1 + t % 3);
    const double alpha = rng.uniform(0.3, 3.0);
    const StepWeight phi = StepWeight::alpha(alpha);
    CHECK(generalized_modulus(s, phi, rng.uniform(0.1, 10)) <= *phi.sup() * lp_norm(s) * (1 + 1e-14));
  }
}

TEST_CASE("property: schemes reproduce the alpha moduli") {
  Rng rng(38);
  for (int t = 0; t < 50; ++t) {
    const Spectrum s = testing::random_on(make_ladder(SpectrumKind(t % 3), 2 + t % 15, t), rng,
                                          1 + t % 3);
    const double d = rng.uniform(0.05, 4.0);
    const double a1 = generalized_modulus(s, StepWeight::alpha(1), d);
    CHECK(std::abs(scheme_modulus(s, DifferenceScheme({1.0, -1.0}), d) - a1) <= 1e-12 * (1 + a1));
    const double a2 = generalized_modulus(s, StepWeight::alpha(2), d);
    CHECK(std::abs(scheme_modulus(s, DifferenceScheme::binomial(2), d) - a2) <= 1e-12 * (1 + a2));
  }
}

}  // TEST_SUITE
