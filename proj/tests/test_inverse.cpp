#include <cmath>

#include "apxbsp/inverse.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace apxbsp;
using testing::pi;

TEST_SUITE("inverse") {

TEST_CASE("Abel transform examples") {
  const AbelResult z = abel_transform({1, 2, 3}, {0, 0, 0}, 1, 3);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  const AbelResult r = abel_transform({1, 4, 9, 16}, {1, 0.5, 0.25, 0.125}, 1, 3);
  CHECK(r.lhs == doctest::Approx(5.25).epsilon(1e-15));
  CHECK(r.rhs == doctest::Approx(5.25).epsilon(1e-15));
  CHECK_THROWS(abel_transform({1, 2}, {1, 2}, 2, 1));
  CHECK_THROWS(abel_transform({1, 2}, {1, 2}, 1, 3));
}

TEST_CASE("property: Abel identity on random instances") {
  Rng rng(71);
  for (int t = 0; t < 1000; ++t) {
    const int len = 1 + rng.uniform_int(0, 60);
    std::vector<double> beta(len), c(len);
    for (int i = 0; i < len; ++i) beta[i] = rng.uniform(-5, 5), c[i] = rng.uniform(-5, 5);
    const int n1 = rng.uniform_int(1, len);
    const int n2 = rng.uniform_int(n1, len);
    CHECK(abel_transform(beta, c, n1, n2).relative_discrepancy() <= 1e-12);
  }
}

TEST_CASE("max gap examples") {
  auto on = [](std::vector<double> l) {
    std::vector<SpectrumEntry> e;
    for (std::size_t i = 0; i < l.size(); ++i) e.push_back({int(i) + 1, l[i], 1.0});
    return Spectrum(e, 2.0);
  };
  CHECK(max_gap(on({1, 2, 3})) == 1.0);
  CHECK(max_gap(on({1, 2, 4, 8})) == 4.0);
  CHECK(max_gap(on({0.5, 2.7, 3.0})) == doctest::Approx(2.2).epsilon(1e-15));
}

TEST_CASE("single pair telescopes to equality") {
  for (double p : {1.0, 2.0, 3.0})
    for (double tau : {1.0, 2.0, pi}) {
      const Spectrum s = testing::pair(4, 2.5, Complex(0.3, 0.4), 1.1, p);
      // phi must peak at tau; below pi use a ramp that saturates there
      const StepWeight phi = tau == pi ? StepWeight::alpha(1.5)
                                       : StepWeight::tabulated({0.0, tau, 4.0}, {0.0, 1.0, 1.0});
      const InverseBound b = inverse_bound(s, 4, phi, tau);
      const double expected = phi.pow(tau, p) * std::pow(best_approximation(s, 4), p);
      CHECK(b.rhs_p == doctest::Approx(expected).epsilon(1e-13));
      CHECK(b.lhs_p == doctest::Approx(expected).epsilon(1e-10));
      const InverseBound pw = inverse_bound_power(s, 4, 1.0);
      CHECK(pw.lhs_p <= pw.rhs_p);
      CHECK(inverse_bound(s, 4, StepWeight::alpha(1.0), pi).rhs_p <= pw.rhs_p);
    }
}

TEST_CASE("telescoped sum against a direct evaluation") {
  // tail vanishes from index 4 on
  std::vector<SpectrumEntry> e = {{0, 0.0, 1.0}};
  const double lam[6] = {0.8, 1.9, 3.1, 4.0, 5.5, 6.1};
  const double amp[6] = {0.9, 0.5, 0.7, 0.0, 0.0, 0.0};
  for (int k = 1; k <= 6; ++k) {
    e.push_back({k, lam[k - 1], amp[k - 1] > 0 ? amp[k - 1] : 0.0});
    e.push_back({-k, -lam[k - 1], amp[k - 1] > 0 ? 0.2 * amp[k - 1] : 1e-300});
  }
  const Spectrum s(e, 2.0);
  const StepWeight phi = StepWeight::alpha(1.0);
  const int n = 5;
  const double tau = pi;
  double direct = 0.0, prev = 0.0;
  for (int v = 1; v <= n; ++v) {
    double tail = 0.0;
    for (int k = v; k <= 6; ++k) tail += std::pow(amp[k - 1], 2) * 1.04;
    const double cur = std::pow(phi_alpha(tau * lam[v - 1] / lam[n - 1], 1.0), 2);
    direct += (cur - prev) * tail;
    prev = cur;
  }
  CHECK(inverse_bound(s, n, phi, tau).rhs_p == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("constant spectra give zero on both sides") {
  const Spectrum c({{0, 0.0, 2.0}}, 2.0);
  const InverseBound a = inverse_bound_power(c, 1, 1.0);
  CHECK(a.lhs_p == 0.0);
  CHECK(a.rhs_p == 0.0);
  CHECK(inverse_bound_gap(c, 1, 1.0, 1.0).rhs_p == 0.0);
  CHECK(inverse_bound(c, 1, StepWeight::alpha(1), pi).rhs_p == 0.0);
}

TEST_CASE("gap form examples") {
  for (int t = 0; t < 10; ++t) {
    const Spectrum s = generate_spectrum(SpectrumKind(t % 3), 8 + t, 1.2, 30 + t, 1 + t % 3);
    const int n = 3 + t % 5;
    const double g = max_gap(s);
    CHECK(inverse_bound_gap(s, n, 1.0, g).rhs_p >= inverse_bound_power(s, n, 1.0).rhs_p * (1 - 1e-14));
    CHECK_THROWS(inverse_bound_gap(s, n, 1.0, 0.5 * g));
  }
  const Spectrum a = generate_spectrum(SpectrumKind::arithmetic, 12, 1.0, 5, 2.0);
  for (int n : {1, 6, 12})
    CHECK(inverse_bound_gap(a, n, 1.0, 1.0).rhs_p ==
          doctest::Approx(inverse_bound_power(a, n, 1.0).rhs_p).epsilon(1e-13));
}

TEST_CASE("hypotheses and ranges") {
  const StepWeight phi = StepWeight::alpha(1.0);
  CHECK(check_inverse_hypotheses(phi, pi).ok);
  CHECK_FALSE(check_inverse_hypotheses(phi, pi + 0.01).ok);
  const Spectrum s = generate_spectrum(SpectrumKind::arithmetic, 8, 1.0, 6, 2.0);
  CHECK_THROWS(inverse_bound(s, 4, phi, 3.5));
  CHECK_NOTHROW(inverse_bound(s, 4, phi, pi));
  CHECK_THROWS(inverse_bound_power(s.with_p(1.0), 4, 0.5));
  CHECK_THROWS(inverse_bound(s, 9, phi, pi));
  const InequalityReport na = verify_inverse(s.with_p(1.0), 4, StepWeight::alpha(0.5), pi, InverseForm::power);
  CHECK(na.status == Status::not_applicable);
}

TEST_CASE("property: random spectra satisfy all forms and the dominance chain") {
  for (int t = 0; t < 30; ++t) {
    const double p = 1 + t % 3, alpha = 1 + (t / 3) % 2;
    const Spectrum s = generate_spectrum(SpectrumKind(t % 3), 5 + t, 1.0 + 0.05 * t, 700 + t, p);
    const int n = 1 + (7 * t) % (5 + t);
    const InverseBound g = inverse_bound(s, n, StepWeight::alpha(alpha), pi);
    const InverseBound pw = inverse_bound_power(s, n, alpha);
    const InverseBound gap = inverse_bound_gap(s, n, alpha, max_gap(s));
    CHECK(within_tolerance(g.lhs_p, g.rhs_p));
    CHECK(within_tolerance(pw.lhs_p, pw.rhs_p));
    CHECK(within_tolerance(gap.lhs_p, gap.rhs_p));
    CHECK(g.rhs_p <= pw.rhs_p * (1 + 1e-10));
    CHECK(pw.rhs_p <= gap.rhs_p * (1 + 1e-10));
  }
}

TEST_CASE("property: enlarging a tail never lowers the bound") {
  Rng rng(72);
  for (int t = 0; t < 20; ++t) {
    const Spectrum s = generate_spectrum(SpectrumKind(t % 3), 10, 1.0, 40 + t, 2.0);
    const int n = 6;
    std::vector<SpectrumEntry> e = s.entries();
    const std::size_t i = static_cast<std::size_t>(rng.uniform() * e.size());
    e[i].coeff *= 1.0 + rng.uniform(0.1, 2.0);
    const Spectrum bigger(e, 2.0);
    const StepWeight phi = StepWeight::alpha(1);
    CHECK(inverse_bound(bigger, n, phi, pi).rhs_p >= inverse_bound(s, n, phi, pi).rhs_p);
    CHECK(inverse_bound_power(bigger, n, 1).rhs_p >= inverse_bound_power(s, n, 1).rhs_p);
  }
}

}  // TEST_SUITE
