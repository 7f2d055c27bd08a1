#include <algorithm>
#include <cmath>
#include <numeric>

#include "apxbsp/minimax.hpp"
#include "apxbsp/simplex.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace apxbsp;
using testing::pi;

namespace {

MinimaxProblem from_matrix(int rows, int cols, std::vector<double> phi) {
  MinimaxProblem P;
  P.phi = std::move(phi);
  for (int i = 0; i < rows; ++i) P.nodes.push_back(i);
  for (int j = 0; j < cols; ++j) P.indices.push_back(j + 1), P.lambdas.push_back(j + 1);
  return P;
}

double max_row(const MinimaxProblem& P, const std::vector<double>& rho) {
  double best = 0.0;
  for (int i = 0; i < P.rows(); ++i) {
    double r = 0.0;
    for (int j = 0; j < P.cols(); ++j) r += rho[j] * P.at(i, j);
    best = std::max(best, r);
  }
  return best;
}

// Vertex enumeration for min c.x, Ax = b, x >= 0 with 3 rows.
double brute_lp(const LpProblem& lp) {
  double best = INFINITY;
  const int n = lp.cols;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const int c[3] = {i, j, k};
        double m[3][4];
        for (int r = 0; r < 3; ++r) {
          for (int q = 0; q < 3; ++q) m[r][q] = lp.at(r, c[q]);
          m[r][3] = lp.b[r];
        }
        bool singular = false;
        for (int q = 0; q < 3 && !singular; ++q) {
          int piv = q;
          for (int r = q + 1; r < 3; ++r)
            if (std::abs(m[r][q]) > std::abs(m[piv][q])) piv = r;
          if (std::abs(m[piv][q]) < 1e-12) singular = true;
          else {
            std::swap(m[q], m[piv]);
            for (int r = 0; r < 3; ++r)
              if (r != q) {
                const double f = m[r][q] / m[q][q];
                for (int z = q; z < 4; ++z) m[r][z] -= f * m[q][z];
              }
          }
        }
        if (singular) continue;
        double obj = 0.0;
        bool feasible = true;
        for (int q = 0; q < 3; ++q) {
          const double x = m[q][3] / m[q][q];
          if (x < -1e-10) feasible = false;
          obj += lp.c[c[q]] * x;
        }
        if (feasible) best = std::min(best, obj);
      }
  return best;
}

}  // namespace

TEST_SUITE("minimax") {

TEST_CASE("simplex against vertex enumeration") {
  Rng rng(51);
  for (int t = 0; t < 40; ++t) {
    LpProblem lp;
    lp.rows = 3;
    lp.cols = 6;
    lp.a.resize(18);
    std::vector<double> x0(6);
    for (double& x : x0) x = rng.uniform() < 0.5 ? 0.0 : rng.uniform(0, 2);
    for (double& v : lp.a) v = rng.uniform(-2, 2);
    lp.b.assign(3, 0.0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 6; ++j) lp.b[i] += lp.at(i, j) * x0[j];
    for (int j = 0; j < 6; ++j) lp.c.push_back(rng.uniform(0.1, 3));
    const LpSolution s = solve_lp(lp);
    CHECK(s.objective == doctest::Approx(brute_lp(lp)).epsilon(1e-9));
    CHECK(s.primal_residual <= 1e-9);
  }
}

TEST_CASE("simplex reports infeasibility") {
  LpProblem lp;
  lp.rows = 1;
  lp.cols = 2;
  lp.a = {1.0, 1.0};
  lp.b = {-1.0};
  lp.c = {1.0, 1.0};
  CHECK_THROWS_AS(solve_lp(lp), LpError);
}

TEST_CASE("single column") {
  const MinimaxProblem P = from_matrix(4, 1, {0.2, 1.7, 0.9, 1.1});
  const MinimaxSolution s = solve_minimax(P);
  CHECK(s.value == doctest::Approx(1.7).epsilon(1e-12));
  REQUIRE(s.rho.size() == 1);
  CHECK(s.rho[0] == doctest::Approx(1.0));
}

TEST_CASE("identical columns") {
  const MinimaxProblem one = from_matrix(3, 1, {0.5, 2.0, 1.0});
  const MinimaxProblem two = from_matrix(3, 2, {0.5, 0.5, 2.0, 2.0, 1.0, 1.0});
  const MinimaxSolution a = solve_minimax(one), b = solve_minimax(two);
  CHECK(b.value == doctest::Approx(a.value).epsilon(1e-12));
  CHECK(std::accumulate(b.rho.begin(), b.rho.end(), 0.0) == doctest::Approx(1.0));
  for (double r : b.rho) CHECK(r >= 0.0);
}

TEST_CASE("bad problems are rejected") {
  CHECK_THROWS(validate_minimax_problem(from_matrix(2, 1, {0.5, -1.0})));
  CHECK_THROWS(validate_minimax_problem(from_matrix(2, 2, {0.5, 1.0})));
  CHECK_THROWS(build_minimax_problem(testing::arithmetic(4), 2, StepWeight::alpha(1), 2, pi, 64, 1));
}

TEST_CASE("grid refinement changes the value by at most 1e-3") {
  const auto ladder = testing::arithmetic(64);
  const StepWeight phi = StepWeight::alpha(1);
  const double coarse = solve_minimax(build_minimax_problem(ladder, 1, phi, 2, pi, 512, 64)).value;
  const double fine = solve_minimax(build_minimax_problem(ladder, 1, phi, 2, pi, 4096, 64)).value;
  CHECK(std::abs(coarse - fine) <= 1e-3);
}

TEST_CASE("property: certificates of the min-max value") {
  Rng rng(52);
  for (int t = 0; t < 12; ++t) {
    const auto ladder = make_ladder(SpectrumKind(t % 3), 8 + t, 60 + t);
    const double p = 1 + t % 3;
    const StepWeight phi = StepWeight::alpha(1 + (t / 3) % 2);
    const int n = 1 + t % 4;
    const MinimaxProblem P = build_minimax_problem(ladder, n, phi, p, pi, 256, ladder.back().k);
    const MinimaxSolution s = solve_minimax(P);
    CHECK(std::abs(max_row(P, s.rho) - s.value) <= 1e-9);
    for (int j = 0; j < P.cols(); ++j) {
      double col = 0.0;
      for (int i = 0; i < P.rows(); ++i) col += s.dual_weights[i] * P.at(i, j);
      CHECK(col >= s.value - 1e-8);
      if (s.rho[j] > 1e-8) CHECK(std::abs(col - s.value) <= 1e-6);
    }
    // Random points of the simplex never beat the optimum.
    for (int r = 0; r < 20; ++r) {
      std::vector<double> rho(P.cols());
      double sum = 0.0;
      for (double& v : rho) v = rng.uniform(), sum += v;
      for (double& v : rho) v /= sum;
      CHECK(max_row(P, rho) >= s.value - 1e-9);
    }
  }
}

TEST_CASE("property: more rows never lower the value") {
  for (int t = 0; t < 6; ++t) {
    const auto ladder = make_ladder(SpectrumKind(t % 3), 16, 70 + t);
    const StepWeight phi = StepWeight::alpha(1 + t % 2);
    const double coarse = solve_minimax(build_minimax_problem(ladder, 2, phi, 2, pi, 512, 16)).value;
    const double fine = solve_minimax(build_minimax_problem(ladder, 2, phi, 2, pi, 1023, 16)).value;
    CHECK(fine >= coarse - 1e-9);
  }
}

}  // TEST_SUITE
