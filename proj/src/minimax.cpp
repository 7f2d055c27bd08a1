#include "apxbsp/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "apxbsp/quadrature.hpp"
#include "apxbsp/simplex.hpp"

namespace apxbsp {

MinimaxProblem build_minimax_problem(const ExponentLadder& ladder, int n, const StepWeight& phi,
                                     double p, double tau, int ugrid, int kmax) {
  if (!(tau > 0.0)) throw std::invalid_argument("minimax: tau must be positive");
  if (ugrid < 2) throw std::invalid_argument("minimax: need at least 2 grid nodes");
  if (kmax < n) throw std::invalid_argument("minimax: empty column set");
  const std::size_t start = ladder_position(ladder, n);
  const double ln = ladder[start].lambda;
  MinimaxProblem P;
  std::size_t i = start;
  for (; i < ladder.size() && ladder[i].k <= kmax; ++i) {
    P.indices.push_back(ladder[i].k);
    P.lambdas.push_back(ladder[i].lambda);
  }
  P.truncated = i < ladder.size();
  P.nodes.resize(ugrid);
  for (int r = 0; r < ugrid; ++r) P.nodes[r] = tau * r / (ugrid - 1);
  P.nodes.back() = tau;
  const int J = P.cols();
  P.phi.resize(static_cast<std::size_t>(ugrid) * J);
  for (int r = 0; r < ugrid; ++r)
    for (int j = 0; j < J; ++j)
      P.phi[static_cast<std::size_t>(r) * J + j] = phi.pow(P.lambdas[j] * P.nodes[r] / ln, p);
  return P;
}

void validate_minimax_problem(const MinimaxProblem& P) {
  if (P.cols() < 1) throw std::invalid_argument("minimax: empty column set");
  if (P.rows() < 2) throw std::invalid_argument("minimax: need at least 2 rows");
  if (P.phi.size() != static_cast<std::size_t>(P.rows()) * P.cols())
    throw std::invalid_argument("minimax: matrix size does not match grid and columns");
  for (double v : P.phi)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("minimax: entries must be finite and nonnegative");
}

MinimaxSolution solve_minimax(const MinimaxProblem& P) {
  validate_minimax_problem(P);
  const int M = P.rows(), J = P.cols();
  MinimaxSolution out;

  double scale = 0.0;
  for (double v : P.phi) scale = std::max(scale, v);
  if (scale == 0.0) {
    out.rho.assign(J, 1.0 / J);
    out.dual_weights.assign(M, 1.0 / M);
    return out;
  }

  // Variables: y_0..y_{M-1}, z, s_0..s_{J-1}; rows z + s_j - sum_i Phi_ij y_i = 0
  // and sum_i y_i = 1. Entries are scaled to max 1.
  LpProblem lp;
  lp.rows = J + 1;
  lp.cols = M + 1 + J;
  lp.a.assign(static_cast<std::size_t>(lp.rows) * lp.cols, 0.0);
  lp.b.assign(lp.rows, 0.0);
  lp.c.assign(lp.cols, 0.0);
  for (int j = 0; j < J; ++j) {
    for (int i = 0; i < M; ++i) lp.at(j, i) = -P.at(i, j) / scale;
    lp.at(j, M) = 1.0;
    lp.at(j, M + 1 + j) = 1.0;
  }
  for (int i = 0; i < M; ++i) lp.at(J, i) = 1.0;
  lp.b[J] = 1.0;
  lp.c[M] = -1.0;
  const LpSolution sol = solve_lp(lp, 1e-10);
  out.iterations = sol.iterations;

  out.dual_weights.assign(sol.x.begin(), sol.x.begin() + M);
  const double ysum = std::accumulate(out.dual_weights.begin(), out.dual_weights.end(), 0.0);
  for (double& y : out.dual_weights) y /= ysum;
  out.rho.resize(J);
  for (int j = 0; j < J; ++j) out.rho[j] = std::max(-sol.dual[j], 0.0);
  const double rsum = std::accumulate(out.rho.begin(), out.rho.end(), 0.0);
  if (!(rsum > 0.0)) throw LpError("minimax: degenerate column weights");
  for (double& r : out.rho) r /= rsum;

  out.value = 0.0;
  for (int i = 0; i < M; ++i) {
    double row = 0.0;
    for (int j = 0; j < J; ++j) row += out.rho[j] * P.at(i, j);
    out.value = std::max(out.value, row);
  }
  out.dual_value = std::numeric_limits<double>::infinity();
  for (int j = 0; j < J; ++j) {
    double col = 0.0;
    for (int i = 0; i < M; ++i) col += out.dual_weights[i] * P.at(i, j);
    out.dual_value = std::min(out.dual_value, col);
  }
  out.gap = out.value - out.dual_value;
  if (out.gap > 1e-8 * (1.0 + out.value) || out.gap < -1e-8 * (1.0 + out.value)) {
    std::ostringstream os;
    os << "minimax: duality gap " << out.gap << " at value " << out.value << " ("
       << out.iterations << " pivots)";
    throw LpError(os.str());
  }
  return out;
}

}  // namespace apxbsp
