// Discretized extremal problem
//
//     J = min_{rho in simplex} max_i sum_j rho_j Phi[i][j],
//     Phi[i][j] = phi^p(lambda_j u_i / lambda_n),  u_i uniform on [0, tau].
//
// Solved through the LP over row measures (max z s.t. Phi^T y >= z, sum y = 1),
// which has one constraint per column. The row duals of that LP are rho.

#pragma once

#include <vector>

#include "apxbsp/smoothness.hpp"
#include "apxbsp/spectrum.hpp"

namespace apxbsp {

struct MinimaxProblem {
  /// Row-major, rows = nodes.size(), cols = indices.size().
  std::vector<double> phi;
  std::vector<double> nodes;
  std::vector<int> indices;
  std::vector<double> lambdas;
  /// True when the ladder continues past the column bound.
  bool truncated = false;

  int rows() const { return static_cast<int>(nodes.size()); }
  int cols() const { return static_cast<int>(indices.size()); }
  double at(int i, int j) const { return phi[static_cast<std::size_t>(i) * cols() + j]; }
};

/// Columns are the ladder rungs k in [n, kmax]; rows are `ugrid` uniform nodes
/// on [0, tau] including both ends.
MinimaxProblem build_minimax_problem(const ExponentLadder& ladder, int n, const StepWeight& phi,
                                     double p, double tau, int ugrid, int kmax);

/// Throws std::invalid_argument unless entries are nonnegative, rows >= 2, cols >= 1.
void validate_minimax_problem(const MinimaxProblem& P);

struct MinimaxSolution {
  /// max_i sum_j rho_j Phi[i][j] at the returned rho.
  double value = 0.0;
  std::vector<double> rho;
  /// Discrete extremal measure on the row nodes.
  std::vector<double> dual_weights;
  /// min_j sum_i dual_i Phi[i][j]; value - dual_value is the duality gap.
  double dual_value = 0.0;
  double gap = 0.0;
  int iterations = 0;
};

/// Throws LpError when the solve or its certificate checks fail.
MinimaxSolution solve_minimax(const MinimaxProblem& P);

}  // namespace apxbsp
