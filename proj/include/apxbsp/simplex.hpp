// Dense two-phase simplex for small linear programs in standard form
//
//     minimize c.x  subject to  A x = b,  x >= 0.
//
// Largest-coefficient pricing with Bland's rule during degenerate stalls; the
// pivot sequence is a pure function of the input. The tableau carries B^{-1} explicitly; the row duals are read off it.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace apxbsp {

class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LpProblem {
  /// Row-major, rows x cols.
  std::vector<double> a;
  int rows = 0;
  int cols = 0;
  std::vector<double> b;
  std::vector<double> c;

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

struct LpSolution {
  std::vector<double> x;
  /// y with A^T y <= c at optimality and b.y = c.x.
  std::vector<double> dual;
  double objective = 0.0;
  int iterations = 0;
  /// Largest violations observed by the post-solve checks.
  double primal_residual = 0.0;
  double dual_infeasibility = 0.0;
  double gap = 0.0;
};

/// Throws LpError on infeasibility, unboundedness, a singular pivot or a
/// failed certificate check.
LpSolution solve_lp(const LpProblem& lp, double tol = 1e-9);

}  // namespace apxbsp
