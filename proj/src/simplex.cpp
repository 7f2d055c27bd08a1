#include "apxbsp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace apxbsp {

namespace {

class Tableau {
 public:
  // Starts from `start` (a structural unit column per row, or -1 for the
  // row's artificial). The identity block keeps tracking B^{-1} either way.
  Tableau(const LpProblem& lp, const std::vector<double>& sign, const std::vector<int>& start)
      : m_(lp.rows), n_(lp.cols), width_(lp.cols + lp.rows + 1), t_((m_ + 1) * width_, 0.0),
        basis_(m_) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) cell(i, j) = sign[i] * lp.at(i, j);
      cell(i, n_ + i) = 1.0;
      cell(i, width_ - 1) = sign[i] * lp.b[i];
      basis_[i] = start[i] >= 0 ? start[i] : n_ + i;
    }
  }

  double& cell(int i, int j) { return t_[static_cast<std::size_t>(i) * width_ + j]; }
  double cell(int i, int j) const { return t_[static_cast<std::size_t>(i) * width_ + j]; }
  double& obj(int j) { return cell(m_, j); }
  double rhs(int i) const { return cell(i, width_ - 1); }
  int basis(int i) const { return basis_[i]; }
  int rows() const { return m_; }

  // Objective row holds reduced costs; its rhs cell holds -objective.
  void price(const std::vector<double>& cost) {
    for (int j = 0; j < width_; ++j) obj(j) = j < static_cast<int>(cost.size()) ? cost[j] : 0.0;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < width_; ++j) obj(j) -= cb * cell(i, j);
    }
  }

  void pivot(int r, int e) {
    const double pv = cell(r, e);
    for (int j = 0; j < width_; ++j) cell(r, j) /= pv;
    cell(r, e) = 1.0;
    for (int i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = cell(i, e);
      if (f == 0.0) continue;
      double* row = &t_[static_cast<std::size_t>(i) * width_];
      const double* prow = &t_[static_cast<std::size_t>(r) * width_];
      for (int j = 0; j < width_; ++j) row[j] -= f * prow[j];
      row[e] = 0.0;
    }
    basis_[r] = e;
  }

  // Dantzig pricing; after a run of degenerate pivots, Bland's rule (lowest
  // index entering and leaving) until the objective moves again, which rules
  // out cycling. Returns false at optimality.
  bool step(int allowed, double eps, int& iterations) {
    const bool bland = degenerate_run_ >= 32;
    int e = -1;
    double most = -eps;
    for (int j = 0; j < allowed; ++j) {
      if (obj(j) >= most) continue;
      e = j;
      if (bland) break;
      most = obj(j);
    }
    if (e < 0) return false;
    int r = -1;
    double best = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double a = cell(i, e);
      if (a <= 1e-11) continue;
      const double ratio = std::max(rhs(i), 0.0) / a;
      const double slack = 1e-14 * (1.0 + best);
      bool take = r < 0 || ratio < best - slack;
      if (!take && ratio <= best + slack)
        take = bland ? basis_[i] < basis_[r] : a > cell(r, e);
      if (take) r = i, best = ratio;
    }
    if (r < 0) throw LpError("simplex: problem is unbounded");
    degenerate_run_ = best * std::abs(obj(e)) <= 1e-15 ? degenerate_run_ + 1 : 0;
    pivot(r, e);
    ++iterations;
    return true;
  }

  // Rebuilds the tableau from the original data for the current basis, by
  // Gauss-Jordan with partial pivoting, to shed accumulated rounding.
  void refactor(const LpProblem& lp, const std::vector<double>& sign) {
    const std::vector<int> basis = basis_;
    std::fill(t_.begin(), t_.end(), 0.0);
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) cell(i, j) = sign[i] * lp.at(i, j);
      cell(i, n_ + i) = 1.0;
      cell(i, width_ - 1) = sign[i] * lp.b[i];
    }
    std::vector<char> used(m_, 0);
    for (int e : basis) {
      int r = -1;
      double best = 0.0;
      for (int i = 0; i < m_; ++i)
        if (!used[i] && std::abs(cell(i, e)) > best) best = std::abs(cell(i, e)), r = i;
      if (r < 0 || best < 1e-13) throw LpError("simplex: singular basis on refactorization");
      used[r] = 1;
      pivot(r, e);
    }
  }

  std::vector<double> inverse_row_sums(const std::vector<double>& cost) const {
    // y'_k = sum_i c_B(i) (B^{-1})_{ik}; the B^{-1} block sits where the artificials started.
    std::vector<double> y(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const double cb = basis_[i] < n_ ? cost[basis_[i]] : 0.0;
      if (cb == 0.0) continue;
      for (int k = 0; k < m_; ++k) y[k] += cb * cell(i, n_ + k);
    }
    return y;
  }

 private:
  int m_, n_, width_;
  std::vector<double> t_;
  std::vector<int> basis_;
  int degenerate_run_ = 0;
};

}  // namespace

LpSolution solve_lp(const LpProblem& lp, double tol) {
  const int m = lp.rows, n = lp.cols;
  if (m < 1 || n < 1) throw LpError("simplex: empty problem");
  if (static_cast<int>(lp.a.size()) != m * n || static_cast<int>(lp.b.size()) != m ||
      static_cast<int>(lp.c.size()) != n)
    throw LpError("simplex: inconsistent dimensions");

  std::vector<double> sign(m, 1.0);
  for (int i = 0; i < m; ++i)
    if (lp.b[i] < 0.0) sign[i] = -1.0;
  // Columns that are unit vectors (after the sign fix) start in the basis.
  std::vector<int> start(m, -1);
  for (int j = 0; j < n; ++j) {
    int row = -1, nonzero = 0;
    for (int i = 0; i < m && nonzero < 2; ++i)
      if (lp.at(i, j) != 0.0) ++nonzero, row = i;
    if (nonzero == 1 && sign[row] * lp.at(row, j) == 1.0 && start[row] < 0) start[row] = j;
  }
  Tableau t(lp, sign, start);
  const double eps = 1e-12;
  const int max_iter = 500 * (m + n) + 1000;
  LpSolution out;

  std::vector<double> phase1(n + m, 0.0);
  for (int i = 0; i < m; ++i)
    if (start[i] < 0) phase1[n + i] = 1.0;
  t.price(phase1);
  while (t.step(n, eps, out.iterations))
    if (out.iterations > max_iter) throw LpError("simplex: iteration limit in phase 1");
  double bscale = 1.0;
  for (double v : lp.b) bscale = std::max(bscale, std::abs(v));
  if (-t.obj(n + m) > tol * bscale) {
    std::ostringstream os;
    os << "simplex: infeasible (phase 1 residual " << -t.obj(n + m) << ")";
    throw LpError(os.str());
  }
  // Drive zero-level artificials out of the basis where a structural column allows it.
  for (int i = 0; i < m; ++i) {
    if (t.basis(i) < n) continue;
    int e = -1;
    double best = 1e-9;
    for (int j = 0; j < n; ++j)
      if (std::abs(t.cell(i, j)) > best) best = std::abs(t.cell(i, j)), e = j;
    if (e >= 0) t.pivot(i, e);
  }

  std::vector<double> cost(n + m, 0.0);
  std::copy(lp.c.begin(), lp.c.end(), cost.begin());
  t.price(cost);
  for (int pass = 0;; ++pass) {
    bool moved = false;
    while (t.step(n, eps, out.iterations)) {
      moved = true;
      if (out.iterations > max_iter) throw LpError("simplex: iteration limit in phase 2");
    }
    if (pass > 0 && !moved) break;
    if (pass == 8) break;
    // confirm optimality on a fresh factorization; drift can hide negative reduced costs
    t.refactor(lp, sign);
    t.price(cost);
  }

  out.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (t.basis(i) < n) out.x[t.basis(i)] = std::max(t.rhs(i), 0.0);
  out.dual = t.inverse_row_sums(cost);
  for (int i = 0; i < m; ++i) out.dual[i] *= sign[i];

  double cx = 0.0, by = 0.0, cscale = 1.0;
  for (int j = 0; j < n; ++j) cx += lp.c[j] * out.x[j], cscale = std::max(cscale, std::abs(lp.c[j]));
  for (int i = 0; i < m; ++i) by += lp.b[i] * out.dual[i];
  for (int i = 0; i < m; ++i) {
    double r = -lp.b[i];
    for (int j = 0; j < n; ++j) r += lp.at(i, j) * out.x[j];
    out.primal_residual = std::max(out.primal_residual, std::abs(r));
  }
  for (int j = 0; j < n; ++j) {
    double d = lp.c[j];
    for (int i = 0; i < m; ++i) d -= lp.at(i, j) * out.dual[i];
    out.dual_infeasibility = std::max(out.dual_infeasibility, -d);
  }
  out.objective = cx;
  out.gap = std::abs(cx - by);
  if (out.primal_residual > tol * bscale || out.dual_infeasibility > tol * cscale ||
      out.gap > tol * (1.0 + std::abs(cx))) {
    std::ostringstream os;
    os << "simplex: certificate check failed (primal residual " << out.primal_residual
       << ", dual infeasibility " << out.dual_infeasibility << ", gap " << out.gap
       << ", iterations " << out.iterations << ")";
    throw LpError(os.str());
  }
  return out;
}

}  // namespace apxbsp
