#include "arat/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace arat {
namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kOptTol = 1e-9;
constexpr double kPivotRel = 1e-13;
constexpr int kMaxPivots = 200000;
const double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Shift, Mirror, Split };

// How a user variable maps into the nonnegative internal columns:
//   Shift   x = shift + z          (finite lower bound)
//   Mirror  x = shift - z          (lower -inf, finite upper)
//   Split   x = z_pos - z_neg      (free)
struct ColMap {
  VarKind kind = VarKind::Shift;
  int col = -1;
  int col_neg = -1;
  double shift = 0.0;
};

// Dense tableau with one artificial column per row; the rhs sits in the
// last column.  Rows are kept feasible (rhs >= 0) throughout.
struct Tableau {
  int m = 0;
  int nreal = 0;   // structural + slack columns
  int ncols = 0;   // nreal + m artificials + rhs
  std::vector<Vec> t;
  Vec obj;
  std::vector<int> basis;
  std::vector<char> barred;

  double rhs(int i) const { return t[i][ncols - 1]; }

  double row_scale(int i) const {
    double s = 1.0;
    for (int j = 0; j + 1 < ncols; ++j) s = std::max(s, std::fabs(t[i][j]));
    return s;
  }

  void pivot(int r, int jc) {
    const double pv = t[r][jc];
    for (int j = 0; j < ncols; ++j) t[r][j] /= pv;
    t[r][jc] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      const double f = t[i][jc];
      if (f == 0.0) continue;
      for (int j = 0; j < ncols; ++j) t[i][j] -= f * t[r][j];
      t[i][jc] = 0.0;
      if (t[i][ncols - 1] < 0.0 && t[i][ncols - 1] > -1e-11) t[i][ncols - 1] = 0.0;
    }
    const double f = obj[jc];
    if (f != 0.0) {
      for (int j = 0; j < ncols; ++j) obj[j] -= f * t[r][j];
      obj[jc] = 0.0;
    }
    basis[r] = jc;
  }

  void set_objective(const Vec& costs) {
    obj.assign(ncols, 0.0);
    for (int j = 0; j + 1 < ncols; ++j) obj[j] = costs[j];
    for (int i = 0; i < m; ++i) {
      const double cb = costs[basis[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < ncols; ++j) obj[j] -= cb * t[i][j];
      obj[basis[i]] = 0.0;
    }
  }

  // Bland's rule: enter the lowest-index improving column, leave on the
  // lowest-index basic variable among the minimum ratios.  Returns false
  // when an improving column has no positive pivot (unbounded direction).
  bool optimize() {
    for (int iter = 0; iter < kMaxPivots; ++iter) {
      int je = -1;
      for (int j = 0; j + 1 < ncols; ++j) {
        if (!barred[j] && obj[j] > kOptTol) {
          je = j;
          break;
        }
      }
      if (je < 0) return true;

      int leave = -1;
      double best = kInf;
      for (int i = 0; i < m; ++i) {
        const double pv = t[i][je];
        if (pv <= kPivotRel * row_scale(i)) continue;
        const double ratio = rhs(i) / pv;
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, je);
    }
    throw std::runtime_error("lp_solve: pivot limit exceeded");
  }
};

void check_finite(const Vec& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string("lp_solve: non-finite ") + what);
  }
}

}  // namespace

LpSolution lp_solve(const LpProblem& lp) {
  const int n = static_cast<int>(lp.objective.size());
  check_finite(lp.objective, "objective coefficient");
  if (lp.eq_rows.size() != lp.eq_rhs.size() || lp.ge_rows.size() != lp.ge_rhs.size()) {
    throw std::invalid_argument("lp_solve: row/rhs count mismatch");
  }
  for (const Vec& r : lp.eq_rows) {
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("lp_solve: equality row dimension mismatch");
    check_finite(r, "equality coefficient");
  }
  for (const Vec& r : lp.ge_rows) {
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("lp_solve: inequality row dimension mismatch");
    check_finite(r, "inequality coefficient");
  }
  check_finite(lp.eq_rhs, "equality rhs");
  check_finite(lp.ge_rhs, "inequality rhs");
  if (!lp.lower.empty() && static_cast<int>(lp.lower.size()) != n) {
    throw std::invalid_argument("lp_solve: lower bound dimension mismatch");
  }
  if (!lp.upper.empty() && static_cast<int>(lp.upper.size()) != n) {
    throw std::invalid_argument("lp_solve: upper bound dimension mismatch");
  }

  LpSolution sol;

  // Column mapping.
  std::vector<ColMap> cmap(n);
  std::vector<std::pair<int, double>> caps;  // (column, upper - lower)
  int ncol = 0;
  for (int j = 0; j < n; ++j) {
    const double lb = lp.lower.empty() ? 0.0 : lp.lower[j];
    const double ub = lp.upper.empty() ? kInf : lp.upper[j];
    if (std::isnan(lb) || std::isnan(ub)) throw std::invalid_argument("lp_solve: NaN bound");
    if (ub < lb || lb == kInf || ub == -kInf) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    ColMap& c = cmap[j];
    if (std::isfinite(lb)) {
      c.kind = VarKind::Shift;
      c.col = ncol++;
      c.shift = lb;
      if (std::isfinite(ub)) caps.emplace_back(c.col, ub - lb);
    } else if (std::isfinite(ub)) {
      c.kind = VarKind::Mirror;
      c.col = ncol++;
      c.shift = ub;
    } else {
      c.kind = VarKind::Split;
      c.col = ncol++;
      c.col_neg = ncol++;
    }
  }

  const int n_eq = static_cast<int>(lp.eq_rows.size());
  const int n_ge = static_cast<int>(lp.ge_rows.size());
  const int n_cap = static_cast<int>(caps.size());
  const int m = n_eq + n_ge + n_cap;
  const int nreal = ncol + n_ge + n_cap;  // one slack per >= row and per cap row

  // Internal rows, post-substitution and with nonnegative rhs.
  std::vector<Vec> rows(m, Vec(nreal, 0.0));
  Vec rhs(m, 0.0);
  std::vector<char> negated(m, 0);

  auto fill_row = [&](int r, const Vec& user, double b) {
    double b2 = b;
    for (int j = 0; j < n; ++j) {
      const double aj = user[j];
      if (aj == 0.0) continue;
      const ColMap& c = cmap[j];
      switch (c.kind) {
        case VarKind::Shift:
          rows[r][c.col] += aj;
          b2 -= aj * c.shift;
          break;
        case VarKind::Mirror:
          rows[r][c.col] -= aj;
          b2 -= aj * c.shift;
          break;
        case VarKind::Split:
          rows[r][c.col] += aj;
          rows[r][c.col_neg] -= aj;
          break;
      }
    }
    rhs[r] = b2;
  };

  for (int i = 0; i < n_eq; ++i) fill_row(i, lp.eq_rows[i], lp.eq_rhs[i]);
  for (int i = 0; i < n_ge; ++i) {
    const int r = n_eq + i;
    fill_row(r, lp.ge_rows[i], lp.ge_rhs[i]);
    rows[r][ncol + i] = -1.0;  // surplus
  }
  for (int i = 0; i < n_cap; ++i) {
    const int r = n_eq + n_ge + i;
    rows[r][caps[i].first] = 1.0;
    rows[r][ncol + n_ge + i] = 1.0;
    rhs[r] = caps[i].second;
  }
  for (int r = 0; r < m; ++r) {
    if (rhs[r] < 0.0) {
      for (double& v : rows[r]) v = -v;
      rhs[r] = -rhs[r];
      negated[r] = 1;
    }
  }

  const std::vector<Vec> pristine = rows;  // for dual extraction

  Tableau tab;
  tab.m = m;
  tab.nreal = nreal;
  tab.ncols = nreal + m + 1;
  tab.t.assign(m, Vec(tab.ncols, 0.0));
  tab.basis.resize(m);
  tab.barred.assign(tab.ncols, 0);
  for (int i = 0; i < m; ++i) {
    std::copy(rows[i].begin(), rows[i].end(), tab.t[i].begin());
    tab.t[i][nreal + i] = 1.0;
    tab.t[i][tab.ncols - 1] = rhs[i];
    tab.basis[i] = nreal + i;
  }

  // Phase 1: minimize the artificial mass.
  Vec phase1(tab.ncols - 1, 0.0);
  for (int i = 0; i < m; ++i) phase1[nreal + i] = -1.0;
  tab.set_objective(phase1);
  if (!tab.optimize()) throw std::runtime_error("lp_solve: phase 1 reported unbounded");

  double infeas = 0.0;
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] >= nreal) infeas += tab.rhs(i);
  }
  if (infeas > kFeasTol) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }

  // Drive leftover artificials out of the basis; rows that offer no pivot
  // are redundant and get dropped.
  std::vector<char> row_deleted_orig(m, 0);
  for (int i = tab.m - 1; i >= 0; --i) {
    if (tab.basis[i] < nreal) continue;
    int jc = -1;
    const double scale = tab.row_scale(i);
    for (int j = 0; j < nreal; ++j) {
      if (std::fabs(tab.t[i][j]) > kPivotRel * scale) {
        jc = j;
        break;
      }
    }
    if (jc >= 0) {
      tab.pivot(i, jc);
    } else {
      row_deleted_orig[tab.basis[i] - nreal] = 1;
      tab.t.erase(tab.t.begin() + i);
      tab.basis.erase(tab.basis.begin() + i);
      --tab.m;
    }
  }
  for (int i = 0; i < m; ++i) tab.barred[nreal + i] = 1;

  // Phase 2.
  Vec phase2(tab.ncols - 1, 0.0);
  for (int j = 0; j < n; ++j) {
    const ColMap& c = cmap[j];
    const double cj = lp.objective[j];
    switch (c.kind) {
      case VarKind::Shift:
        phase2[c.col] += cj;
        break;
      case VarKind::Mirror:
        phase2[c.col] -= cj;
        break;
      case VarKind::Split:
        phase2[c.col] += cj;
        phase2[c.col_neg] -= cj;
        break;
    }
  }
  tab.set_objective(phase2);
  if (!tab.optimize()) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  Vec z(nreal, 0.0);
  for (int i = 0; i < tab.m; ++i) {
    if (tab.basis[i] < nreal) z[tab.basis[i]] = std::max(0.0, tab.rhs(i));
  }
  sol.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const ColMap& c = cmap[j];
    switch (c.kind) {
      case VarKind::Shift:
        sol.x[j] = c.shift + z[c.col];
        break;
      case VarKind::Mirror:
        sol.x[j] = c.shift - z[c.col];
        break;
      case VarKind::Split:
        sol.x[j] = z[c.col] - z[c.col_neg];
        break;
    }
  }
  sol.objective = 0.0;
  for (int j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];

  // Duals from the final basis: solve  sum_i y_i M0(i, basis_k) = d(basis_k)
  // over the surviving rows, then map back with the negation signs.  Rows
  // dropped as redundant report a zero dual.
  std::vector<int> survivors;
  for (int i = 0; i < m; ++i) {
    if (!row_deleted_orig[i]) survivors.push_back(i);
  }
  Vec y(m, 0.0);
  const int ms = static_cast<int>(survivors.size());
  if (ms > 0) {
    Matrix a(ms, ms);
    Vec db(ms, 0.0);
    for (int k = 0; k < ms; ++k) {
      const int col = tab.basis[k];
      for (int i = 0; i < ms; ++i) a(k, i) = pristine[survivors[i]][col];
      db[k] = phase2[col];
    }
    Vec ys;
    try {
      ys = solve_linear(a, db);
    } catch (const SingularMatrixError&) {
      throw std::runtime_error("lp_solve: dual extraction hit a singular basis");
    }
    for (int i = 0; i < ms; ++i) y[survivors[i]] = ys[i];
  }

  sol.eq_duals.assign(n_eq, 0.0);
  sol.ge_duals.assign(n_ge, 0.0);
  for (int i = 0; i < n_eq; ++i) sol.eq_duals[i] = negated[i] ? -y[i] : y[i];
  for (int i = 0; i < n_ge; ++i) sol.ge_duals[i] = negated[n_eq + i] ? -y[n_eq + i] : y[n_eq + i];

  sol.status = LpStatus::Optimal;
  return sol;
}

}  // namespace arat
