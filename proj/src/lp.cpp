#include "lcflow/lp.hpp"

#include <stdexcept>

namespace lcf {

namespace {

// Tableau with rows indexed by basic variables. Column 0 is the rhs.
struct Tableau {
  int ncols = 0;      // 1 + total variables
  int enter_limit = 0;  // columns >= this never enter the basis
  std::vector<std::vector<Rat>> rows;
  std::vector<int> basis;     // variable basic in each row
  std::vector<Rat> obj;       // reduced objective row (minimization), size ncols
  Rat objconst = 0;

  void pivot(int r, int col) {
    Rat piv = rows[r][col];
    for (Rat& x : rows[r]) x /= piv;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r) continue;
      Rat factor = rows[i][col];
      if (factor == 0) continue;
      for (int j = 0; j < ncols; ++j) rows[i][j] -= factor * rows[r][j];
    }
    Rat of = obj[col];
    if (of != 0)
      for (int j = 0; j < ncols; ++j) obj[j] -= of * rows[r][j];
    basis[r] = col;
  }

  // Bland's rule: entering = lowest-index column with negative reduced cost,
  // leaving = lowest-index basic variable among min-ratio rows.
  // Returns false when optimal, throws on unbounded.
  bool step() {
    int enter = -1;
    for (int j = 1; j < enter_limit; ++j)
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    if (enter < 0) return false;
    int leave = -1;
    Rat best;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (rows[i][enter] <= 0) continue;
      Rat ratio = rows[i][0] / rows[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw std::runtime_error("lp-unbounded");
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  // Standardize: minimize c'x, rows a.x {<=,>=,=} b with b >= 0 after sign
  // flip, then slacks, then artificials for >=/= rows.
  const int n = lp.nvars;
  int nslack = 0;
  for (const LpRow& r : lp.rows)
    if (r.sense != RowSense::eq) ++nslack;

  const int m = static_cast<int>(lp.rows.size());
  int nart = m;  // one artificial per row keeps phase 1 trivial to seed
  const int total = n + nslack + nart;

  Tableau t;
  t.ncols = 1 + total;
  t.rows.assign(m, std::vector<Rat>(t.ncols, Rat(0)));
  t.basis.assign(m, -1);

  int slack_at = 1 + n;
  int art_at = 1 + n + nslack;
  std::vector<int> art_col(m, -1);

  for (int i = 0; i < m; ++i) {
    LpRow row = lp.rows[i];
    bool flip = row.b < 0;
    Rat sign = flip ? Rat(-1) : Rat(1);
    for (int j = 0; j < n; ++j) t.rows[i][1 + j] = sign * row.a[j];
    t.rows[i][0] = sign * row.b;
    RowSense sense = row.sense;
    if (flip) {
      if (sense == RowSense::le)
        sense = RowSense::ge;
      else if (sense == RowSense::ge)
        sense = RowSense::le;
    }
    if (sense == RowSense::le) {
      t.rows[i][slack_at] = 1;
      t.basis[i] = slack_at;
      ++slack_at;
    } else if (sense == RowSense::ge) {
      t.rows[i][slack_at] = -1;
      ++slack_at;
    }
    if (t.basis[i] < 0) {
      t.rows[i][art_at] = 1;
      t.basis[i] = art_at;
      art_col[i] = art_at;
      ++art_at;
    }
  }

  // Phase 1: minimize sum of artificials.
  t.enter_limit = t.ncols;
  t.obj.assign(t.ncols, Rat(0));
  for (int j = 1 + n + nslack; j < t.ncols; ++j) t.obj[j] = 1;
  for (int i = 0; i < m; ++i) {
    if (art_col[i] < 0) continue;
    for (int j = 0; j < t.ncols; ++j) t.obj[j] -= t.rows[i][j];
  }
  bool any_art = false;
  for (int i = 0; i < m; ++i) any_art = any_art || art_col[i] >= 0;
  if (any_art) {
    while (t.step()) {
    }
    if (-t.obj[0] != 0) {
      LpResult res;
      res.status = LpResult::Status::infeasible;
      return res;
    }
    // drive lingering artificials out of the basis
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < 1 + n + nslack) continue;
      int col = -1;
      for (int j = 1; j < 1 + n + nslack; ++j)
        if (t.rows[i][j] != 0) {
          col = j;
          break;
        }
      if (col >= 0) t.pivot(i, col);
      // else the row is all-zero: redundant constraint, harmless
    }
  }

  // Phase 2 objective (minimization form); artificials never re-enter.
  t.enter_limit = 1 + n + nslack;
  t.obj.assign(t.ncols, Rat(0));
  for (int j = 0; j < n; ++j) t.obj[1 + j] = lp.maximize ? -lp.objective[j] : lp.objective[j];
  // eliminate basic columns from the objective
  for (int i = 0; i < m; ++i) {
    int b = t.basis[i];
    if (b >= 1 + n + nslack) continue;  // artificial stuck in a zero row
    Rat f = t.obj[b];
    if (f == 0) continue;
    for (int j = 0; j < t.ncols; ++j) t.obj[j] -= f * t.rows[i][j];
  }
  LpResult res;
  try {
    while (t.step()) {
    }
  } catch (const std::runtime_error&) {
    res.status = LpResult::Status::unbounded;
    return res;
  }

  res.status = LpResult::Status::optimal;
  res.x.assign(n, Rat(0));
  for (int i = 0; i < m; ++i)
    if (t.basis[i] >= 1 && t.basis[i] <= n) res.x[t.basis[i] - 1] = t.rows[i][0];
  Rat minval = t.obj[0];  // obj row holds -(current value) at column 0
  Rat val = -minval;
  res.objective = lp.maximize ? -val : val;
  return res;
}

}  // namespace lcf
