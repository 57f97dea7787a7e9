#pragma once

#include <vector>

#include "lcflow/rational.hpp"

namespace lcf {

// Small dense exact-rational LP, two-phase primal simplex with Bland's rule.
// Sized for desk-scale oracle work, not production solving.

enum class RowSense { le, ge, eq };

struct LpRow {
  std::vector<Rat> a;  // dense coefficients, size nvars
  RowSense sense = RowSense::le;
  Rat b = 0;
};

struct LinearProgram {
  int nvars = 0;
  bool maximize = true;
  std::vector<Rat> objective;  // size nvars
  std::vector<LpRow> rows;

  explicit LinearProgram(int nvars_, bool maximize_ = true)
      : nvars(nvars_), maximize(maximize_), objective(nvars_, Rat(0)) {}

  LpRow& add_row(RowSense sense, const Rat& b) {
    rows.push_back(LpRow{std::vector<Rat>(nvars, Rat(0)), sense, b});
    return rows.back();
  }
};

struct LpResult {
  enum class Status { optimal, infeasible, unbounded } status = Status::optimal;
  Rat objective = 0;
  std::vector<Rat> x;

  bool ok() const { return status == Status::optimal; }
};

LpResult solve_lp(const LinearProgram& lp);

}  // namespace lcf
