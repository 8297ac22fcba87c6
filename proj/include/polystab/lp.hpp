#pragma once

#include <optional>
#include <vector>

#include "polystab/rational.hpp"

namespace polystab {

// One linear row <a, z> (<= | =) b. Whether it is an inequality or an equality
// is decided by which list it sits in, never by a flag on the row.
struct LinRow {
  QVec a;
  Rat b;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rat value;  // meaningful only when Optimal
  QVec x;     // meaningful only when Optimal
};

// Exact simplex over the rationals with Bland's rule. Variables are free;
// internally each is split into a difference of nonnegatives and the tableau
// is kept in scaled integers (fraction-free pivoting), so every intermediate
// value is exact and termination is guaranteed.
LPResult lp_minimize(const QVec& c, const std::vector<LinRow>& ineqs,
                     const std::vector<LinRow>& eqs);

LPResult lp_maximize(const QVec& c, const std::vector<LinRow>& ineqs,
                     const std::vector<LinRow>& eqs);

// Feasibility witness for { z : ineqs, eqs }, if any.
std::optional<QVec> lp_feasible_point(int dim, const std::vector<LinRow>& ineqs,
                                      const std::vector<LinRow>& eqs);

}  // namespace polystab
