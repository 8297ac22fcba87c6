#include "polystab/oracle.hpp"

#include <optional>

#include "polystab/errors.hpp"

namespace polystab {

DirDerivative directional_derivative(const Program& p, const QVec& xbar,
                                     const QVec& d) {
  if ((int)d.size() != p.nx) throw input_error("direction dimension mismatch");
  if (all_zero(d)) throw input_error("direction must be nonzero");
  Solution base = solve(p, xbar);
  if (base.kind != Solution::Finite)
    throw precondition_error("value function is not finite at the parameter");

  DirDerivative out;
  Rat t(1);
  std::optional<Rat> prev;
  for (int step = 1; step <= 64; ++step, t /= 2) {
    Solution s = solve(p, vadd(xbar, vscale(t, d)));
    out.steps = step;
    if (s.kind == Solution::Infeasible) {
      // dom mu is convex, so feasibility is monotone as t shrinks
      if (prev) throw internal_error("value domain lost along a ray");
      continue;
    }
    if (s.kind == Solution::Unbounded)
      throw internal_error("improper value function at a finite anchor");
    Rat slope = (s.value - base.value) / t;
    if (prev && *prev == slope) {
      out.finite = true;
      out.slope = slope;
      return out;
    }
    prev = slope;
  }
  if (!prev) return out;  // never met dom mu: derivative +infinity
  throw internal_error("directional derivative did not stabilize");
}

bool support_matches(const Polyhedron& s, const QVec& d,
                     const DirDerivative& dd) {
  SupportValue sv = support(s, d);
  if (dd.finite) return sv.kind == SupportValue::Finite && sv.value == dd.slope;
  return sv.kind == SupportValue::PlusInf;
}

std::vector<bool> support_check(const Polyhedron& s, const Program& p,
                                const QVec& xbar,
                                const std::vector<QVec>& dirs) {
  if (solve(p, xbar).kind != Solution::Finite)
    throw precondition_error("value function is not finite at the parameter");
  std::vector<bool> verdicts;
  verdicts.reserve(dirs.size());
  for (const QVec& d : dirs)
    verdicts.push_back(support_matches(s, d, directional_derivative(p, xbar, d)));
  return verdicts;
}

}  // namespace polystab
