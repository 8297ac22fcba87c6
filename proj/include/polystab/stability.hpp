#pragma once

#include <string>

#include "polystab/multipliers.hpp"
#include "polystab/program.hpp"

namespace polystab {

// Exact subdifferential of the value function mu(x) = inf_y { phi(x, y) :
// g(x, y) <= 0, h(x, y) = 0, (x, y) in C } at xbar. Requires mu(xbar) finite.
// Anchored at a minimizer ybar (found by solve, or supplied and checked);
// the result does not depend on which minimizer is used. Computed three
// ways, by joint-space set arithmetic, by one lifted projection, and by a
// hybrid of the two, which must agree exactly.
Polyhedron mu_subdifferential(const Program& p, const QVec& xbar);
Polyhedron mu_subdifferential_at(const Program& p, const QVec& xbar,
                                 const QVec& ybar);

// The same set by the per-subgradient decomposition alone: every objective
// subgradient (x*, y*) contributes x* shifted by the u* with (u*, -y*) in
// the summed constraint cone. Cross-checked against the aggregate path.
Polyhedron mu_subdifferential_per_subgradient(const Program& p,
                                              const QVec& xbar,
                                              const QVec& ybar);

// Singular counterpart: the objective subdifferential is replaced by the
// normal cone of its domain. For this class it equals the normal cone of
// dom mu at xbar.
Polyhedron mu_singular_subdifferential(const Program& p, const QVec& xbar);
Polyhedron mu_singular_subdifferential_at(const Program& p, const QVec& xbar,
                                          const QVec& ybar);

// Multiplier outer estimate: the partial-x Lagrangian union over the
// stationary multiplier set at (xbar, ybar). The inclusion of the exact
// subdifferential is asserted; strict reports whether it is proper.
struct UpperEstimate {
  Polyhedron set = Polyhedron::full(0);
  bool strict = false;
};
UpperEstimate upper_estimate(const Program& p, const QVec& xbar,
                             const QVec& ybar);

// The same over the horizon multiplier set, bounding the singular
// subdifferential.
UpperEstimate singular_upper_estimate(const Program& p, const QVec& xbar,
                                      const QVec& ybar);

// Everything the stability formulas say at one parameter point: the exact
// subdifferentials of mu, the multiplier sets at the chosen minimizer, and
// the multiplier-based outer estimates with their strictness. The estimate
// inclusions are asserted; a violation is an internal error. When mu(xbar)
// is not finite the report carries the status, the domain of mu, and the
// hypothesis stamps only; value, ybar, and the sets are left at their
// defaults.
struct StabilityReport {
  Solution::Kind status = Solution::Infeasible;
  Rat value;
  QVec ybar;

  Polyhedron lambda0 = Polyhedron::full(0);
  Polyhedron lambda = Polyhedron::full(0);
  Polyhedron lambda_inf = Polyhedron::full(0);

  Polyhedron sub = Polyhedron::full(0);
  Polyhedron sub_estimate = Polyhedron::full(0);
  bool sub_estimate_strict = false;

  Polyhedron sing = Polyhedron::full(0);
  Polyhedron sing_estimate = Polyhedron::full(0);
  bool sing_estimate_strict = false;

  Polyhedron mu_dom = Polyhedron::full(0);
  bool mu_proper = false;
  bool singular_matches_domain_cone = false;

  bool slater_ok = false;
  std::string slater_reason;
};

StabilityReport analyze_stability(const Program& p, const QVec& xbar);

}  // namespace polystab
