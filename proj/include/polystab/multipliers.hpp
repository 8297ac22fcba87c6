#pragma once

#include "polystab/program.hpp"

namespace polystab {

// All multiplier sets live in R^{m+k}, coordinates (lambda_1..lambda_m,
// mu_1..mu_k), and are taken at a feasible anchor (xbar, ybar) with finite
// objective value. With m = k = 0 they are 0-dimensional.

// Sign and complementarity alone: lambda >= 0, lambda_i = 0 off the active
// set, mu free.
Polyhedron lambda0_set(const Program& p, const QVec& xbar, const QVec& ybar);

// Members of lambda0_set whose Lagrangian is stationary in y at ybar:
// 0 in d_y phi + sum lambda_i d_y g_i + sum mu_j h_j^y + N(ybar; C(xbar)).
// Each product lambda_i d_y g_i is linearized through the homogenization
// cone of d_y g_i, then the helper variables are projected out. At
// lambda_i = 0 the cone closes onto the recession cone of d_y g_i, the
// normal cone of dom g_i(xbar, .), so constraints whose domain fences the
// slice still contribute at zero multiplier.
Polyhedron lambda_set(const Program& p, const QVec& xbar, const QVec& ybar);

// Same stationarity system with the objective term replaced by its horizon:
// d_y phi becomes N(ybar; dom phi(xbar, .)).
Polyhedron lambda_inf_set(const Program& p, const QVec& xbar, const QVec& ybar);

// d phi(zbar) + sum_i lambda_i d g_i(zbar) + sum_j mu_j h_j^grad
//   + N(zbar; C)
// for one fixed multiplier vector, which must satisfy sign and
// complementarity (lie in lambda0_set). A zero lambda_i contributes the
// normal cone of dom g_i, the recession part of the scaled subdifferential.
// qualified records whether the program has a Slater point; without one the
// sum is still exact as a Minkowski sum but the stability formulas built on
// it are estimates only.
struct LagrangianSum {
  Polyhedron set = Polyhedron::full(0);
  bool qualified = false;
};
LagrangianSum lagrangian_subdifferential(const Program& p, const QVec& xbar,
                                         const QVec& ybar, const QVec& lambda,
                                         const QVec& mu);

// The same sum with the objective term replaced by its horizon cone
// N(zbar; dom phi).
LagrangianSum singular_lagrangian_subdifferential(const Program& p,
                                                  const QVec& xbar,
                                                  const QVec& ybar,
                                                  const QVec& lambda,
                                                  const QVec& mu);

// Union over (lambda, mu) in multipliers of
//   d_x phi(., ybar)(xbar) + sum lambda_i d_x g_i(., ybar)(xbar)
//     + sum mu_j h_j^x + N(xbar; { x : (x, ybar) in C }),
// computed exactly as one lifted projection. multipliers must lie in the
// nonnegative-lambda orthant.
Polyhedron partial_x_lagrangian_union(const Program& p, const QVec& xbar,
                                      const QVec& ybar,
                                      const Polyhedron& multipliers);

// The same union with the objective term hatted to its horizon cone
// N(xbar; dom phi(., ybar)).
Polyhedron singular_partial_x_lagrangian_union(const Program& p,
                                               const QVec& xbar,
                                               const QVec& ybar,
                                               const Polyhedron& multipliers);

}  // namespace polystab
