#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polystab/functions.hpp"

namespace polystab {

// Parametric convex program over z = (x, y):
//   mu(x) = inf { phi(x, y) : (x, y) in C, g_i(x, y) <= 0, h_j(x, y) = 0 }.
// All data is piecewise-linear over the rationals.
struct Program {
  int nx = 0, ny = 0;
  PwlFunction phi;
  std::vector<PwlFunction> g;
  std::vector<LinRow> h;
  Polyhedron C = Polyhedron::full(0);
};

Program make_program(int nx, int ny, PwlFunction phi, std::vector<PwlFunction> g,
                     std::vector<LinRow> h, Polyhedron C);

std::vector<int> x_coords(const Program& p);
std::vector<int> y_coords(const Program& p);

// { y : (xbar, y) in C, g_i(xbar, y) <= 0, h_j(xbar, y) = 0 }; the objective
// domain is not part of it.
Polyhedron constraint_set(const Program& p, const QVec& xbar);

// Joint region where mu draws finite candidates: constraints plus dom phi.
Polyhedron value_region(const Program& p);

// dom mu, the projection of the value region onto x.
Polyhedron mu_domain(const Program& p);

// Epigraph of mu as a polyhedron in (x, t): epi phi intersected with the
// feasible region, projected onto (x, t). mu is the exact lower envelope of
// this set; it dips to minus infinity at some parameter iff the set admits
// the vertical down ray.
Polyhedron value_epigraph(const Program& p);

// Indices of constraints active at a feasible point.
std::vector<int> active_indices(const Program& p, const QVec& xbar,
                                const QVec& ybar);

struct Solution {
  enum Kind { Finite, Unbounded, Infeasible } kind = Infeasible;
  Rat value;                               // Finite
  QVec ybar;                               // Finite: first canonical vertex
  Polyhedron argmin = Polyhedron::full(0); // Finite: full solution face
};

// Epigraph LP in (y, t). A finite infimum over a polyhedron is attained, so
// Finite always comes with the solution face.
Solution solve(const Program& p, const QVec& xbar);

// Strictly feasible point shared by every inequality (base set, objective and
// constraint domains, constraint pieces), with equality rows held exactly.
// Equality rows in the base set or a domain rule out any such point and are
// reported as the reason.
struct SlaterResult {
  bool ok = false;
  QVec x, y;
  std::string reason;
};
SlaterResult slater_point(const Program& p);

struct KktResult {
  bool holds = false;
  // p + n = 0 with p in the objective slice subdifferential and n in the
  // constraint normal cone; stored as (p, n).
  std::optional<std::pair<QVec, QVec>> certificate;
  bool interior_constraints = false;  // int G(xbar) meets dom phi(xbar, .)
  bool interior_objective = false;    // G(xbar) meets int dom phi(xbar, .)
  bool optimal = false;               // ybar lies on the solution face
};

// Tests 0 in d_y phi(xbar, ybar) + N(ybar; G(xbar)). Sufficiency for
// optimality is unconditional; under either interiority flag the converse is
// asserted against the solve face.
KktResult kkt_inclusion_check(const Program& p, const QVec& xbar,
                              const QVec& ybar);

// 0 in int(dom phi(xbar, .) - G(xbar)).
bool aubin_regularity(const Program& p, const QVec& xbar);

// N(ybar; G(xbar)) assembled from the constraint structure: sublevel normal
// cones of active constraints, domain normal cones of inactive ones, the span
// of equality gradients, and the base-set normal cone. Requires a strictly
// feasible point of the slice; the result is asserted against the normal cone
// of G(xbar) computed directly.
Polyhedron feasible_normal_cone(const Program& p, const QVec& xbar,
                                const QVec& ybar);

}  // namespace polystab
