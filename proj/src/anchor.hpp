#pragma once

#include <vector>

#include "polystab/program.hpp"

namespace polystab {

// Everything the multiplier and stability formulas read at a fixed feasible
// anchor (xbar, ybar): active set, joint and partial subdifferentials of the
// objective and constraints, and the base-set normal cones. Computed once and
// shared so the independent formula paths consume identical ingredients.
struct Anchor {
  QVec xbar, ybar, zbar;
  std::vector<int> active;
  std::vector<char> is_active;

  Polyhedron joint_dphi = Polyhedron::full(0);
  Polyhedron joint_dphi_inf = Polyhedron::full(0);
  Polyhedron joint_nc = Polyhedron::full(0);
  std::vector<Polyhedron> joint_dg;

  Polyhedron y_dphi = Polyhedron::full(0);
  Polyhedron y_dphi_inf = Polyhedron::full(0);
  Polyhedron y_nc = Polyhedron::full(0);
  std::vector<Polyhedron> y_dg;
  std::vector<QVec> h_y;

  Polyhedron x_dphi = Polyhedron::full(0);
  Polyhedron x_dphi_inf = Polyhedron::full(0);
  Polyhedron x_nc = Polyhedron::full(0);
  std::vector<Polyhedron> x_dg;
  std::vector<QVec> h_x;
};

// Validates that (xbar, ybar) is feasible with a finite objective value.
Anchor make_anchor(const Program& p, const QVec& xbar, const QVec& ybar);

}  // namespace polystab
