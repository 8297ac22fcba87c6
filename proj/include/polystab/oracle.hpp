#pragma once

#include "polystab/polyhedron.hpp"
#include "polystab/program.hpp"

namespace polystab {

// Exact one-sided directional derivative of mu at xbar along d, measured by
// re-solving the program at xbar + t d while t halves from 1. Difference
// quotients of a convex function are nondecreasing in t, so two consecutive
// equal finite quotients pin the limit exactly; a direction that never
// re-enters dom mu has derivative +infinity (finite = false). steps counts
// the solves used.
struct DirDerivative {
  bool finite = false;
  Rat slope;
  int steps = 0;
};

DirDerivative directional_derivative(const Program& p, const QVec& xbar,
                                     const QVec& d);

// The support function identity behind the subdifferential: sigma_S(d) for
// S = mu_subdifferential(p, xbar) must reproduce the measured derivative,
// infinite cases included.
bool support_matches(const Polyhedron& s, const QVec& d,
                     const DirDerivative& dd);

// Batch form: one verdict per direction, true when the support value of s
// along it reproduces the measured derivative of mu at xbar. Requires
// mu(xbar) finite.
std::vector<bool> support_check(const Polyhedron& s, const Program& p,
                                const QVec& xbar,
                                const std::vector<QVec>& dirs);

}  // namespace polystab
