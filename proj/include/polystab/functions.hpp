#pragma once

#include <optional>
#include <vector>

#include "polystab/polyhedron.hpp"

namespace polystab {

// Proper convex piecewise-linear function
//   f(z) = max_i (<grads[i], z> + offsets[i])   for z in domain,
//   f(z) = +infinity                            otherwise.
// Each instance is validated at construction: at least one piece, consistent
// dimensions, nonempty domain.
struct PwlFunction {
  int dim = 0;
  std::vector<QVec> grads;
  QVec offsets;
  Polyhedron domain = Polyhedron::full(0);
};

PwlFunction make_pwl(std::vector<QVec> grads, QVec offsets, Polyhedron domain);

// +infinity is encoded as finite == false; v is meaningful otherwise.
struct FnValue {
  bool finite = false;
  Rat v;
};

FnValue value(const PwlFunction& f, const QVec& z);
std::vector<int> active_pieces(const PwlFunction& f, const QVec& z);

// conv{active gradients} + N(z; dom f); the empty set when z is outside the
// domain. The sum rule needs no qualification here because the max part is
// finite everywhere.
Polyhedron subdifferential(const PwlFunction& f, const QVec& z);

// N(z; dom f), cross-checked against the horizon reading
// { s : (s, 0) in N((z, f(z)); epi f) }.
Polyhedron singular_subdifferential(const PwlFunction& f, const QVec& z);

Polyhedron epigraph(const PwlFunction& f);
Polyhedron sublevel_set(const PwlFunction& f, const Rat& alpha);

// N(z; { f <= f(z) }) computed as cone_hull(subdifferential(f, z)); requires a
// point with f < f(z), otherwise the hull formula is not licensed and a
// qualification_error is thrown. The result is cross-checked against the
// normal cone of the sublevel set computed directly.
Polyhedron sublevel_normal_cone(const PwlFunction& f, const QVec& z);

// Epigraph LP: minimal value and a minimizer, or Unbounded.
LPResult minimize(const PwlFunction& f);

// f with the listed coordinates frozen at the given values, as a function of
// the remaining coordinates (in their original order).
PwlFunction partial_slice(const PwlFunction& f, std::vector<int> fixed,
                          const QVec& vals);

// Subdifferential of the restriction of f to the block coordinates, the
// remaining coordinates pinned at their values in z. Lives in Q^{|block|};
// empty when the pinned slice misses the domain.
Polyhedron partial_subdifferential(const PwlFunction& f, std::vector<int> block,
                                   const QVec& z);

// Minkowski sum of the summand subdifferentials at z. qualified records the
// sum-rule condition: z in every domain, interior to all but at most one.
// When it holds the sum equals the subdifferential of the pointwise sum
// (cross-checked); otherwise only containment in it is guaranteed.
struct SumRule {
  Polyhedron set = Polyhedron::full(0);
  bool qualified = false;
};
SumRule sum_subdifferential(const std::vector<PwlFunction>& fs, const QVec& z);

// span of the row vectors of affine equalities that all pass through z, which
// is the normal cone of their intersection there (cross-checked). Throws
// precondition_error when z misses one of the hyperplanes.
Polyhedron affine_span_normal_cone(const std::vector<LinRow>& rows,
                                   const QVec& z);

// Does <alpha_i, x> <= 0 for every i force <gamma, x> <= 0? Exactly one of
// certificate (gamma as a nonnegative combination of the alphas) and
// counterexample (an x with every <alpha_i, x> <= 0 but <gamma, x> > 0) is
// present.
struct FarkasResult {
  bool entailed = false;
  std::optional<QVec> certificate;
  std::optional<QVec> counterexample;
};
FarkasResult farkas_entailment(const std::vector<QVec>& alphas,
                               const QVec& gamma);

PwlFunction add(const PwlFunction& f, const PwlFunction& g);
PwlFunction scale(const Rat& t, const PwlFunction& f);  // t >= 0

}  // namespace polystab
