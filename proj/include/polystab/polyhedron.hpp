#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "polystab/lp.hpp"

namespace polystab {

// H-description { z : <a,z> <= b for ineqs, <a,z> = b for eqs }.
struct HRep {
  int dim = 0;
  std::vector<LinRow> ineqs;
  std::vector<LinRow> eqs;
};

// V-description conv(points) + cone(rays) + span(lines). A VRep describes the
// empty set exactly when it has no points; canonical form then drops rays and
// lines as well.
struct VRep {
  int dim = 0;
  std::vector<QVec> points;
  std::vector<QVec> rays;
  std::vector<QVec> lines;
};

// Double description on the homogenization cone. Output is canonical: extreme
// points exactly, rays/lines as primitive integer vectors, all lists sorted.
VRep to_vrep(const HRep& h);

// Same kernel applied to the dual cone of the homogenization; rows returned
// are irredundant facets plus an equality basis of the affine hull.
HRep to_hrep(const VRep& v);

bool hrep_contains(const HRep& h, const QVec& z);
bool hrep_admits_ray(const HRep& h, const QVec& r);

// Exact redundancy removal: equality rows are echelonized, inequality rows
// reduced, deduplicated, and LP-tested one by one. Detects emptiness.
HRep prune_rows(HRep h);

// Fourier-Motzkin projection onto the listed coordinates (ascending), with
// redundancy removal after every eliminated variable. Equality rows are used
// as exact substitutions where possible.
HRep fm_project(const HRep& h, std::vector<int> keep);

// Rows with the listed coordinates frozen at the given values, over the
// remaining coordinates in their original order (a slice, not a projection).
HRep fix_coords(const HRep& h, std::vector<int> fixed, const QVec& vals);

// Strict-slack LP; a point of the topological interior, if one exists.
std::optional<QVec> interior_point(const HRep& h);
bool is_interior_point(const HRep& h, const QVec& z);

// Immutable polyhedron holding both canonical descriptions. Construction runs
// the conversion kernel both ways, so two equal sets compare bytewise equal
// and every later query is a cheap row or generator scan.
class Polyhedron {
 public:
  static Polyhedron from_h(HRep h);
  static Polyhedron from_v(VRep v);
  static Polyhedron full(int dim);
  static Polyhedron empty(int dim);
  static Polyhedron singleton(QVec z);

  int dim() const { return h_.dim; }
  bool is_empty() const { return v_.points.empty(); }
  const HRep& hrep() const { return h_; }
  const VRep& vrep() const { return v_; }

  bool contains(const QVec& z) const;
  bool admits_ray(const QVec& r) const;

 private:
  Polyhedron() = default;
  HRep h_;
  VRep v_;
};

enum class SetRelation { Equal, ProperSubset, ProperSuperset, Incomparable };

Polyhedron minkowski_sum(const Polyhedron& p, const Polyhedron& q);
Polyhedron intersect(const Polyhedron& p, const Polyhedron& q);
Polyhedron project(const Polyhedron& p, std::vector<int> coords);
Polyhedron negate(const Polyhedron& p);

// Normal cone N(z; P) read off the active rows of the canonical H-form.
Polyhedron normal_cone_at(const Polyhedron& p, const QVec& z);

// Sum rule N(z; A1 cap ... cap Am) = N(z;A1) + ... + N(z;Am), applied only
// after an LP certifies a point of A1 meeting the interiors of the others;
// result is cross-checked against the directly computed normal cone.
Polyhedron normal_cone_intersection_rule(const std::vector<Polyhedron>& sets,
                                         const QVec& z);

Polyhedron cone_hull(const Polyhedron& p);
Polyhedron span_hull(int dim, const std::vector<QVec>& vectors);
Polyhedron span_hull(const Polyhedron& p);

bool subset_of(const Polyhedron& p, const Polyhedron& q);
SetRelation set_relation(const Polyhedron& p, const Polyhedron& q);

struct SupportValue {
  enum Kind { Finite, PlusInf, MinusInf } kind = MinusInf;
  Rat value;  // meaningful only when Finite
};
SupportValue support(const Polyhedron& p, const QVec& d);

// Decomposition z = u + v with u in P, v in Q, if one exists.
std::optional<std::pair<QVec, QVec>> minkowski_member(const Polyhedron& p,
                                                      const Polyhedron& q,
                                                      const QVec& z);

// First point of the canonical (sorted) V-form; requires nonempty.
QVec lex_least_point(const Polyhedron& p);

}  // namespace polystab
