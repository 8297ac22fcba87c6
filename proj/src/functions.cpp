#include "polystab/functions.hpp"

#include <algorithm>
#include <cassert>

#include "polystab/errors.hpp"

namespace polystab {

PwlFunction make_pwl(std::vector<QVec> grads, QVec offsets, Polyhedron domain) {
  if (grads.empty()) throw input_error("function needs at least one piece");
  if (grads.size() != offsets.size())
    throw input_error("piece gradient and offset counts differ");
  const int dim = domain.dim();
  for (const QVec& g : grads)
    if ((int)g.size() != dim) throw input_error("piece gradient dimension mismatch");
  if (domain.is_empty()) throw input_error("function domain is empty");
  PwlFunction f;
  f.dim = dim;
  f.grads = std::move(grads);
  f.offsets = std::move(offsets);
  f.domain = std::move(domain);
  return f;
}

FnValue value(const PwlFunction& f, const QVec& z) {
  if ((int)z.size() != f.dim) throw input_error("evaluation dimension mismatch");
  FnValue out;
  if (!f.domain.contains(z)) return out;
  out.finite = true;
  out.v = dot(f.grads[0], z) + f.offsets[0];
  for (size_t i = 1; i < f.grads.size(); ++i) {
    Rat p = dot(f.grads[i], z) + f.offsets[i];
    if (p > out.v) out.v = p;
  }
  return out;
}

std::vector<int> active_pieces(const PwlFunction& f, const QVec& z) {
  FnValue v = value(f, z);
  if (!v.finite) return {};
  std::vector<int> act;
  for (size_t i = 0; i < f.grads.size(); ++i) {
    Rat p = dot(f.grads[i], z) + f.offsets[i];
    if (p == v.v) act.push_back((int)i);
  }
  return act;
}

Polyhedron subdifferential(const PwlFunction& f, const QVec& z) {
  std::vector<int> act = active_pieces(f, z);
  if (act.empty()) return Polyhedron::empty(f.dim);
  VRep hull;
  hull.dim = f.dim;
  for (int i : act) hull.points.push_back(f.grads[(size_t)i]);
  return minkowski_sum(Polyhedron::from_v(std::move(hull)),
                       normal_cone_at(f.domain, z));
}

Polyhedron epigraph(const PwlFunction& f) {
  const int d = f.dim;
  HRep h;
  h.dim = d + 1;
  for (const LinRow& r : f.domain.hrep().ineqs) {
    QVec a = r.a;
    a.push_back(0);
    h.ineqs.push_back(LinRow{std::move(a), r.b});
  }
  for (const LinRow& r : f.domain.hrep().eqs) {
    QVec a = r.a;
    a.push_back(0);
    h.eqs.push_back(LinRow{std::move(a), r.b});
  }
  for (size_t i = 0; i < f.grads.size(); ++i) {
    QVec a = f.grads[i];
    a.push_back(-1);
    h.ineqs.push_back(LinRow{std::move(a), -f.offsets[i]});
  }
  return Polyhedron::from_h(std::move(h));
}

Polyhedron singular_subdifferential(const PwlFunction& f, const QVec& z) {
  FnValue v = value(f, z);
  if (!v.finite)
    throw precondition_error("singular subdifferential needs a domain point");
  Polyhedron n = normal_cone_at(f.domain, z);

  QVec w = z;
  w.push_back(v.v);
  Polyhedron ne = normal_cone_at(epigraph(f), w);
  HRep horiz;
  horiz.dim = f.dim + 1;
  {
    QVec a = zeros(f.dim + 1);
    a[(size_t)f.dim] = 1;
    horiz.eqs.push_back(LinRow{std::move(a), Rat(0)});
  }
  std::vector<int> keep;
  for (int i = 0; i < f.dim; ++i) keep.push_back(i);
  Polyhedron horizon =
      project(intersect(ne, Polyhedron::from_h(std::move(horiz))), keep);
  if (set_relation(n, horizon) != SetRelation::Equal)
    throw internal_error("singular subdifferential readings disagree");
  return n;
}

Polyhedron sublevel_set(const PwlFunction& f, const Rat& alpha) {
  HRep h = f.domain.hrep();
  for (size_t i = 0; i < f.grads.size(); ++i)
    h.ineqs.push_back(LinRow{f.grads[i], alpha - f.offsets[i]});
  return Polyhedron::from_h(std::move(h));
}

Polyhedron sublevel_normal_cone(const PwlFunction& f, const QVec& z) {
  FnValue v = value(f, z);
  if (!v.finite)
    throw precondition_error("sublevel normal cone needs a domain point");
  LPResult m = minimize(f);
  if (m.status == LPStatus::Optimal && m.value >= v.v)
    throw qualification_error("no point below the level of the base point");
  Polyhedron hull = cone_hull(subdifferential(f, z));
  Polyhedron direct = normal_cone_at(sublevel_set(f, v.v), z);
  if (set_relation(hull, direct) != SetRelation::Equal)
    throw internal_error("sublevel normal cone readings disagree");
  return hull;
}

LPResult minimize(const PwlFunction& f) {
  Polyhedron epi = epigraph(f);
  QVec c = zeros(f.dim + 1);
  c[(size_t)f.dim] = 1;
  LPResult r = lp_minimize(c, epi.hrep().ineqs, epi.hrep().eqs);
  if (r.status == LPStatus::Infeasible)
    throw internal_error("epigraph of a proper function is empty");
  if (r.status == LPStatus::Optimal) r.x = vslice(r.x, 0, f.dim);
  return r;
}

PwlFunction partial_slice(const PwlFunction& f, std::vector<int> fixed,
                          const QVec& vals) {
  std::sort(fixed.begin(), fixed.end());
  fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
  if (fixed.size() != vals.size())
    throw input_error("fixed coordinate and value counts differ");
  for (int c : fixed)
    if (c < 0 || c >= f.dim) throw input_error("fixed coordinate out of range");
  std::vector<char> is_fixed((size_t)f.dim, 0);
  for (size_t i = 0; i < fixed.size(); ++i) is_fixed[(size_t)fixed[i]] = 1;
  std::vector<int> kept;
  for (int c = 0; c < f.dim; ++c)
    if (!is_fixed[(size_t)c]) kept.push_back(c);

  auto split = [&](const QVec& a, const Rat& b) {
    QVec ak = zeros((int)kept.size());
    for (size_t i = 0; i < kept.size(); ++i) ak[i] = a[(size_t)kept[i]];
    Rat shift = b;
    for (size_t i = 0; i < fixed.size(); ++i) {
      Rat t = a[(size_t)fixed[i]] * vals[i];
      shift -= t;
    }
    return std::make_pair(std::move(ak), std::move(shift));
  };

  std::vector<QVec> grads;
  QVec offsets;
  for (size_t i = 0; i < f.grads.size(); ++i) {
    QVec ak = zeros((int)kept.size());
    for (size_t j = 0; j < kept.size(); ++j) ak[j] = f.grads[i][(size_t)kept[j]];
    Rat off = f.offsets[i];
    for (size_t j = 0; j < fixed.size(); ++j) {
      Rat t = f.grads[i][(size_t)fixed[j]] * vals[j];
      off += t;
    }
    grads.push_back(std::move(ak));
    offsets.push_back(std::move(off));
  }
  HRep dom;
  dom.dim = (int)kept.size();
  for (const LinRow& r : f.domain.hrep().ineqs) {
    auto [ak, b] = split(r.a, r.b);
    dom.ineqs.push_back(LinRow{std::move(ak), std::move(b)});
  }
  for (const LinRow& r : f.domain.hrep().eqs) {
    auto [ak, b] = split(r.a, r.b);
    dom.eqs.push_back(LinRow{std::move(ak), std::move(b)});
  }
  Polyhedron domain = Polyhedron::from_h(std::move(dom));
  if (domain.is_empty())
    throw precondition_error("slice point outside the function domain");
  return make_pwl(std::move(grads), std::move(offsets), std::move(domain));
}

Polyhedron partial_subdifferential(const PwlFunction& f, std::vector<int> block,
                                   const QVec& z) {
  if ((int)z.size() != f.dim) throw input_error("point dimension mismatch");
  std::vector<char> in_block((size_t)f.dim, 0);
  for (int c : block) {
    if (c < 0 || c >= f.dim) throw input_error("block coordinate out of range");
    if (in_block[(size_t)c]) throw input_error("duplicate block coordinate");
    in_block[(size_t)c] = 1;
  }
  std::vector<int> fixed;
  QVec vals, zb;
  for (int c = 0; c < f.dim; ++c) {
    if (in_block[(size_t)c]) {
      zb.push_back(z[(size_t)c]);
    } else {
      fixed.push_back(c);
      vals.push_back(z[(size_t)c]);
    }
  }
  if (Polyhedron::from_h(fix_coords(f.domain.hrep(), fixed, vals)).is_empty())
    return Polyhedron::empty((int)zb.size());
  return subdifferential(partial_slice(f, std::move(fixed), vals), zb);
}

SumRule sum_subdifferential(const std::vector<PwlFunction>& fs, const QVec& z) {
  if (fs.empty()) throw input_error("sum of no functions");
  const int n = fs[0].dim;
  if ((int)z.size() != n) throw input_error("point dimension mismatch");
  Polyhedron common_dom = fs[0].domain;
  int not_interior = 0;
  bool member = true;
  for (const PwlFunction& f : fs) {
    if (f.dim != n) throw input_error("summand dimension mismatch");
    if (&f != &fs[0]) common_dom = intersect(common_dom, f.domain);
    if (!f.domain.contains(z))
      member = false;
    else if (!is_interior_point(f.domain.hrep(), z))
      ++not_interior;
  }

  SumRule r;
  r.qualified = member && not_interior <= 1;
  r.set = subdifferential(fs[0], z);
  for (size_t i = 1; i < fs.size(); ++i)
    r.set = minkowski_sum(r.set, subdifferential(fs[(size_t)i], z));

  if (common_dom.is_empty()) {
    if (!r.set.is_empty())
      throw internal_error("subgradient sum of a nowhere-finite sum");
    return r;
  }
  PwlFunction total = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) total = add(total, fs[(size_t)i]);
  Polyhedron whole = subdifferential(total, z);
  if (r.qualified) {
    if (set_relation(r.set, whole) != SetRelation::Equal)
      throw internal_error("sum rule failed under its qualification");
  } else if (!subset_of(r.set, whole)) {
    throw internal_error("subgradient sum escapes the sum's subdifferential");
  }
  return r;
}

Polyhedron affine_span_normal_cone(const std::vector<LinRow>& rows,
                                   const QVec& z) {
  const int n = (int)z.size();
  std::vector<QVec> vecs;
  HRep cap;
  cap.dim = n;
  for (const LinRow& r : rows) {
    if ((int)r.a.size() != n) throw input_error("hyperplane dimension mismatch");
    if (dot(r.a, z) != r.b)
      throw precondition_error("point is off one of the hyperplanes");
    vecs.push_back(r.a);
    cap.eqs.push_back(r);
  }
  Polyhedron span = span_hull(n, vecs);
  Polyhedron direct = normal_cone_at(Polyhedron::from_h(std::move(cap)), z);
  if (set_relation(span, direct) != SetRelation::Equal)
    throw internal_error("hyperplane span disagrees with the normal cone");
  return span;
}

FarkasResult farkas_entailment(const std::vector<QVec>& alphas,
                               const QVec& gamma) {
  const int n = (int)gamma.size();
  const int m = (int)alphas.size();
  for (const QVec& a : alphas)
    if ((int)a.size() != n) throw input_error("direction dimension mismatch");
  FarkasResult res;
  if (m == 0) {
    if (gamma == zeros(n)) {
      res.entailed = true;
      res.certificate = QVec{};
    } else {
      res.counterexample = gamma;
    }
    return res;
  }

  HRep comb;
  comb.dim = m;
  for (int i = 0; i < m; ++i) {
    QVec e = zeros(m);
    e[(size_t)i] = -1;
    comb.ineqs.push_back(LinRow{std::move(e), Rat(0)});
  }
  for (int t = 0; t < n; ++t) {
    QVec e = zeros(m);
    for (int i = 0; i < m; ++i) e[(size_t)i] = alphas[(size_t)i][(size_t)t];
    comb.eqs.push_back(LinRow{std::move(e), gamma[(size_t)t]});
  }
  Polyhedron cert = Polyhedron::from_h(std::move(comb));
  if (!cert.is_empty()) {
    res.entailed = true;
    res.certificate = lex_least_point(cert);
    return res;
  }

  HRep viol;
  viol.dim = n;
  for (const QVec& a : alphas) viol.ineqs.push_back(LinRow{a, Rat(0)});
  viol.ineqs.push_back(LinRow{vscale(Rat(-1), gamma), Rat(-1)});
  Polyhedron wit = Polyhedron::from_h(std::move(viol));
  if (wit.is_empty())
    throw internal_error("entailment refuted without a counterexample");
  res.counterexample = lex_least_point(wit);
  return res;
}

PwlFunction add(const PwlFunction& f, const PwlFunction& g) {
  if (f.dim != g.dim) throw input_error("dimension mismatch in function sum");
  Polyhedron dom = intersect(f.domain, g.domain);
  if (dom.is_empty()) throw precondition_error("function sum has empty domain");
  std::vector<QVec> grads;
  QVec offsets;
  for (size_t i = 0; i < f.grads.size(); ++i)
    for (size_t j = 0; j < g.grads.size(); ++j) {
      grads.push_back(vadd(f.grads[i], g.grads[j]));
      offsets.push_back(f.offsets[i] + g.offsets[j]);
    }
  return make_pwl(std::move(grads), std::move(offsets), std::move(dom));
}

PwlFunction scale(const Rat& t, const PwlFunction& f) {
  if (t < 0) throw input_error("negative scaling breaks convexity");
  if (t == 0) {
    std::vector<QVec> grads{zeros(f.dim)};
    QVec offsets{Rat(0)};
    return make_pwl(std::move(grads), std::move(offsets), f.domain);
  }
  std::vector<QVec> grads;
  QVec offsets;
  for (size_t i = 0; i < f.grads.size(); ++i) {
    grads.push_back(vscale(t, f.grads[i]));
    offsets.push_back(t * f.offsets[i]);
  }
  return make_pwl(std::move(grads), std::move(offsets), f.domain);
}

}  // namespace polystab
