#include "polystab/program.hpp"

#include <algorithm>
#include <cassert>

#include "polystab/errors.hpp"

namespace polystab {

namespace {

QVec y_part(const Program& p, const QVec& joint) {
  return vslice(joint, p.nx, p.nx + p.ny);
}

QVec joint_point(const QVec& xbar, const QVec& ybar) {
  return vconcat(xbar, ybar);
}

void check_xbar(const Program& p, const QVec& xbar) {
  if ((int)xbar.size() != p.nx) throw input_error("parameter dimension mismatch");
}

void check_point(const Program& p, const QVec& xbar, const QVec& ybar) {
  check_xbar(p, xbar);
  if ((int)ybar.size() != p.ny) throw input_error("decision dimension mismatch");
}

// phi(xbar, .) as a function of y
PwlFunction phi_slice(const Program& p, const QVec& xbar) {
  return partial_slice(p.phi, x_coords(p), xbar);
}

Polyhedron domain_slice(const PwlFunction& f, const Program& p, const QVec& xbar) {
  return Polyhedron::from_h(fix_coords(f.domain.hrep(), x_coords(p), xbar));
}

// rows of { y : g(xbar, y) <= level } including the domain of g
void append_sublevel_rows(HRep& dst, const PwlFunction& g, const Program& p,
                          const QVec& xbar, const Rat& level) {
  HRep dom = fix_coords(g.domain.hrep(), x_coords(p), xbar);
  dst.ineqs.insert(dst.ineqs.end(), dom.ineqs.begin(), dom.ineqs.end());
  dst.eqs.insert(dst.eqs.end(), dom.eqs.begin(), dom.eqs.end());
  for (size_t i = 0; i < g.grads.size(); ++i) {
    QVec ay = vslice(g.grads[i], p.nx, p.nx + p.ny);
    Rat shift = g.offsets[i];
    for (int j = 0; j < p.nx; ++j) {
      Rat t = g.grads[i][(size_t)j] * xbar[(size_t)j];
      shift += t;
    }
    dst.ineqs.push_back(LinRow{std::move(ay), level - shift});
  }
}

}  // namespace

Program make_program(int nx, int ny, PwlFunction phi, std::vector<PwlFunction> g,
                     std::vector<LinRow> h, Polyhedron C) {
  if (nx < 1 || ny < 1) throw input_error("both variable blocks must be nonempty");
  const int n = nx + ny;
  if (phi.dim != n) throw input_error("objective dimension mismatch");
  for (const PwlFunction& gi : g)
    if (gi.dim != n) throw input_error("constraint dimension mismatch");
  for (const LinRow& r : h)
    if ((int)r.a.size() != n) throw input_error("equality row dimension mismatch");
  if (C.dim() != n) throw input_error("base set dimension mismatch");
  if (C.is_empty()) throw input_error("base set is empty");
  Program p;
  p.nx = nx;
  p.ny = ny;
  p.phi = std::move(phi);
  p.g = std::move(g);
  p.h = std::move(h);
  p.C = std::move(C);
  return p;
}

std::vector<int> x_coords(const Program& p) {
  std::vector<int> c;
  for (int i = 0; i < p.nx; ++i) c.push_back(i);
  return c;
}

std::vector<int> y_coords(const Program& p) {
  std::vector<int> c;
  for (int i = 0; i < p.ny; ++i) c.push_back(p.nx + i);
  return c;
}

Polyhedron constraint_set(const Program& p, const QVec& xbar) {
  check_xbar(p, xbar);
  HRep rows = fix_coords(p.C.hrep(), x_coords(p), xbar);
  for (const PwlFunction& gi : p.g)
    append_sublevel_rows(rows, gi, p, xbar, Rat(0));
  for (const LinRow& r : p.h) {
    QVec ay = vslice(r.a, p.nx, p.nx + p.ny);
    Rat b = r.b;
    for (int j = 0; j < p.nx; ++j) {
      Rat t = r.a[(size_t)j] * xbar[(size_t)j];
      b -= t;
    }
    rows.eqs.push_back(LinRow{std::move(ay), std::move(b)});
  }
  return Polyhedron::from_h(std::move(rows));
}

Polyhedron value_region(const Program& p) {
  HRep rows = p.C.hrep();
  for (const PwlFunction& gi : p.g) {
    const HRep& dom = gi.domain.hrep();
    rows.ineqs.insert(rows.ineqs.end(), dom.ineqs.begin(), dom.ineqs.end());
    rows.eqs.insert(rows.eqs.end(), dom.eqs.begin(), dom.eqs.end());
    for (size_t i = 0; i < gi.grads.size(); ++i)
      rows.ineqs.push_back(LinRow{gi.grads[i], -gi.offsets[i]});
  }
  rows.eqs.insert(rows.eqs.end(), p.h.begin(), p.h.end());
  const HRep& dphi = p.phi.domain.hrep();
  rows.ineqs.insert(rows.ineqs.end(), dphi.ineqs.begin(), dphi.ineqs.end());
  rows.eqs.insert(rows.eqs.end(), dphi.eqs.begin(), dphi.eqs.end());
  return Polyhedron::from_h(std::move(rows));
}

Polyhedron mu_domain(const Program& p) {
  return project(value_region(p), x_coords(p));
}

Polyhedron value_epigraph(const Program& p) {
  const int nz = p.nx + p.ny;
  HRep sys = epigraph(p.phi).hrep();
  HRep vr = value_region(p).hrep();
  auto widen = [](const LinRow& r) {
    QVec a = r.a;
    a.push_back(Rat(0));
    return LinRow{std::move(a), r.b};
  };
  for (const LinRow& r : vr.ineqs) sys.ineqs.push_back(widen(r));
  for (const LinRow& r : vr.eqs) sys.eqs.push_back(widen(r));
  std::vector<int> keep = x_coords(p);
  keep.push_back(nz);
  return Polyhedron::from_h(fm_project(sys, keep));
}

std::vector<int> active_indices(const Program& p, const QVec& xbar,
                                const QVec& ybar) {
  check_point(p, xbar, ybar);
  QVec z = joint_point(xbar, ybar);
  std::vector<int> act;
  for (size_t i = 0; i < p.g.size(); ++i) {
    FnValue v = value(p.g[i], z);
    if (!v.finite || v.v > 0)
      throw precondition_error("point violates an inequality constraint");
    if (v.v == 0) act.push_back((int)i);
  }
  return act;
}

Solution solve(const Program& p, const QVec& xbar) {
  check_xbar(p, xbar);
  Solution out;
  Polyhedron g_set = constraint_set(p, xbar);
  if (g_set.is_empty()) return out;
  Polyhedron dom_phi = domain_slice(p.phi, p, xbar);
  Polyhedron feas = intersect(g_set, dom_phi);
  if (feas.is_empty()) return out;

  PwlFunction phis = phi_slice(p, xbar);
  HRep epi;
  epi.dim = p.ny + 1;
  for (const LinRow& r : feas.hrep().ineqs) {
    QVec a = r.a;
    a.push_back(0);
    epi.ineqs.push_back(LinRow{std::move(a), r.b});
  }
  for (const LinRow& r : feas.hrep().eqs) {
    QVec a = r.a;
    a.push_back(0);
    epi.eqs.push_back(LinRow{std::move(a), r.b});
  }
  for (size_t i = 0; i < phis.grads.size(); ++i) {
    QVec a = phis.grads[i];
    a.push_back(-1);
    epi.ineqs.push_back(LinRow{std::move(a), -phis.offsets[i]});
  }
  QVec c = zeros(p.ny + 1);
  c[(size_t)p.ny] = 1;
  LPResult r = lp_minimize(c, epi.ineqs, epi.eqs);
  if (r.status == LPStatus::Infeasible)
    throw internal_error("epigraph empty over a nonempty feasible slice");
  if (r.status == LPStatus::Unbounded) {
    out.kind = Solution::Unbounded;
    return out;
  }
  out.kind = Solution::Finite;
  out.value = r.value;
  out.argmin = intersect(feas, sublevel_set(phis, r.value));
  assert(!out.argmin.is_empty());
  out.ybar = lex_least_point(out.argmin);
  return out;
}

SlaterResult slater_point(const Program& p) {
  SlaterResult out;
  const int n = p.nx + p.ny;
  if (!p.C.hrep().eqs.empty()) {
    out.reason = "base set lies in a hyperplane";
    return out;
  }
  if (!p.phi.domain.hrep().eqs.empty()) {
    out.reason = "objective domain lies in a hyperplane";
    return out;
  }
  for (const PwlFunction& gi : p.g)
    if (!gi.domain.hrep().eqs.empty()) {
      out.reason = "a constraint domain lies in a hyperplane";
      return out;
    }

  std::vector<LinRow> ineqs, eqs;
  auto slack_row = [&](const LinRow& r) {
    QVec a = r.a;
    a.push_back(1);
    ineqs.push_back(LinRow{std::move(a), r.b});
  };
  for (const LinRow& r : p.C.hrep().ineqs) slack_row(r);
  for (const LinRow& r : p.phi.domain.hrep().ineqs) slack_row(r);
  for (const PwlFunction& gi : p.g) {
    for (const LinRow& r : gi.domain.hrep().ineqs) slack_row(r);
    for (size_t i = 0; i < gi.grads.size(); ++i)
      slack_row(LinRow{gi.grads[i], -gi.offsets[i]});
  }
  for (const LinRow& r : p.h) {
    QVec a = r.a;
    a.push_back(0);
    eqs.push_back(LinRow{std::move(a), r.b});
  }
  {
    QVec a = zeros(n + 1);
    a[(size_t)n] = 1;
    ineqs.push_back(LinRow{std::move(a), Rat(1)});
  }
  QVec c = zeros(n + 1);
  c[(size_t)n] = -1;
  LPResult r = lp_minimize(c, ineqs, eqs);
  if (r.status != LPStatus::Optimal || r.x[(size_t)n] <= 0) {
    out.reason = "no strictly feasible point";
    return out;
  }
  out.ok = true;
  out.x = vslice(r.x, 0, p.nx);
  out.y = vslice(r.x, p.nx, n);
  return out;
}

KktResult kkt_inclusion_check(const Program& p, const QVec& xbar,
                              const QVec& ybar) {
  check_point(p, xbar, ybar);
  QVec z = joint_point(xbar, ybar);
  if (!value(p.phi, z).finite)
    throw precondition_error("objective is infinite at the base point");
  Polyhedron g_set = constraint_set(p, xbar);
  if (!g_set.contains(ybar))
    throw precondition_error("base point violates the constraints");

  PwlFunction phis = phi_slice(p, xbar);
  Polyhedron dphi = subdifferential(phis, ybar);
  Polyhedron ncone = normal_cone_at(g_set, ybar);

  KktResult out;
  auto parts = minkowski_member(dphi, ncone, zeros(p.ny));
  out.holds = parts.has_value();
  if (parts) out.certificate = std::make_pair(parts->first, parts->second);

  auto strict_meets = [&](const Polyhedron& strict, const Polyhedron& exact) {
    if (!strict.hrep().eqs.empty()) return false;
    std::vector<LinRow> ineqs, eqs;
    for (const LinRow& r : strict.hrep().ineqs) {
      QVec a = r.a;
      a.push_back(1);
      ineqs.push_back(LinRow{std::move(a), r.b});
    }
    for (const LinRow& r : exact.hrep().ineqs) {
      QVec a = r.a;
      a.push_back(0);
      ineqs.push_back(LinRow{std::move(a), r.b});
    }
    for (const LinRow& r : exact.hrep().eqs) {
      QVec a = r.a;
      a.push_back(0);
      eqs.push_back(LinRow{std::move(a), r.b});
    }
    QVec a = zeros(p.ny + 1);
    a[(size_t)p.ny] = 1;
    ineqs.push_back(LinRow{std::move(a), Rat(1)});
    QVec c = zeros(p.ny + 1);
    c[(size_t)p.ny] = -1;
    LPResult r = lp_minimize(c, ineqs, eqs);
    return r.status == LPStatus::Optimal && r.x[(size_t)p.ny] > 0;
  };
  Polyhedron dom_phi = domain_slice(p.phi, p, xbar);
  out.interior_constraints = strict_meets(g_set, dom_phi);
  out.interior_objective = strict_meets(dom_phi, g_set);

  Solution sol = solve(p, xbar);
  out.optimal = sol.kind == Solution::Finite && sol.argmin.contains(ybar);
  if (out.holds && !out.optimal)
    throw internal_error("stationarity certificate at a non-minimizer");
  if ((out.interior_constraints || out.interior_objective) && out.optimal &&
      !out.holds)
    throw internal_error("qualified minimizer without a stationarity certificate");
  return out;
}

bool aubin_regularity(const Program& p, const QVec& xbar) {
  check_xbar(p, xbar);
  Polyhedron g_set = constraint_set(p, xbar);
  Polyhedron dom_phi = domain_slice(p.phi, p, xbar);
  if (g_set.is_empty() || dom_phi.is_empty()) return false;
  Polyhedron diff = minkowski_sum(dom_phi, negate(g_set));
  return is_interior_point(diff.hrep(), zeros(p.ny));
}

Polyhedron feasible_normal_cone(const Program& p, const QVec& xbar,
                                const QVec& ybar) {
  std::vector<int> act = active_indices(p, xbar, ybar);
  Polyhedron g_set = constraint_set(p, xbar);
  if (!g_set.contains(ybar))
    throw precondition_error("base point violates the constraints");

  // strict feasibility of the slice, with equality rows held exactly
  {
    std::vector<LinRow> ineqs, eqs;
    HRep cs = fix_coords(p.C.hrep(), x_coords(p), xbar);
    auto slack_row = [&](const LinRow& r) {
      QVec a = r.a;
      a.push_back(1);
      ineqs.push_back(LinRow{std::move(a), r.b});
    };
    auto exact_row = [&](const LinRow& r) {
      QVec a = r.a;
      a.push_back(0);
      eqs.push_back(LinRow{std::move(a), r.b});
    };
    for (const LinRow& r : cs.ineqs) slack_row(r);
    for (const LinRow& r : cs.eqs) exact_row(r);
    for (const PwlFunction& gi : p.g) {
      HRep rows;
      rows.dim = p.ny;
      append_sublevel_rows(rows, gi, p, xbar, Rat(0));
      for (const LinRow& r : rows.ineqs) slack_row(r);
      for (const LinRow& r : rows.eqs) exact_row(r);
    }
    for (const LinRow& r : p.h) {
      QVec ay = vslice(r.a, p.nx, p.nx + p.ny);
      Rat b = r.b;
      for (int j = 0; j < p.nx; ++j) {
        Rat t = r.a[(size_t)j] * xbar[(size_t)j];
        b -= t;
      }
      exact_row(LinRow{std::move(ay), std::move(b)});
    }
    QVec a = zeros(p.ny + 1);
    a[(size_t)p.ny] = 1;
    ineqs.push_back(LinRow{std::move(a), Rat(1)});
    QVec c = zeros(p.ny + 1);
    c[(size_t)p.ny] = -1;
    LPResult r = lp_minimize(c, ineqs, eqs);
    if (r.status != LPStatus::Optimal || r.x[(size_t)p.ny] <= 0)
      throw qualification_error("no strictly feasible point in the slice");
  }

  std::vector<char> is_active(p.g.size(), 0);
  for (int i : act) is_active[(size_t)i] = 1;
  std::vector<int> xc = x_coords(p);
  Polyhedron n =
      normal_cone_at(Polyhedron::from_h(fix_coords(p.C.hrep(), xc, xbar)), ybar);
  for (size_t i = 0; i < p.g.size(); ++i) {
    PwlFunction gs = partial_slice(p.g[i], xc, xbar);
    if (is_active[i])
      n = minkowski_sum(n, sublevel_normal_cone(gs, ybar));
    else
      n = minkowski_sum(n, normal_cone_at(gs.domain, ybar));
  }
  std::vector<QVec> spans;
  for (const LinRow& r : p.h) spans.push_back(vslice(r.a, p.nx, p.nx + p.ny));
  n = minkowski_sum(n, span_hull(p.ny, spans));

  if (set_relation(n, normal_cone_at(g_set, ybar)) != SetRelation::Equal)
    throw internal_error("constraint normal cone readings disagree");
  return n;
}

}  // namespace polystab
