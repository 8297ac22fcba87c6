#include "polystab/stability.hpp"

#include <cassert>

#include "anchor.hpp"
#include "lift_util.hpp"
#include "polystab/errors.hpp"

namespace polystab {

namespace {

// One lambda_i * dg_i summand in joint space: the conic hull of the
// subdifferential when active, its recession part alone when pinned at zero,
// which is the normal cone of dom g_i.
Polyhedron multiplier_term(const Program& p, const Anchor& a, int i) {
  if (a.is_active[(size_t)i]) return cone_hull(a.joint_dg[(size_t)i]);
  return normal_cone_at(p.g[(size_t)i].domain, a.zbar);
}

Polyhedron equality_span(const Program& p) {
  std::vector<QVec> rows;
  for (const LinRow& r : p.h) rows.push_back(r.a);
  return span_hull(p.nx + p.ny, rows);
}

// Joint-space set arithmetic: sum every term, slice the y part to zero,
// project onto x.
Polyhedron path_direct(const Program& p, const Anchor& a, bool singular) {
  const int nz = p.nx + p.ny;
  Polyhedron S = singular ? a.joint_dphi_inf : a.joint_dphi;
  for (size_t i = 0; i < p.g.size(); ++i)
    S = minkowski_sum(S, multiplier_term(p, a, (int)i));
  if (!p.h.empty()) S = minkowski_sum(S, equality_span(p));
  S = minkowski_sum(S, a.joint_nc);
  HRep ax;
  ax.dim = nz;
  for (int r = p.nx; r < nz; ++r) {
    QVec e = zeros(nz);
    e[(size_t)r] = 1;
    ax.eqs.push_back(LinRow{std::move(e), Rat(0)});
  }
  return project(intersect(S, Polyhedron::from_h(std::move(ax))), x_coords(p));
}

// One lifted projection: multipliers, subgradient blocks and stationarity
// rows in a single system, eliminated down to x*.
Polyhedron path_lifted(const Program& p, const Anchor& a, bool singular) {
  const int nx = p.nx;
  const int nz = p.nx + p.ny;
  const int m = (int)p.g.size();
  const int k = (int)p.h.size();

  HRep lift;
  lift.dim = nx + m + k + nz * (2 + m);
  int pos = nx + m + k;
  auto block = [&](int sz) {
    std::vector<int> v((size_t)sz);
    for (int j = 0; j < sz; ++j) v[(size_t)j] = pos++;
    return v;
  };
  std::vector<int> pblk = block(nz);
  std::vector<std::vector<int>> q;
  for (int i = 0; i < m; ++i) q.push_back(block(nz));
  std::vector<int> nblk = block(nz);
  assert(pos == lift.dim);

  const Polyhedron& obj = singular ? a.joint_dphi_inf : a.joint_dphi;
  lift::append_scattered(lift, obj.hrep(), pblk);
  for (int i = 0; i < m; ++i)
    lift::append_homogenized(lift, a.joint_dg[(size_t)i].hrep(), q[(size_t)i],
                             nx + i);
  lift::append_scattered(lift, a.joint_nc.hrep(), nblk);
  for (int i = 0; i < m; ++i) {
    if (a.is_active[(size_t)i]) continue;
    QVec e = zeros(lift.dim);
    e[(size_t)(nx + i)] = 1;
    lift.eqs.push_back(LinRow{std::move(e), Rat(0)});
  }
  for (int r = 0; r < nz; ++r) {
    QVec e = zeros(lift.dim);
    if (r < nx) e[(size_t)r] = -1;
    e[(size_t)pblk[(size_t)r]] = 1;
    for (int i = 0; i < m; ++i) e[(size_t)q[(size_t)i][(size_t)r]] = 1;
    e[(size_t)nblk[(size_t)r]] = 1;
    for (int j = 0; j < k; ++j)
      e[(size_t)(nx + m + j)] = p.h[(size_t)j].a[(size_t)r];
    lift.eqs.push_back(LinRow{std::move(e), Rat(0)});
  }
  std::vector<int> keep;
  for (int r = 0; r < nx; ++r) keep.push_back(r);
  return Polyhedron::from_h(fm_project(lift, keep));
}

// Hybrid: the multiplier terms are summed as sets first, the objective block
// stays symbolic and is eliminated by projection.
Polyhedron path_hybrid(const Program& p, const Anchor& a, bool singular) {
  const int nx = p.nx;
  const int nz = p.nx + p.ny;

  Polyhedron A = a.joint_nc;
  for (size_t i = 0; i < p.g.size(); ++i)
    A = minkowski_sum(A, multiplier_term(p, a, (int)i));
  if (!p.h.empty()) A = minkowski_sum(A, equality_span(p));

  HRep lift;
  lift.dim = nx + 2 * nz;
  std::vector<int> pblk, qblk;
  for (int j = 0; j < nz; ++j) pblk.push_back(nx + j);
  for (int j = 0; j < nz; ++j) qblk.push_back(nx + nz + j);

  const Polyhedron& obj = singular ? a.joint_dphi_inf : a.joint_dphi;
  lift::append_scattered(lift, obj.hrep(), pblk);
  lift::append_scattered(lift, A.hrep(), qblk);
  for (int r = 0; r < nz; ++r) {
    QVec e = zeros(lift.dim);
    if (r < nx) e[(size_t)r] = -1;
    e[(size_t)pblk[(size_t)r]] = 1;
    e[(size_t)qblk[(size_t)r]] = 1;
    lift.eqs.push_back(LinRow{std::move(e), Rat(0)});
  }
  std::vector<int> keep;
  for (int r = 0; r < nx; ++r) keep.push_back(r);
  return Polyhedron::from_h(fm_project(lift, keep));
}

Polyhedron mu_sub_checked(const Program& p, const Anchor& a, bool singular) {
  Polyhedron d = path_direct(p, a, singular);
  Polyhedron l = path_lifted(p, a, singular);
  Polyhedron h = path_hybrid(p, a, singular);
  if (set_relation(d, l) != SetRelation::Equal ||
      set_relation(d, h) != SetRelation::Equal)
    throw internal_error("value subdifferential paths disagree");
  return d;
}

Solution finite_solution(const Program& p, const QVec& xbar) {
  Solution s = solve(p, xbar);
  if (s.kind != Solution::Finite)
    throw precondition_error("value function is not finite at the parameter");
  return s;
}

QVec checked_minimizer(const Program& p, const QVec& xbar, const QVec& ybar) {
  Solution s = finite_solution(p, xbar);
  if (!s.argmin.contains(ybar))
    throw precondition_error("anchor point does not minimize the program");
  return ybar;
}

UpperEstimate checked_estimate(const Program& p, const QVec& xbar,
                               const QVec& ybar, const Polyhedron& sub,
                               const Polyhedron& multipliers, bool singular) {
  UpperEstimate e;
  e.set = singular
              ? singular_partial_x_lagrangian_union(p, xbar, ybar, multipliers)
              : partial_x_lagrangian_union(p, xbar, ybar, multipliers);
  SetRelation rel = set_relation(sub, e.set);
  if (rel != SetRelation::Equal && rel != SetRelation::ProperSubset)
    throw internal_error(singular
                             ? "singular subdifferential escapes the "
                               "multiplier estimate"
                             : "value subdifferential escapes the multiplier "
                               "estimate");
  e.strict = rel == SetRelation::ProperSubset;
  return e;
}

}  // namespace

Polyhedron mu_subdifferential(const Program& p, const QVec& xbar) {
  QVec y = finite_solution(p, xbar).ybar;
  return mu_sub_checked(p, make_anchor(p, xbar, y), false);
}

Polyhedron mu_subdifferential_at(const Program& p, const QVec& xbar,
                                 const QVec& ybar) {
  QVec y = checked_minimizer(p, xbar, ybar);
  return mu_sub_checked(p, make_anchor(p, xbar, y), false);
}

Polyhedron mu_subdifferential_per_subgradient(const Program& p,
                                              const QVec& xbar,
                                              const QVec& ybar) {
  QVec y = checked_minimizer(p, xbar, ybar);
  Anchor a = make_anchor(p, xbar, y);
  Polyhedron out = path_hybrid(p, a, false);
  if (set_relation(out, path_direct(p, a, false)) != SetRelation::Equal)
    throw internal_error("value subdifferential paths disagree");
  return out;
}

Polyhedron mu_singular_subdifferential(const Program& p, const QVec& xbar) {
  QVec y = finite_solution(p, xbar).ybar;
  return mu_sub_checked(p, make_anchor(p, xbar, y), true);
}

Polyhedron mu_singular_subdifferential_at(const Program& p, const QVec& xbar,
                                          const QVec& ybar) {
  QVec y = checked_minimizer(p, xbar, ybar);
  return mu_sub_checked(p, make_anchor(p, xbar, y), true);
}

UpperEstimate upper_estimate(const Program& p, const QVec& xbar,
                             const QVec& ybar) {
  QVec y = checked_minimizer(p, xbar, ybar);
  Polyhedron sub = mu_sub_checked(p, make_anchor(p, xbar, y), false);
  return checked_estimate(p, xbar, y, sub, lambda_set(p, xbar, y), false);
}

UpperEstimate singular_upper_estimate(const Program& p, const QVec& xbar,
                                      const QVec& ybar) {
  QVec y = checked_minimizer(p, xbar, ybar);
  Polyhedron sub = mu_sub_checked(p, make_anchor(p, xbar, y), true);
  return checked_estimate(p, xbar, y, sub, lambda_inf_set(p, xbar, y), true);
}

StabilityReport analyze_stability(const Program& p, const QVec& xbar) {
  Solution s = solve(p, xbar);
  StabilityReport r;
  r.status = s.kind;
  r.mu_dom = mu_domain(p);
  QVec down = zeros(p.nx + 1);
  down[(size_t)p.nx] = -1;
  r.mu_proper =
      !r.mu_dom.is_empty() && !value_epigraph(p).admits_ray(down);
  SlaterResult sl = slater_point(p);
  r.slater_ok = sl.ok;
  r.slater_reason = sl.reason;
  if (s.kind != Solution::Finite) return r;

  r.value = s.value;
  r.ybar = s.ybar;

  Anchor a = make_anchor(p, xbar, s.ybar);
  r.lambda0 = lambda0_set(p, xbar, s.ybar);
  r.lambda = lambda_set(p, xbar, s.ybar);
  r.lambda_inf = lambda_inf_set(p, xbar, s.ybar);

  r.sub = mu_sub_checked(p, a, false);
  r.sing = mu_sub_checked(p, a, true);
  UpperEstimate ue = checked_estimate(p, xbar, s.ybar, r.sub, r.lambda, false);
  r.sub_estimate = ue.set;
  r.sub_estimate_strict = ue.strict;
  UpperEstimate se =
      checked_estimate(p, xbar, s.ybar, r.sing, r.lambda_inf, true);
  r.sing_estimate = se.set;
  r.sing_estimate_strict = se.strict;

  r.singular_matches_domain_cone =
      set_relation(r.sing, normal_cone_at(r.mu_dom, xbar)) ==
      SetRelation::Equal;
  return r;
}

}  // namespace polystab
