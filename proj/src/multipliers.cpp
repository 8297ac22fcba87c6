#include "polystab/multipliers.hpp"

#include <cassert>

#include "anchor.hpp"
#include "lift_util.hpp"
#include "polystab/errors.hpp"

namespace polystab {

namespace {

std::vector<int> validate_anchor_point(const Program& p, const QVec& xbar,
                                       const QVec& ybar) {
  std::vector<int> act = active_indices(p, xbar, ybar);
  QVec z = vconcat(xbar, ybar);
  if (!p.C.contains(z)) throw precondition_error("anchor outside the base set");
  for (const LinRow& r : p.h)
    if (dot(r.a, z) != r.b)
      throw precondition_error("anchor violates an equality constraint");
  if (!value(p.phi, z).finite)
    throw precondition_error("objective is infinite at the anchor");
  return act;
}

}  // namespace

Anchor make_anchor(const Program& p, const QVec& xbar, const QVec& ybar) {
  Anchor a;
  a.active = validate_anchor_point(p, xbar, ybar);
  a.xbar = xbar;
  a.ybar = ybar;
  a.zbar = vconcat(xbar, ybar);
  a.is_active.assign(p.g.size(), 0);
  for (int i : a.active) a.is_active[(size_t)i] = 1;

  std::vector<int> xc = x_coords(p), yc = y_coords(p);
  a.joint_dphi = subdifferential(p.phi, a.zbar);
  a.joint_dphi_inf = singular_subdifferential(p.phi, a.zbar);
  a.joint_nc = normal_cone_at(p.C, a.zbar);
  for (const PwlFunction& gi : p.g)
    a.joint_dg.push_back(subdifferential(gi, a.zbar));

  PwlFunction phi_y = partial_slice(p.phi, xc, xbar);
  a.y_dphi = subdifferential(phi_y, ybar);
  a.y_dphi_inf = singular_subdifferential(phi_y, ybar);
  a.y_nc = normal_cone_at(Polyhedron::from_h(fix_coords(p.C.hrep(), xc, xbar)),
                          ybar);
  for (const PwlFunction& gi : p.g)
    a.y_dg.push_back(subdifferential(partial_slice(gi, xc, xbar), ybar));
  for (const LinRow& r : p.h) a.h_y.push_back(vslice(r.a, p.nx, p.nx + p.ny));

  PwlFunction phi_x = partial_slice(p.phi, yc, ybar);
  a.x_dphi = subdifferential(phi_x, xbar);
  a.x_dphi_inf = singular_subdifferential(phi_x, xbar);
  a.x_nc = normal_cone_at(Polyhedron::from_h(fix_coords(p.C.hrep(), yc, ybar)),
                          xbar);
  for (const PwlFunction& gi : p.g)
    a.x_dg.push_back(subdifferential(partial_slice(gi, yc, ybar), xbar));
  for (const LinRow& r : p.h) a.h_x.push_back(vslice(r.a, 0, p.nx));
  return a;
}

Polyhedron lambda0_set(const Program& p, const QVec& xbar, const QVec& ybar) {
  std::vector<int> act = validate_anchor_point(p, xbar, ybar);
  std::vector<char> is_active(p.g.size(), 0);
  for (int i : act) is_active[(size_t)i] = 1;
  const int m = (int)p.g.size();
  const int k = (int)p.h.size();
  HRep h;
  h.dim = m + k;
  for (int i = 0; i < m; ++i) {
    QVec a = zeros(m + k);
    if (is_active[(size_t)i]) {
      a[(size_t)i] = -1;
      h.ineqs.push_back(LinRow{std::move(a), Rat(0)});
    } else {
      a[(size_t)i] = 1;
      h.eqs.push_back(LinRow{std::move(a), Rat(0)});
    }
  }
  return Polyhedron::from_h(std::move(h));
}

namespace {

Polyhedron stationary_multipliers(const Program& p, const QVec& xbar,
                                  const QVec& ybar, bool singular) {
  Anchor a = make_anchor(p, xbar, ybar);
  const int m = (int)p.g.size();
  const int k = (int)p.h.size();
  const int ny = p.ny;

  HRep lift;
  lift.dim = m + k + ny * (2 + m);
  int pos = m + k;
  auto block = [&](int sz) {
    std::vector<int> v((size_t)sz);
    for (int j = 0; j < sz; ++j) v[(size_t)j] = pos++;
    return v;
  };
  std::vector<int> p0 = block(ny);
  std::vector<std::vector<int>> w;
  for (int i = 0; i < m; ++i) w.push_back(block(ny));
  std::vector<int> nblk = block(ny);
  assert(pos == lift.dim);

  const Polyhedron& obj = singular ? a.y_dphi_inf : a.y_dphi;
  lift::append_scattered(lift, obj.hrep(), p0);
  for (int i = 0; i < m; ++i) {
    assert(!a.y_dg[(size_t)i].is_empty());
    lift::append_homogenized(lift, a.y_dg[(size_t)i].hrep(), w[(size_t)i], i);
  }
  lift::append_scattered(lift, a.y_nc.hrep(), nblk);
  for (int i = 0; i < m; ++i) {
    if (a.is_active[(size_t)i]) continue;
    QVec e = zeros(lift.dim);
    e[(size_t)i] = 1;
    lift.eqs.push_back(LinRow{std::move(e), Rat(0)});
  }
  for (int r = 0; r < ny; ++r) {
    QVec e = zeros(lift.dim);
    e[(size_t)p0[(size_t)r]] = 1;
    for (int i = 0; i < m; ++i) e[(size_t)w[(size_t)i][(size_t)r]] = 1;
    e[(size_t)nblk[(size_t)r]] = 1;
    for (int j = 0; j < k; ++j) e[(size_t)(m + j)] = a.h_y[(size_t)j][(size_t)r];
    lift.eqs.push_back(LinRow{std::move(e), Rat(0)});
  }
  std::vector<int> keep;
  for (int j = 0; j < m + k; ++j) keep.push_back(j);
  return Polyhedron::from_h(fm_project(lift, keep));
}

Polyhedron x_lagrangian_union(const Program& p, const QVec& xbar,
                              const QVec& ybar, const Polyhedron& M,
                              bool singular) {
  const int m = (int)p.g.size();
  const int k = (int)p.h.size();
  const int nx = p.nx;
  if (M.dim() != m + k)
    throw input_error("multiplier set dimension mismatch");
  {
    HRep orth;
    orth.dim = m + k;
    for (int i = 0; i < m; ++i) {
      QVec a = zeros(m + k);
      a[(size_t)i] = -1;
      orth.ineqs.push_back(LinRow{std::move(a), Rat(0)});
    }
    if (!subset_of(M, Polyhedron::from_h(std::move(orth))))
      throw precondition_error("multiplier set leaves the nonnegative orthant");
  }
  if (M.is_empty()) return Polyhedron::empty(nx);
  Anchor a = make_anchor(p, xbar, ybar);

  HRep lift;
  lift.dim = nx + m + k + nx * (2 + m);
  int pos = nx + m + k;
  auto block = [&](int sz) {
    std::vector<int> v((size_t)sz);
    for (int j = 0; j < sz; ++j) v[(size_t)j] = pos++;
    return v;
  };
  std::vector<int> q0 = block(nx);
  std::vector<std::vector<int>> u;
  for (int i = 0; i < m; ++i) u.push_back(block(nx));
  std::vector<int> nblk = block(nx);
  assert(pos == lift.dim);

  std::vector<int> mul_pos;
  for (int j = 0; j < m + k; ++j) mul_pos.push_back(nx + j);
  lift::append_scattered(lift, M.hrep(), mul_pos);

  const Polyhedron& obj = singular ? a.x_dphi_inf : a.x_dphi;
  lift::append_scattered(lift, obj.hrep(), q0);
  for (int i = 0; i < m; ++i) {
    assert(!a.x_dg[(size_t)i].is_empty());
    lift::append_homogenized(lift, a.x_dg[(size_t)i].hrep(), u[(size_t)i],
                             nx + i);
  }
  lift::append_scattered(lift, a.x_nc.hrep(), nblk);

  for (int r = 0; r < nx; ++r) {
    QVec e = zeros(lift.dim);
    e[(size_t)r] = 1;
    e[(size_t)q0[(size_t)r]] = -1;
    for (int i = 0; i < m; ++i) e[(size_t)u[(size_t)i][(size_t)r]] = -1;
    e[(size_t)nblk[(size_t)r]] = -1;
    for (int j = 0; j < k; ++j) {
      Rat c = a.h_x[(size_t)j][(size_t)r];
      e[(size_t)(nx + m + j)] = -c;
    }
    lift.eqs.push_back(LinRow{std::move(e), Rat(0)});
  }
  std::vector<int> keep;
  for (int j = 0; j < nx; ++j) keep.push_back(j);
  return Polyhedron::from_h(fm_project(lift, keep));
}

// t * P for t > 0: scaled points, recession generators unchanged.
Polyhedron scale_points(const Rat& t, const Polyhedron& P) {
  VRep v = P.vrep();
  for (QVec& pt : v.points) pt = vscale(t, pt);
  return Polyhedron::from_v(std::move(v));
}

LagrangianSum joint_lagrangian_sum(const Program& p, const QVec& xbar,
                                   const QVec& ybar, const QVec& lam,
                                   const QVec& mu, bool singular) {
  const int m = (int)p.g.size();
  const int k = (int)p.h.size();
  if ((int)lam.size() != m) throw input_error("lambda has wrong length");
  if ((int)mu.size() != k) throw input_error("mu has wrong length");
  if (!lambda0_set(p, xbar, ybar).contains(vconcat(lam, mu)))
    throw precondition_error(
        "multipliers violate sign or complementarity at the anchor");
  Anchor a = make_anchor(p, xbar, ybar);

  LagrangianSum r;
  r.set = singular ? a.joint_dphi_inf : a.joint_dphi;
  for (int i = 0; i < m; ++i) {
    if (lam[(size_t)i] == 0)
      r.set = minkowski_sum(
          r.set, normal_cone_at(p.g[(size_t)i].domain, a.zbar));
    else
      r.set = minkowski_sum(
          r.set, scale_points(lam[(size_t)i], a.joint_dg[(size_t)i]));
  }
  if (k > 0) {
    QVec shift = zeros(p.nx + p.ny);
    for (int j = 0; j < k; ++j)
      shift = vadd(shift, vscale(mu[(size_t)j], p.h[(size_t)j].a));
    r.set = minkowski_sum(r.set, Polyhedron::singleton(std::move(shift)));
  }
  r.set = minkowski_sum(r.set, a.joint_nc);
  r.qualified = slater_point(p).ok;
  return r;
}

}  // namespace

LagrangianSum lagrangian_subdifferential(const Program& p, const QVec& xbar,
                                         const QVec& ybar, const QVec& lambda,
                                         const QVec& mu) {
  return joint_lagrangian_sum(p, xbar, ybar, lambda, mu, false);
}

LagrangianSum singular_lagrangian_subdifferential(const Program& p,
                                                  const QVec& xbar,
                                                  const QVec& ybar,
                                                  const QVec& lambda,
                                                  const QVec& mu) {
  return joint_lagrangian_sum(p, xbar, ybar, lambda, mu, true);
}

Polyhedron lambda_set(const Program& p, const QVec& xbar, const QVec& ybar) {
  return stationary_multipliers(p, xbar, ybar, false);
}

Polyhedron lambda_inf_set(const Program& p, const QVec& xbar, const QVec& ybar) {
  return stationary_multipliers(p, xbar, ybar, true);
}

Polyhedron partial_x_lagrangian_union(const Program& p, const QVec& xbar,
                                      const QVec& ybar,
                                      const Polyhedron& multipliers) {
  return x_lagrangian_union(p, xbar, ybar, multipliers, false);
}

Polyhedron singular_partial_x_lagrangian_union(const Program& p,
                                               const QVec& xbar,
                                               const QVec& ybar,
                                               const Polyhedron& multipliers) {
  return x_lagrangian_union(p, xbar, ybar, multipliers, true);
}

}  // namespace polystab
