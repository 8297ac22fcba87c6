#include "polystab/polyhedron.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <set>

#include "polystab/errors.hpp"

namespace polystab {

namespace {

struct Bits {
  std::vector<std::uint64_t> w;
  explicit Bits(int n) : w(((size_t)n + 63) / 64, 0) {}
  void set(int i) { w[(size_t)i >> 6] |= (std::uint64_t)1 << (i & 63); }
};

// (a & b) subset of c
bool meet_subset(const Bits& a, const Bits& b, const Bits& c) {
  for (size_t k = 0; k < a.w.size(); ++k)
    if ((a.w[k] & b.w[k]) & ~c.w[k]) return false;
  return true;
}

// Reduced row echelon form with pivot 1, pivot search restricted to the first
// pivot_limit coordinates (trailing coordinates act as augmented columns).
class Echelon {
 public:
  Echelon(int width, int pivot_limit) : width_(width), lim_(pivot_limit) {}

  QVec reduce(QVec v) const {
    for (size_t i = 0; i < rows_.size(); ++i) {
      Rat c = v[(size_t)piv_[i]];
      if (c != 0)
        for (int j = 0; j < width_; ++j) {
          Rat t = c * rows_[i][(size_t)j];
          v[(size_t)j] -= t;
        }
    }
    return v;
  }

  // Returns the pivot column, or -1 if v reduces to zero on [0, pivot_limit).
  int insert(const QVec& vin) {
    QVec v = reduce(vin);
    int p = -1;
    for (int j = 0; j < lim_; ++j)
      if (v[(size_t)j] != 0) {
        p = j;
        break;
      }
    if (p < 0) return -1;
    Rat pc = v[(size_t)p];
    for (int j = 0; j < width_; ++j) v[(size_t)j] /= pc;
    for (size_t i = 0; i < rows_.size(); ++i) {
      Rat c = rows_[i][(size_t)p];
      if (c != 0)
        for (int j = 0; j < width_; ++j) {
          Rat t = c * v[(size_t)j];
          rows_[i][(size_t)j] -= t;
        }
    }
    auto pos = std::upper_bound(piv_.begin(), piv_.end(), p) - piv_.begin();
    piv_.insert(piv_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return p;
  }

  const std::vector<QVec>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return piv_; }

  // Basis of { x : R x = 0 }; requires pivot_limit == width.
  std::vector<QVec> nullspace() const {
    assert(lim_ == width_);
    std::vector<char> isp((size_t)width_, 0);
    for (int p : piv_) isp[(size_t)p] = 1;
    std::vector<QVec> out;
    for (int f = 0; f < width_; ++f) {
      if (isp[(size_t)f]) continue;
      QVec x = zeros(width_);
      x[(size_t)f] = 1;
      for (size_t i = 0; i < rows_.size(); ++i) x[(size_t)piv_[i]] = -rows_[i][(size_t)f];
      out.push_back(primitive_signed(x));
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
  }

 private:
  int width_, lim_;
  std::vector<QVec> rows_;
  std::vector<int> piv_;
};

// Columns of -M^{-1}: the extreme rays of { w : M w <= 0 } for invertible M.
std::vector<QVec> initial_rays(const std::vector<QVec>& M, int q) {
  std::vector<QVec> aug((size_t)q, zeros(2 * q));
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) aug[(size_t)i][(size_t)j] = M[(size_t)i][(size_t)j];
    aug[(size_t)i][(size_t)(q + i)] = 1;
  }
  for (int col = 0; col < q; ++col) {
    int pr = -1;
    for (int r = col; r < q; ++r)
      if (aug[(size_t)r][(size_t)col] != 0) {
        pr = r;
        break;
      }
    assert(pr >= 0);
    std::swap(aug[(size_t)col], aug[(size_t)pr]);
    Rat pc = aug[(size_t)col][(size_t)col];
    for (int j = 0; j < 2 * q; ++j) aug[(size_t)col][(size_t)j] /= pc;
    for (int r = 0; r < q; ++r) {
      if (r == col) continue;
      Rat c = aug[(size_t)r][(size_t)col];
      if (c == 0) continue;
      for (int j = 0; j < 2 * q; ++j) {
        Rat t = c * aug[(size_t)col][(size_t)j];
        aug[(size_t)r][(size_t)j] -= t;
      }
    }
  }
  std::vector<QVec> rays;
  for (int j = 0; j < q; ++j) {
    QVec v = zeros(q);
    for (int i = 0; i < q; ++i) v[(size_t)i] = -aug[(size_t)i][(size_t)(q + j)];
    rays.push_back(primitive(v));
  }
  return rays;
}

struct ConeGens {
  std::vector<QVec> rays;
  std::vector<QVec> lines;
};

// Double description for { w : <n,w> <= 0, <e,w> = 0 }. The lineality space
// is split off first so the quotient cone is pointed and the combinatorial
// adjacency test is valid throughout the insertion loop.
ConeGens cone_dd(int dim, const std::vector<QVec>& ineq_in,
                 const std::vector<QVec>& eq_in) {
  ConeGens out;
  Echelon ech(dim, dim);
  for (const QVec& v : ineq_in)
    if (!all_zero(v)) ech.insert(v);
  for (const QVec& v : eq_in)
    if (!all_zero(v)) ech.insert(v);
  out.lines = ech.nullspace();
  const int q = (int)ech.rows().size();
  if (q == 0) return out;
  const std::vector<int>& P = ech.pivots();

  auto quot = [&](const QVec& a) {
    QVec r = zeros(q);
    for (int i = 0; i < q; ++i) r[(size_t)i] = a[(size_t)P[(size_t)i]];
    assert(!all_zero(r));
    return primitive(r);
  };

  std::vector<QVec> rows;
  std::set<QVec> seen;
  auto push_row = [&](QVec r) {
    if (seen.insert(r).second) rows.push_back(std::move(r));
  };
  for (const QVec& v : ineq_in)
    if (!all_zero(v)) push_row(quot(v));
  for (const QVec& v : eq_in)
    if (!all_zero(v)) {
      QVec r = quot(v);
      push_row(vneg(r));
      push_row(std::move(r));
    }

  const int n = (int)rows.size();
  Echelon be(q, q);
  std::vector<int> procd;
  std::vector<char> in_basis((size_t)n, 0);
  std::vector<QVec> M;
  for (int i = 0; i < n && (int)procd.size() < q; ++i)
    if (be.insert(rows[(size_t)i]) >= 0) {
      procd.push_back(i);
      in_basis[(size_t)i] = 1;
      M.push_back(rows[(size_t)i]);
    }
  assert((int)procd.size() == q);

  struct DDRay {
    QVec v;
    Bits z;
  };
  auto ray_bits = [&](const QVec& v) {
    Bits z(n);
    for (int k : procd)
      if (dot(rows[(size_t)k], v) == 0) z.set(k);
    return z;
  };
  std::vector<DDRay> cur;
  for (QVec& v : initial_rays(M, q)) {
    Bits z = ray_bits(v);
    cur.push_back(DDRay{std::move(v), std::move(z)});
  }

  for (int idx = 0; idx < n; ++idx) {
    if (in_basis[(size_t)idx]) continue;
    const QVec& a = rows[(size_t)idx];
    std::vector<Rat> sv(cur.size());
    std::vector<int> pos, neg;
    for (size_t i = 0; i < cur.size(); ++i) {
      sv[i] = dot(a, cur[i].v);
      if (sv[i] > 0)
        pos.push_back((int)i);
      else if (sv[i] < 0)
        neg.push_back((int)i);
    }
    if (pos.empty()) {
      for (size_t i = 0; i < cur.size(); ++i)
        if (sv[i] == 0) cur[i].z.set(idx);
      procd.push_back(idx);
      continue;
    }
    procd.push_back(idx);
    std::vector<DDRay> born;
    std::set<QVec> fresh;
    for (int ip : pos)
      for (int in : neg) {
        bool adjacent = true;
        for (size_t k = 0; k < cur.size(); ++k) {
          if ((int)k == ip || (int)k == in) continue;
          if (meet_subset(cur[(size_t)ip].z, cur[(size_t)in].z, cur[k].z)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        Rat wn = -sv[(size_t)in];
        QVec v = vadd(vscale(sv[(size_t)ip], cur[(size_t)in].v),
                      vscale(wn, cur[(size_t)ip].v));
        assert(!all_zero(v));
        v = primitive(v);
        if (!fresh.insert(v).second) continue;
        assert(dot(a, v) == 0);
        Bits z = ray_bits(v);
        born.push_back(DDRay{std::move(v), std::move(z)});
      }
    std::vector<DDRay> next;
    for (size_t i = 0; i < cur.size(); ++i) {
      if (sv[i] > 0) continue;
      DDRay r = std::move(cur[i]);
      if (sv[i] == 0) r.z.set(idx);
      next.push_back(std::move(r));
    }
    for (DDRay& r : born) next.push_back(std::move(r));
    cur = std::move(next);
  }

  for (DDRay& r : cur) {
    QVec amb = zeros(dim);
    for (int i = 0; i < q; ++i) amb[(size_t)P[(size_t)i]] = r.v[(size_t)i];
    out.rays.push_back(std::move(amb));
  }
  std::sort(out.rays.begin(), out.rays.end(), lex_less);
  return out;
}

HRep canonical_empty_h(int dim) {
  HRep h;
  h.dim = dim;
  h.ineqs.push_back(LinRow{zeros(dim), Rat(-1)});
  return h;
}

bool is_empty_marker(const HRep& h) {
  return h.eqs.empty() && h.ineqs.size() == 1 && all_zero(h.ineqs[0].a) &&
         h.ineqs[0].b < 0;
}

}  // namespace

VRep to_vrep(const HRep& h) {
  const int d = h.dim;
  std::vector<QVec> ineq, eq;
  for (const LinRow& r : h.ineqs) {
    QVec v = r.a;
    v.push_back(-r.b);
    if (!all_zero(v)) ineq.push_back(std::move(v));
  }
  for (const LinRow& r : h.eqs) {
    QVec v = r.a;
    v.push_back(-r.b);
    if (!all_zero(v)) eq.push_back(std::move(v));
  }
  {
    QVec t = zeros(d + 1);
    t[(size_t)d] = -1;
    ineq.push_back(std::move(t));
  }
  ConeGens cg = cone_dd(d + 1, ineq, eq);

  VRep out;
  out.dim = d;
  for (const QVec& l : cg.lines) {
    assert(l[(size_t)d] == 0);
    out.lines.push_back(vslice(l, 0, d));
  }
  for (const QVec& r : cg.rays) {
    Rat t = r[(size_t)d];
    assert(t >= 0);
    if (t > 0) {
      QVec p = zeros(d);
      for (int i = 0; i < d; ++i) p[(size_t)i] = r[(size_t)i] / t;
      out.points.push_back(std::move(p));
    } else {
      out.rays.push_back(vslice(r, 0, d));
    }
  }
  if (out.points.empty()) {
    out.rays.clear();
    out.lines.clear();
    return out;
  }
  std::sort(out.points.begin(), out.points.end(), lex_less);
  std::sort(out.rays.begin(), out.rays.end(), lex_less);
  std::sort(out.lines.begin(), out.lines.end(), lex_less);
  return out;
}

HRep to_hrep(const VRep& v) {
  const int d = v.dim;
  if (v.points.empty()) return canonical_empty_h(d);
  std::vector<QVec> ineq, eq;
  for (const QVec& p : v.points) {
    QVec r = p;
    r.push_back(1);
    ineq.push_back(std::move(r));
  }
  for (const QVec& r0 : v.rays) {
    if (all_zero(r0)) continue;
    QVec r = r0;
    r.push_back(0);
    ineq.push_back(std::move(r));
  }
  for (const QVec& l0 : v.lines) {
    if (all_zero(l0)) continue;
    QVec l = l0;
    l.push_back(0);
    eq.push_back(std::move(l));
  }
  ConeGens cg = cone_dd(d + 1, ineq, eq);

  HRep out;
  out.dim = d;
  for (const QVec& s : cg.rays) {
    QVec a = vslice(s, 0, d);
    Rat c = s[(size_t)d];
    if (all_zero(a)) {
      assert(c < 0);
      continue;
    }
    out.ineqs.push_back(LinRow{std::move(a), -c});
  }
  for (const QVec& m : cg.lines) {
    QVec a = vslice(m, 0, d);
    Rat c = m[(size_t)d];
    assert(!all_zero(a));
    out.eqs.push_back(LinRow{std::move(a), -c});
  }
  return out;
}

bool hrep_contains(const HRep& h, const QVec& z) {
  if ((int)z.size() != h.dim) throw input_error("point dimension mismatch");
  for (const LinRow& r : h.ineqs)
    if (dot(r.a, z) > r.b) return false;
  for (const LinRow& r : h.eqs)
    if (dot(r.a, z) != r.b) return false;
  return true;
}

bool hrep_admits_ray(const HRep& h, const QVec& r) {
  if ((int)r.size() != h.dim) throw input_error("ray dimension mismatch");
  for (const LinRow& row : h.ineqs)
    if (dot(row.a, r) > 0) return false;
  for (const LinRow& row : h.eqs)
    if (dot(row.a, r) != 0) return false;
  return true;
}

HRep prune_rows(HRep h) {
  const int d = h.dim;

  Echelon ech(d + 1, d);
  for (const LinRow& r : h.eqs) {
    QVec v = r.a;
    v.push_back(r.b);
    QVec red = ech.reduce(std::move(v));
    int fz = first_nonzero(red);
    if (fz < 0) continue;
    if (fz == d) return canonical_empty_h(d);
    ech.insert(red);
  }
  HRep out;
  out.dim = d;
  for (const QVec& row : ech.rows()) {
    QVec v = primitive_signed(row);
    out.eqs.push_back(LinRow{vslice(v, 0, d), v[(size_t)d]});
  }

  std::set<QVec> seen;
  for (const LinRow& r : h.ineqs) {
    QVec v = r.a;
    v.push_back(r.b);
    v = ech.reduce(std::move(v));
    if (all_zero(vslice(v, 0, d))) {
      if (v[(size_t)d] < 0) return canonical_empty_h(d);
      continue;
    }
    v = primitive(v);
    if (!seen.insert(v).second) continue;
    out.ineqs.push_back(LinRow{vslice(v, 0, d), v[(size_t)d]});
  }

  if (!lp_feasible_point(d, out.ineqs, out.eqs)) return canonical_empty_h(d);

  std::vector<char> alive(out.ineqs.size(), 1);
  for (size_t i = 0; i < out.ineqs.size(); ++i) {
    std::vector<LinRow> others;
    for (size_t j = 0; j < out.ineqs.size(); ++j)
      if (j != i && alive[j]) others.push_back(out.ineqs[j]);
    LPResult r = lp_maximize(out.ineqs[i].a, others, out.eqs);
    assert(r.status != LPStatus::Infeasible);
    if (r.status == LPStatus::Optimal && r.value <= out.ineqs[i].b) alive[i] = 0;
  }
  std::vector<LinRow> kept;
  for (size_t i = 0; i < out.ineqs.size(); ++i)
    if (alive[i]) kept.push_back(std::move(out.ineqs[i]));
  out.ineqs = std::move(kept);
  return out;
}

HRep fm_project(const HRep& h, std::vector<int> keep) {
  const int d = h.dim;
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (int c : keep)
    if (c < 0 || c >= d) throw input_error("projection coordinate out of range");
  const int kd = (int)keep.size();

  std::vector<char> is_kept((size_t)d, 0);
  for (int c : keep) is_kept[(size_t)c] = 1;
  std::vector<int> elim;
  for (int c = 0; c < d; ++c)
    if (!is_kept[(size_t)c]) elim.push_back(c);

  HRep cur = prune_rows(h);
  auto compress = [&](const HRep& full) {
    HRep out;
    out.dim = kd;
    for (const LinRow& r : full.ineqs) {
      QVec a = zeros(kd);
      for (int i = 0; i < kd; ++i) a[(size_t)i] = r.a[(size_t)keep[(size_t)i]];
      out.ineqs.push_back(LinRow{std::move(a), r.b});
    }
    for (const LinRow& r : full.eqs) {
      QVec a = zeros(kd);
      for (int i = 0; i < kd; ++i) a[(size_t)i] = r.a[(size_t)keep[(size_t)i]];
      out.eqs.push_back(LinRow{std::move(a), r.b});
    }
    return out;
  };

  while (!elim.empty()) {
    if (is_empty_marker(cur)) return canonical_empty_h(kd);

    int var = -1;
    size_t eqrow = 0;
    for (size_t vi = 0; vi < elim.size() && var < 0; ++vi)
      for (size_t e = 0; e < cur.eqs.size(); ++e)
        if (cur.eqs[e].a[(size_t)elim[vi]] != 0) {
          var = elim[vi];
          eqrow = e;
          break;
        }

    if (var >= 0) {
      LinRow piv = cur.eqs[eqrow];
      cur.eqs.erase(cur.eqs.begin() + (long)eqrow);
      Rat pc = piv.a[(size_t)var];
      auto substitute = [&](LinRow& r) {
        Rat c = r.a[(size_t)var];
        if (c == 0) return;
        Rat f = c / pc;
        for (size_t j = 0; j < r.a.size(); ++j) {
          Rat t = f * piv.a[j];
          r.a[j] -= t;
        }
        Rat tb = f * piv.b;
        r.b -= tb;
      };
      for (LinRow& r : cur.ineqs) substitute(r);
      for (LinRow& r : cur.eqs) substitute(r);
    } else {
      int best = -1;
      long best_score = 0;
      for (int v : elim) {
        long p = 0, n = 0;
        for (const LinRow& r : cur.ineqs) {
          if (r.a[(size_t)v] > 0)
            ++p;
          else if (r.a[(size_t)v] < 0)
            ++n;
        }
        long score = p * n - (p + n);
        if (best < 0 || score < best_score) {
          best = v;
          best_score = score;
        }
      }
      var = best;
      std::vector<LinRow> next;
      std::vector<size_t> pos, neg;
      for (size_t i = 0; i < cur.ineqs.size(); ++i) {
        Rat c = cur.ineqs[i].a[(size_t)var];
        if (c == 0)
          next.push_back(cur.ineqs[i]);
        else if (c > 0)
          pos.push_back(i);
        else
          neg.push_back(i);
      }
      for (size_t ip : pos)
        for (size_t in : neg) {
          const LinRow& rp = cur.ineqs[ip];
          const LinRow& rn = cur.ineqs[in];
          Rat cp = rp.a[(size_t)var];
          Rat cn = -rn.a[(size_t)var];
          LinRow nr;
          nr.a = vadd(vscale(cp, rn.a), vscale(cn, rp.a));
          Rat b1 = cp * rn.b;
          Rat b2 = cn * rp.b;
          nr.b = b1 + b2;
          assert(nr.a[(size_t)var] == 0);
          next.push_back(std::move(nr));
        }
      cur.ineqs = std::move(next);
    }
    elim.erase(std::find(elim.begin(), elim.end(), var));
    cur = prune_rows(std::move(cur));
  }

  if (is_empty_marker(cur)) return canonical_empty_h(kd);
  for (const LinRow& r : cur.ineqs)
    for (int c = 0; c < d; ++c) assert(is_kept[(size_t)c] || r.a[(size_t)c] == 0);
  for (const LinRow& r : cur.eqs)
    for (int c = 0; c < d; ++c) assert(is_kept[(size_t)c] || r.a[(size_t)c] == 0);
  return compress(cur);
}

HRep fix_coords(const HRep& h, std::vector<int> fixed, const QVec& vals) {
  std::sort(fixed.begin(), fixed.end());
  fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
  if (fixed.size() != vals.size())
    throw input_error("fixed coordinate and value counts differ");
  for (int c : fixed)
    if (c < 0 || c >= h.dim) throw input_error("fixed coordinate out of range");
  std::vector<char> is_fixed((size_t)h.dim, 0);
  for (int c : fixed) is_fixed[(size_t)c] = 1;
  std::vector<int> kept;
  for (int c = 0; c < h.dim; ++c)
    if (!is_fixed[(size_t)c]) kept.push_back(c);

  auto slice = [&](const LinRow& r) {
    QVec a = zeros((int)kept.size());
    for (size_t i = 0; i < kept.size(); ++i) a[i] = r.a[(size_t)kept[i]];
    Rat b = r.b;
    for (size_t i = 0; i < fixed.size(); ++i) {
      Rat t = r.a[(size_t)fixed[i]] * vals[i];
      b -= t;
    }
    return LinRow{std::move(a), std::move(b)};
  };
  HRep out;
  out.dim = (int)kept.size();
  for (const LinRow& r : h.ineqs) out.ineqs.push_back(slice(r));
  for (const LinRow& r : h.eqs) out.eqs.push_back(slice(r));
  return out;
}

std::optional<QVec> interior_point(const HRep& h) {
  const int d = h.dim;
  for (const LinRow& r : h.eqs) {
    if (!all_zero(r.a)) return std::nullopt;
    if (r.b != 0) return std::nullopt;
  }
  std::vector<LinRow> rows;
  for (const LinRow& r : h.ineqs) {
    QVec a = r.a;
    a.push_back(1);
    rows.push_back(LinRow{std::move(a), r.b});
  }
  {
    QVec a = zeros(d + 1);
    a[(size_t)d] = 1;
    rows.push_back(LinRow{std::move(a), Rat(1)});
  }
  QVec c = zeros(d + 1);
  c[(size_t)d] = -1;
  LPResult r = lp_minimize(c, rows, {});
  assert(r.status == LPStatus::Optimal);
  Rat s = r.x[(size_t)d];
  if (s <= 0) return std::nullopt;
  return vslice(r.x, 0, d);
}

bool is_interior_point(const HRep& h, const QVec& z) {
  if ((int)z.size() != h.dim) throw input_error("point dimension mismatch");
  for (const LinRow& r : h.eqs) {
    if (!all_zero(r.a)) return false;
    if (r.b != 0) return false;
  }
  for (const LinRow& r : h.ineqs) {
    if (all_zero(r.a)) {
      if (r.b < 0) return false;
      continue;
    }
    if (dot(r.a, z) >= r.b) return false;
  }
  return true;
}

Polyhedron Polyhedron::from_h(HRep h) {
  Polyhedron p;
  p.v_ = to_vrep(h);
  p.h_ = p.v_.points.empty() ? canonical_empty_h(h.dim) : to_hrep(p.v_);
  return p;
}

Polyhedron Polyhedron::from_v(VRep v) {
  Polyhedron p;
  p.h_ = to_hrep(v);
  p.v_ = to_vrep(p.h_);
  assert(p.v_.points.empty() == v.points.empty());
  return p;
}

Polyhedron Polyhedron::full(int dim) { return from_h(HRep{dim, {}, {}}); }

Polyhedron Polyhedron::empty(int dim) { return from_h(canonical_empty_h(dim)); }

Polyhedron Polyhedron::singleton(QVec z) {
  VRep v;
  v.dim = (int)z.size();
  v.points.push_back(std::move(z));
  return from_v(std::move(v));
}

bool Polyhedron::contains(const QVec& z) const { return hrep_contains(h_, z); }

bool Polyhedron::admits_ray(const QVec& r) const {
  if (is_empty()) return false;
  return hrep_admits_ray(h_, r);
}

Polyhedron minkowski_sum(const Polyhedron& p, const Polyhedron& q) {
  if (p.dim() != q.dim()) throw input_error("dimension mismatch in sum");
  if (p.is_empty() || q.is_empty()) return Polyhedron::empty(p.dim());
  VRep v;
  v.dim = p.dim();
  for (const QVec& a : p.vrep().points)
    for (const QVec& b : q.vrep().points) v.points.push_back(vadd(a, b));
  v.rays = p.vrep().rays;
  v.rays.insert(v.rays.end(), q.vrep().rays.begin(), q.vrep().rays.end());
  v.lines = p.vrep().lines;
  v.lines.insert(v.lines.end(), q.vrep().lines.begin(), q.vrep().lines.end());
  return Polyhedron::from_v(std::move(v));
}

Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
  if (p.dim() != q.dim()) throw input_error("dimension mismatch in intersection");
  HRep h;
  h.dim = p.dim();
  h.ineqs = p.hrep().ineqs;
  h.ineqs.insert(h.ineqs.end(), q.hrep().ineqs.begin(), q.hrep().ineqs.end());
  h.eqs = p.hrep().eqs;
  h.eqs.insert(h.eqs.end(), q.hrep().eqs.begin(), q.hrep().eqs.end());
  return Polyhedron::from_h(prune_rows(std::move(h)));
}

Polyhedron project(const Polyhedron& p, std::vector<int> coords) {
  return Polyhedron::from_h(fm_project(p.hrep(), std::move(coords)));
}

Polyhedron negate(const Polyhedron& p) {
  VRep v = p.vrep();
  for (QVec& x : v.points) x = vneg(x);
  for (QVec& x : v.rays) x = vneg(x);
  for (QVec& x : v.lines) x = vneg(x);
  return Polyhedron::from_v(std::move(v));
}

Polyhedron normal_cone_at(const Polyhedron& p, const QVec& z) {
  if (!p.contains(z)) throw precondition_error("normal cone base point outside set");
  VRep v;
  v.dim = p.dim();
  v.points.push_back(zeros(p.dim()));
  for (const LinRow& r : p.hrep().ineqs)
    if (!all_zero(r.a) && dot(r.a, z) == r.b) v.rays.push_back(r.a);
  for (const LinRow& r : p.hrep().eqs) v.lines.push_back(r.a);
  return Polyhedron::from_v(std::move(v));
}

Polyhedron normal_cone_intersection_rule(const std::vector<Polyhedron>& sets,
                                         const QVec& z) {
  if (sets.empty()) throw input_error("empty intersection list");
  const int d = sets[0].dim();
  for (const Polyhedron& s : sets) {
    if (s.dim() != d) throw input_error("dimension mismatch in intersection rule");
    if (!s.contains(z))
      throw precondition_error("intersection rule base point outside a set");
  }
  if (sets.size() > 1) {
    std::vector<LinRow> rows;
    for (const LinRow& r : sets[0].hrep().ineqs) {
      QVec a = r.a;
      a.push_back(0);
      rows.push_back(LinRow{std::move(a), r.b});
    }
    std::vector<LinRow> eqs;
    for (const LinRow& r : sets[0].hrep().eqs) {
      QVec a = r.a;
      a.push_back(0);
      eqs.push_back(LinRow{std::move(a), r.b});
    }
    for (size_t i = 1; i < sets.size(); ++i) {
      if (!sets[i].hrep().eqs.empty())
        throw qualification_error(
            "intersection rule needs interior points past the first set");
      for (const LinRow& r : sets[i].hrep().ineqs) {
        QVec a = r.a;
        a.push_back(1);
        rows.push_back(LinRow{std::move(a), r.b});
      }
    }
    {
      QVec a = zeros(d + 1);
      a[(size_t)d] = 1;
      rows.push_back(LinRow{std::move(a), Rat(1)});
    }
    QVec c = zeros(d + 1);
    c[(size_t)d] = -1;
    LPResult r = lp_minimize(c, rows, eqs);
    if (r.status != LPStatus::Optimal || r.x[(size_t)d] <= 0)
      throw qualification_error(
          "intersection rule needs interior points past the first set");
  }
  Polyhedron sum = normal_cone_at(sets[0], z);
  Polyhedron meet = sets[0];
  for (size_t i = 1; i < sets.size(); ++i) {
    sum = minkowski_sum(sum, normal_cone_at(sets[i], z));
    meet = intersect(meet, sets[i]);
  }
  Polyhedron direct = normal_cone_at(meet, z);
  if (set_relation(sum, direct) != SetRelation::Equal)
    throw internal_error("normal cone sum rule mismatch");
  return sum;
}

Polyhedron cone_hull(const Polyhedron& p) {
  VRep v;
  v.dim = p.dim();
  v.points.push_back(zeros(p.dim()));
  if (!p.is_empty()) {
    for (const QVec& x : p.vrep().points)
      if (!all_zero(x)) v.rays.push_back(x);
    v.rays.insert(v.rays.end(), p.vrep().rays.begin(), p.vrep().rays.end());
    v.lines = p.vrep().lines;
  }
  return Polyhedron::from_v(std::move(v));
}

Polyhedron span_hull(int dim, const std::vector<QVec>& vectors) {
  VRep v;
  v.dim = dim;
  v.points.push_back(zeros(dim));
  for (const QVec& x : vectors) {
    if ((int)x.size() != dim) throw input_error("dimension mismatch in span");
    if (!all_zero(x)) v.lines.push_back(x);
  }
  return Polyhedron::from_v(std::move(v));
}

Polyhedron span_hull(const Polyhedron& p) {
  std::vector<QVec> gens;
  if (!p.is_empty()) {
    for (const QVec& x : p.vrep().points) gens.push_back(x);
    for (const QVec& x : p.vrep().rays) gens.push_back(x);
    for (const QVec& x : p.vrep().lines) gens.push_back(x);
  }
  return span_hull(p.dim(), gens);
}

bool subset_of(const Polyhedron& p, const Polyhedron& q) {
  if (p.dim() != q.dim()) throw input_error("dimension mismatch in comparison");
  if (p.is_empty()) return true;
  if (q.is_empty()) return false;
  for (const QVec& x : p.vrep().points)
    if (!hrep_contains(q.hrep(), x)) return false;
  for (const QVec& r : p.vrep().rays)
    if (!hrep_admits_ray(q.hrep(), r)) return false;
  for (const QVec& l : p.vrep().lines) {
    if (!hrep_admits_ray(q.hrep(), l)) return false;
    if (!hrep_admits_ray(q.hrep(), vneg(l))) return false;
  }
  return true;
}

SetRelation set_relation(const Polyhedron& p, const Polyhedron& q) {
  bool pq = subset_of(p, q);
  bool qp = subset_of(q, p);
  if (pq && qp) return SetRelation::Equal;
  if (pq) return SetRelation::ProperSubset;
  if (qp) return SetRelation::ProperSuperset;
  return SetRelation::Incomparable;
}

SupportValue support(const Polyhedron& p, const QVec& d) {
  if ((int)d.size() != p.dim()) throw input_error("direction dimension mismatch");
  SupportValue out;
  if (p.is_empty()) {
    out.kind = SupportValue::MinusInf;
    return out;
  }
  LPResult r = lp_maximize(d, p.hrep().ineqs, p.hrep().eqs);
  assert(r.status != LPStatus::Infeasible);
  if (r.status == LPStatus::Unbounded) {
    out.kind = SupportValue::PlusInf;
    return out;
  }
  out.kind = SupportValue::Finite;
  out.value = r.value;
  return out;
}

std::optional<std::pair<QVec, QVec>> minkowski_member(const Polyhedron& p,
                                                      const Polyhedron& q,
                                                      const QVec& z) {
  const int d = p.dim();
  if (q.dim() != d || (int)z.size() != d)
    throw input_error("dimension mismatch in sum membership");
  if (p.is_empty() || q.is_empty()) return std::nullopt;
  std::vector<LinRow> ineqs, eqs;
  auto widen = [&](const LinRow& r, int offset) {
    QVec a = zeros(2 * d);
    for (int j = 0; j < d; ++j) a[(size_t)(offset + j)] = r.a[(size_t)j];
    return LinRow{std::move(a), r.b};
  };
  for (const LinRow& r : p.hrep().ineqs) ineqs.push_back(widen(r, 0));
  for (const LinRow& r : p.hrep().eqs) eqs.push_back(widen(r, 0));
  for (const LinRow& r : q.hrep().ineqs) ineqs.push_back(widen(r, d));
  for (const LinRow& r : q.hrep().eqs) eqs.push_back(widen(r, d));
  for (int j = 0; j < d; ++j) {
    QVec a = zeros(2 * d);
    a[(size_t)j] = 1;
    a[(size_t)(d + j)] = 1;
    eqs.push_back(LinRow{std::move(a), z[(size_t)j]});
  }
  auto x = lp_feasible_point(2 * d, ineqs, eqs);
  if (!x) return std::nullopt;
  return std::make_pair(vslice(*x, 0, d), vslice(*x, d, 2 * d));
}

QVec lex_least_point(const Polyhedron& p) {
  if (p.is_empty()) throw precondition_error("no point in empty set");
  return p.vrep().points.front();
}

}  // namespace polystab
