#include "polystab/lp.hpp"

#include <cassert>
#include <cstddef>

namespace polystab {

namespace {

// Dense two-phase simplex on an integer tableau. True tableau values are
// D[i][j] / det with det > 0, maintained by fraction-free (Edmonds) pivoting:
// entries stay integral because they are determinants of basis submatrices.
struct Tableau {
  int m = 0;     // constraint rows
  int S = 0;     // structural columns (x+, x-, slacks)
  int nart = 0;  // artificial columns
  int rhs = 0;   // rhs column index
  int obj2 = 0, obj1 = 0;  // objective row indices (phase 2, phase 1)
  std::vector<std::vector<Int>> D;
  Int det{1};
  std::vector<int> basis;
  std::vector<char> active;

  void pivot(int r, int s) {
    const Int p = D[r][s];
    assert(sgn(p) != 0);
    const int sg = sgn(p);
    const int nrows = m + 2;
    const int ncols = rhs + 1;
    Int t;
    for (int i = 0; i < nrows; ++i) {
      if (i == r || (i < m && !active[i])) continue;
      std::vector<Int>& Di = D[i];
      const Int dis = Di[s];
      for (int j = 0; j < ncols; ++j) {
        if (j == s) continue;
        t = Di[j] * p;
        t -= dis * D[r][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), det.get_mpz_t());
        if (sg < 0) t = -t;
        Di[j] = t;
      }
      Di[s] = 0;
    }
    if (sg < 0)
      for (int j = 0; j < ncols; ++j)
        if (j != s) D[r][j] = -D[r][j];
    det = (sg < 0) ? Int(-p) : p;
    D[r][s] = det;
    basis[r] = s;
  }

  // Bland: least-index entering column with negative reduced cost, leaving row
  // by exact minimum ratio with least basis index as tie break.
  LPStatus run_phase(int objrow) {
    for (;;) {
      int s = -1;
      for (int j = 0; j < S; ++j) {
        if (sgn(D[objrow][j]) < 0) {
          s = j;
          break;
        }
      }
      if (s < 0) return LPStatus::Optimal;
      int r = -1;
      for (int i = 0; i < m; ++i) {
        if (!active[i] || sgn(D[i][s]) <= 0) continue;
        if (r < 0) {
          r = i;
          continue;
        }
        Int lhs = D[i][rhs] * D[r][s];
        Int rhs_ = D[r][rhs] * D[i][s];
        int c = cmp(lhs, rhs_);
        if (c < 0 || (c == 0 && basis[i] < basis[r])) r = i;
      }
      if (r < 0) return LPStatus::Unbounded;
      pivot(r, s);
    }
  }
};

// Scales (a, b) to coprime integers. Returns numerators in place.
void scale_row(const QVec& a, const Rat& b, std::vector<Int>& out_a, Int& out_b) {
  Int l(1);
  for (const Rat& q : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b.get_den_mpz_t());
  out_a.resize(a.size());
  Int g(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    out_a[i] = Int(a[i].get_num()) * (l / Int(a[i].get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out_a[i].get_mpz_t());
  }
  out_b = Int(b.get_num()) * (l / Int(b.get_den()));
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out_b.get_mpz_t());
  if (sgn(g) > 0 && cmp(g, 1) != 0) {
    for (Int& v : out_a) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(out_b.get_mpz_t(), out_b.get_mpz_t(), g.get_mpz_t());
  }
}

}  // namespace

LPResult lp_minimize(const QVec& c, const std::vector<LinRow>& ineqs,
                     const std::vector<LinRow>& eqs) {
  const int n = static_cast<int>(c.size());
  const int mi = static_cast<int>(ineqs.size());
  const int me = static_cast<int>(eqs.size());
  const int m = mi + me;
  for (const LinRow& r : ineqs)
    if (static_cast<int>(r.a.size()) != n) throw internal_error("lp: row dimension mismatch");
  for (const LinRow& r : eqs)
    if (static_cast<int>(r.a.size()) != n) throw internal_error("lp: row dimension mismatch");

  Tableau T;
  T.m = m;
  T.S = 2 * n + mi;

  // Scale all rows. An ineq row with negative rhs is flipped (slack becomes -1)
  // and needs an artificial; equality rows always get one.
  std::vector<std::vector<Int>> A(m);
  std::vector<Int> b(m);
  std::vector<int> slack_sign(m, 0);
  std::vector<int> art_col(m, -1);
  int nart = 0;
  for (int i = 0; i < m; ++i) {
    const bool is_ineq = i < mi;
    const LinRow& row = is_ineq ? ineqs[i] : eqs[i - mi];
    scale_row(row.a, row.b, A[i], b[i]);
    int flip = (sgn(b[i]) < 0) ? -1 : 1;
    if (flip < 0) {
      for (Int& v : A[i]) v = -v;
      b[i] = -b[i];
    }
    if (is_ineq) slack_sign[i] = flip;
    if (!is_ineq || flip < 0) art_col[i] = nart++;
  }
  T.nart = nart;
  T.rhs = T.S + nart;
  T.obj2 = m;
  T.obj1 = m + 1;
  T.D.assign(m + 2, std::vector<Int>(T.rhs + 1, Int(0)));
  T.basis.assign(m, -1);
  T.active.assign(m, 1);

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      T.D[i][j] = A[i][j];
      T.D[i][n + j] = -A[i][j];
    }
    if (i < mi) T.D[i][2 * n + i] = Int(slack_sign[i]);
    if (art_col[i] >= 0) T.D[i][T.S + art_col[i]] = Int(1);
    T.D[i][T.rhs] = b[i];
    T.basis[i] = (art_col[i] >= 0) ? T.S + art_col[i] : 2 * n + i;
  }

  // Phase-2 reduced costs (initial basis has zero cost).
  {
    std::vector<Int> ci;
    Int cb;
    scale_row(c, Rat(0), ci, cb);
    for (int j = 0; j < n; ++j) {
      T.D[T.obj2][j] = ci[j];
      T.D[T.obj2][n + j] = -ci[j];
    }
  }
  // Phase-1 reduced costs: minimize the sum of artificial variables.
  bool need_phase1 = nart > 0;
  if (need_phase1) {
    for (int i = 0; i < m; ++i) {
      if (art_col[i] < 0) continue;
      for (int j = 0; j <= T.rhs; ++j)
        if (j < T.S || j == T.rhs) T.D[T.obj1][j] -= T.D[i][j];
    }
  }

  if (need_phase1) {
    LPStatus st = T.run_phase(T.obj1);
    if (st != LPStatus::Optimal)
      throw internal_error("lp: phase 1 cannot be unbounded");
    if (sgn(T.D[T.obj1][T.rhs]) < 0) return {LPStatus::Infeasible, Rat(0), {}};
    // Drive surviving artificials out of the basis; a row with no structural
    // entry is a redundant equation and goes inactive.
    for (int i = 0; i < m; ++i) {
      if (!T.active[i] || T.basis[i] < T.S) continue;
      assert(sgn(T.D[i][T.rhs]) == 0);
      int piv = -1;
      for (int j = 0; j < T.S; ++j)
        if (sgn(T.D[i][j]) != 0) {
          piv = j;
          break;
        }
      if (piv >= 0)
        T.pivot(i, piv);
      else
        T.active[i] = 0;
    }
  }

  LPStatus st = T.run_phase(T.obj2);
  if (st == LPStatus::Unbounded) return {LPStatus::Unbounded, Rat(0), {}};

  QVec x = zeros(n);
  for (int i = 0; i < m; ++i) {
    if (!T.active[i] || T.basis[i] >= 2 * n) continue;
    assert(sgn(T.D[i][T.rhs]) >= 0);
    Rat v(T.D[i][T.rhs], T.det);
    v.canonicalize();
    if (T.basis[i] < n)
      x[T.basis[i]] += v;
    else
      x[T.basis[i] - n] -= v;
  }
  return {LPStatus::Optimal, dot(c, x), x};
}

LPResult lp_maximize(const QVec& c, const std::vector<LinRow>& ineqs,
                     const std::vector<LinRow>& eqs) {
  LPResult r = lp_minimize(vneg(c), ineqs, eqs);
  if (r.status == LPStatus::Optimal) r.value = -r.value;
  return r;
}

std::optional<QVec> lp_feasible_point(int dim, const std::vector<LinRow>& ineqs,
                                      const std::vector<LinRow>& eqs) {
  LPResult r = lp_minimize(zeros(dim), ineqs, eqs);
  if (r.status != LPStatus::Optimal) return std::nullopt;
  return r.x;
}

}  // namespace polystab
