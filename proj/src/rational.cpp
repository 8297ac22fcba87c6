#include "polystab/rational.hpp"

#include <cstddef>

namespace polystab {

namespace {

bool is_decimal_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Rat parse_rational(const std::string& s) {
  std::size_t slash = s.find('/');
  std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
  std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
  if (!is_decimal_integer(num) || !is_decimal_integer(den))
    throw input_error("invalid rational literal: '" + s + "'");
  Int n(num), d(den);
  if (sgn(d) == 0) throw input_error("rational with zero denominator: '" + s + "'");
  Rat q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rat& q) { return q.get_str(); }

QVec zeros(int n) { return QVec(static_cast<std::size_t>(n), Rat(0)); }

Rat dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw internal_error("dot: dimension mismatch");
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVec vadd(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw internal_error("vadd: dimension mismatch");
  QVec r(a);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

QVec vsub(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw internal_error("vsub: dimension mismatch");
  QVec r(a);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

QVec vneg(const QVec& a) {
  QVec r(a);
  for (Rat& q : r) q = -q;
  return r;
}

QVec vscale(const Rat& s, const QVec& a) {
  QVec r(a);
  for (Rat& q : r) q *= s;
  return r;
}

QVec vconcat(const QVec& a, const QVec& b) {
  QVec r(a);
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

QVec vslice(const QVec& a, int begin, int end) {
  return QVec(a.begin() + begin, a.begin() + end);
}

bool all_zero(const QVec& a) {
  for (const Rat& q : a)
    if (sgn(q) != 0) return false;
  return true;
}

int first_nonzero(const QVec& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0) return static_cast<int>(i);
  return -1;
}

bool lex_less(const QVec& a, const QVec& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

QVec primitive(const QVec& v) {
  Int l(1);
  for (const Rat& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  Int g(0);
  std::vector<Int> nums(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Int scaled = l / Int(v[i].get_den());
    nums[i] = Int(v[i].get_num()) * scaled;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nums[i].get_mpz_t());
  }
  if (sgn(g) == 0) return zeros(static_cast<int>(v.size()));
  QVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Int q = nums[i] / g;
    r[i] = Rat(q);
  }
  return r;
}

QVec primitive_signed(const QVec& v) {
  QVec r = primitive(v);
  int fn = first_nonzero(r);
  if (fn >= 0 && sgn(r[fn]) < 0)
    for (Rat& q : r) q = -q;
  return r;
}

std::string format_vector(const QVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_rational(v[i]);
  }
  s += ")";
  return s;
}

}  // namespace polystab
