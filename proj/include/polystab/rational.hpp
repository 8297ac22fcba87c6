#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "polystab/errors.hpp"

namespace polystab {

// Exact rational scalar. All arithmetic in this library is exact; no floating
// point value ever enters a computation.
using Rat = mpq_class;
using Int = mpz_class;
using QVec = std::vector<Rat>;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw input_error("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p" or "p/q" with decimal integers, optional leading '-'.
Rat parse_rational(const std::string& s);

// Inverse of parse_rational: "p" when the value is integral, else "p/q".
std::string format_rational(const Rat& q);

QVec zeros(int n);
Rat dot(const QVec& a, const QVec& b);
QVec vadd(const QVec& a, const QVec& b);
QVec vsub(const QVec& a, const QVec& b);
QVec vneg(const QVec& a);
QVec vscale(const Rat& s, const QVec& a);
QVec vconcat(const QVec& a, const QVec& b);
QVec vslice(const QVec& a, int begin, int end);
bool all_zero(const QVec& a);
int first_nonzero(const QVec& a);  // -1 when none
bool lex_less(const QVec& a, const QVec& b);

// Scales a nonzero rational vector to coprime integers, preserving direction.
// Zero vectors pass through unchanged.
QVec primitive(const QVec& v);

// primitive() plus a sign convention (first nonzero entry positive); the right
// canonical form for two-sided directions.
QVec primitive_signed(const QVec& v);

std::string format_vector(const QVec& v);

}  // namespace polystab
