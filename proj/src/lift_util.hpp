#pragma once

#include <vector>

#include "polystab/polyhedron.hpp"

namespace polystab::lift {

// Appends src rows into dst with src coordinate j living at dst coordinate
// pos[j]. dst.dim is fixed by the caller.
inline void append_scattered(HRep& dst, const HRep& src,
                             const std::vector<int>& pos) {
  auto widen = [&](const LinRow& r) {
    QVec a = zeros(dst.dim);
    for (size_t j = 0; j < pos.size(); ++j) a[(size_t)pos[j]] = r.a[j];
    return LinRow{std::move(a), r.b};
  };
  for (const LinRow& r : src.ineqs) dst.ineqs.push_back(widen(r));
  for (const LinRow& r : src.eqs) dst.eqs.push_back(widen(r));
}

// Appends the homogenization of src over (w, t): rows <a,w> <= b t and
// <a,w> = b t together with t >= 0. Its t = 1 slice is src and its t = 0
// slice is the recession cone, so the graph of t |-> t * src is covered
// exactly for closed polyhedral src.
inline void append_homogenized(HRep& dst, const HRep& src,
                               const std::vector<int>& wpos, int tpos) {
  auto widen = [&](const LinRow& r) {
    QVec a = zeros(dst.dim);
    for (size_t j = 0; j < wpos.size(); ++j) a[(size_t)wpos[j]] = r.a[j];
    a[(size_t)tpos] = -r.b;
    return LinRow{std::move(a), Rat(0)};
  };
  for (const LinRow& r : src.ineqs) dst.ineqs.push_back(widen(r));
  for (const LinRow& r : src.eqs) dst.eqs.push_back(widen(r));
  QVec a = zeros(dst.dim);
  a[(size_t)tpos] = -1;
  dst.ineqs.push_back(LinRow{std::move(a), Rat(0)});
}

}  // namespace polystab::lift
