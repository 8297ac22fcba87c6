#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "polystab/errors.hpp"
#include "polystab/polyhedron.hpp"

using namespace polystab;

namespace {

QVec qv(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

LinRow lrow(std::initializer_list<long> a, long b) { return LinRow{qv(a), Rat(b)}; }

HRep make_h(int dim, std::vector<LinRow> ineqs, std::vector<LinRow> eqs = {}) {
  HRep h;
  h.dim = dim;
  h.ineqs = std::move(ineqs);
  h.eqs = std::move(eqs);
  return h;
}

bool same_vecs(const std::vector<QVec>& a, const std::vector<QVec>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool same_rows(const std::vector<LinRow>& a, const std::vector<LinRow>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].a != b[i].a || a[i].b != b[i].b) return false;
  return true;
}

bool same_poly_bytes(const Polyhedron& p, const Polyhedron& q) {
  return p.dim() == q.dim() && same_rows(p.hrep().ineqs, q.hrep().ineqs) &&
         same_rows(p.hrep().eqs, q.hrep().eqs) &&
         same_vecs(p.vrep().points, q.vrep().points) &&
         same_vecs(p.vrep().rays, q.vrep().rays) &&
         same_vecs(p.vrep().lines, q.vrep().lines);
}

struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) {  // inclusive
    return lo + (long)(next() % (std::uint64_t)(hi - lo + 1));
  }
};

HRep random_h(Rng& rng, int dim) {
  HRep h;
  h.dim = dim;
  int rows = (int)rng.range(1, 5);
  for (int i = 0; i < rows; ++i) {
    QVec a = zeros(dim);
    for (int j = 0; j < dim; ++j) a[(size_t)j] = Rat(rng.range(-3, 3));
    Rat b((long)rng.range(-3, 3));
    if (rng.range(0, 3) == 0)
      h.eqs.push_back(LinRow{std::move(a), b});
    else
      h.ineqs.push_back(LinRow{std::move(a), b});
  }
  return h;
}

}  // namespace

TEST_CASE("vertex enumeration of a wedge") {
  HRep h = make_h(2, {lrow({1, 0}, 1), lrow({-1, 0}, 1), lrow({1, -1}, 0)});
  VRep v = to_vrep(h);
  CHECK(same_vecs(v.points, {qv({-1, -1}), qv({1, 1})}));
  CHECK(same_vecs(v.rays, {qv({0, 1})}));
  CHECK(v.lines.empty());
}

TEST_CASE("facets of a segment") {
  VRep v;
  v.dim = 2;
  v.points = {qv({2, 4}), qv({0, 0})};
  Polyhedron p = Polyhedron::from_v(v);
  CHECK(same_vecs(p.vrep().points, {qv({0, 0}), qv({2, 4})}));
  CHECK(p.vrep().rays.empty());
  CHECK(p.vrep().lines.empty());
  Polyhedron expected = Polyhedron::from_h(
      make_h(2, {lrow({-1, 0}, 0), lrow({1, 0}, 2)}, {lrow({2, -1}, 0)}));
  CHECK(set_relation(p, expected) == SetRelation::Equal);
  CHECK(same_poly_bytes(p, expected));
  REQUIRE(p.hrep().eqs.size() == 1);
  CHECK(p.hrep().eqs[0].a == qv({2, -1}));
  CHECK(p.hrep().eqs[0].b == 0);
}

TEST_CASE("sum of a segment and a ray recovers the wedge") {
  VRep seg;
  seg.dim = 2;
  seg.points = {qv({1, 1}), qv({-1, -1})};
  VRep ray;
  ray.dim = 2;
  ray.points = {qv({0, 0})};
  ray.rays = {qv({0, 1})};
  Polyhedron sum = minkowski_sum(Polyhedron::from_v(seg), Polyhedron::from_v(ray));
  Polyhedron wedge = Polyhedron::from_h(
      make_h(2, {lrow({1, 0}, 1), lrow({-1, 0}, 1), lrow({1, -1}, 0)}));
  CHECK(set_relation(sum, wedge) == SetRelation::Equal);
  CHECK(same_poly_bytes(sum, wedge));
}

TEST_CASE("projection of a diagonal strip fills the line") {
  Polyhedron strip =
      Polyhedron::from_h(make_h(2, {lrow({1, -1}, 0), lrow({-1, 1}, 1)}));
  Polyhedron line = project(strip, {0});
  CHECK(set_relation(line, Polyhedron::full(1)) == SetRelation::Equal);
  CHECK(line.hrep().ineqs.empty());
  CHECK(line.hrep().eqs.empty());
}

TEST_CASE("normal cone of a halfline at its endpoint") {
  Polyhedron p = Polyhedron::from_h(make_h(1, {lrow({1}, 0)}));
  Polyhedron n = normal_cone_at(p, qv({0}));
  CHECK(same_vecs(n.vrep().points, {qv({0})}));
  CHECK(same_vecs(n.vrep().rays, {qv({1})}));
  Polyhedron interior_n = normal_cone_at(p, qv({-2}));
  CHECK(set_relation(interior_n, Polyhedron::singleton(qv({0}))) ==
        SetRelation::Equal);
  CHECK_THROWS_AS(normal_cone_at(p, qv({1})), precondition_error);
}

TEST_CASE("cone hull of a shifted segment") {
  VRep seg;
  seg.dim = 1;
  seg.points = {qv({1}), qv({2})};
  Polyhedron hull = cone_hull(Polyhedron::from_v(seg));
  CHECK(same_vecs(hull.vrep().points, {qv({0})}));
  CHECK(same_vecs(hull.vrep().rays, {qv({1})}));
}

TEST_CASE("full and empty canonical forms") {
  Polyhedron full2 = Polyhedron::full(2);
  CHECK(full2.hrep().ineqs.empty());
  CHECK(full2.hrep().eqs.empty());
  CHECK(same_vecs(full2.vrep().points, {qv({0, 0})}));
  CHECK(same_vecs(full2.vrep().lines, {qv({0, 1}), qv({1, 0})}));

  Polyhedron none = Polyhedron::empty(2);
  CHECK(none.is_empty());
  CHECK(none.vrep().points.empty());
  CHECK(none.vrep().rays.empty());
  CHECK(none.vrep().lines.empty());
  REQUIRE(none.hrep().ineqs.size() == 1);
  CHECK(none.hrep().ineqs[0].a == qv({0, 0}));
  CHECK(none.hrep().ineqs[0].b == -1);
  CHECK(!none.contains(qv({0, 0})));
  CHECK(!none.admits_ray(qv({1, 0})));

  Polyhedron left = Polyhedron::from_h(make_h(1, {lrow({1}, 0)}));
  Polyhedron right = Polyhedron::from_h(make_h(1, {lrow({-1}, -1)}));
  CHECK(intersect(left, right).is_empty());

  Polyhedron point0 = Polyhedron::full(0);
  CHECK(point0.contains(QVec{}));
  CHECK(set_relation(point0, Polyhedron::singleton(QVec{})) == SetRelation::Equal);
  Polyhedron empty0 = Polyhedron::empty(0);
  CHECK(empty0.is_empty());
  CHECK(set_relation(empty0, point0) == SetRelation::ProperSubset);
}

TEST_CASE("halfspace splits into lineality and one ray") {
  Polyhedron h = Polyhedron::from_h(make_h(2, {lrow({-1, -1}, 0)}));
  CHECK(h.vrep().points.size() == 1);
  CHECK(h.vrep().rays.size() == 1);
  REQUIRE(h.vrep().lines.size() == 1);
  CHECK(h.vrep().lines[0] == qv({1, -1}));
  CHECK(h.contains(qv({3, 0})));
  CHECK(!h.contains(qv({-1, 0})));
  CHECK(h.admits_ray(qv({1, 1})));
  CHECK(h.admits_ray(qv({1, -1})));
  CHECK(!h.admits_ray(qv({-1, 0})));
  Polyhedron again = Polyhedron::from_v(h.vrep());
  CHECK(same_poly_bytes(h, again));
}

TEST_CASE("interior points") {
  HRep box = make_h(2, {lrow({1, 0}, 1), lrow({-1, 0}, 0), lrow({0, 1}, 1),
                        lrow({0, -1}, 0)});
  auto w = interior_point(box);
  REQUIRE(w.has_value());
  CHECK(is_interior_point(box, *w));
  CHECK(!is_interior_point(box, qv({0, 0})));
  CHECK(!is_interior_point(box, qv({5, 5})));

  HRep seg = make_h(2, {lrow({1, 0}, 1), lrow({-1, 0}, 1)}, {lrow({0, 1}, 0)});
  CHECK(!interior_point(seg).has_value());
  CHECK(!is_interior_point(seg, qv({0, 0})));

  // an implicit equality hides in the inequalities; no interior either way
  HRep thin = make_h(2, {lrow({0, 1}, 0), lrow({0, -1}, 0), lrow({1, 0}, 1)});
  CHECK(!interior_point(thin).has_value());
  CHECK(!is_interior_point(thin, qv({0, 0})));
}

TEST_CASE("support values") {
  Polyhedron box = Polyhedron::from_h(make_h(
      2, {lrow({1, 0}, 2), lrow({-1, 0}, 1), lrow({0, 1}, 5), lrow({0, -1}, -3)}));
  SupportValue s = support(box, qv({1, 1}));
  REQUIRE(s.kind == SupportValue::Finite);
  CHECK(s.value == 7);
  s = support(box, qv({-1, 0}));
  REQUIRE(s.kind == SupportValue::Finite);
  CHECK(s.value == 1);

  Polyhedron halfline = Polyhedron::from_h(make_h(1, {lrow({-1}, 0)}));
  CHECK(support(halfline, qv({1})).kind == SupportValue::PlusInf);
  CHECK(support(Polyhedron::empty(1), qv({1})).kind == SupportValue::MinusInf);
}

TEST_CASE("sum membership decomposition") {
  Polyhedron box = Polyhedron::from_h(make_h(
      1, {lrow({1}, 1), lrow({-1}, 1)}));
  Polyhedron ray = Polyhedron::from_h(make_h(1, {lrow({-1}, 0)}));
  auto parts = minkowski_member(box, ray, qv({5}));
  REQUIRE(parts.has_value());
  CHECK(box.contains(parts->first));
  CHECK(ray.contains(parts->second));
  CHECK(vadd(parts->first, parts->second) == qv({5}));
  CHECK(!minkowski_member(box, ray, qv({-2})).has_value());
}

TEST_CASE("normal cone sum rule with interior overlap") {
  Polyhedron a = Polyhedron::from_h(make_h(2, {lrow({0, -1}, 0)}));
  Polyhedron b = Polyhedron::from_h(make_h(2, {lrow({-1, 0}, 0)}));
  Polyhedron n = normal_cone_intersection_rule({a, b}, qv({0, 0}));
  Polyhedron direct = normal_cone_at(intersect(a, b), qv({0, 0}));
  CHECK(set_relation(n, direct) == SetRelation::Equal);
  CHECK(same_vecs(n.vrep().rays, {qv({-1, 0}), qv({0, -1})}));

  Polyhedron axis = Polyhedron::from_h(make_h(2, {}, {lrow({0, 1}, 0)}));
  CHECK_THROWS_AS(normal_cone_intersection_rule({a, axis}, qv({0, 0})),
                  qualification_error);
}

TEST_CASE("pruning removes implied rows and detects contradictions") {
  HRep h = make_h(1, {lrow({1}, 1), lrow({1}, 2), lrow({2}, 2), lrow({-1}, 5)});
  HRep pruned = prune_rows(h);
  CHECK(pruned.ineqs.size() == 2);
  CHECK(pruned.eqs.empty());

  HRep bad = make_h(2, {}, {lrow({1, 1}, 1), lrow({2, 2}, 3)});
  HRep out = prune_rows(bad);
  REQUIRE(out.ineqs.size() == 1);
  CHECK(all_zero(out.ineqs[0].a));
  CHECK(out.ineqs[0].b < 0);
}

TEST_CASE("projection to dimension zero decides feasibility") {
  Polyhedron feas = Polyhedron::from_h(make_h(1, {lrow({1}, 1)}));
  CHECK(set_relation(project(feas, {}), Polyhedron::full(0)) == SetRelation::Equal);
  Polyhedron infeas =
      Polyhedron::from_h(make_h(1, {lrow({1}, 0), lrow({-1}, -1)}));
  CHECK(project(infeas, {}).is_empty());
}

TEST_CASE("random round trips match raw rows on an integer grid") {
  Rng rng(20260815);
  int nonempty_seen = 0;
  for (int t = 0; t < 60; ++t) {
    HRep h = random_h(rng, 2);
    Polyhedron p = Polyhedron::from_h(h);
    if (!p.is_empty()) ++nonempty_seen;

    for (const QVec& pt : p.vrep().points) CHECK(hrep_contains(h, pt));
    for (const QVec& r : p.vrep().rays) CHECK(hrep_admits_ray(h, r));
    for (const QVec& l : p.vrep().lines) {
      CHECK(hrep_admits_ray(h, l));
      CHECK(hrep_admits_ray(h, vneg(l)));
    }

    Polyhedron back = Polyhedron::from_v(p.vrep());
    CHECK(same_poly_bytes(p, back));
    Polyhedron again = Polyhedron::from_h(p.hrep());
    CHECK(same_poly_bytes(p, again));

    for (long x = -4; x <= 4; ++x)
      for (long y = -4; y <= 4; ++y) {
        QVec z = qv({x, y});
        CHECK(p.contains(z) == hrep_contains(h, z));
      }
  }
  CHECK(nonempty_seen > 20);
}

TEST_CASE("random projections agree with per-point feasibility") {
  Rng rng(77001);
  for (int t = 0; t < 25; ++t) {
    HRep h = random_h(rng, 3);
    Polyhedron p = Polyhedron::from_h(h);
    Polyhedron shadow = project(p, {0, 1});
    for (long x = -3; x <= 3; ++x)
      for (long y = -3; y <= 3; ++y) {
        std::vector<LinRow> ineqs, eqs;
        for (const LinRow& r : h.ineqs) {
          Rat fixed = r.a[0] * Rat(x);
          Rat fixed2 = r.a[1] * Rat(y);
          ineqs.push_back(LinRow{QVec{r.a[2]}, r.b - fixed - fixed2});
        }
        for (const LinRow& r : h.eqs) {
          Rat fixed = r.a[0] * Rat(x);
          Rat fixed2 = r.a[1] * Rat(y);
          eqs.push_back(LinRow{QVec{r.a[2]}, r.b - fixed - fixed2});
        }
        bool direct = lp_feasible_point(1, ineqs, eqs).has_value();
        CHECK(shadow.contains(qv({x, y})) == direct);
      }
  }
}

TEST_CASE("normal cones certify support maximizers") {
  Rng rng(4242);
  int vertex_checks = 0;
  for (int t = 0; t < 30; ++t) {
    HRep h = random_h(rng, 2);
    // box the set so every instance is a polytope
    for (long s : {1L, -1L}) {
      QVec a = zeros(2);
      a[0] = Rat(s);
      h.ineqs.push_back(LinRow{a, Rat(6)});
      QVec b = zeros(2);
      b[1] = Rat(s);
      h.ineqs.push_back(LinRow{b, Rat(6)});
    }
    Polyhedron p = Polyhedron::from_h(h);
    if (p.is_empty()) continue;
    for (const QVec& w : p.vrep().points) {
      Polyhedron n = normal_cone_at(p, w);
      for (const QVec& dir : n.vrep().rays) {
        SupportValue s = support(p, dir);
        REQUIRE(s.kind == SupportValue::Finite);
        CHECK(s.value == dot(dir, w));
        ++vertex_checks;
      }
    }
  }
  CHECK(vertex_checks > 50);
}
