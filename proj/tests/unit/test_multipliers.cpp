#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "polystab/errors.hpp"
#include "polystab/multipliers.hpp"

using namespace polystab;

namespace {

QVec qv(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

LinRow lrow(std::initializer_list<long> a, long b) { return LinRow{qv(a), Rat(b)}; }

Polyhedron from_rows(int dim, std::vector<LinRow> ineqs,
                     std::vector<LinRow> eqs = {}) {
  HRep h;
  h.dim = dim;
  h.ineqs = std::move(ineqs);
  h.eqs = std::move(eqs);
  return Polyhedron::from_h(std::move(h));
}

Polyhedron hull(int dim, std::vector<QVec> points) {
  VRep v;
  v.dim = dim;
  v.points = std::move(points);
  return Polyhedron::from_v(std::move(v));
}

bool same(const Polyhedron& a, const Polyhedron& b) {
  return set_relation(a, b) == SetRelation::Equal;
}

// mu(x) = inf { |x + y| : y <= 0 } = max(-x, 0)
Program hinge() {
  PwlFunction phi =
      make_pwl({qv({1, 1}), qv({-1, -1})}, qv({0, 0}), Polyhedron::full(2));
  PwlFunction g1 = make_pwl({qv({0, 1})}, qv({0}), Polyhedron::full(2));
  return make_program(1, 1, phi, {g1}, {}, Polyhedron::full(2));
}

// Same data with dom phi = {x <= 0}, so the objective has a horizon in x.
Program hinge_clipped() {
  PwlFunction phi = make_pwl({qv({1, 1}), qv({-1, -1})}, qv({0, 0}),
                             from_rows(2, {lrow({1, 0}, 0)}));
  PwlFunction g1 = make_pwl({qv({0, 1})}, qv({0}), Polyhedron::full(2));
  return make_program(1, 1, phi, {g1}, {}, Polyhedron::full(2));
}

// mu(x) = |2x| through the equality y = x.
Program tied() {
  PwlFunction phi =
      make_pwl({qv({1, 1}), qv({-1, -1})}, qv({0, 0}), Polyhedron::full(2));
  return make_program(1, 1, phi, {}, {lrow({1, -1}, 0)}, Polyhedron::full(2));
}

Program unconstrained() {
  PwlFunction phi =
      make_pwl({qv({1, 1}), qv({-1, -1})}, qv({0, 0}), Polyhedron::full(2));
  return make_program(1, 1, phi, {}, {}, Polyhedron::full(2));
}

}  // namespace

TEST_CASE("multiplier sets of the hinge at its minimizer") {
  Program p = hinge();
  QVec x0 = qv({0}), y0 = qv({0});

  Polyhedron l0 = lambda0_set(p, x0, y0);
  CHECK(same(l0, from_rows(1, {lrow({-1}, 0)})));

  Polyhedron l = lambda_set(p, x0, y0);
  CHECK(same(l, from_rows(1, {lrow({-1}, 0), lrow({1}, 1)})));
  CHECK(subset_of(l, l0));

  Polyhedron linf = lambda_inf_set(p, x0, y0);
  CHECK(same(linf, Polyhedron::singleton(qv({0}))));
}

TEST_CASE("multiplier sets of the hinge off the active set") {
  Program p = hinge();
  QVec x2 = qv({2}), ym2 = qv({-2});

  Polyhedron zero = Polyhedron::singleton(qv({0}));
  CHECK(same(lambda0_set(p, x2, ym2), zero));
  CHECK(same(lambda_set(p, x2, ym2), zero));
  CHECK(same(lambda_inf_set(p, x2, ym2), zero));
}

TEST_CASE("lambda set empties at a feasible non-minimizer") {
  Program p = hinge();
  QVec x2 = qv({2}), y0 = qv({0});

  CHECK(same(lambda0_set(p, x2, y0), from_rows(1, {lrow({-1}, 0)})));
  CHECK(lambda_set(p, x2, y0).is_empty());
  CHECK(kkt_inclusion_check(p, x2, y0).holds == false);
}

TEST_CASE("x-Lagrangian union over the hinge multipliers") {
  Program p = hinge();
  QVec x0 = qv({0}), y0 = qv({0});
  Polyhedron box = from_rows(1, {lrow({1}, 1), lrow({-1}, 1)});

  Polyhedron over_l = partial_x_lagrangian_union(p, x0, y0, lambda_set(p, x0, y0));
  CHECK(same(over_l, box));
  Polyhedron over_l0 =
      partial_x_lagrangian_union(p, x0, y0, lambda0_set(p, x0, y0));
  CHECK(same(over_l0, box));
}

TEST_CASE("singular union picks up the objective horizon") {
  Program p = hinge_clipped();
  QVec x0 = qv({0}), y0 = qv({0});

  Polyhedron l0 = lambda0_set(p, x0, y0);
  Polyhedron s = singular_partial_x_lagrangian_union(p, x0, y0, l0);
  CHECK(same(s, from_rows(1, {lrow({-1}, 0)})));
  CHECK(same(lambda_inf_set(p, x0, y0), Polyhedron::singleton(qv({0}))));

  // and full-space objective domains contribute only the origin
  Program q = hinge();
  Polyhedron s0 = singular_partial_x_lagrangian_union(
      q, x0, y0, lambda0_set(q, x0, y0));
  CHECK(same(s0, Polyhedron::singleton(qv({0}))));
}

TEST_CASE("equality multipliers are free until stationarity cuts them") {
  Program p = tied();
  QVec x0 = qv({0}), y0 = qv({0});

  CHECK(same(lambda0_set(p, x0, y0), Polyhedron::full(1)));
  Polyhedron l = lambda_set(p, x0, y0);
  CHECK(same(l, from_rows(1, {lrow({1}, 1), lrow({-1}, 1)})));

  Polyhedron u = partial_x_lagrangian_union(p, x0, y0, l);
  CHECK(same(u, from_rows(1, {lrow({1}, 2), lrow({-1}, 2)})));
}

TEST_CASE("empty and zero-dimensional multiplier sets") {
  Program p = unconstrained();

  CHECK(same(lambda0_set(p, qv({0}), qv({0})), Polyhedron::full(0)));
  CHECK(same(lambda_set(p, qv({0}), qv({0})), Polyhedron::full(0)));
  CHECK(lambda_set(p, qv({2}), qv({0})).is_empty());

  Polyhedron u =
      partial_x_lagrangian_union(p, qv({0}), qv({0}), Polyhedron::full(0));
  CHECK(same(u, from_rows(1, {lrow({1}, 1), lrow({-1}, 1)})));
  CHECK(partial_x_lagrangian_union(p, qv({0}), qv({0}), Polyhedron::empty(0))
            .is_empty());
}

TEST_CASE("two inequalities tie their multipliers through stationarity") {
  // phi = |y1 + y2|, g1 = y1, g2 = y2; at the origin the multipliers match.
  PwlFunction phi = make_pwl({qv({0, 1, 1}), qv({0, -1, -1})}, qv({0, 0}),
                             Polyhedron::full(3));
  PwlFunction g1 = make_pwl({qv({0, 1, 0})}, qv({0}), Polyhedron::full(3));
  PwlFunction g2 = make_pwl({qv({0, 0, 1})}, qv({0}), Polyhedron::full(3));
  Program p = make_program(1, 2, phi, {g1, g2}, {}, Polyhedron::full(3));

  Polyhedron l = lambda_set(p, qv({0}), qv({0, 0}));
  CHECK(same(l, hull(2, {qv({0, 0}), qv({1, 1})})));
}

TEST_CASE("inactive domain fences enter stationarity at zero multiplier") {
  // phi = -y; g1 = y - 1 on dom {y <= 0}, inactive at the minimizer (0, 0)
  // yet its domain supplies the normal direction the certificate needs.
  PwlFunction phi = make_pwl({qv({0, -1})}, qv({0}), Polyhedron::full(2));
  PwlFunction g1 =
      make_pwl({qv({0, 1})}, qv({-1}), from_rows(2, {lrow({0, 1}, 0)}));
  Program p = make_program(1, 1, phi, {g1}, {}, Polyhedron::full(2));

  QVec x0 = qv({0}), y0 = qv({0});
  CHECK(active_indices(p, x0, y0).empty());
  CHECK(solve(p, x0).ybar == y0);
  CHECK(same(lambda_set(p, x0, y0), Polyhedron::singleton(qv({0}))));
  CHECK(kkt_inclusion_check(p, x0, y0).holds);
}

TEST_CASE("union rejects bad multiplier sets") {
  Program p = hinge();
  QVec x0 = qv({0}), y0 = qv({0});

  CHECK_THROWS_AS(partial_x_lagrangian_union(p, x0, y0, Polyhedron::full(2)),
                  input_error);
  CHECK_THROWS_AS(
      partial_x_lagrangian_union(p, x0, y0,
                                 from_rows(1, {lrow({1}, 0)})),
      precondition_error);
}

TEST_CASE("multiplier sets demand a feasible anchor") {
  Program p = hinge();
  CHECK_THROWS_AS(lambda0_set(p, qv({0}), qv({1})), precondition_error);
  CHECK_THROWS_AS(lambda_set(p, qv({0}), qv({1})), precondition_error);

  Program q = hinge_clipped();
  CHECK_THROWS_AS(lambda_set(q, qv({1}), qv({-1})), precondition_error);
}

TEST_CASE("lagrangian subdifferential at a fixed multiplier") {
  Program p = hinge();
  QVec x0 = qv({0}), y0 = qv({0});

  LagrangianSum one = lagrangian_subdifferential(p, x0, y0, qv({1}), {});
  CHECK(one.qualified);
  CHECK(same(one.set, hull(2, {qv({1, 2}), qv({-1, 0})})));

  LagrangianSum half = lagrangian_subdifferential(p, x0, y0, {rat(1, 2)}, {});
  CHECK(same(half.set,
             hull(2, {{Rat(1), rat(3, 2)}, {Rat(-1), rat(-1, 2)}})));

  // a zero multiplier leaves only the objective term
  LagrangianSum zero = lagrangian_subdifferential(p, x0, y0, qv({0}), {});
  CHECK(same(zero.set, hull(2, {qv({1, 1}), qv({-1, -1})})));
}

TEST_CASE("equality multipliers shift the lagrangian subdifferential") {
  Program p = tied();
  LagrangianSum s = lagrangian_subdifferential(p, qv({0}), qv({0}), {}, qv({3}));
  CHECK(same(s.set, hull(2, {qv({4, -2}), qv({2, -4})})));
}

TEST_CASE("singular lagrangian subdifferential uses the objective horizon") {
  Program p = hinge();
  LagrangianSum s =
      singular_lagrangian_subdifferential(p, qv({0}), qv({0}), qv({0}), {});
  CHECK(same(s.set, Polyhedron::singleton(qv({0, 0}))));

  Program q = hinge_clipped();
  LagrangianSum horizon =
      singular_lagrangian_subdifferential(q, qv({0}), qv({0}), qv({1}), {});
  VRep v;
  v.dim = 2;
  v.points = {qv({0, 1})};
  v.rays = {qv({1, 0})};
  CHECK(same(horizon.set, Polyhedron::from_v(std::move(v))));
}

TEST_CASE("lagrangian subdifferential checks the multiplier vector") {
  Program p = hinge();
  CHECK_THROWS_AS(lagrangian_subdifferential(p, qv({0}), qv({0}), qv({-1}), {}),
                  precondition_error);
  // g is inactive at (0, -1), so its multiplier must vanish
  CHECK_THROWS_AS(lagrangian_subdifferential(p, qv({0}), qv({-1}), qv({1}), {}),
                  precondition_error);
  CHECK_THROWS_AS(lagrangian_subdifferential(p, qv({0}), qv({0}), qv({1, 1}), {}),
                  input_error);
}
