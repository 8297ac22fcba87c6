// Acceptance gate. Each criterion prints one PASS/FAIL line with the
// measured runtime against its budget; the exit code is the number of
// failing criteria. Everything is exact set arithmetic, so there are no
// tolerances anywhere, only time limits.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "instance_gen.hpp"
#include "polystab/errors.hpp"
#include "polystab/io.hpp"
#include "polystab/multipliers.hpp"
#include "polystab/oracle.hpp"
#include "polystab/stability.hpp"

using namespace polystab;
using testgen::Rng;
using testgen::SweepInstance;

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               start)
      .count();
}

int failures = 0;

void report(int index, const std::string& label, bool ok, long long elapsed,
            long long budget) {
  bool in_budget = budget < 0 || elapsed <= budget;
  if (!(ok && in_budget)) ++failures;
  std::cout << (ok && in_budget ? "PASS" : "FAIL") << "  criterion " << index
            << ": " << label << " (" << elapsed << " ms";
  if (budget >= 0) std::cout << ", budget " << budget << " ms";
  if (!ok) std::cout << ", checks failed";
  std::cout << ")\n";
}

QVec qv(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

LinRow lrow(std::initializer_list<long> a, long b) {
  return LinRow{qv(a), Rat(b)};
}

Polyhedron from_rows(int dim, std::vector<LinRow> ineqs,
                     std::vector<LinRow> eqs = {}) {
  HRep h;
  h.dim = dim;
  h.ineqs = std::move(ineqs);
  h.eqs = std::move(eqs);
  return Polyhedron::from_h(std::move(h));
}

Polyhedron segment(std::initializer_list<long> a,
                   std::initializer_list<long> b) {
  VRep v;
  v.dim = (int)a.size();
  v.points = {qv(a), qv(b)};
  return Polyhedron::from_v(std::move(v));
}

Program load_data_program(const std::string& name) {
  std::ifstream in(std::string(POLYSTAB_DATA_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_program_json(ss.str());
}

// phi = |x + y| restricted to x <= 0; the value function is finite exactly on
// the nonpositive parameters, so upward directions probe the infinite cases.
Program clipped_program() {
  PwlFunction phi =
      make_pwl({qv({1, 1}), qv({-1, -1})}, qv({0, 0}),
               from_rows(2, {lrow({1, 0}, 0)}));
  return make_program(1, 1, phi, {}, {}, Polyhedron::full(2));
}

void criterion_1() {
  auto t0 = Clock::now();
  PwlFunction f = make_pwl({qv({1, 1}), qv({-1, -1})}, qv({0, 0}),
                           Polyhedron::full(2));
  QVec origin = qv({0, 0});
  bool ok = set_relation(subdifferential(f, origin), segment({1, 1}, {-1, -1})) ==
            SetRelation::Equal;

  Polyhedron interval = segment({-1}, {1});
  PwlFunction in_x = partial_slice(f, {1}, qv({0}));
  PwlFunction in_y = partial_slice(f, {0}, qv({0}));
  ok = ok && set_relation(subdifferential(in_x, qv({0})), interval) ==
                 SetRelation::Equal;
  ok = ok && set_relation(subdifferential(in_y, qv({0})), interval) ==
                 SetRelation::Equal;

  Polyhedron box = from_rows(2, {lrow({1, 0}, 1), lrow({-1, 0}, 1),
                                 lrow({0, 1}, 1), lrow({0, -1}, 1)});
  ok = ok && set_relation(subdifferential(f, origin), box) ==
                 SetRelation::ProperSubset;
  report(1, "two-piece objective: joint subdifferential vs the partial box",
         ok, ms_since(t0), 1000);
}

void criterion_2(const Program& hinge) {
  auto t0 = Clock::now();
  bool ok = set_relation(mu_subdifferential(hinge, qv({0})), segment({-1}, {0})) ==
            SetRelation::Equal;
  Polyhedron halfline = from_rows(1, {lrow({-1}, 0)});
  ok = ok && set_relation(lambda0_set(hinge, qv({0}), qv({0})), halfline) ==
                 SetRelation::Equal;
  report(2, "bundled hinge: value subdifferential and sign multiplier cone",
         ok, ms_since(t0), 1000);
}

void criterion_3(const Program& hinge) {
  auto t0 = Clock::now();
  Polyhedron lam = lambda_set(hinge, qv({0}), qv({0}));
  bool ok = set_relation(lam, segment({0}, {1})) == SetRelation::Equal;
  Polyhedron uni = partial_x_lagrangian_union(hinge, qv({0}), qv({0}), lam);
  ok = ok && set_relation(uni, segment({-1}, {1})) == SetRelation::Equal;
  ok = ok && set_relation(mu_subdifferential(hinge, qv({0})), uni) ==
                 SetRelation::ProperSubset;
  report(3, "bundled hinge: stationary multipliers give a strictly larger estimate",
         ok, ms_since(t0), 1000);
}

struct SweepData {
  std::vector<SweepInstance> instances;
  std::vector<Polyhedron> subs;
  long long gen_ms = 0;
};

SweepData build_sweep(const Program& hinge) {
  auto t0 = Clock::now();
  SweepData data;
  data.instances = testgen::sweep_instances(20260815, 100);
  data.instances.push_back(SweepInstance{hinge, qv({0})});
  data.instances.push_back(SweepInstance{clipped_program(), qv({0})});
  data.gen_ms = ms_since(t0);
  return data;
}

void criterion_4(SweepData& data) {
  auto t0 = Clock::now();
  bool ok = true;
  for (const SweepInstance& inst : data.instances) {
    try {
      data.subs.push_back(mu_subdifferential(inst.p, inst.xbar));
    } catch (const internal_error&) {
      ok = false;
      data.subs.push_back(Polyhedron::empty(inst.p.nx));
    }
  }
  report(4,
         "sweep of " + std::to_string(data.instances.size()) +
             " instances: all value-subdifferential paths agree",
         ok, data.gen_ms + ms_since(t0), 300000);
}

void criterion_5(const SweepData& data) {
  auto t0 = Clock::now();
  bool ok = true;
  int infinite_cases = 0;
  Rng rng(777);
  for (size_t idx = 0; idx < data.instances.size(); ++idx) {
    const Program& p = data.instances[idx].p;
    const QVec& xbar = data.instances[idx].xbar;

    std::vector<QVec> dirs;
    for (int i = 0; i < p.nx; ++i) {
      QVec e = zeros(p.nx);
      e[(size_t)i] = 1;
      dirs.push_back(e);
      e[(size_t)i] = -1;
      dirs.push_back(e);
    }
    while (dirs.size() < 50) {
      QVec d = zeros(p.nx);
      bool nz = false;
      for (int i = 0; i < p.nx; ++i) {
        d[(size_t)i] = rat(rng.range(-5, 5), rng.range(1, 3));
        if (d[(size_t)i] != 0) nz = true;
      }
      if (nz) dirs.push_back(std::move(d));
    }

    for (size_t j = 0; j < dirs.size(); ++j) {
      DirDerivative dd = directional_derivative(p, xbar, dirs[j]);
      if (!dd.finite) ++infinite_cases;
      if (!support_matches(data.subs[idx], dirs[j], dd)) ok = false;
      if (j < 3) {  // positive homogeneity spot check
        DirDerivative dd2 =
            directional_derivative(p, xbar, vscale(Rat(2), dirs[j]));
        if (dd2.finite != dd.finite) ok = false;
        if (dd.finite) {
          Rat twice = dd.slope * 2;
          if (dd2.slope != twice) ok = false;
        }
      }
    }
  }
  ok = ok && infinite_cases > 0;
  report(5,
         "sweep: support values match the directional-derivative probe, 50 "
         "directions each (" +
             std::to_string(infinite_cases) + " infinite)",
         ok, ms_since(t0), 300000);
}

void criterion_6(const SweepData& data) {
  auto t0 = Clock::now();
  bool ok = true;
  for (const SweepInstance& inst : data.instances) {
    Polyhedron sing = mu_singular_subdifferential(inst.p, inst.xbar);
    Polyhedron dom_cone = normal_cone_at(mu_domain(inst.p), inst.xbar);
    if (set_relation(sing, dom_cone) != SetRelation::Equal) ok = false;
  }
  report(6, "sweep: singular subdifferential equals the domain normal cone",
         ok, ms_since(t0), -1);
}

void criterion_7(const SweepData& data) {
  auto t0 = Clock::now();
  bool ok = true;
  int strict = 0;
  for (size_t idx = 0; idx < data.instances.size(); ++idx) {
    const Program& p = data.instances[idx].p;
    const QVec& xbar = data.instances[idx].xbar;
    Solution s = solve(p, xbar);
    Polyhedron lam = lambda_set(p, xbar, s.ybar);
    Polyhedron uni = partial_x_lagrangian_union(p, xbar, s.ybar, lam);
    SetRelation rel = set_relation(data.subs[idx], uni);
    if (rel != SetRelation::Equal && rel != SetRelation::ProperSubset)
      ok = false;
    if (rel == SetRelation::ProperSubset) ++strict;

    Polyhedron lam_inf = lambda_inf_set(p, xbar, s.ybar);
    Polyhedron uni_inf =
        singular_partial_x_lagrangian_union(p, xbar, s.ybar, lam_inf);
    Polyhedron sing = mu_singular_subdifferential(p, xbar);
    SetRelation rel_inf = set_relation(sing, uni_inf);
    if (rel_inf != SetRelation::Equal && rel_inf != SetRelation::ProperSubset)
      ok = false;
    if (rel_inf == SetRelation::ProperSubset) ++strict;
  }
  ok = ok && strict > 0;
  report(7,
         "sweep: multiplier unions contain both subdifferentials (" +
             std::to_string(strict) + " strict)",
         ok, ms_since(t0), -1);
}

void criterion_8(const SweepData& data) {
  auto t0 = Clock::now();
  bool ok = true;
  int optimal_checked = 0, nonoptimal_checked = 0;
  for (const SweepInstance& inst : data.instances) {
    const Program& p = inst.p;
    const QVec& xbar = inst.xbar;
    Solution s = solve(p, xbar);

    const std::vector<QVec>& opt = s.argmin.vrep().points;
    for (size_t i = 0; i < opt.size() && i < 3; ++i) {
      if (!kkt_inclusion_check(p, xbar, opt[i]).holds) ok = false;
      ++optimal_checked;
    }

    Polyhedron feas = constraint_set(p, xbar);
    const std::vector<QVec>& verts = feas.vrep().points;
    for (size_t i = 0; i < verts.size() && i < 3; ++i) {
      QVec z = xbar;
      z.insert(z.end(), verts[i].begin(), verts[i].end());
      FnValue fv = value(p.phi, z);
      if (!fv.finite) continue;  // inclusion is posed inside dom phi
      bool is_optimal = fv.v == s.value;
      bool holds = kkt_inclusion_check(p, xbar, verts[i]).holds;
      if (is_optimal && !holds) ok = false;
      if (!is_optimal) {
        ++nonoptimal_checked;
        if (holds) ok = false;
      }
    }
  }
  ok = ok && optimal_checked > 0 && nonoptimal_checked > 0;
  report(8,
         "sweep: stationarity certificate holds exactly on the solution face "
         "(" +
             std::to_string(optimal_checked) + " optimal, " +
             std::to_string(nonoptimal_checked) + " non-optimal vertices)",
         ok, ms_since(t0), -1);
}

void criterion_9() {
  auto t0 = Clock::now();
  Rng rng(90210);
  bool ok = true;
  for (int iter = 0; iter < 500; ++iter) {
    int dim = (int)rng.range(1, 4);
    HRep h;
    h.dim = dim;
    int rows = (int)rng.range(1, 6);
    for (int i = 0; i < rows; ++i) {
      QVec a = zeros(dim);
      for (int j = 0; j < dim; ++j) a[(size_t)j] = Rat(rng.range(-3, 3));
      Rat b((long)rng.range(-3, 3));
      if (rng.range(0, 3) == 0)
        h.eqs.push_back(LinRow{std::move(a), b});
      else
        h.ineqs.push_back(LinRow{std::move(a), b});
    }
    Polyhedron p = Polyhedron::from_h(h);

    Polyhedron via_v = Polyhedron::from_v(p.vrep());
    Polyhedron via_h = Polyhedron::from_h(p.hrep());
    if (set_relation(p, via_v) != SetRelation::Equal) ok = false;
    if (set_relation(p, via_h) != SetRelation::Equal) ok = false;

    if (p.is_empty()) continue;
    QVec v = lex_least_point(p);
    Polyhedron ncone = normal_cone_at(p, v);
    for (const QVec& d : ncone.vrep().rays) {
      SupportValue s = support(p, d);
      if (s.kind != SupportValue::Finite || s.value != dot(d, v)) ok = false;
    }
    for (int probe = 0; probe < 2; ++probe) {
      QVec d = zeros(dim);
      for (int j = 0; j < dim; ++j) d[(size_t)j] = Rat(rng.range(-3, 3));
      SupportValue s = support(p, d);
      bool attains_here =
          s.kind == SupportValue::Finite && s.value == dot(d, v);
      if (ncone.contains(d) != attains_here) ok = false;
    }
  }
  report(9, "round trips and normal-cone duality on 500 random polyhedra", ok,
         ms_since(t0), 60000);
}

}  // namespace

int main() {
  Program hinge = load_data_program("example_42.json");

  criterion_1();
  criterion_2(hinge);
  criterion_3(hinge);

  SweepData data = build_sweep(hinge);
  criterion_4(data);
  criterion_5(data);
  criterion_6(data);
  criterion_7(data);
  criterion_8(data);
  criterion_9();

  if (failures == 0)
    std::cout << "all criteria passed\n";
  else
    std::cout << failures << " criteria FAILED\n";
  return failures;
}
