// polystab: exact sensitivity analysis of piecewise-linear parametric convex
// programs. Loads a JSON problem file and reports the value function, its
// subdifferentials, the Lagrange multiplier sets and the multiplier-based
// estimates, all in exact rational arithmetic.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polystab/errors.hpp"
#include "polystab/io.hpp"
#include "polystab/multipliers.hpp"
#include "polystab/oracle.hpp"
#include "polystab/stability.hpp"

using namespace polystab;
using json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string file;
  std::string at;
  std::string ybar;
  std::string format = "text";
  bool strict = false;
  int dirs = 42;
  unsigned long seed = 0;
};

struct Rng {
  unsigned long long s;
  explicit Rng(unsigned long long seed) : s(seed) {}
  unsigned long long next() {
    s += 0x9e3779b97f4a7c15ULL;
    unsigned long long z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) {  // inclusive
    return lo + (long)(next() % (unsigned long long)(hi - lo + 1));
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw input_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_linear(const QVec& a) {
  std::string out;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    Rat c = a[i];
    if (out.empty()) {
      if (c == -1)
        out += "-";
      else if (c != 1)
        out += format_rational(c) + " ";
    } else {
      out += c < 0 ? " - " : " + ";
      Rat mag = abs(c);
      if (mag != 1) out += format_rational(mag) + " ";
    }
    out += "x" + std::to_string(i + 1);
  }
  if (out.empty()) out = "0";
  return out;
}

std::string format_tuple(const QVec& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_rational(v[i]);
  }
  return out + ")";
}

void print_polyhedron(std::ostream& os, const Polyhedron& p,
                      const std::string& indent) {
  if (p.is_empty()) {
    os << indent << "empty (dim " << p.dim() << ")\n";
    return;
  }
  const HRep& h = p.hrep();
  const VRep& v = p.vrep();
  if (h.ineqs.empty() && h.eqs.empty())
    os << indent << "all of Q^" << p.dim() << "\n";
  for (const LinRow& r : h.eqs)
    os << indent << format_linear(r.a) << " = " << format_rational(r.b) << "\n";
  for (const LinRow& r : h.ineqs)
    os << indent << format_linear(r.a) << " <= " << format_rational(r.b) << "\n";
  for (const QVec& q : v.points) os << indent << "point " << format_tuple(q) << "\n";
  for (const QVec& q : v.rays) os << indent << "ray   " << format_tuple(q) << "\n";
  for (const QVec& q : v.lines) os << indent << "line  " << format_tuple(q) << "\n";
}

json set_json(const Polyhedron& p) { return polyhedron_json(p); }

void print_named_set(std::ostream& os, const std::string& name,
                     const Polyhedron& p) {
  os << name << ":\n";
  print_polyhedron(os, p, "  ");
}

// Shared state threaded through every subcommand.
struct Context {
  Program p;
  QVec xbar;
  Options opt;
};

int run_solve(const Context& c) {
  Solution s = solve(c.p, c.xbar);
  json rep;
  rep["at"] = vector_json(c.xbar);
  if (s.kind == Solution::Finite) {
    rep["status"] = "finite";
    rep["value"] = rational_json(s.value);
    rep["ybar"] = vector_json(s.ybar);
    rep["argmin"] = set_json(s.argmin);
  } else if (s.kind == Solution::Unbounded) {
    rep["status"] = "unbounded";
    rep["value"] = "-inf";
  } else {
    rep["status"] = "infeasible";
    rep["value"] = "+inf";
  }
  if (c.opt.format == "json") {
    std::cout << rep.dump(2) << "\n";
    return 0;
  }
  std::cout << "mu" << format_tuple(c.xbar) << " = " << rep["value"].get<std::string>()
            << "  [" << rep["status"].get<std::string>() << "]\n";
  if (s.kind == Solution::Finite) {
    std::cout << "minimizer: " << format_tuple(s.ybar) << "\n";
    print_named_set(std::cout, "solution set", s.argmin);
  }
  return 0;
}

int run_set_command(const Context& c, bool singular) {
  Polyhedron sub = singular ? mu_singular_subdifferential(c.p, c.xbar)
                            : mu_subdifferential(c.p, c.xbar);
  json rep;
  rep["at"] = vector_json(c.xbar);
  const char* key = singular ? "singular_subdifferential" : "subdifferential";
  rep[key] = set_json(sub);
  if (c.opt.format == "json") {
    std::cout << rep.dump(2) << "\n";
    return 0;
  }
  print_named_set(std::cout,
                  std::string(singular ? "singular subdifferential of mu at "
                                       : "subdifferential of mu at ") +
                      format_tuple(c.xbar),
                  sub);
  return 0;
}

int run_multipliers(const Context& c) {
  QVec y;
  if (!c.opt.ybar.empty()) {
    y = parse_rational_csv(c.opt.ybar);
  } else {
    Solution s = solve(c.p, c.xbar);
    if (s.kind != Solution::Finite)
      throw precondition_error(
          "value function is not finite at the parameter; pass --ybar to pick "
          "an anchor");
    y = s.ybar;
  }
  Polyhedron l0 = lambda0_set(c.p, c.xbar, y);
  Polyhedron l = lambda_set(c.p, c.xbar, y);
  Polyhedron li = lambda_inf_set(c.p, c.xbar, y);
  json rep;
  rep["at"] = vector_json(c.xbar);
  rep["ybar"] = vector_json(y);
  rep["lambda0"] = set_json(l0);
  rep["lambda"] = set_json(l);
  rep["lambda_inf"] = set_json(li);
  if (c.opt.format == "json") {
    std::cout << rep.dump(2) << "\n";
    return 0;
  }
  std::cout << "anchor: x = " << format_tuple(c.xbar) << ", y = "
            << format_tuple(y) << "\n";
  print_named_set(std::cout, "lambda0 (sign and complementarity)", l0);
  print_named_set(std::cout, "lambda (stationary)", l);
  print_named_set(std::cout, "lambda_inf (horizon stationary)", li);
  return 0;
}

int run_estimate(const Context& c) {
  StabilityReport r = analyze_stability(c.p, c.xbar);
  if (r.status != Solution::Finite)
    throw precondition_error("value function is not finite at the parameter");
  json rep;
  rep["at"] = vector_json(c.xbar);
  rep["subdifferential"] = set_json(r.sub);
  rep["estimate"] = set_json(r.sub_estimate);
  rep["estimate_strict"] = r.sub_estimate_strict;
  rep["singular_subdifferential"] = set_json(r.sing);
  rep["singular_estimate"] = set_json(r.sing_estimate);
  rep["singular_estimate_strict"] = r.sing_estimate_strict;
  if (c.opt.format == "json") {
    std::cout << rep.dump(2) << "\n";
    return 0;
  }
  print_named_set(std::cout, "subdifferential of mu", r.sub);
  print_named_set(std::cout, "multiplier estimate", r.sub_estimate);
  std::cout << "estimate strict: " << (r.sub_estimate_strict ? "yes" : "no")
            << "\n";
  print_named_set(std::cout, "singular subdifferential of mu", r.sing);
  print_named_set(std::cout, "singular multiplier estimate", r.sing_estimate);
  std::cout << "singular estimate strict: "
            << (r.sing_estimate_strict ? "yes" : "no") << "\n";
  return 0;
}

int run_analyze(const Context& c) {
  StabilityReport r = analyze_stability(c.p, c.xbar);
  json rep;
  rep["at"] = vector_json(c.xbar);
  const char* status = r.status == Solution::Finite      ? "finite"
                       : r.status == Solution::Unbounded ? "unbounded"
                                                         : "infeasible";
  rep["status"] = status;
  if (r.status != Solution::Finite) {
    rep["value"] = r.status == Solution::Unbounded ? "-inf" : "+inf";
    rep["mu_domain"] = set_json(r.mu_dom);
    rep["mu_proper"] = r.mu_proper;
    rep["slater_ok"] = r.slater_ok;
    rep["slater_reason"] = r.slater_reason;
    if (c.opt.format == "json") {
      std::cout << rep.dump(2) << "\n";
      return 0;
    }
    std::cout << "mu" << format_tuple(c.xbar) << " = "
              << rep["value"].get<std::string>() << "  [" << status << "]\n";
    print_named_set(std::cout, "dom mu", r.mu_dom);
    std::cout << "mu proper: " << (r.mu_proper ? "yes" : "no") << "\n";
    std::cout << "no subdifferential report: mu is not finite here\n";
    return 0;
  }
  rep["value"] = rational_json(r.value);
  rep["ybar"] = vector_json(r.ybar);
  rep["lambda0"] = set_json(r.lambda0);
  rep["lambda"] = set_json(r.lambda);
  rep["lambda_inf"] = set_json(r.lambda_inf);
  rep["subdifferential"] = set_json(r.sub);
  rep["estimate"] = set_json(r.sub_estimate);
  rep["estimate_strict"] = r.sub_estimate_strict;
  rep["singular_subdifferential"] = set_json(r.sing);
  rep["singular_estimate"] = set_json(r.sing_estimate);
  rep["singular_estimate_strict"] = r.sing_estimate_strict;
  rep["mu_domain"] = set_json(r.mu_dom);
  rep["mu_proper"] = r.mu_proper;
  rep["singular_matches_domain_cone"] = r.singular_matches_domain_cone;
  rep["slater_ok"] = r.slater_ok;
  rep["slater_reason"] = r.slater_reason;
  if (c.opt.format == "json") {
    std::cout << rep.dump(2) << "\n";
    return 0;
  }
  std::cout << "mu" << format_tuple(c.xbar) << " = " << format_rational(r.value)
            << " at minimizer " << format_tuple(r.ybar) << "\n";
  print_named_set(std::cout, "lambda0", r.lambda0);
  print_named_set(std::cout, "lambda", r.lambda);
  print_named_set(std::cout, "lambda_inf", r.lambda_inf);
  print_named_set(std::cout, "subdifferential of mu", r.sub);
  print_named_set(std::cout, "multiplier estimate", r.sub_estimate);
  std::cout << "estimate strict: " << (r.sub_estimate_strict ? "yes" : "no")
            << "\n";
  print_named_set(std::cout, "singular subdifferential of mu", r.sing);
  print_named_set(std::cout, "singular multiplier estimate", r.sing_estimate);
  std::cout << "singular estimate strict: "
            << (r.sing_estimate_strict ? "yes" : "no") << "\n";
  print_named_set(std::cout, "dom mu", r.mu_dom);
  std::cout << "mu proper: " << (r.mu_proper ? "yes" : "no") << "\n";
  std::cout << "singular subdifferential equals domain normal cone: "
            << (r.singular_matches_domain_cone ? "yes" : "no") << "\n";
  std::cout << "slater point: " << (r.slater_ok ? "yes" : "no");
  if (!r.slater_ok) std::cout << " (" << r.slater_reason << ")";
  std::cout << "\n";
  return 0;
}

int run_verify(const Context& c) {
  bool all_ok = true;
  json checks = json::array();
  auto record = [&](const std::string& name, bool ok) {
    all_ok = all_ok && ok;
    json e;
    e["name"] = name;
    e["ok"] = ok;
    checks.push_back(std::move(e));
    if (c.opt.format != "json")
      std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
  };

  StabilityReport r = analyze_stability(c.p, c.xbar);
  record("three computation paths agree", true);
  record("subdifferential inside multiplier estimate",
         subset_of(r.sub, r.sub_estimate));
  record("singular subdifferential inside its estimate",
         subset_of(r.sing, r.sing_estimate));
  record("singular subdifferential equals domain normal cone",
         r.singular_matches_domain_cone);
  record("stationarity certificate at the minimizer",
         kkt_inclusion_check(c.p, c.xbar, r.ybar).holds);

  // support identity over +-unit vectors and seeded rational directions
  std::vector<QVec> dirs;
  for (int i = 0; i < c.p.nx; ++i) {
    QVec e = zeros(c.p.nx);
    e[(size_t)i] = 1;
    dirs.push_back(e);
    e[(size_t)i] = -1;
    dirs.push_back(e);
  }
  Rng rng(c.opt.seed);
  while ((int)dirs.size() < 2 * c.p.nx + c.opt.dirs) {
    QVec d = zeros(c.p.nx);
    bool nz = false;
    for (int i = 0; i < c.p.nx; ++i) {
      d[(size_t)i] = rat(rng.range(-5, 5), rng.range(1, 3));
      if (d[(size_t)i] != 0) nz = true;
    }
    if (nz) dirs.push_back(std::move(d));
  }
  bool support_ok = true;
  bool homog_ok = true;
  for (const QVec& d : dirs) {
    DirDerivative dd = directional_derivative(c.p, c.xbar, d);
    if (!support_matches(r.sub, d, dd)) support_ok = false;
    DirDerivative dd2 = directional_derivative(c.p, c.xbar, vscale(Rat(2), d));
    if (dd.finite != dd2.finite || (dd.finite && dd2.slope != dd.slope * 2))
      homog_ok = false;
  }
  record("support identity on " + std::to_string(dirs.size()) + " directions",
         support_ok);
  record("directional derivative positively homogeneous", homog_ok);

  if (c.opt.format == "json") {
    json rep;
    rep["at"] = vector_json(c.xbar);
    rep["checks"] = std::move(checks);
    rep["all_ok"] = all_ok;
    std::cout << rep.dump(2) << "\n";
  } else {
    std::cout << (all_ok ? "all checks passed\n" : "verification FAILED\n");
  }
  return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact subdifferentials of piecewise-linear parametric convex programs"};
  app.require_subcommand(1);

  Options opt;
  std::string cmd;
  for (const char* name : {"solve", "subdiff", "singular", "multipliers",
                           "estimate", "analyze", "verify"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("file", opt.file, "problem file (JSON)")->required();
    sub->add_option("--at", opt.at, "parameter point, comma-separated rationals")
        ->required();
    sub->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--strict", opt.strict,
                  "fail (exit 2) when the Slater hypothesis does not hold");
    if (std::string(name) == "multipliers")
      sub->add_option("--ybar", opt.ybar, "anchor minimizer, defaults to solve");
    if (std::string(name) == "verify") {
      sub->add_option("--dirs", opt.dirs, "random directions to test");
      sub->add_option("--seed", opt.seed, "direction seed");
    }
    sub->callback([&cmd, name]() { cmd = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    Context c{parse_program_json(read_file(opt.file)),
              parse_rational_csv(opt.at), opt};
    if ((int)c.xbar.size() != c.p.nx)
      throw input_error("--at expects " + std::to_string(c.p.nx) +
                        " coordinates, got " + std::to_string(c.xbar.size()));
    if (opt.strict) {
      SlaterResult sl = slater_point(c.p);
      if (!sl.ok) {
        std::cerr << "hypothesis failure: " << sl.reason << "\n";
        return 2;
      }
    }
    if (cmd == "solve") return run_solve(c);
    if (cmd == "subdiff") return run_set_command(c, false);
    if (cmd == "singular") return run_set_command(c, true);
    if (cmd == "multipliers") return run_multipliers(c);
    if (cmd == "estimate") return run_estimate(c);
    if (cmd == "analyze") return run_analyze(c);
    if (cmd == "verify") return run_verify(c);
    return 1;
  } catch (const qualification_error& e) {
    std::cerr << "hypothesis failure: " << e.what() << "\n";
    return 2;
  } catch (const internal_error& e) {
    std::cerr << "engine bug: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
