#include "polystab/io.hpp"

#include <initializer_list>
#include <string>
#include <vector>

#include "polystab/errors.hpp"

namespace polystab {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw input_error(where + ": " + what);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) known = true;
    if (!known) fail(where, "unknown key \"" + item.key() + "\"");
  }
}

Rat parse_rat(const json& j, const std::string& where) {
  if (j.is_number_float())
    fail(where, "floating point numbers are not accepted, write \"p/q\"");
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const input_error& e) {
      fail(where, e.what());
    }
  }
  fail(where, "expected a rational as an integer or a \"p/q\" string");
}

QVec parse_vec(const json& j, int expect, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of rationals");
  if ((int)j.size() != expect)
    fail(where, "expected " + std::to_string(expect) + " entries, got " +
                    std::to_string(j.size()));
  QVec v;
  for (size_t i = 0; i < j.size(); ++i)
    v.push_back(parse_rat(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

LinRow parse_linrow(const json& j, int dim, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object with \"a\" and \"b\"");
  check_keys(j, {"a", "b"}, where);
  if (!j.contains("a") || !j.contains("b"))
    fail(where, "expected both \"a\" and \"b\"");
  return LinRow{parse_vec(j["a"], dim, where + ".a"),
                parse_rat(j["b"], where + ".b")};
}

HRep parse_block(const json& j, int dim, const std::string& where) {
  HRep h;
  h.dim = dim;
  if (!j.is_object())
    fail(where, "expected an object with \"ineqs\" and \"eqs\"");
  check_keys(j, {"ineqs", "eqs"}, where);
  auto rows = [&](const char* key, std::vector<LinRow>& dst) {
    if (!j.contains(key)) return;
    const json& arr = j[key];
    std::string w = where + "." + key;
    if (!arr.is_array()) fail(w, "expected an array of rows");
    for (size_t i = 0; i < arr.size(); ++i)
      dst.push_back(parse_linrow(arr[i], dim, w + "[" + std::to_string(i) + "]"));
  };
  rows("ineqs", h.ineqs);
  rows("eqs", h.eqs);
  return h;
}

void parse_pieces(const json& j, int dim, const std::string& where,
                  std::vector<QVec>& grads, QVec& offs) {
  if (!j.is_array() || j.empty())
    fail(where, "expected a non-empty array of pieces");
  for (size_t i = 0; i < j.size(); ++i) {
    LinRow r = parse_linrow(j[i], dim, where + "[" + std::to_string(i) + "]");
    grads.push_back(std::move(r.a));
    offs.push_back(r.b);
  }
}

PwlFunction parse_objective(const json& j, int dim, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  check_keys(j, {"pieces", "domain"}, where);
  if (!j.contains("pieces")) fail(where, "missing \"pieces\"");
  std::vector<QVec> grads;
  QVec offs;
  parse_pieces(j["pieces"], dim, where + ".pieces", grads, offs);
  Polyhedron dom = Polyhedron::full(dim);
  if (j.contains("domain"))
    dom = Polyhedron::from_h(parse_block(j["domain"], dim, where + ".domain"));
  try {
    return make_pwl(grads, offs, dom);
  } catch (const input_error& e) {
    fail(where, e.what());
  }
}

PwlFunction parse_constraint(const json& j, int dim, const std::string& where) {
  if (j.is_object()) {
    if (j.contains("domain"))
      fail(where, "constraint functions take no domain block");
    check_keys(j, {"pieces"}, where);
    if (!j.contains("pieces")) fail(where, "missing \"pieces\"");
    return parse_constraint(j["pieces"], dim, where + ".pieces");
  }
  std::vector<QVec> grads;
  QVec offs;
  parse_pieces(j, dim, where, grads, offs);
  try {
    return make_pwl(grads, offs, Polyhedron::full(dim));
  } catch (const input_error& e) {
    fail(where, e.what());
  }
}

int parse_size(const json& j, const char* key) {
  if (!j.contains(key)) fail("problem", std::string("missing \"") + key + "\"");
  const json& v = j[key];
  if (!v.is_number_integer() || v.get<long>() < 1)
    fail(std::string("problem.") + key, "expected a positive integer");
  return (int)v.get<long>();
}

}  // namespace

Program parse_program_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("problem", "expected a JSON object");
  check_keys(j, {"schema_version", "nx", "ny", "phi", "g", "h", "C"},
             "problem");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<long>() != 1)
    fail("problem.schema_version", "expected 1");
  int nx = parse_size(j, "nx");
  int ny = parse_size(j, "ny");
  const int dim = nx + ny;
  if (!j.contains("phi")) fail("problem", "missing \"phi\"");
  PwlFunction phi = parse_objective(j["phi"], dim, "phi");

  std::vector<PwlFunction> g;
  if (j.contains("g")) {
    if (!j["g"].is_array()) fail("g", "expected an array of constraints");
    for (size_t i = 0; i < j["g"].size(); ++i)
      g.push_back(parse_constraint(j["g"][i], dim,
                                   "g[" + std::to_string(i) + "]"));
  }

  std::vector<LinRow> h;
  if (j.contains("h")) {
    if (!j["h"].is_array()) fail("h", "expected an array of equality rows");
    for (size_t i = 0; i < j["h"].size(); ++i) {
      const json& row = j["h"][i];
      std::string where = "h[" + std::to_string(i) + "]";
      if (!row.is_object()) fail(where, "expected an object");
      check_keys(row, {"xstar", "ystar", "alpha"}, where);
      if (!row.contains("xstar") || !row.contains("ystar") ||
          !row.contains("alpha"))
        fail(where, "expected \"xstar\", \"ystar\" and \"alpha\"");
      QVec a = parse_vec(row["xstar"], nx, where + ".xstar");
      QVec ay = parse_vec(row["ystar"], ny, where + ".ystar");
      h.push_back(LinRow{vconcat(a, ay), parse_rat(row["alpha"], where + ".alpha")});
    }
  }

  Polyhedron C = Polyhedron::full(dim);
  if (j.contains("C")) C = Polyhedron::from_h(parse_block(j["C"], dim, "C"));

  try {
    return make_program(nx, ny, phi, g, h, C);
  } catch (const input_error& e) {
    fail("problem", e.what());
  }
}

namespace {

json row_json(const LinRow& r) {
  json o;
  o["a"] = vector_json(r.a);
  o["b"] = rational_json(r.b);
  return o;
}

json block_json(const HRep& h) {
  json o;
  o["ineqs"] = json::array();
  for (const LinRow& r : h.ineqs) o["ineqs"].push_back(row_json(r));
  o["eqs"] = json::array();
  for (const LinRow& r : h.eqs) o["eqs"].push_back(row_json(r));
  return o;
}

bool is_full(const Polyhedron& p) {
  return p.hrep().ineqs.empty() && p.hrep().eqs.empty();
}

json pieces_json(const PwlFunction& f) {
  json arr = json::array();
  for (size_t i = 0; i < f.grads.size(); ++i) {
    json piece;
    piece["a"] = vector_json(f.grads[i]);
    piece["b"] = rational_json(f.offsets[i]);
    arr.push_back(std::move(piece));
  }
  return arr;
}

}  // namespace

std::string format_program_json(const Program& p) {
  json j;
  j["schema_version"] = 1;
  j["nx"] = p.nx;
  j["ny"] = p.ny;
  j["phi"] = json::object();
  j["phi"]["pieces"] = pieces_json(p.phi);
  if (!is_full(p.phi.domain)) j["phi"]["domain"] = block_json(p.phi.domain.hrep());
  if (!p.g.empty()) {
    j["g"] = json::array();
    for (const PwlFunction& gi : p.g) j["g"].push_back(pieces_json(gi));
  }
  if (!p.h.empty()) {
    j["h"] = json::array();
    for (const LinRow& r : p.h) {
      json row;
      row["xstar"] = vector_json(vslice(r.a, 0, p.nx));
      row["ystar"] = vector_json(vslice(r.a, p.nx, p.nx + p.ny));
      row["alpha"] = rational_json(r.b);
      j["h"].push_back(std::move(row));
    }
  }
  if (!is_full(p.C)) j["C"] = block_json(p.C.hrep());
  return j.dump(2) + "\n";
}

QVec parse_rational_csv(const std::string& text) {
  QVec out;
  size_t start = 0;
  if (text.empty()) throw input_error("empty rational list");
  while (true) {
    size_t comma = text.find(',', start);
    std::string tok = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_rational(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

json rational_json(const Rat& r) { return json(format_rational(r)); }

json vector_json(const QVec& v) {
  json arr = json::array();
  for (const Rat& r : v) arr.push_back(rational_json(r));
  return arr;
}

json polyhedron_json(const Polyhedron& p) {
  json o;
  o["dim"] = p.dim();
  o["empty"] = p.is_empty();
  json h = block_json(p.hrep());
  o["ineqs"] = std::move(h["ineqs"]);
  o["eqs"] = std::move(h["eqs"]);
  auto vecs = [&](const std::vector<QVec>& vs) {
    json arr = json::array();
    for (const QVec& v : vs) arr.push_back(vector_json(v));
    return arr;
  };
  o["points"] = vecs(p.vrep().points);
  o["rays"] = vecs(p.vrep().rays);
  o["lines"] = vecs(p.vrep().lines);
  return o;
}

}  // namespace polystab
