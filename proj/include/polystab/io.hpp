#pragma once

#include <string>

#include "json.hpp"
#include "polystab/program.hpp"

namespace polystab {

// Versioned JSON problem format, schema_version 1. Rationals are integers or
// "p/q" strings; floating point numbers are rejected. Top level:
//   {"schema_version": 1, "nx": int, "ny": int,
//    "phi": {"pieces": [{"a": [rat x (nx+ny)], "b": rat}, ...],
//            "domain": {"ineqs": [{"a": [...], "b": rat}], "eqs": [...]}},
//    "g": [[piece, ...], ...],
//    "h": [{"xstar": [rat x nx], "ystar": [rat x ny], "alpha": rat}, ...],
//    "C": {"ineqs": [...], "eqs": [...]}}
// "domain", "g", "h" and "C" are optional; constraint functions take no
// domain block. Errors name the offending field.
Program parse_program_json(const std::string& text);

// Canonical serialization; parsing it back reproduces the program.
std::string format_program_json(const Program& p);

// Comma-separated rationals, e.g. "1/2,-3".
QVec parse_rational_csv(const std::string& text);

// Deterministic JSON views used by reports: canonical H-form rows and
// V-form generators side by side.
nlohmann::ordered_json rational_json(const Rat& r);
nlohmann::ordered_json vector_json(const QVec& v);
nlohmann::ordered_json polyhedron_json(const Polyhedron& p);

}  // namespace polystab
