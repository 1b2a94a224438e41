#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sliceopt/formulation.hpp"
#include "sliceopt/relation.hpp"

namespace sliceopt {

/// Text-level view of a linear program, used for the LP interchange format.
/// Keeps variables as opaque names and columns in Bounds-section order, so a
/// rendered document parses back to an identical value.
struct LpTerm {
  double coeff = 0.0;
  std::string var;
  bool operator==(const LpTerm&) const = default;
};

struct LpTextRow {
  std::string name;
  std::vector<LpTerm> terms;
  Relation rel = Relation::LessEq;
  double rhs = 0.0;
  bool operator==(const LpTextRow&) const = default;
};

struct LpBound {
  std::string var;
  double lower = 0.0;
  double upper = 0.0;  // +inf when unbounded above
  bool operator==(const LpBound&) const = default;
};

struct LpDocument {
  std::vector<LpTerm> objective;
  double objective_constant = 0.0;
  std::vector<LpTextRow> rows;
  std::vector<LpBound> bounds;        // one entry per column, in column order
  std::vector<std::string> binaries;  // subset of the bound variables
  bool operator==(const LpDocument&) const = default;
};

class LpParseError : public std::runtime_error {
 public:
  explicit LpParseError(const std::string& what) : std::runtime_error(what) {}
};

LpDocument lp_document(const ModelIR& model);
std::string render_lp_text(const LpDocument& doc);
/// render_lp_text(lp_document(model)).
std::string write_lp_text(const ModelIR& model);
/// Inverse of render_lp_text; parse(render(d)) == d and render(parse(t)) == t.
LpDocument parse_lp_text(const std::string& text);

/// Shortest decimal rendering that parses back to the same double.
std::string format_number(double value);

}  // namespace sliceopt
