#include "sliceopt/lp_text.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace sliceopt {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // normalizes -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

double parse_number(std::string_view token, const std::string& context) {
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
    throw LpParseError("bad number '" + std::string(token) + "' in " + context);
  return value;
}

void render_terms(std::string& out, const std::vector<LpTerm>& terms, double constant) {
  bool first = true;
  for (const LpTerm& t : terms) {
    if (first) {
      if (t.coeff < 0.0) out += "- ";
      first = false;
    } else {
      out += t.coeff < 0.0 ? " - " : " + ";
    }
    out += format_number(std::fabs(t.coeff));
    out += ' ';
    out += t.var;
  }
  if (constant != 0.0) {
    if (first) {
      if (constant < 0.0) out += "- ";
      out += format_number(std::fabs(constant));
      return;
    }
    out += constant < 0.0 ? " - " : " + ";
    out += format_number(std::fabs(constant));
  } else if (first) {
    out += '0';
  }
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

/// Parses `[-] c [var] ((+|-) c [var])*`; coefficient-less constants fold
/// into `constant`. `end` points one past the last consumed token.
void parse_terms(const std::vector<std::string>& tokens, std::size_t begin, std::size_t end,
                 std::vector<LpTerm>& terms, double& constant, const std::string& context) {
  double sign = 1.0;
  bool expect_number = true;
  for (std::size_t pos = begin; pos < end;) {
    const std::string& tok = tokens[pos];
    if (expect_number) {
      if (tok == "-" && pos == begin) {
        sign = -1.0;
        ++pos;
        continue;
      }
      const double magnitude = parse_number(tok, context);
      ++pos;
      if (pos < end && tokens[pos] != "+" && tokens[pos] != "-") {
        terms.push_back({sign * magnitude, tokens[pos]});
        ++pos;
      } else {
        constant += sign * magnitude;
      }
      expect_number = false;
    } else {
      if (tok == "+") sign = 1.0;
      else if (tok == "-") sign = -1.0;
      else throw LpParseError("expected '+' or '-' but found '" + tok + "' in " + context);
      ++pos;
      expect_number = true;
    }
  }
  if (expect_number && begin != end)
    throw LpParseError("dangling sign in " + context);
}

Relation parse_relation(const std::string& tok, const std::string& context) {
  if (tok == "<=") return Relation::LessEq;
  if (tok == "=") return Relation::Equal;
  if (tok == ">=") return Relation::GreaterEq;
  throw LpParseError("bad relation '" + tok + "' in " + context);
}

}  // namespace

LpDocument lp_document(const ModelIR& model) {
  LpDocument doc;
  for (std::size_t c = 0; c < model.columns.size(); ++c) {
    if (model.objective[c] != 0.0) doc.objective.push_back({model.objective[c], model.columns[c].name});
  }
  doc.objective_constant = model.objective_constant;
  for (const ModelRow& row : model.rows) {
    LpTextRow out;
    out.name = row.name;
    for (const auto& [col, coeff] : row.terms) out.terms.push_back({coeff, model.columns[col].name});
    out.rel = row.rel;
    out.rhs = row.rhs;
    doc.rows.push_back(std::move(out));
  }
  for (const ModelColumn& col : model.columns) {
    doc.bounds.push_back({col.name, col.lower, col.upper});
    if (col.binary) doc.binaries.push_back(col.name);
  }
  return doc;
}

std::string render_lp_text(const LpDocument& doc) {
  std::string out;
  out += "Minimize\n obj: ";
  render_terms(out, doc.objective, doc.objective_constant);
  out += "\nSubject To\n";
  for (const LpTextRow& row : doc.rows) {
    out += ' ';
    out += row.name;
    out += ": ";
    render_terms(out, row.terms, 0.0);
    out += ' ';
    out += relation_symbol(row.rel);
    out += ' ';
    out += format_number(row.rhs);
    out += '\n';
  }
  out += "Bounds\n";
  for (const LpBound& b : doc.bounds) {
    out += ' ';
    out += format_number(b.lower);
    out += " <= ";
    out += b.var;
    if (std::isfinite(b.upper)) {
      out += " <= ";
      out += format_number(b.upper);
    }
    out += '\n';
  }
  if (!doc.binaries.empty()) {
    out += "Binaries\n";
    for (const std::string& var : doc.binaries) {
      out += ' ';
      out += var;
      out += '\n';
    }
  }
  out += "End\n";
  return out;
}

std::string write_lp_text(const ModelIR& model) { return render_lp_text(lp_document(model)); }

LpDocument parse_lp_text(const std::string& text) {
  enum class Section { Preamble, Objective, Rows, Bounds, Binaries, Done };
  LpDocument doc;
  Section section = Section::Preamble;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string context = "line " + std::to_string(lineno);
    if (line.empty() || line[0] == '\\') continue;
    if (line == "Minimize") { section = Section::Objective; continue; }
    if (line == "Subject To") { section = Section::Rows; continue; }
    if (line == "Bounds") { section = Section::Bounds; continue; }
    if (line == "Binaries") { section = Section::Binaries; continue; }
    if (line == "End") { section = Section::Done; continue; }

    const std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    switch (section) {
      case Section::Objective: {
        if (tokens[0] != "obj:") throw LpParseError("expected 'obj:' at " + context);
        parse_terms(tokens, 1, tokens.size(), doc.objective, doc.objective_constant, context);
        break;
      }
      case Section::Rows: {
        if (tokens[0].empty() || tokens[0].back() != ':')
          throw LpParseError("expected row name at " + context);
        if (tokens.size() < 3) throw LpParseError("truncated row at " + context);
        LpTextRow row;
        row.name = tokens[0].substr(0, tokens[0].size() - 1);
        row.rel = parse_relation(tokens[tokens.size() - 2], context);
        row.rhs = parse_number(tokens.back(), context);
        double constant = 0.0;
        parse_terms(tokens, 1, tokens.size() - 2, row.terms, constant, context);
        row.rhs -= constant;
        doc.rows.push_back(std::move(row));
        break;
      }
      case Section::Bounds: {
        if (tokens.size() == 5 && tokens[1] == "<=" && tokens[3] == "<=") {
          doc.bounds.push_back({tokens[2], parse_number(tokens[0], context),
                                parse_number(tokens[4], context)});
        } else if (tokens.size() == 3 && tokens[1] == "<=") {
          doc.bounds.push_back({tokens[2], parse_number(tokens[0], context),
                                std::numeric_limits<double>::infinity()});
        } else {
          throw LpParseError("bad bound at " + context);
        }
        break;
      }
      case Section::Binaries: {
        for (const std::string& tok : tokens) doc.binaries.push_back(tok);
        break;
      }
      case Section::Preamble:
      case Section::Done:
        throw LpParseError("unexpected content at " + context);
    }
  }
  if (section != Section::Done) throw LpParseError("missing 'End' line");
  return doc;
}

}  // namespace sliceopt
