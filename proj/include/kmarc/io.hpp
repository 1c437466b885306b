#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kmarc/arcs.hpp"
#include "kmarc/codes.hpp"
#include "kmarc/curve.hpp"
#include "kmarc/families.hpp"

namespace kmarc {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "kmarc-completion/1";
inline constexpr const char* kFamilySchema = "kmarc-family/1";
inline constexpr const char* kSpecialLinesSchema = "kmarc-special-lines/1";

// ---------------------------------------------------------------------------
// Elements, points, lines. Elements print as their base-p coefficient
// vector, constant digit first: "3" in F_7, "3,0" in F_25.
// ---------------------------------------------------------------------------

inline std::string elt_str(const Field& F, felt a) {
  std::string out;
  for (std::uint32_t i = 0; i < F.k(); ++i) {
    if (i) out += ',';
    out += std::to_string(F.digit(a, i));
  }
  return out;
}

inline felt parse_elt(const Field& F, const std::string& s) {
  std::vector<std::uint32_t> digits;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(',', pos);
    std::string piece = s.substr(pos, next == std::string::npos ? next : next - pos);
    if (piece.empty()) throw std::invalid_argument("empty digit in element '" + s + "'");
    for (char c : piece)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad digit in element '" + s + "'");
    digits.push_back(static_cast<std::uint32_t>(std::stoul(piece)));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (digits.size() != F.k())
    throw std::invalid_argument("element '" + s + "' needs exactly " + std::to_string(F.k()) +
                                " base-" + std::to_string(F.p()) + " digits");
  return F.from_digits(digits);
}

inline std::string point_str(const ProjPoint& P) {
  const Field& F = *P.F;
  return elt_str(F, P.x0) + ":" + elt_str(F, P.x1) + ":" + elt_str(F, P.x2);
}

inline std::string line_str(const ProjLine& L) {
  const Field& F = *L.F;
  return "L" + elt_str(F, L.a0) + ":" + elt_str(F, L.a1) + ":" + elt_str(F, L.a2);
}

namespace detail {
inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string::npos ? next : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}
}  // namespace detail

inline ProjPoint parse_point(const Field& F, const std::string& s) {
  auto parts = detail::split(s, ':');
  if (parts.size() != 3) throw std::invalid_argument("point '" + s + "' needs three coordinates");
  return make_point(F, parse_elt(F, parts[0]), parse_elt(F, parts[1]), parse_elt(F, parts[2]));
}

inline ProjLine parse_line(const Field& F, const std::string& s) {
  if (s.empty() || s[0] != 'L') throw std::invalid_argument("line '" + s + "' lacks the L prefix");
  auto parts = detail::split(s.substr(1), ':');
  if (parts.size() != 3) throw std::invalid_argument("line '" + s + "' needs three coefficients");
  return make_line(F, parse_elt(F, parts[0]), parse_elt(F, parts[1]), parse_elt(F, parts[2]));
}

// ---------------------------------------------------------------------------
// Field specs: "7", "5^2", or "5^2/2,0,1" with modulus coefficients constant
// first, monic leading 1 included.
// ---------------------------------------------------------------------------

inline std::string field_spec(const Field& F) {
  if (F.k() == 1) return std::to_string(F.p());
  std::string out = std::to_string(F.p()) + "^" + std::to_string(F.k()) + "/";
  for (std::size_t i = 0; i < F.modulus().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(F.modulus()[i]);
  }
  return out;
}

inline FieldPtr parse_field_spec(const std::string& s) {
  std::size_t caret = s.find('^');
  std::size_t slash = s.find('/');
  auto parse_num = [&](const std::string& piece) {
    if (piece.empty()) throw std::invalid_argument("empty number in field spec '" + s + "'");
    for (char c : piece)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad number in field spec '" + s + "'");
    return static_cast<std::uint32_t>(std::stoul(piece));
  };
  std::uint32_t p, k = 1;
  if (caret == std::string::npos) {
    p = parse_num(slash == std::string::npos ? s : s.substr(0, slash));
  } else {
    p = parse_num(s.substr(0, caret));
    std::size_t kend = slash == std::string::npos ? s.size() : slash;
    k = parse_num(s.substr(caret + 1, kend - caret - 1));
  }
  if (slash == std::string::npos) return Field::make(p, k);
  std::vector<std::uint32_t> mod;
  for (auto& piece : detail::split(s.substr(slash + 1), ',')) mod.push_back(parse_num(piece));
  return Field::make(p, k, std::move(mod));
}

// ---------------------------------------------------------------------------
// Polynomial text: monomials "coeff:exponents" joined by ';', coefficient as
// a base-p digit vector. One exponent for univariate, two for affine
// bivariate, three for homogeneous forms.
// ---------------------------------------------------------------------------

inline std::string unipoly_str(const UniPoly& f) {
  std::string out;
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (!f.c[i]) continue;
    if (!out.empty()) out += ';';
    out += elt_str(*f.F, f.c[i]) + ":" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

inline std::string homog_str(const HomogPoly& f) {
  std::string out;
  for (auto& m : f.t) {
    if (!out.empty()) out += ';';
    out += elt_str(*f.F, m.c) + ":" + std::to_string(m.e0) + "," + std::to_string(m.e1) + "," +
           std::to_string(m.e2);
  }
  return out.empty() ? "0" : out;
}

namespace detail {
struct ParsedMono {
  felt c;
  std::vector<std::uint32_t> exps;
};

inline std::vector<ParsedMono> parse_monomials(const Field& F, const std::string& s) {
  std::vector<ParsedMono> out;
  if (s == "0") return out;
  for (auto& term : split(s, ';')) {
    std::size_t colon = term.rfind(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("monomial '" + term + "' lacks a colon");
    ParsedMono m;
    m.c = parse_elt(F, term.substr(0, colon));
    for (auto& piece : split(term.substr(colon + 1), ',')) {
      if (piece.empty()) throw std::invalid_argument("empty exponent in '" + term + "'");
      for (char c : piece)
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw std::invalid_argument("bad exponent in '" + term + "'");
      m.exps.push_back(static_cast<std::uint32_t>(std::stoul(piece)));
    }
    out.push_back(std::move(m));
  }
  return out;
}
}  // namespace detail

inline UniPoly parse_unipoly(const Field& F, const std::string& s) {
  UniPoly f(F);
  for (auto& m : detail::parse_monomials(F, s)) {
    if (m.exps.size() != 1) throw std::invalid_argument("univariate monomial needs one exponent");
    if (f.c.size() <= m.exps[0]) f.c.resize(m.exps[0] + 1, 0);
    f.c[m.exps[0]] = F.add(f.c[m.exps[0]], m.c);
  }
  f.trim();
  return f;
}

// Human syntax for univariate polynomials: "x^3+1", "2x^5 - x + 6". Integer
// coefficients are read modulo q through the packed representation.
inline UniPoly parse_poly_expr(const Field& F, const std::string& expr) {
  UniPoly f(F);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
  };
  bool first = true;
  while (true) {
    skip_ws();
    if (i >= expr.size()) break;
    bool negative = false;
    if (expr[i] == '+' || expr[i] == '-') {
      negative = expr[i] == '-';
      ++i;
      skip_ws();
    } else if (!first) {
      throw std::invalid_argument("expected + or - in polynomial '" + expr + "'");
    }
    first = false;
    std::uint64_t coeff_num = 1;
    bool saw_digits = false;
    while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) {
      if (!saw_digits) coeff_num = 0;
      saw_digits = true;
      coeff_num = coeff_num * 10 + (expr[i] - '0');
      ++i;
    }
    std::uint32_t exp = 0;
    skip_ws();
    if (i < expr.size() && expr[i] == 'x') {
      ++i;
      exp = 1;
      if (i < expr.size() && expr[i] == '^') {
        ++i;
        if (i >= expr.size() || !std::isdigit(static_cast<unsigned char>(expr[i])))
          throw std::invalid_argument("missing exponent in polynomial '" + expr + "'");
        exp = 0;
        while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) {
          exp = exp * 10 + (expr[i] - '0');
          ++i;
        }
      }
    } else if (!saw_digits) {
      throw std::invalid_argument("dangling sign in polynomial '" + expr + "'");
    }
    felt c = F.from_int(coeff_num);
    if (negative) c = F.neg(c);
    if (c) {
      if (f.c.size() <= exp) f.c.resize(exp + 1, 0);
      f.c[exp] = F.add(f.c[exp], c);
    }
  }
  f.trim();
  return f;
}

// ---------------------------------------------------------------------------
// Curve spec files: a field line, a degree line, then one monomial per line.
// Monomials with three exponents are homogeneous; with two they are affine
// and get homogenized to the declared degree. '#' starts a comment.
// ---------------------------------------------------------------------------

struct CurveSpec {
  FieldPtr field;
  HomogPoly form;
};

inline void write_curve_spec(std::ostream& os, const Field& F, const HomogPoly& form) {
  os << "field: " << field_spec(F) << "\n";
  os << "degree: " << form.deg << "\n";
  for (auto& m : form.t)
    os << elt_str(F, m.c) << ":" << m.e0 << "," << m.e1 << "," << m.e2 << "\n";
}

inline CurveSpec read_curve_spec(std::istream& is) {
  FieldPtr field;
  std::optional<std::uint32_t> degree;
  std::vector<detail::ParsedMono> monos;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
    line = line.substr(start);
    if (line.empty()) continue;
    auto after_prefix = [&](std::size_t n) {
      std::string v = line.substr(n);
      std::size_t a = v.find_first_not_of(" \t");
      return a == std::string::npos ? std::string() : v.substr(a);
    };
    try {
      if (line.rfind("field:", 0) == 0) {
        field = parse_field_spec(after_prefix(6));
      } else if (line.rfind("degree:", 0) == 0) {
        degree = static_cast<std::uint32_t>(std::stoul(after_prefix(7)));
      } else {
        if (!field) throw std::invalid_argument("monomial before the field line");
        auto parsed = detail::parse_monomials(*field, line);
        monos.insert(monos.end(), parsed.begin(), parsed.end());
      }
    } catch (const std::exception& e) {
      throw std::invalid_argument("curve spec line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!field) throw std::invalid_argument("curve spec lacks a field line");
  if (!degree) throw std::invalid_argument("curve spec lacks a degree line");
  bool homog = true, affine = true;
  for (auto& m : monos) {
    if (m.exps.size() != 3) homog = false;
    if (m.exps.size() != 2) affine = false;
  }
  if (monos.empty()) throw std::invalid_argument("curve spec lists no monomials");
  if (homog) {
    HomogPoly form(*field, *degree);
    for (auto& m : monos) form.t.push_back({m.exps[0], m.exps[1], m.exps[2], m.c});
    form.normalize();
    return {field, std::move(form)};
  }
  if (affine) {
    BivarPoly g(*field);
    for (auto& m : monos) g.t.push_back({m.exps[0], m.exps[1], m.c});
    g.normalize();
    return {field, homogenize(g, *degree)};
  }
  throw std::invalid_argument("curve spec mixes affine and homogeneous monomials");
}

// ---------------------------------------------------------------------------
// Point files: one point per line, '#' comments, duplicates reported.
// ---------------------------------------------------------------------------

struct IngestResult {
  std::vector<ProjPoint> points;  // deduplicated, input order of first sight
  std::size_t duplicates = 0;
};

inline IngestResult ingest_points(std::istream& is, const Field& F) {
  IngestResult out;
  std::vector<bool> seen(plane_size(F), false);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) continue;
    ProjPoint P;
    try {
      P = parse_point(F, trimmed);
    } catch (const std::exception& e) {
      throw std::invalid_argument("points file line " + std::to_string(lineno) + ": " + e.what());
    }
    if (seen[point_index(P)]) {
      ++out.duplicates;
      continue;
    }
    seen[point_index(P)] = true;
    out.points.push_back(P);
  }
  return out;
}

inline void write_points(std::ostream& os, const std::vector<ProjPoint>& points) {
  for (auto& P : points) os << point_str(P) << "\n";
}

inline void census_csv(std::ostream& os, const Field& F, const std::vector<std::uint32_t>& counts) {
  os << "line_index,line,count\n";
  for (std::uint64_t i = 0; i < counts.size(); ++i)
    os << i << "," << line_str(line_from_index(F, i)) << "," << counts[i] << "\n";
}

// ---------------------------------------------------------------------------
// JSON documents. All containers are emitted in deterministic order; reports
// carry no timestamps (timing lives in a separate metadata file).
// ---------------------------------------------------------------------------

inline json contacts_json(const Field& F, const std::vector<Contact>& contacts) {
  json arr = json::array();
  for (auto& c : contacts)
    arr.push_back(json{{"point", point_str(c.P)},
                       {"mult", c.mult},
                       {"at_infinity", c.at_infinity},
                       {"singular", c.singular}});
  return arr;
}

inline const char* kind_name(SpecialLineKind k) {
  switch (k) {
    case SpecialLineKind::bitangent: return "bitangent";
    case SpecialLineKind::inflection_tangent: return "inflection_tangent";
    default: return "line_at_infinity";
  }
}

inline json report_json(const CompletionReport& rep) {
  const Field& F = *rep.field;
  json j;
  j["schema"] = kReportSchema;
  j["field"] = field_spec(F);
  j["curve"] = {{"degree", rep.curve_form.deg}, {"form", homog_str(rep.curve_form)}};
  j["m"] = rep.m;
  j["ext_degree"] = rep.ext_degree;
  j["policy"] = {{"fallback", rep.policy.allow_fallback},
                 {"debug_checks", rep.policy.debug_checks}};
  json singular = json::array();
  for (auto& P : rep.excluded_singular) singular.push_back(point_str(P));
  j["base"] = {{"affine", rep.base_affine},
               {"at_infinity", rep.base_infinity},
               {"singular_excluded", singular},
               {"size", rep.base_size},
               {"has_m_secant", rep.base_has_m_secant}};
  j["hypotheses"] = {{"char_exceeds_degree", rep.char_exceeds_degree},
                     {"singulars_at_infinity", rep.singulars_at_infinity}};
  json lines = json::array();
  for (auto& e : rep.special_lines) {
    json kinds = json::array();
    for (auto k : e.kinds) kinds.push_back(kind_name(k));
    json added = json::array();
    for (auto& P : e.added) added.push_back(point_str(P));
    json entry;
    entry["line"] = line_str(e.line);
    entry["kinds"] = kinds;
    if (e.source) {
      entry["detection"] = {{"ext_degree", e.source->ext_degree},
                            {"field", field_spec(*e.source->field)},
                            {"line", line_str(e.source->line)},
                            {"contacts", contacts_json(*e.source->field, e.source->contacts)}};
    }
    entry["added"] = added;
    lines.push_back(std::move(entry));
  }
  j["special_lines"] = lines;
  json fallback = json::array();
  for (auto& P : rep.fallback_added) fallback.push_back(point_str(P));
  j["fallback_added"] = fallback;
  json s = json::array();
  for (auto& P : rep.S) s.push_back(point_str(P));
  j["S"] = s;
  json fin = json::array();
  for (auto& P : rep.final_points) fin.push_back(point_str(P));
  j["final_points"] = fin;
  j["final_size"] = rep.final_size;
  j["certificates"] = {{"is_m_arc", rep.certified_m_arc ? "valid" : "failed"},
                       {"is_complete", rep.certified_complete},
                       {"recomputed_from_scratch", true}};
  auto acc = size_accounting(rep);
  j["accounting"] = {{"N", acc.N},
                     {"T", acc.T},
                     {"c", acc.c},
                     {"S_size", acc.S_size},
                     {"sum_H", acc.sum_H},
                     {"fallback_count", acc.fallback_count},
                     {"cap_m_N_plus_1", acc.cap},
                     {"per_line_cap_ok", acc.per_line_cap_ok},
                     {"totals_consistent", acc.totals_consistent},
                     {"within_cap", acc.within_cap}};
  return j;
}

inline json family_json(const FamilySpec& spec) {
  const Field& F = *spec.f.F;
  json j;
  j["schema"] = kFamilySchema;
  switch (spec.kind) {
    case FamilyKind::hyperelliptic: j["kind"] = "hyperelliptic"; break;
    case FamilyKind::hyperelliptic_twist: j["kind"] = "hyperelliptic_twist"; break;
    case FamilyKind::artin_schreier: j["kind"] = "artin_schreier"; break;
  }
  j["field"] = field_spec(F);
  j["f"] = unipoly_str(spec.f);
  if (spec.xi)
    j["xi"] = elt_str(F, *spec.xi);
  else
    j["xi"] = nullptr;
  j["m"] = spec.m;
  if (spec.genus)
    j["genus"] = *spec.genus;
  else
    j["genus"] = nullptr;
  json list = json::array();
  for (auto& item : spec.checklist)
    list.push_back(json{{"name", item.name}, {"pass", item.pass}, {"detail", item.detail}});
  j["checklist"] = list;
  j["admissible"] = spec.admissible();
  return j;
}

inline json tangency_records_json(const std::vector<TangencyRecord>& records) {
  json arr = json::array();
  for (auto& r : records) {
    json entry;
    entry["line"] = line_str(r.line);
    entry["ext_degree"] = r.ext_degree;
    entry["field"] = field_spec(*r.field);
    if (r.base_line)
      entry["base_line"] = line_str(*r.base_line);
    else
      entry["base_line"] = nullptr;
    entry["contacts"] = contacts_json(*r.field, r.contacts);
    arr.push_back(std::move(entry));
  }
  return arr;
}

inline void code_text(std::ostream& os, const LinearCode& code, const DistanceReport& dist,
                      bool nonextendable) {
  const Field& F = *code.field;
  os << "[" << code.length() << ",3," << dist.d << "]_" << F.q() << "\n";
  for (int row = 0; row < 3; ++row) {
    os << "row:";
    for (auto& col : code.columns) os << " " << elt_str(F, col[row]);
    os << "\n";
  }
  os << "max_line: " << line_str(dist.max_line) << "\n";
  os << "nonextendable: " << (nonextendable ? "true" : "false") << "\n";
}

}  // namespace kmarc
