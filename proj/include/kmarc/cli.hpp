#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "kmarc/io.hpp"

namespace kmarc {

// Exit codes: 0 success, 1 hypothesis or verification failure, 2 input
// errors, 3 internal invariant breach.
enum ExitCode { kOk = 0, kVerificationFailure = 1, kInputError = 2, kInternalError = 3 };

enum class Command { points, special_lines, complete, verify, family, code, census };

struct RunConfig {
  Command command = Command::complete;
  std::string field_spec;

  // curve source: a spec file, or a family with a univariate f
  std::string curve_file;
  std::string family_kind;  // "hyperelliptic" or "artin-schreier"
  std::string f_expr;
  std::string xi;  // element digits; empty = none, "auto" = first non-square

  std::string arc_file;  // for verify / code / census
  std::uint32_t m = 0;
  std::uint32_t ext_degree = 1;
  bool allow_fallback = true;
  bool debug_checks = false;

  std::string out;         // primary output file; empty = stdout
  std::string points_out;  // optional point list (complete)
  bool write_meta = false; // timing sidecar next to `out`
  std::ostream* log = &std::cout;
};

namespace detail {

inline std::filesystem::path resolve_out(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("KMARC_OUT_DIR")) return std::filesystem::path(dir) / p;
  return p;
}

struct CurveBundle {
  FieldPtr field;
  std::optional<PlaneCurve> curve;
  std::optional<FamilySpec> family;
};

inline CurveBundle load_curve(const RunConfig& cfg) {
  CurveBundle out;
  if (!cfg.curve_file.empty()) {
    std::ifstream in(cfg.curve_file);
    if (!in) throw std::invalid_argument("cannot open curve spec '" + cfg.curve_file + "'");
    CurveSpec spec = read_curve_spec(in);
    out.field = spec.field;
    out.curve = PlaneCurve::create(spec.field, std::move(spec.form), true);
    return out;
  }
  if (cfg.family_kind.empty())
    throw std::invalid_argument("no curve given: use a curve file or a family");
  if (cfg.field_spec.empty()) throw std::invalid_argument("a family needs a field");
  out.field = parse_field_spec(cfg.field_spec);
  UniPoly f = parse_poly_expr(*out.field, cfg.f_expr);
  if (cfg.family_kind == "hyperelliptic") {
    std::optional<felt> xi;
    if (cfg.xi == "auto") {
      for (felt c = 1; c < out.field->q(); ++c)
        if (!out.field->is_square(c)) {
          xi = c;
          break;
        }
    } else if (!cfg.xi.empty()) {
      xi = parse_elt(*out.field, cfg.xi);
    }
    auto fam = hyperelliptic(out.field, f, xi);
    out.curve = std::move(fam.curve);
    out.family = std::move(fam.spec);
  } else if (cfg.family_kind == "artin-schreier") {
    auto fam = artin_schreier(out.field, f);
    out.curve = std::move(fam.curve);
    out.family = std::move(fam.spec);
  } else {
    throw std::invalid_argument("unknown family kind '" + cfg.family_kind + "'");
  }
  return out;
}

inline void emit(const RunConfig& cfg, const std::string& body) {
  if (cfg.out.empty()) {
    *cfg.log << body;
    return;
  }
  auto path = resolve_out(cfg.out);
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot write output '" + path.string() + "'");
  os << body;
}

inline Arc load_arc(const RunConfig& cfg, FieldPtr F) {
  if (cfg.arc_file.empty()) throw std::invalid_argument("this command needs an arc points file");
  std::ifstream in(cfg.arc_file);
  if (!in) throw std::invalid_argument("cannot open points file '" + cfg.arc_file + "'");
  auto ingest = ingest_points(in, *F);
  if (ingest.duplicates)
    *cfg.log << "warning: " << ingest.duplicates << " duplicate points ignored\n";
  return Arc::from_points(F, ingest.points, cfg.m);
}

inline int run_points(const RunConfig& cfg) {
  auto bundle = load_curve(cfg);
  auto pts = bundle.curve->rational_points();
  std::ostringstream body;
  body << "# field: " << field_spec(*bundle.field) << "\n";
  body << "# affine: " << pts.affine.size() << "  at_infinity: " << pts.at_infinity.size() << "\n";
  write_points(body, pts.affine);
  write_points(body, pts.at_infinity);
  emit(cfg, body.str());
  *cfg.log << "affine " << pts.affine.size() << ", at infinity " << pts.at_infinity.size() << "\n";
  return kOk;
}

inline int run_special_lines(const RunConfig& cfg) {
  auto bundle = load_curve(cfg);
  json j;
  j["schema"] = kSpecialLinesSchema;
  j["field"] = field_spec(*bundle.field);
  j["curve"] = homog_str(bundle.curve->form());
  j["ext_degree"] = cfg.ext_degree;
  j["bitangents"] = tangency_records_json(bundle.curve->rational_bitangents(cfg.ext_degree));
  j["inflection_tangents"] = tangency_records_json(bundle.curve->rational_inflection_tangents());
  emit(cfg, j.dump(2) + "\n");
  return kOk;
}

inline int run_complete(const RunConfig& cfg) {
  auto started = std::chrono::steady_clock::now();
  auto bundle = load_curve(cfg);
  std::uint32_t m = cfg.m ? cfg.m : bundle.curve->degree();
  CompletionPolicy policy;
  policy.allow_fallback = cfg.allow_fallback;
  policy.debug_checks = cfg.debug_checks;
  CompletionReport rep;
  try {
    rep = complete_arc(*bundle.curve, m, cfg.ext_degree, policy);
  } catch (const completion_error& e) {
    *cfg.log << "completion failed: " << e.what() << "\n";
    if (e.witness_line)
      *cfg.log << "witness line " << line_str(*e.witness_line) << " carries " << e.witness_count
               << " points\n";
    return kVerificationFailure;
  }
  json j = report_json(rep);
  if (bundle.family) {
    j["family"] = family_json(*bundle.family);
    if (!bundle.family->admissible())
      *cfg.log << "note: family hypotheses fail; run is unsupported by the theorem\n";
  }
  emit(cfg, j.dump(2) + "\n");
  if (!cfg.points_out.empty()) {
    std::ofstream os(resolve_out(cfg.points_out));
    if (!os) throw std::invalid_argument("cannot write points file '" + cfg.points_out + "'");
    write_points(os, rep.final_points);
  }
  if (cfg.write_meta && !cfg.out.empty()) {
    auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    json meta;
    meta["schema"] = "kmarc-meta/1";
    meta["elapsed_ms"] = elapsed.count();
    meta["timestamp"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    std::ofstream os(resolve_out(cfg.out + ".meta.json"));
    os << meta.dump(2) << "\n";
  }
  *cfg.log << "complete " << m << "-arc of size " << rep.final_size << " (base " << rep.base_size
           << ", added " << rep.S.size() << ", fallback " << rep.fallback_added.size() << ")\n";
  return kOk;
}

inline int run_verify(const RunConfig& cfg) {
  FieldPtr F = parse_field_spec(cfg.field_spec);
  if (cfg.m < 2) throw std::invalid_argument("verify needs m >= 2");
  Arc A = load_arc(cfg, F);
  auto check = is_m_arc(A);
  if (check.verdict == ArcVerdict::violation) {
    *cfg.log << "not an m-arc: line " << line_str(*check.witness) << " carries "
             << check.witness_count << " points (> " << cfg.m << ")\n";
    return kVerificationFailure;
  }
  if (check.verdict == ArcVerdict::no_m_secant) {
    *cfg.log << "not an m-arc: no line attains " << cfg.m << " points\n";
    return kVerificationFailure;
  }
  auto comp = is_complete(A);
  *cfg.log << "valid " << cfg.m << "-arc of size " << A.size() << "; complete: "
           << (comp.complete ? "yes" : "no") << "\n";
  if (!comp.complete) {
    *cfg.log << comp.uncovered.size() << " uncovered points; first: "
             << point_str(comp.uncovered.front()) << "\n";
    return kVerificationFailure;
  }
  return kOk;
}

inline int run_family(const RunConfig& cfg) {
  auto bundle = load_curve(cfg);
  if (!bundle.family) throw std::invalid_argument("family command needs a family, not a curve file");
  emit(cfg, family_json(*bundle.family).dump(2) + "\n");
  return bundle.family->admissible() ? kOk : kVerificationFailure;
}

inline int run_code(const RunConfig& cfg) {
  FieldPtr F = parse_field_spec(cfg.field_spec);
  if (cfg.m < 2) throw std::invalid_argument("code needs m >= 2");
  Arc A = load_arc(cfg, F);
  auto check = is_m_arc(A);
  if (check.verdict != ArcVerdict::valid) {
    *cfg.log << "points do not form a valid m-arc\n";
    return kVerificationFailure;
  }
  LinearCode code = code_from_arc(A);
  auto dist = min_distance(code);
  auto ext = is_nonextendable(A);
  std::ostringstream body;
  code_text(body, code, dist, ext.nonextendable);
  emit(cfg, body.str());
  return kOk;
}

inline int run_census(const RunConfig& cfg) {
  FieldPtr F = parse_field_spec(cfg.field_spec);
  RunConfig local = cfg;
  if (local.m < 2) local.m = 2;  // censuses are arc-parameter agnostic
  Arc A = load_arc(local, F);
  std::ostringstream body;
  census_csv(body, *F, A.census());
  emit(cfg, body.str());
  return kOk;
}

}  // namespace detail

inline int run(const RunConfig& cfg) {
  try {
    switch (cfg.command) {
      case Command::points: return detail::run_points(cfg);
      case Command::special_lines: return detail::run_special_lines(cfg);
      case Command::complete: return detail::run_complete(cfg);
      case Command::verify: return detail::run_verify(cfg);
      case Command::family: return detail::run_family(cfg);
      case Command::code: return detail::run_code(cfg);
      case Command::census: return detail::run_census(cfg);
    }
  } catch (const completion_error& e) {
    *cfg.log << "error: " << e.what() << "\n";
    return kVerificationFailure;
  } catch (const std::invalid_argument& e) {
    *cfg.log << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::logic_error& e) {
    *cfg.log << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    *cfg.log << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace kmarc
