#include <CLI11.hpp>

#include "kmarc/cli.hpp"

using kmarc::Command;
using kmarc::RunConfig;

namespace {

void add_curve_source(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--field", cfg.field_spec, "field spec: p, p^k, or p^k/c0,...,ck");
  cmd->add_option("--curve", cfg.curve_file, "curve spec file");
  cmd->add_option("--family", cfg.family_kind, "family kind: hyperelliptic or artin-schreier");
  cmd->add_option("--f", cfg.f_expr, "univariate f, e.g. \"x^3+1\"");
  cmd->add_option("--xi", cfg.xi, "twist scalar as base-p digits, or 'auto'");
}

void add_arc_source(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--field", cfg.field_spec, "field spec")->required();
  cmd->add_option("--arc", cfg.arc_file, "points file, one x0:x1:x2 per line")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"complete (k,m)-arcs in PG(2,q) from plane curves"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto* points = app.add_subcommand("points", "enumerate the rational points of a curve");
  add_curve_source(points, cfg);
  points->add_option("--out", cfg.out, "output file (default stdout)");
  points->callback([&] { cfg.command = Command::points; });

  auto* special = app.add_subcommand("special-lines", "bitangents and inflection tangents");
  add_curve_source(special, cfg);
  special->add_option("-e,--ext-degree", cfg.ext_degree, "contact search depth (1 or 2)")
      ->check(CLI::Range(1, 2));
  special->add_option("--out", cfg.out, "output file (default stdout)");
  special->callback([&] { cfg.command = Command::special_lines; });

  auto* complete = app.add_subcommand("complete", "build and certify a complete m-arc");
  add_curve_source(complete, cfg);
  complete->add_option("--m", cfg.m, "arc parameter (default: curve degree)");
  complete->add_option("-e,--ext-degree", cfg.ext_degree, "bitangent search depth (1 or 2)")
      ->check(CLI::Range(1, 2));
  complete->add_flag("--no-fallback", [&](std::int64_t) { cfg.allow_fallback = false; },
                     "fail instead of sweeping beyond the special lines");
  complete->add_flag("--debug-checks", cfg.debug_checks, "re-verify invariants after every step");
  complete->add_option("--out", cfg.out, "report file (default stdout)");
  complete->add_option("--points-out", cfg.points_out, "also write the final point set");
  complete->add_flag("--meta", cfg.write_meta, "write a timing sidecar next to the report");
  complete->callback([&] { cfg.command = Command::complete; });

  auto* verify = app.add_subcommand("verify", "check a point set for arc validity and completeness");
  add_arc_source(verify, cfg);
  verify->add_option("--m", cfg.m, "arc parameter")->required();
  verify->callback([&] { cfg.command = Command::verify; });

  auto* family = app.add_subcommand("family", "evaluate a family's hypothesis checklist");
  family->add_option("--kind", cfg.family_kind, "hyperelliptic or artin-schreier")->required();
  family->add_option("--field", cfg.field_spec, "field spec")->required();
  family->add_option("--f", cfg.f_expr, "univariate f")->required();
  family->add_option("--xi", cfg.xi, "twist scalar digits, or 'auto'");
  family->add_option("--out", cfg.out, "output file (default stdout)");
  family->callback([&] { cfg.command = Command::family; });

  auto* code = app.add_subcommand("code", "generator matrix and distance of the induced code");
  add_arc_source(code, cfg);
  code->add_option("--m", cfg.m, "arc parameter")->required();
  code->add_option("--out", cfg.out, "output file (default stdout)");
  code->callback([&] { cfg.command = Command::code; });

  auto* census = app.add_subcommand("census", "per-line intersection counts of a point set");
  add_arc_source(census, cfg);
  census->add_option("--out", cfg.out, "output file (default stdout)");
  census->callback([&] { cfg.command = Command::census; });

  CLI11_PARSE(app, argc, argv);
  return kmarc::run(cfg);
}
