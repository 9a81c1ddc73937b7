#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "esc/io.hpp"

using namespace esc;

namespace {

enum Exit { Ok = 0, CheckFailed = 1, BadArgs = 2, ComputeError = 3, TooLarge = 4 };

int emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return Ok;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    std::cerr << "esc: cannot write " << out << "\n";
    return BadArgs;
  }
  f << text;
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact elliptic Schubert calculus"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string parabolic, slope, out;

  auto common = [&](CLI::App* c) {
    c->add_option("--type", cfg.type, "GL (or A), SL, B2, G2")->capture_default_str();
    c->add_option("--rank,--n", cfg.rank, "n for GL_n, rank for SL")->capture_default_str();
    c->add_option("--w", cfg.w, "element: one-line permutation (GL) or comma-separated word");
    c->add_option("--word", cfg.word, "comma-separated word");
    c->add_option("--parabolic", parabolic, "composition of n, e.g. 2,1");
    c->add_option("--trunc", cfg.trunc, "q-truncation order N")->capture_default_str();
    c->add_option("--mode", cfg.mode, "eval or symbolic")->capture_default_str();
    c->add_option("--points", cfg.points, "evaluation points")->capture_default_str();
    c->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    c->add_option("--format", cfg.format, "json, ascii or latex")->capture_default_str();
    c->add_option("--out", out, "output file instead of stdout");
  };
  auto* loc = app.add_subcommand("localize", "localized elliptic Schubert class E_w(u) for all u");
  auto* bil = app.add_subcommand("billey", "Billey subword terms for E_w(u), u the product of the word");
  auto* gpd = app.add_subcommand("gpd", "generic pipe dreams of a permutation");
  auto* poly = app.add_subcommand("poly", "polynomial representative as a weight expression");
  auto* ver = app.add_subcommand("verify", "run identity checks");
  for (auto* c : {loc, bil, gpd, poly, ver}) common(c);
  ver->add_option("--suite", cfg.suite, "all, theta, billey, ybe, mirror, parabolic, gpd, poly, klimit, duality")
      ->capture_default_str();
  ver->add_option("--slope", slope, "slope s for the K-theory limit, e.g. 1/4");
  ver->add_flag("--timing", cfg.timing, "include per-check timings in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return BadArgs;
  }

  try {
    if (!parabolic.empty()) cfg.parabolic = parse_int_list(parabolic);
    if (!slope.empty()) cfg.slope = parse_rational(slope);
    cfg.validate();
    if (ver->parsed()) {
      ReportDocument rep = run_suite(cfg);
      std::string text = cfg.format == "json" ? rep.to_json(cfg.timing).dump(2) + "\n" : rep.to_ascii(cfg.timing);
      int rc = emit(text, out);
      if (rc != Ok) return rc;
      if (!rep.pass()) {
        for (auto& c : rep.checks)
          if (!c.pass) std::cerr << "FAIL " << c.name << " [" << c.anchor << "]\n";
        return CheckFailed;
      }
      return Ok;
    }
    json doc;
    if (loc->parsed()) doc = cmd_localize(cfg);
    if (bil->parsed()) doc = cmd_billey(cfg);
    if (gpd->parsed()) doc = cmd_gpd(cfg);
    if (poly->parsed()) doc = cmd_poly(cfg);
    return emit(render(doc, cfg.format), out);
  } catch (const Error& e) {
    std::cerr << "esc: " << error_name(e.code()) << ": " << e.what() << "\n";
    if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::UnsupportedType ||
        e.code() == ErrorCode::SlopeOutOfRange)
      return BadArgs;
    if (e.code() == ErrorCode::BoundExceeded) return TooLarge;
    return ComputeError;
  } catch (const std::exception& e) {
    std::cerr << "esc: " << e.what() << "\n";
    return ComputeError;
  }
}
