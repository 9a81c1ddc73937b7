#pragma once

#include <json.hpp>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "esc/duality.hpp"
#include "esc/ktheory.hpp"
#include "esc/typea.hpp"

namespace esc {

using json = nlohmann::json;

struct RunConfig {
  std::string type = "A";
  int rank = 3;
  int trunc = 5;
  std::string mode = "eval";  // eval | symbolic
  int points = 2;
  unsigned long seed = 0;
  std::vector<int> parabolic;  // composition
  std::string format = "json";  // json | ascii | latex
  std::string suite = "all";
  std::optional<Rational> slope;
  std::string w, word;
  bool timing = false;

  // throws InvalidArgument
  void validate() const;
  DatumPtr datum() const;
  json to_json() const;
};

std::vector<int> parse_int_list(const std::string& s);
Rational parse_rational(const std::string& s);
// one-line notation for GL (e.g. 321) or a comma-separated reduced word
WeylId parse_element(const RootDatum& d, const std::string& s);
std::string element_text(const RootDatum& d, WeylId w);

// one frame per evaluation point, or a single symbolic frame; all randomness
// comes from rng
std::vector<Frame> make_frames(const RootDatum& d, int trunc, const std::string& mode, int points, std::mt19937_64& rng);

// ---- serialization

json series_to_json(const QSeries& s);
QSeries series_from_json(const json& j);
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j, CtxPtr ctx);
json poly_to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(const json& j);
json kscalar_to_json(const KScalar& k);
KScalar kscalar_from_json(const json& j, CtxPtr ctx);
json weight_to_json(const WeightExpr& e);
WeightExpr weight_from_json(const json& j);

// ---- reports

struct CheckEntry {
  std::string name;
  std::string anchor;  // the identity being checked
  json params;
  bool pass = false;
  std::string detail;
  double ms = 0;
};

struct ReportDocument {
  std::string suite;
  std::vector<CheckEntry> checks;
  bool pass() const;
  void sort();
  json to_json(bool timing = false) const;
  static ReportDocument from_json(const json& j);
  std::string to_ascii(bool timing = false) const;
};

const std::vector<std::string>& suite_names();
// runs one suite or all of them
ReportDocument run_suite(const RunConfig& cfg);

// ---- commands; each returns a document carrying a "schema" field

json cmd_localize(const RunConfig& cfg);
json cmd_billey(const RunConfig& cfg);
json cmd_gpd(const RunConfig& cfg);
json cmd_poly(const RunConfig& cfg);

// renders a command document in the configured format
std::string render(const json& doc, const std::string& format);

}  // namespace esc
