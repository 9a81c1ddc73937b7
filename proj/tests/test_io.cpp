#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>

#include "esc/io.hpp"
#include "support.hpp"

using namespace esc;

namespace {

RunConfig cfg_for(std::string type, int rank, std::string w = "") {
  RunConfig c;
  c.type = std::move(type);
  c.rank = rank;
  c.w = std::move(w);
  c.trunc = 3;
  c.points = 1;
  return c;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(ESC_BIN) + " " + args + " >/dev/null 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("config validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  auto bad = [](auto edit) {
    RunConfig c;
    edit(c);
    try {
      c.validate();
    } catch (const Error& e) {
      return e.code() == ErrorCode::InvalidArgument;
    }
    return false;
  };
  CHECK(bad([](RunConfig& c) { c.rank = 0; }));
  CHECK(bad([](RunConfig& c) { c.mode = "fast"; }));
  CHECK(bad([](RunConfig& c) { c.format = "xml"; }));
  CHECK(bad([](RunConfig& c) { c.points = 0; }));
  CHECK(bad([](RunConfig& c) { c.suite = "nope"; }));
  CHECK(bad([](RunConfig& c) { c.parabolic = {2, 2}; }));
  RunConfig e8;
  e8.type = "E8";
  CHECK_THROWS_AS(e8.validate(), Error);
  RunConfig ok;
  ok.parabolic = {2, 1};
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("parsing elements and lists") {
  auto gl = RootDatum::build(Kind::GL, 3);
  CHECK(parse_element(*gl, "123") == gl->id());
  CHECK(parse_element(*gl, "321") == gl->longest());
  CHECK(parse_element(*gl, "1,2,1") == gl->longest());
  CHECK(element_text(*gl, gl->longest()) == "321");
  CHECK_THROWS_AS(parse_element(*gl, "12"), Error);
  CHECK_THROWS_AS(parse_element(*gl, "113"), Error);
  CHECK_THROWS_AS(parse_element(*gl, "1,3"), Error);
  auto b2 = RootDatum::build(Kind::B2, 2);
  CHECK(parse_element(*b2, "id") == b2->id());
  CHECK(element_text(*b2, b2->id()) == "id");
  CHECK(parse_element(*b2, element_text(*b2, b2->longest())) == b2->longest());
  CHECK(parse_int_list("1,-2,3") == std::vector<int>{1, -2, 3});
  CHECK_THROWS_AS(parse_int_list("1,,2"), Error);
  CHECK_THROWS_AS(parse_int_list("1,x"), Error);
  CHECK(parse_rational("2/6") == Rational(1, 3));
  CHECK_THROWS_AS(parse_rational("1/"), Error);
}

TEST_CASE("serialization round trips") {
  auto gl = RootDatum::build(Kind::GL, 2);
  Frame f = oracle::symbolic_frame(*gl, 3);
  int a = gl->simple_root(1);
  Scalar s = f.Q(gl->l_coroot(a), gl->z_root(a));
  CHECK(scalar_from_json(scalar_to_json(s), f.ctx()).equals(s));
  json sj = series_to_json(s.num());
  CHECK(series_to_json(series_from_json(sj)) == sj);
  CHECK(poly_from_json(poly_to_json(s.num().c.begin()->second)) == s.num().c.begin()->second);

  auto kctx = gl->make_context(0);
  KScalar one = KScalar::constant(kctx, 1), y = KScalar::y(kctx);
  KScalar k = (one - KScalar::e(kctx, lv_neg(gl->z_root(a)))) / (one + y);
  CHECK(kscalar_from_json(kscalar_to_json(k), kctx).equals(k));

  WeightExpr w = polynomial_rep(3, {3, 2, 1});
  CHECK(weight_from_json(weight_to_json(w)) == w);

  RunConfig c = cfg_for("A", 2);
  c.suite = "ybe";
  ReportDocument r = run_suite(c);
  CHECK(ReportDocument::from_json(r.to_json()).to_json() == r.to_json());
  CHECK_THROWS_AS(ReportDocument::from_json(json{{"schema", "other"}}), Error);
}

TEST_CASE("localize") {
  auto doc = cmd_localize(cfg_for("A", 2, "12"));
  CHECK(doc["schema"] == "esc.localize/1");
  REQUIRE(doc["entries"].size() == 2);
  CHECK(doc["entries"][0]["zero"] == false);
  CHECK(doc["entries"][1]["zero"] == false);

  RunConfig c = cfg_for("A", 2, "21");
  c.mode = "symbolic";
  auto sym = cmd_localize(c);
  auto gl = RootDatum::build(Kind::GL, 2);
  std::mt19937_64 rng(0);
  Frame f = make_frames(*gl, 3, "symbolic", 1, rng).front();
  int a = gl->simple_root(1);
  auto& e = sym["entries"];
  CHECK(e[0]["zero"] == true);
  CHECK(scalar_from_json(e[1]["value"], f.ctx()).equals(f.Q(gl->l_coroot(a), gl->z_root(a))));

  RunConfig p = cfg_for("A", 3, "132");
  p.parabolic = {2, 1};
  auto pd = cmd_localize(p);
  CHECK(pd["w_in_WP"] == true);
  CHECK(pd["entries"].size() == 6);
  CHECK_THROWS_AS(cmd_localize(cfg_for("A", 2)), Error);
}

TEST_CASE("billey") {
  RunConfig c = cfg_for("A", 3, "213");
  c.word = "1,2,1";
  auto doc = cmd_billey(c);
  CHECK(doc["u"] == "321");
  CHECK(doc["terms"].size() == 2);
  CHECK(doc["beta"].size() == 3);
  c.word = "1";
  c.w = "321";
  auto none = cmd_billey(c);
  CHECK(none["terms"].empty());
  c.word = "1,4";
  CHECK_THROWS_AS(cmd_billey(c), Error);
}

TEST_CASE("gpd and poly") {
  auto doc = cmd_gpd(cfg_for("A", 4, "4321"));
  CHECK(doc["count"] == 1);
  auto d132 = cmd_gpd(cfg_for("A", 3, "132"));
  CHECK(d132["count"] == 5);
  CHECK(d132["dreams"][0].contains("rows"));
  CHECK(render(d132, "ascii").find("generic pipe dreams for w = 132") != std::string::npos);
  CHECK_THROWS_AS(cmd_gpd(cfg_for("B2", 2, "1")), Error);

  RunConfig c = cfg_for("A", 3, "321");
  c.format = "latex";
  auto poly = cmd_poly(c);
  CHECK(render(poly, "latex") == poly["latex"].get<std::string>() + "\n");
  CHECK(weight_from_json(poly["expr"]) == polynomial_rep(3, {3, 2, 1}));
}

TEST_CASE("ascii agrees with json") {
  auto doc = cmd_localize(cfg_for("A", 2, "21"));
  std::string txt = render(doc, "ascii");
  for (auto& e : doc["entries"])
    for (auto& t : e["text"]) CHECK(txt.find(t.get<std::string>()) != std::string::npos);
  CHECK(render(doc, "json") == doc.dump(2) + "\n");
}

TEST_CASE("suites are deterministic") {
  RunConfig c = cfg_for("A", 3);
  c.seed = 11;
  c.suite = "gpd";
  CHECK(run_suite(c).to_json().dump() == run_suite(c).to_json().dump());
  c.suite = "billey";
  auto a = run_suite(c).to_json(), b = run_suite(c).to_json();
  CHECK(a == b);
  CHECK(a["pass"] == true);
}

TEST_CASE("exit codes") {
  CHECK(run_cli("gpd --n 3 --w 132") == 0);
  CHECK(run_cli("gpd --n 3 --w 1x2") == 2);
  CHECK(run_cli("localize --mode fast --w 12 --n 2") == 2);
  CHECK(run_cli("nonsense") == 2);
  CHECK(run_cli("gpd --n 7 --w 7654321") == 4);
  CHECK(run_cli("verify --suite klimit --n 3") == 1);
}

}
