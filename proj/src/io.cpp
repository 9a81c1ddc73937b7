#include "esc/io.hpp"

#include <algorithm>
#include <climits>
#include <iomanip>
#include <sstream>

namespace esc {

// ---------------------------------------------------------------- config

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw Error(ErrorCode::InvalidArgument, "empty entry in list '" + s + "'");
    size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size()) throw Error(ErrorCode::InvalidArgument, "not an integer: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

Rational parse_rational(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) throw Error(ErrorCode::InvalidArgument, "not a rational number: '" + s + "'");
  r.canonicalize();
  return r;
}

WeylId parse_element(const RootDatum& d, const std::string& s) {
  if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty Weyl group element");
  bool word = s.find(',') != std::string::npos || d.kind() != Kind::GL;
  if (word) {
    if (s == "id" || s == "e") return d.id();
    auto w = parse_int_list(s);
    for (int i : w)
      if (i < 1 || i > d.rank()) throw Error(ErrorCode::InvalidArgument, "simple reflection index out of range in '" + s + "'");
    return d.from_word(w);
  }
  if (int(s.size()) != d.dim()) throw Error(ErrorCode::InvalidArgument, "permutation '" + s + "' has the wrong length");
  std::vector<int> p;
  for (char c : s) {
    if (c < '1' || c > '9') throw Error(ErrorCode::InvalidArgument, "bad permutation '" + s + "'");
    p.push_back(c - '0');
  }
  auto q = p;
  std::sort(q.begin(), q.end());
  for (int i = 0; i < int(q.size()); ++i)
    if (q[size_t(i)] != i + 1) throw Error(ErrorCode::InvalidArgument, "'" + s + "' is not a permutation");
  return d.from_permutation(p);
}

std::string element_text(const RootDatum& d, WeylId w) {
  if (d.kind() == Kind::GL) return d.label(w);
  auto word = d.reduced_word(w);
  if (word.empty()) return "id";
  std::string s;
  for (int i : word) s += (s.empty() ? "" : ",") + std::to_string(i);
  return s;
}

void RunConfig::validate() const {
  parse_kind(type);
  if (rank < 1 || rank > 9) throw Error(ErrorCode::InvalidArgument, "rank must be between 1 and 9");
  if (trunc < 0 || trunc > 40) throw Error(ErrorCode::InvalidArgument, "trunc must be between 0 and 40");
  if (mode != "eval" && mode != "symbolic") throw Error(ErrorCode::InvalidArgument, "mode must be eval or symbolic");
  if (points < 1 || points > 16) throw Error(ErrorCode::InvalidArgument, "points must be between 1 and 16");
  if (format != "json" && format != "ascii" && format != "latex")
    throw Error(ErrorCode::InvalidArgument, "format must be json, ascii or latex");
  if (!parabolic.empty()) {
    int total = 0;
    for (int p : parabolic) {
      if (p < 1) throw Error(ErrorCode::InvalidArgument, "composition parts must be positive");
      total += p;
    }
    if (total != rank) throw Error(ErrorCode::InvalidArgument, "composition must sum to the rank");
    if (parse_kind(type) != Kind::GL) throw Error(ErrorCode::InvalidArgument, "compositions describe GL_n parabolics");
  }
  auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + suite + "'");
}

DatumPtr RunConfig::datum() const {
  Kind k = parse_kind(type);
  int n = rank;
  if (k == Kind::B2 || k == Kind::G2) n = 2;
  return RootDatum::build(k, n);
}

json RunConfig::to_json() const {
  json j;
  j["type"] = type;
  j["rank"] = rank;
  j["trunc"] = trunc;
  j["mode"] = mode;
  j["points"] = points;
  j["seed"] = seed;
  j["parabolic"] = parabolic;
  if (slope) j["slope"] = slope->get_str();
  return j;
}

std::vector<Frame> make_frames(const RootDatum& d, int trunc, const std::string& mode, int points, std::mt19937_64& rng) {
  auto ctx = d.make_context(trunc);
  std::vector<Frame> out;
  if (mode == "symbolic") {
    out.push_back(Frame::identity(std::make_shared<ThetaSink>(ctx)));
    return out;
  }
  for (int k = 0; k < points; ++k) {
    auto pt = std::make_shared<EvaluationPoint>(EvaluationPoint::random(ctx, rng));
    out.push_back(Frame::identity(std::make_shared<ThetaSink>(pt)));
  }
  return out;
}

// ---------------------------------------------------------------- serialization

json poly_to_json(const LaurentPoly& p) {
  json a = json::array();
  for (auto& [e, c] : p.terms()) a.push_back({{"coeff", c.get_str()}, {"exp", e.v}});
  return a;
}

LaurentPoly poly_from_json(const json& j) {
  LaurentPoly p;
  for (auto& t : j) p.add_term(ExponentVector(t.at("exp").get<std::vector<int>>()), parse_rational(t.at("coeff").get<std::string>()));
  return p;
}

json series_to_json(const QSeries& s) {
  json j;
  j["prec"] = s.prec == LONG_MAX ? json(nullptr) : json(s.prec);
  json t = json::object();
  for (auto& [e, p] : s.c)
    if (!p.is_zero()) t[std::to_string(e)] = poly_to_json(p);
  j["terms"] = t;
  return j;
}

QSeries series_from_json(const json& j) {
  QSeries s;
  s.prec = j.at("prec").is_null() ? LONG_MAX : j.at("prec").get<long>();
  for (auto& [k, v] : j.at("terms").items()) s.c[std::stol(k)] = poly_from_json(v);
  return s;
}

json scalar_to_json(const Scalar& s) {
  return {{"qden", s.ctx()->qden()}, {"num", series_to_json(s.num())}, {"den", series_to_json(s.den())}};
}

Scalar scalar_from_json(const json& j, CtxPtr ctx) {
  if (j.at("qden").get<int>() != ctx->qden()) throw Error(ErrorCode::ContextMismatch, "q denominator differs");
  return Scalar(std::move(ctx), series_from_json(j.at("num")), series_from_json(j.at("den")));
}

json kscalar_to_json(const KScalar& k) {
  return {{"num", poly_to_json(k.num())}, {"den", poly_to_json(k.den())}, {"text", k.to_string()}};
}

KScalar kscalar_from_json(const json& j, CtxPtr ctx) {
  return KScalar(std::move(ctx), poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

json weight_to_json(const WeightExpr& e) {
  using Op = WeightExpr::Op;
  switch (e.op) {
    case Op::P:
    case Op::Q: return {{"fn", e.op == Op::P ? "P" : "Q"}, {"arg1", e.x}, {"arg2", e.y}};
    case Op::One: return {{"op", "one"}};
    case Op::Zero: return {{"op", "zero"}};
    case Op::Sum:
    case Op::Product: {
      json k = json::array();
      for (auto& c : e.kids) k.push_back(weight_to_json(c));
      return {{"op", e.op == Op::Sum ? "sum" : "product"}, {"args", k}};
    }
  }
  return nullptr;
}

WeightExpr weight_from_json(const json& j) {
  if (j.contains("fn")) {
    std::string fn = j.at("fn");
    if (fn != "P" && fn != "Q") throw Error(ErrorCode::InvalidArgument, "unknown weight atom '" + fn + "'");
    return WeightExpr::atom(fn == "Q", j.at("arg1").get<LatticeVector>(), j.at("arg2").get<LatticeVector>());
  }
  std::string op = j.at("op");
  if (op == "one") return WeightExpr::one();
  if (op == "zero") return WeightExpr::zero();
  std::vector<WeightExpr> kids;
  for (auto& c : j.at("args")) kids.push_back(weight_from_json(c));
  // rebuild the node as stored; the smart constructors would re-simplify
  WeightExpr e;
  if (op == "sum")
    e.op = WeightExpr::Op::Sum;
  else if (op == "product")
    e.op = WeightExpr::Op::Product;
  else
    throw Error(ErrorCode::InvalidArgument, "unknown weight node '" + op + "'");
  e.kids = std::move(kids);
  return e;
}

// ---------------------------------------------------------------- reports

bool ReportDocument::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass; });
}

void ReportDocument::sort() {
  std::stable_sort(checks.begin(), checks.end(), [](const CheckEntry& a, const CheckEntry& b) { return a.name < b.name; });
}

json ReportDocument::to_json(bool timing) const {
  json j;
  j["schema"] = "esc.report/1";
  j["suite"] = suite;
  json arr = json::array();
  size_t failed = 0;
  for (auto& c : checks) {
    json e{{"name", c.name}, {"anchor", c.anchor}, {"params", c.params}, {"pass", c.pass}, {"detail", c.detail}};
    if (timing) e["ms"] = c.ms;
    arr.push_back(e);
    if (!c.pass) ++failed;
  }
  j["checks"] = arr;
  j["failed"] = failed;
  j["pass"] = failed == 0;
  return j;
}

ReportDocument ReportDocument::from_json(const json& j) {
  if (j.at("schema") != "esc.report/1") throw Error(ErrorCode::InvalidArgument, "not a report document");
  ReportDocument r;
  r.suite = j.at("suite");
  for (auto& e : j.at("checks")) {
    CheckEntry c;
    c.name = e.at("name");
    c.anchor = e.at("anchor");
    c.params = e.at("params");
    c.pass = e.at("pass");
    c.detail = e.at("detail");
    if (e.contains("ms")) c.ms = e.at("ms");
    r.checks.push_back(std::move(c));
  }
  return r;
}

std::string ReportDocument::to_ascii(bool timing) const {
  std::ostringstream o;
  for (auto& c : checks) {
    o << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) o << "  (" << c.detail << ")";
    if (timing) o << "  [" << std::fixed << std::setprecision(1) << c.ms << " ms]";
    o << "\n";
  }
  size_t failed = size_t(std::count_if(checks.begin(), checks.end(), [](const CheckEntry& c) { return !c.pass; }));
  o << suite << ": " << checks.size() - failed << "/" << checks.size() << " checks pass\n";
  return o.str();
}

// ---------------------------------------------------------------- commands

namespace {

std::string root_text(const RootDatum& d, int root) {
  const Root& r = d.roots()[size_t(root)];
  std::string s;
  if (d.kind() == Kind::GL) {
    for (size_t k = 0; k < r.chr.size(); ++k) {
      int c = r.chr[k];
      if (!c) continue;
      s += (c > 0 ? (s.empty() ? "" : "+") : "-") + std::string("e") + std::to_string(k + 1);
    }
    return s;
  }
  for (size_t k = 0; k < r.coeffs.size(); ++k) {
    int c = r.coeffs[k];
    if (!c) continue;
    std::string m = std::abs(c) == 1 ? "" : std::to_string(std::abs(c));
    s += (c > 0 ? (s.empty() ? "" : "+") : "-") + m + "a" + std::to_string(k + 1);
  }
  return s;
}

std::string coroot_text(const RootDatum& d, int root) {
  if (d.kind() == Kind::GL) return root_text(d, root);
  const Root& r = d.roots()[size_t(root)];
  std::string s;
  for (size_t k = 0; k < r.coroot.size(); ++k) {
    int c = r.coroot[k];
    if (!c) continue;
    std::string m = std::abs(c) == 1 ? "" : std::to_string(std::abs(c));
    s += (c > 0 ? (s.empty() ? "" : "+") : "-") + m + "a" + std::to_string(k + 1) + "^";
  }
  return s;
}

json values_json(const std::vector<Scalar>& vals) {
  json a = json::array();
  for (auto& v : vals) a.push_back(scalar_to_json(v));
  return a;
}

struct Setup {
  DatumPtr d;
  std::vector<Frame> frames;
};

Setup setup(const RunConfig& cfg) {
  cfg.validate();
  Setup s;
  s.d = cfg.datum();
  std::mt19937_64 rng(cfg.seed);
  s.frames = make_frames(*s.d, cfg.trunc, cfg.mode, cfg.points, rng);
  return s;
}

json base_doc(const RunConfig& cfg, const char* schema, const RootDatum& d, const std::vector<Frame>& frames) {
  json j;
  j["schema"] = schema;
  j["type"] = d.name();
  j["rank"] = cfg.rank;
  j["trunc"] = cfg.trunc;
  j["mode"] = cfg.mode;
  j["seed"] = cfg.seed;
  if (cfg.mode == "eval") {
    j["symbols"] = frames.front().sink()->point()->source()->names();
    json pts = json::array();
    for (auto& f : frames) {
      json vals = json::array();
      for (auto& v : f.sink()->point()->values()) vals.push_back(v.get_str());
      pts.push_back(vals);
    }
    j["points"] = pts;
  } else {
    j["symbols"] = frames.front().ctx()->names();
  }
  return j;
}

}  // namespace

json cmd_localize(const RunConfig& cfg) {
  Setup s = setup(cfg);
  const RootDatum& d = *s.d;
  if (cfg.w.empty()) throw Error(ErrorCode::InvalidArgument, "--w is required");
  WeylId w = parse_element(d, cfg.w);
  json doc = base_doc(cfg, "esc.localize/1", d, s.frames);
  doc["w"] = element_text(d, w);
  SchubertEngine eng(s.d);
  std::optional<ParabolicData> P;
  if (!cfg.parabolic.empty()) {
    P.emplace(ParabolicData::from_composition(s.d, cfg.parabolic));
    doc["parabolic"] = cfg.parabolic;
    doc["w_in_WP"] = P->in_WP_upper(w);
  }
  std::vector<LocalizedClass> cls;
  for (auto& f : s.frames) {
    if (P)
      cls.push_back(parabolic_class(eng, *P, w, f, P->in_WP_upper(w) ? ParabolicRoute::Billey : ParabolicRoute::Unrestricted));
    else
      cls.push_back(eng.elliptic_class(f, w));
  }
  json entries = json::array();
  for (WeylId u = 0; u < WeylId(d.order()); ++u) {
    json e{{"u", element_text(d, u)}, {"w", element_text(d, w)}};
    std::vector<Scalar> vals;
    for (auto& c : cls) vals.push_back(c(u));
    if (cfg.mode == "symbolic") {
      e["value"] = scalar_to_json(vals.front());
      e["text"] = vals.front().to_string();
    } else {
      e["values"] = values_json(vals);
      json t = json::array();
      for (auto& v : vals) t.push_back(v.to_string());
      e["text"] = t;
    }
    e["zero"] = std::all_of(vals.begin(), vals.end(), [](const Scalar& v) { return v.is_zero(); });
    entries.push_back(e);
  }
  doc["entries"] = entries;
  return doc;
}

json cmd_billey(const RunConfig& cfg) {
  Setup s = setup(cfg);
  const RootDatum& d = *s.d;
  if (cfg.word.empty() || cfg.w.empty()) throw Error(ErrorCode::InvalidArgument, "--word and --w are required");
  Word word = parse_int_list(cfg.word);
  for (int i : word)
    if (i < 1 || i > d.rank()) throw Error(ErrorCode::InvalidArgument, "word letter out of range for this rank");
  WeylId w = parse_element(d, cfg.w);
  json doc = base_doc(cfg, "esc.billey/1", d, s.frames);
  doc["word"] = word;
  doc["w"] = element_text(d, w);
  doc["u"] = element_text(d, d.from_word(word));
  json beta = json::array();
  for (int b : beta_sequence(d, word)) beta.push_back(root_text(d, b));
  doc["beta"] = beta;
  std::vector<BilleyResult> res;
  for (auto& f : s.frames) res.push_back(billey(d, word, w, f, nullptr, true));
  json terms = json::array();
  for (size_t t = 0; t < res.front().terms.size(); ++t) {
    const BilleyTerm& bt = res.front().terms[t];
    json J = json::array(), factors = json::array();
    for (size_t j = 0; j < bt.J.size(); ++j)
      if (bt.J[j]) J.push_back(j + 1);
    for (auto& fc : bt.factors)
      factors.push_back({{"j", fc.j},
                         {"kept", fc.in_J},
                         {"beta", root_text(d, fc.beta)},
                         {"gamma", coroot_text(d, fc.gamma)},
                         {"atom", std::string(fc.in_J ? "Q" : "P") + "(l_{" + coroot_text(d, fc.gamma) + "}, z_{" +
                                      root_text(d, fc.beta) + "})"}});
    terms.push_back({{"J", J}, {"factors", factors}});
  }
  doc["terms"] = terms;
  std::vector<Scalar> vals;
  for (auto& r : res) vals.push_back(r.value);
  if (cfg.mode == "symbolic")
    doc["value"] = scalar_to_json(vals.front());
  else
    doc["values"] = values_json(vals);
  return doc;
}

static std::vector<int> parse_perm_only(const RunConfig& cfg) {
  cfg.validate();
  if (parse_kind(cfg.type) != Kind::GL) throw Error(ErrorCode::UnsupportedType, "pipe dreams are type A only");
  if (cfg.w.empty()) throw Error(ErrorCode::InvalidArgument, "--w is required");
  auto gl = RootDatum::build(Kind::GL, cfg.rank);
  return gl->permutation(parse_element(*gl, cfg.w));
}

json cmd_gpd(const RunConfig& cfg) {
  auto w = parse_perm_only(cfg);
  int n = cfg.rank;
  auto dreams = gpd_enumerate(n, w);
  json doc;
  doc["schema"] = "esc.gpd-set/1";
  doc["n"] = n;
  doc["w"] = cfg.w;
  doc["count"] = dreams.size();
  json arr = json::array();
  for (auto& p : dreams) {
    json j = json::parse(render_dream(p, "json"));
    j["weight"] = weight_text(gpd_weight(p), n);
    j["weight_latex"] = weight_latex(gpd_weight(p), n);
    j["latex"] = render_dream(p, "latex");
    j["ascii"] = render_dream(p, "ascii");
    arr.push_back(j);
  }
  doc["dreams"] = arr;
  return doc;
}

json cmd_poly(const RunConfig& cfg) {
  auto w = parse_perm_only(cfg);
  int n = cfg.rank;
  WeightExpr e = polynomial_rep(n, w);
  json doc;
  doc["schema"] = "esc.poly/1";
  doc["n"] = n;
  doc["w"] = cfg.w;
  doc["expr"] = weight_to_json(e);
  doc["text"] = weight_text(e, n);
  doc["latex"] = weight_latex(e, n);
  return doc;
}

std::string render(const json& doc, const std::string& format) {
  if (format == "json") return doc.dump(2) + "\n";
  std::string schema = doc.value("schema", "");
  std::ostringstream o;
  bool tex = format == "latex";
  if (schema == "esc.report/1") return ReportDocument::from_json(doc).to_ascii();
  if (schema == "esc.gpd-set/1") {
    o << (tex ? "% " : "") << doc["count"].get<size_t>() << " generic pipe dreams for w = " << doc["w"].get<std::string>() << "\n";
    for (auto& p : doc["dreams"]) {
      if (tex)
        o << p["latex"].get<std::string>() << "\n\\quad " << p["weight_latex"].get<std::string>() << "\n\n";
      else
        o << p["ascii"].get<std::string>() << p["weight"].get<std::string>() << "\n\n";
    }
    return o.str();
  }
  if (schema == "esc.poly/1") return (tex ? doc["latex"] : doc["text"]).get<std::string>() + "\n";
  if (schema == "esc.localize/1") {
    for (auto& e : doc["entries"]) {
      o << "E_" << e["w"].get<std::string>() << "(" << e["u"].get<std::string>() << ") = ";
      if (e["text"].is_array()) {
        for (size_t k = 0; k < e["text"].size(); ++k) o << (k ? " ; " : "") << e["text"][k].get<std::string>();
      } else {
        o << e["text"].get<std::string>();
      }
      o << "\n";
    }
    return o.str();
  }
  if (schema == "esc.billey/1") {
    o << "word " << doc["word"].dump() << ", w = " << doc["w"].get<std::string>() << ", " << doc["terms"].size() << " terms\n";
    for (auto& t : doc["terms"]) {
      o << "J = " << t["J"].dump() << ":";
      for (auto& f : t["factors"]) o << " " << f["atom"].get<std::string>();
      o << "\n";
    }
    return o.str();
  }
  return doc.dump(2) + "\n";
}

}  // namespace esc
