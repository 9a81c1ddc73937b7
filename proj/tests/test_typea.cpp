#include <doctest.h>

#include <algorithm>
#include <map>

#include "support.hpp"

using namespace esc;

namespace {

// pipe alphabet: x_1..x_n, y_1..y_n, l_1..l_n, h
struct PV {
  int n;
  LatticeVector v;
  explicit PV(int n_) : n(n_), v(size_t(3 * n_ + 1), 0) {}
  PV& x(int i, int c = 1) { v[size_t(i - 1)] += c; return *this; }
  PV& y(int j, int c = 1) { v[size_t(n + j - 1)] += c; return *this; }
  PV& l(int i, int c = 1) { v[size_t(2 * n + i - 1)] += c; return *this; }
  PV& h(int c = 1) { v[size_t(3 * n)] += c; return *this; }
};

WeightExpr A(bool q, const PV& a, const PV& b) { return WeightExpr::atom(q, a.v, b.v); }

// Every tiling of the n x n grid by the seven tiles, kept when n pipes entering
// on the left all leave through the top with each tile used exactly as drawn.
// Tile sides: X: L->R, B->T; B: L->T, B->R; H: L->R; J: L->T; I: B->T; F: B->R.
std::map<std::vector<int>, std::vector<std::string>> brute_force_tilings(int n) {
  const std::string letters = "XBHJIFO";
  size_t cells = size_t(n * n), total = 1;
  for (size_t k = 0; k < cells; ++k) total *= 7;
  std::map<std::vector<int>, std::vector<std::string>> out;
  std::vector<int> code(cells, 0);
  for (size_t c = 0; c < total; ++c) {
    size_t r = c;
    for (size_t k = 0; k < cells; ++k) {
      code[k] = int(r % 7);
      r /= 7;
    }
    auto tile = [&](int i, int j) { return letters[size_t(code[size_t((i - 1) * n + (j - 1))])]; };
    std::vector<int> used_left(cells, 0), used_bottom(cells, 0), perm;
    bool ok = true;
    for (int p = 1; p <= n && ok; ++p) {
      int i = p, j = 1;
      bool from_left = true;
      for (;;) {
        char t = tile(i, j);
        size_t k = size_t((i - 1) * n + (j - 1));
        (from_left ? used_left : used_bottom)[k]++;
        bool right;
        if (from_left && (t == 'X' || t == 'H')) right = true;
        else if (from_left && (t == 'B' || t == 'J')) right = false;
        else if (!from_left && (t == 'B' || t == 'F')) right = true;
        else if (!from_left && (t == 'X' || t == 'I')) right = false;
        else { ok = false; break; }
        if (right) {
          if (++j > n) { ok = false; break; }
          from_left = true;
        } else {
          if (--i < 1) { perm.push_back(j); break; }
          from_left = false;
        }
      }
    }
    if (!ok) continue;
    for (int i = 1; i <= n && ok; ++i)
      for (int j = 1; j <= n && ok; ++j) {
        char t = tile(i, j);
        size_t k = size_t((i - 1) * n + (j - 1));
        int want_l = (t == 'X' || t == 'B' || t == 'H' || t == 'J'), want_b = (t == 'X' || t == 'B' || t == 'I' || t == 'F');
        ok = used_left[k] == want_l && used_bottom[k] == want_b;
      }
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < n && ok; ++k) ok = sorted[size_t(k)] == k + 1;
    if (!ok) continue;
    std::string s;
    for (int i = 1; i <= n; ++i) {
      if (i > 1) s += '/';
      for (int j = 1; j <= n; ++j) s += tile(i, j);
    }
    out[perm].push_back(s);
  }
  for (auto& [p, v] : out) std::sort(v.begin(), v.end());
  return out;
}

std::vector<std::string> atoms_sorted(const WeightExpr& e) {
  std::vector<std::string> out;
  std::function<void(const WeightExpr&)> rec = [&](const WeightExpr& x) {
    if (x.op == WeightExpr::Op::Product || (x.op == WeightExpr::Op::Sum && x.kids.size() == 1))
      for (auto& k : x.kids) rec(k);
    else if (x.op != WeightExpr::Op::One)
      out.push_back(weight_to_json(x).dump());
  };
  rec(e);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("typea") {

TEST_CASE("u0 has length n^2") {
  auto d = u0_data(3);
  CHECK(d.word.size() == 9);
  auto gl = RootDatum::build(Kind::GL, 6);
  CHECK(gl->length(gl->from_word(d.word)) == 9);
}

TEST_CASE("grid enumeration against brute force") {
  for (int n : {1, 2}) {
    auto bf = brute_force_tilings(n);
    std::vector<int> p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p[size_t(i)] = i + 1;
    size_t total = 0;
    do {
      std::vector<std::string> got;
      for (auto& d : gpd_enumerate(n, p)) got.push_back(d.tile_string());
      std::sort(got.begin(), got.end());
      CHECK(got == bf[p]);
      total += got.size();
    } while (std::next_permutation(p.begin(), p.end()));
    size_t bf_total = 0;
    for (auto& [k, v] : bf) bf_total += v.size();
    CHECK(total == bf_total);
  }
  // frozen from the brute force above
  CHECK(gpd_enumerate(2, {1, 2}).size() == 2);
  CHECK(gpd_enumerate(1, {1}).size() == 1);
  CHECK(gpd_enumerate(1, {1})[0].tile_string() == "J");
}

TEST_CASE("grid and subword enumerations agree on S3") {
  std::vector<int> p{1, 2, 3};
  std::vector<size_t> counts;
  do {
    auto a = gpd_enumerate(3, p);
    auto b = gpd_from_subwords(3, p);
    REQUIRE(a.size() == b.size());
    counts.push_back(a.size());
    for (size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].tiles == b[k].dream.tiles);
      CHECK(a[k].level == b[k].dream.level);
      CHECK(gpd_cell_weights(a[k]) == b[k].cell_weight);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  CHECK(counts == std::vector<size_t>{8, 5, 5, 2, 2, 1});
}

TEST_CASE("longest element") {
  for (int n : {3, 4}) {
    std::vector<int> w0;
    for (int i = n; i >= 1; --i) w0.push_back(i);
    auto ds = gpd_enumerate(n, w0);
    REQUIRE(ds.size() == 1);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        Tile t = ds[0].at(i, j);
        if (i + j <= n) CHECK(t == Tile::X);
        else if (i + j == n + 1) {
          CHECK(t == Tile::J);
          CHECK(ds[0].level_at(i, j) == 0);
        } else CHECK(t == Tile::O);
      }
    std::vector<WeightExpr> f;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; i + j <= n; ++j) f.push_back(A(true, PV(n).l(i).l(n + 1 - j, -1), PV(n).y(j).x(i, -1)));
    for (int i = 1; i <= n; ++i) f.push_back(A(false, PV(n).l(i), PV(n).y(n + 1 - i).x(i, -1)));
    CHECK(atoms_sorted(polynomial_rep(n, w0)) == atoms_sorted(WeightExpr::product(f)));
  }
  std::vector<int> w0{4, 3, 2, 1};
  std::string ascii = render_dream(gpd_enumerate(4, w0)[0], "ascii");
  CHECK(ascii.rfind("X  X  X  J0", 0) == 0);
}

TEST_CASE("the 3x3 example") {
  auto ds = gpd_enumerate(3, {1, 3, 2});
  CHECK(ds.size() == 5);
  const PipeDream* p = nullptr;
  for (auto& d : ds)
    if (d.tile_string() == "BXJ/JIO/HJO") p = &d;
  REQUIRE(p);
  CHECK(p->perm == std::vector<int>{1, 3, 2});
  CHECK(p->level_at(3, 2) == 1);
  CHECK(p->level_at(2, 2) == 0);
  auto w = gpd_cell_weights(*p);
  CHECK(w[7] == A(false, PV(3).l(3).h(-1), PV(3).y(2).x(3, -1)));
  CHECK(w[4] == A(true, PV(3).l(3, -1), PV(3).y(2).x(2, -1)));
  CHECK(w[0] == A(false, PV(3).l(1).l(2, -1), PV(3).y(1).x(1, -1)));
  CHECK(w[1] == A(true, PV(3).l(2).l(3, -1), PV(3).y(2).x(1, -1)));
  CHECK(w[8] == WeightExpr::one());
  std::string tex = render_dream(*p, "latex");
  CHECK(tex.find("J") != std::string::npos);
}

TEST_CASE("dream json round trip") {
  std::vector<int> p{1, 2, 3};
  do {
    for (auto& d : gpd_enumerate(3, p)) {
      PipeDream back = parse_dream_json(render_dream(d, "json"));
      CHECK(back == d);
      CHECK(back.perm == d.perm);
    }
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST_CASE("localization of the representatives") {
  auto gl = RootDatum::build(Kind::GL, 3);
  std::mt19937_64 rng(21);
  Frame f = oracle::eval_frame(*gl, 4, rng);
  SchubertEngine eng(gl);
  for (WeylId w = 0; w < 6; ++w) {
    auto e = polynomial_rep(3, gl->permutation(w));
    for (WeylId u = 0; u < 6; ++u) CHECK(loc(e, *gl, f, u).equals(eng.elliptic_class(f, w)(u)));
  }
  auto g1 = RootDatum::build(Kind::GL, 1);
  Frame f1 = oracle::eval_frame(*g1, 3, rng);
  CHECK(loc(polynomial_rep(1, {1}), *g1, f1, 0).equals(f1.one()));
}

TEST_CASE("representative recursion") {
  std::mt19937_64 rng(22);
  for (int n : {2, 3}) {
    auto gl = RootDatum::build(Kind::GL, n);
    auto pt = std::make_shared<EvaluationPoint>(EvaluationPoint::random(pipe_context(n, 4), rng));
    Frame f = Frame::identity(std::make_shared<ThetaSink>(pt));
    for (WeylId w = 0; w < WeylId(gl->order()); ++w)
      for (int a = 1; a < n; ++a) {
        auto [l, r] = poly_recursion_sides(n, gl->permutation(w), a, f);
        CHECK(l.equals(r));
      }
  }
}

TEST_CASE("sub-wiring diagrams") {
  auto gl4 = RootDatum::build(Kind::GL, 4);
  auto s = make_subwiring(*gl4, {1, 2, 3, 2, 1, 3}, {false, true, false, true, true, false});
  CHECK(s.w == gl4->simple_reflection(1));
  CHECK((s.factors[0].a == 1 && s.factors[0].b == 2));
  CHECK((s.factors[0].c == 2 && s.factors[0].d == 1));
  CHECK((s.factors[5].c == 3 && s.factors[5].d == 4));

  auto gl = RootDatum::build(Kind::GL, 3);
  std::mt19937_64 rng(23);
  Frame f = oracle::eval_frame(*gl, 3, rng);
  SchubertEngine eng(gl);
  for (WeylId u = 0; u < 6; ++u) {
    Word word = gl->reduced_word(u);
    std::vector<Scalar> sum(6, f.zero());
    for (size_t mask = 0; mask < (size_t(1) << word.size()); ++mask) {
      std::vector<bool> J(word.size());
      for (size_t j = 0; j < word.size(); ++j) J[j] = mask >> j & 1;
      auto sw = make_subwiring(*gl, word, J);
      sum[size_t(sw.w)] = sum[size_t(sw.w)] + subwiring_weight(*gl, sw, f);
    }
    for (WeylId w = 0; w < 6; ++w) CHECK(sum[size_t(w)].equals(eng.row_left(f, u)[size_t(w)]));
  }
}

TEST_CASE("sub-sub-wiring cancellation") {
  auto g2 = RootDatum::build(Kind::GL, 2);
  std::mt19937_64 rng(24);
  Frame f = oracle::eval_frame(*g2, 4, rng);
  WeylId s = g2->simple_reflection(1);
  auto same = subsub_cancellation_check(*g2, {1}, s, f);
  CHECK(same.diagrams == 1);
  CHECK(same.fixed == 1);
  CHECK(same.total.equals(f.one()));
  auto off = subsub_cancellation_check(*g2, {1}, 0, f);
  CHECK(off.diagrams == 2);
  CHECK(off.pairs == 1);
  CHECK(off.cancelling_pairs == 1);
  CHECK(off.total.is_zero());
}

}
