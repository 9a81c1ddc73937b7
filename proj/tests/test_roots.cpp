#include <doctest.h>

#include <algorithm>
#include <queue>
#include <set>

#include "support.hpp"

using namespace esc;

namespace {

// epsilon-basis vector of e_a - e_b
LatticeVector eps(int n, int a, int b) {
  LatticeVector v(size_t(n), 0);
  v[size_t(a - 1)] += 1;
  v[size_t(b - 1)] -= 1;
  return v;
}

// s_i on the epsilon basis swaps coordinates i and i+1
LatticeVector swap_act(const LatticeVector& v, int i) {
  LatticeVector r = v;
  std::swap(r[size_t(i - 1)], r[size_t(i)]);
  return r;
}

std::set<WeylId> subword_products(const RootDatum& d, const Word& word) {
  std::set<WeylId> out;
  size_t l = word.size();
  for (size_t mask = 0; mask < (size_t(1) << l); ++mask) {
    WeylId w = d.id();
    for (size_t j = 0; j < l; ++j)
      if (mask >> j & 1) w = d.rmul_simple(w, word[j]);
    out.insert(w);
  }
  return out;
}

std::vector<int> bfs_lengths(const RootDatum& d) {
  std::vector<int> dist(d.order(), -1);
  std::queue<WeylId> q;
  dist[0] = 0;
  q.push(0);
  while (!q.empty()) {
    WeylId w = q.front();
    q.pop();
    for (int i = 1; i <= d.rank(); ++i) {
      WeylId v = d.rmul_simple(w, i);
      if (dist[size_t(v)] < 0) {
        dist[size_t(v)] = dist[size_t(w)] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

}  // namespace

TEST_SUITE("roots") {

TEST_CASE("sizes") {
  auto a2 = RootDatum::build(Kind::A, 2);
  CHECK(a2->positive_roots().size() == 3);
  CHECK(a2->order() == 6);
  CHECK(a2->name() == "A2");
  CHECK(RootDatum::build(Kind::B2, 2)->order() == 8);
  CHECK(RootDatum::build(Kind::G2, 2)->order() == 12);
  CHECK(RootDatum::build(Kind::GL, 4)->order() == 24);
  CHECK(RootDatum::build(Kind::GL, 3)->name() == "GL3");
  CHECK(parse_kind("A") == Kind::GL);
  CHECK(parse_kind("SL") == Kind::A);
  CHECK_THROWS_AS(parse_kind("E8"), Error);
}

TEST_CASE("longest element") {
  auto gl = RootDatum::build(Kind::GL, 3);
  CHECK(gl->reduced_word(gl->longest()).size() == 3);
  CHECK(gl->permutation(gl->longest()) == std::vector<int>{3, 2, 1});
  for (auto k : {Kind::B2, Kind::G2}) {
    auto d = RootDatum::build(k, 2);
    CHECK(size_t(d->length(d->longest())) == d->positive_roots().size());
  }
}

TEST_CASE("lengths agree with breadth-first distance") {
  for (auto [k, n] : std::vector<std::pair<Kind, int>>{{Kind::GL, 4}, {Kind::A, 3}, {Kind::B2, 2}, {Kind::G2, 2}}) {
    auto d = RootDatum::build(k, n);
    auto dist = bfs_lengths(*d);
    for (WeylId w = 0; w < WeylId(d->order()); ++w) {
      CHECK(d->length(w) == dist[size_t(w)]);
      Word r = d->reduced_word(w);
      CHECK(int(r.size()) == d->length(w));
      CHECK(d->from_word(r) == w);
      CHECK(d->mul(w, d->inv(w)) == d->id());
    }
  }
}

TEST_CASE("GL lengths are inversion counts") {
  auto gl = RootDatum::build(Kind::GL, 4);
  for (WeylId w = 0; w < 24; ++w) {
    auto p = gl->permutation(w);
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
    CHECK(gl->length(w) == inv);
    CHECK(gl->from_permutation(p) == w);
  }
}

TEST_CASE("Bruhat order by the subword property") {
  for (auto [k, n] : std::vector<std::pair<Kind, int>>{{Kind::GL, 4}, {Kind::B2, 2}, {Kind::G2, 2}}) {
    auto d = RootDatum::build(k, n);
    for (WeylId w = 0; w < WeylId(d->order()); ++w) {
      auto below = subword_products(*d, d->reduced_word(w));
      for (WeylId u = 0; u < WeylId(d->order()); ++u) CHECK(d->bruhat_leq(u, w) == (below.count(u) > 0));
    }
  }
  auto gl = RootDatum::build(Kind::GL, 3);
  WeylId w0 = gl->from_word({1, 2, 1});
  int count = 0;
  for (WeylId v = 0; v < 6; ++v) count += gl->bruhat_leq(v, w0);
  CHECK(count == 6);
}

TEST_CASE("beta sequences") {
  auto a2 = RootDatum::build(Kind::A, 2);
  auto b = beta_sequence(*a2, {1, 2, 1});
  REQUIRE(b.size() == 3);
  CHECK(a2->roots()[size_t(b[0])].coeffs == std::vector<int>{1, 0});
  CHECK(a2->roots()[size_t(b[1])].coeffs == std::vector<int>{1, 1});
  CHECK(a2->roots()[size_t(b[2])].coeffs == std::vector<int>{0, 1});
  auto one = beta_sequence(*a2, {1});
  CHECK(one == std::vector<int>{a2->simple_root(1)});
  auto twice = beta_sequence(*a2, {1, 1});
  CHECK(twice == std::vector<int>{a2->simple_root(1), a2->negate(a2->simple_root(1))});
}

TEST_CASE("beta and gamma in the A3 example") {
  auto gl = RootDatum::build(Kind::GL, 4);
  Word word{1, 2, 3, 2, 1, 3};
  std::vector<bool> J{false, true, false, true, true, false};
  GammaData g = gamma_sequence(*gl, word, J);
  CHECK(g.wJ == gl->simple_reflection(1));
  auto beta = beta_sequence(*gl, word);
  // independent: beta_j = s_{i_1}..s_{i_{j-1}} alpha_{i_j},
  // gamma_j = s_{i_l}^{e_l}..s_{i_{j+1}}^{e_{j+1}} alpha_{i_j}^vee
  for (size_t j = 0; j < word.size(); ++j) {
    LatticeVector b = eps(4, word[j], word[j] + 1);
    for (size_t k = j; k-- > 0;) b = swap_act(b, word[k]);
    CHECK(gl->roots()[size_t(beta[j])].chr == b);
    LatticeVector c = eps(4, word[j], word[j] + 1);
    for (size_t k = j + 1; k < word.size(); ++k)
      if (J[k]) c = swap_act(c, word[k]);
    CHECK(gl->roots()[size_t(g.gamma[j])].coroot == c);
  }
  // the displayed values
  CHECK(gl->roots()[size_t(g.gamma[0])].coroot == eps(4, 2, 1));
  CHECK(gl->roots()[size_t(g.gamma[4])].coroot == eps(4, 1, 2));
  CHECK(gl->roots()[size_t(g.gamma[5])].coroot == eps(4, 3, 4));
  CHECK(gl->roots()[size_t(beta[0])].chr == eps(4, 1, 2));
  CHECK(gl->roots()[size_t(beta[3])].chr == eps(4, 3, 4));
  // by the definition; the printed list drops the leading s_1 here
  CHECK(gl->roots()[size_t(beta[4])].chr == eps(4, 2, 4));
  CHECK(gl->roots()[size_t(beta[5])].chr == eps(4, 3, 1));
  GammaData g0 = gamma_sequence(*gl, word, std::vector<bool>(6, false));
  for (size_t j = 0; j < word.size(); ++j) CHECK(g0.gamma[j] == gl->simple_root(word[j]));
}

TEST_CASE("minimal coset representatives") {
  auto gl = RootDatum::build(Kind::GL, 3);
  ParabolicData P(gl, {1});
  CHECK(P.min_reps().size() == 3);
  CHECK(P.levi().size() == 2);
  int count = 0;
  for (WeylId w = 0; w < 6; ++w) {
    count += P.in_WP_upper(w);
    CHECK(P.in_WP_upper(w) == P.in_WP_upper_by_inversions(w));
    // minimal in its coset wW_P
    bool minimal = true;
    for (WeylId v : P.levi()) minimal = minimal && gl->length(gl->mul(w, v)) >= gl->length(w);
    CHECK(P.in_WP_upper(w) == minimal);
  }
  CHECK(count == 3);
  CHECK(subword_satisfies_parabolic(P, {1, 2, 1}, std::vector<bool>(3, false)));
  auto C = ParabolicData::from_composition(gl, {2, 1});
  CHECK(C.subset() == std::vector<int>{1});
}

TEST_CASE("simple reflections on W^P") {
  auto gl = RootDatum::build(Kind::GL, 3);
  ParabolicData P(gl, {1});
  for (WeylId w : P.min_reps())
    for (int i = 1; i <= 2; ++i) {
      WeylId sw = gl->lmul_simple(i, w);
      if (P.in_WP_upper(sw)) continue;
      // otherwise s w = w t with t in W_P and s w > w
      WeylId t = gl->mul(gl->inv(w), sw);
      CHECK(P.in_WP(t));
      CHECK(gl->length(sw) > gl->length(w));
    }
}

}
