#include <doctest.h>

#include "support.hpp"

using namespace esc;

TEST_SUITE("duality") {

TEST_CASE("pairing of point classes") {
  auto gl = RootDatum::build(Kind::GL, 3);
  std::mt19937_64 rng(31);
  Frame f = oracle::eval_frame(*gl, 4, rng);
  PairingContext pc(gl, f);
  for (WeylId u = 0; u < 6; ++u) {
    Scalar den = f.one();
    for (int r : gl->positive_roots()) den = den * f.theta(lv_neg(gl->z_root(gl->act_root(u, r))));
    CHECK(pc.pair(point_class(gl, f, u), point_class(gl, f, u)).equals(f.one() / den));
    for (WeylId v = 0; v < 6; ++v)
      if (v != u) CHECK(pc.pair(point_class(gl, f, u), point_class(gl, f, v)).is_zero());
  }
}

TEST_CASE("initial rescaled class") {
  auto gl = RootDatum::build(Kind::GL, 3);
  std::mt19937_64 rng(32);
  Frame f = oracle::eval_frame(*gl, 4, rng);
  RescaledEngine re(gl);
  auto c = re.rescaled_class(f, 0);
  Scalar prod = f.one();
  for (int r : gl->positive_roots()) prod = prod * f.theta(lv_neg(gl->z_root(r)));
  CHECK(c(0).equals(prod));
  for (WeylId u = 1; u < 6; ++u) CHECK(c(u).is_zero());
}

TEST_CASE("rank one diagonal") {
  auto g2 = RootDatum::build(Kind::GL, 2);
  Frame f = oracle::symbolic_frame(*g2, 3);
  RescaledEngine re(g2);
  SchubertEngine eng(g2);
  PairingContext pc(g2, f);
  WeylId s = g2->simple_reflection(1);
  LatticeVector l = g2->l_coroot(g2->simple_root(1)), h = g2->hvec();
  Scalar got = pc.pair(re.rescaled_class(f, s), eng.elliptic_class(f, s));
  CHECK(got.equals(f.theta(lv_add(l, h)) / f.theta(lv_sub(l, h))));
  CHECK(pc.pair(re.renormalized_class(f, 0), eng.elliptic_class(f, 0)).equals(f.one()));
}

TEST_CASE("word independence of the longest rescaled class") {
  auto gl = RootDatum::build(Kind::GL, 3);
  std::mt19937_64 rng(33);
  Frame f = oracle::eval_frame(*gl, 4, rng);
  RescaledEngine re(gl);
  auto a = re.rescaled_along(f, {1, 2, 1}), b = re.rescaled_along(f, {2, 1, 2});
  for (size_t u = 0; u < a.size(); ++u) CHECK(a[u].equals(b[u]));
  CHECK_THROWS_AS(re.rescaled_along(f, {1, 1}), Error);
}

TEST_CASE("dual bases") {
  std::mt19937_64 rng(34);
  for (auto [k, n] : std::vector<std::pair<Kind, int>>{{Kind::GL, 3}, {Kind::B2, 2}}) {
    auto d = RootDatum::build(k, n);
    Frame f = oracle::eval_frame(*d, 5, rng);
    for (auto& r : dual_basis_check(d, f)) {
      INFO(d->name() << " " << r.name << ": " << r.detail);
      CHECK(r.pass);
    }
    for (auto& r : duality_property_checks(d, f, 7)) {
      INFO(d->name() << " " << r.name << ": " << r.detail);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("parabolic dual bases") {
  auto gl = RootDatum::build(Kind::GL, 3);
  std::mt19937_64 rng(35);
  Frame f = oracle::eval_frame(*gl, 5, rng);
  for (std::vector<int> sub : {std::vector<int>{1}, std::vector<int>{2}}) {
    ParabolicData P(gl, sub);
    for (auto& r : parabolic_dual_basis_check(P, f)) {
      INFO(r.name << ": " << r.detail);
      CHECK(r.pass);
    }
    CHECK(PairingContext(gl, f, &P).support().size() == 3);
  }
}

}
