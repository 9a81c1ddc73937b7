#include <doctest.h>

#include "support.hpp"

using namespace esc;

TEST_SUITE("theta") {

TEST_CASE("laurent polynomial arithmetic") {
  auto x = LaurentPoly::monomial(ExponentVector({1})), y = LaurentPoly::monomial(ExponentVector({0, 1}));
  LaurentPoly s = x + y;
  LaurentPoly sq = s * s;
  CHECK(sq.size() == 3);
  CHECK(sq.terms().at(ExponentVector({1, 1})) == 2);
  CHECK((sq - x * x - y * y - x * y * LaurentPoly(2)).is_zero());
  auto xi = LaurentPoly::monomial(ExponentVector({-1}));
  CHECK(x * xi == LaurentPoly(1));
  CHECK(LaurentPoly(Rational(3, 2)).constant_term() == Rational(3, 2));
}

TEST_CASE("theta vanishes at zero and is odd") {
  auto gl = RootDatum::build(Kind::GL, 1);
  auto ctx = gl->make_context(6);
  LatticeVector zero(3, 0);
  CHECK(theta(zero, ctx).is_zero());
  auto z1 = gl->zvec({1});
  CHECK(theta(lv_neg(z1), ctx).equals(-theta(z1, ctx)));
}

TEST_CASE("q^0 part of theta") {
  auto gl = RootDatum::build(Kind::GL, 1);
  auto ctx = gl->make_context(3);
  LatticeVector u = lv_add(gl->zvec({2}), gl->hvec());
  Scalar t = theta(u, ctx);
  // e(u/2) - e(-u/2) in the doubled encoding is monomial(u) - monomial(-u)
  LaurentPoly want = LaurentPoly::monomial(ExponentVector(u)) - LaurentPoly::monomial(ExponentVector(lv_neg(u)));
  Scalar lead = Scalar::from_series(ctx, QSeries::constant(want, ctx->limit()));
  Scalar diff = t - lead;
  CHECK(diff.num().order() >= 1);
}

TEST_CASE("numeric theta at e(z1/2) = 2") {
  auto gl = RootDatum::build(Kind::GL, 1);
  auto ctx = gl->make_context(4);
  EvaluationPoint p(ctx, {Rational(2), Rational(3), Rational(5)});
  Scalar v = evaluate(theta(gl->zvec({1}), ctx), p);
  Scalar want = oracle::to_scalar(oracle::theta(2, 4), p.target());
  CHECK(v.equals(want));
  auto coeffs = oracle::theta(2, 4);
  CHECK(coeffs[0] == Rational(3, 2));
  CHECK(coeffs[1] == Rational(-51, 8));
  CHECK(evaluate(Scalar::constant(ctx, 1), p).equals(Scalar::constant(p.target(), 1)));
}

TEST_CASE("P and Q at random points agree with the product formula") {
  auto gl = RootDatum::build(Kind::GL, 2);
  std::mt19937_64 rng(11);
  const int N = 4;
  for (int t = 0; t < 10; ++t) {
    Frame f = oracle::eval_frame(*gl, N, rng);
    LatticeVector x = lv_add(gl->zvec({1, -1}), gl->lvec({0, 1}));
    LatticeVector y = lv_sub(gl->lvec({1, 0}), gl->zvec({0, 1}));
    Rational a = oracle::half(f, x), b = oracle::half(f, y), h = oracle::half(f, gl->hvec());
    CHECK(f.P(x, y).equals(oracle::to_scalar(oracle::P(a, b, h, N), f.ctx())));
    CHECK(f.Q(x, y).equals(oracle::to_scalar(oracle::Q(a, b, h, N), f.ctx())));
  }
}

TEST_CASE("P/Q identities, symbolic") {
  auto gl = RootDatum::build(Kind::GL, 2);
  auto ctx = gl->make_context(5);
  LatticeVector x = lv_add(gl->zvec({1, 0}), gl->lvec({1, 0})), y = lv_sub(gl->zvec({0, 1}), gl->lvec({0, 1}));
  LatticeVector h = gl->hvec(), zero(5, 0);
  Scalar one = Scalar::constant(ctx, 1);
  CHECK((pfun(x, y, ctx) + qfun(x, y, ctx) * pfun(y, x, ctx)).is_zero());
  CHECK((qfun(x, y, ctx) * qfun(y, x, ctx)).equals(one));
  CHECK(pfun(lv_neg(h), y, ctx).equals(one));
  CHECK(qfun(lv_neg(h), y, ctx).is_zero());
  CHECK(pfun(x, zero, ctx).equals(one));
  CHECK(qfun(x, zero, ctx).is_zero());
}

TEST_CASE("cross-multiplication equality") {
  auto gl = RootDatum::build(Kind::GL, 2);
  auto ctx = gl->make_context(4);
  auto z1 = gl->zvec({1, 0}), z2 = gl->zvec({0, 1});
  Scalar a = theta(z1, ctx), b = theta(z2, ctx), th = theta(gl->hvec(), ctx);
  CHECK((a / b).equals((a * th) / (b * th)));
  CHECK(((a / b) * (b / a)).equals(Scalar::constant(ctx, 1)));
  CHECK(!(a / b).equals(b / a));
  CHECK_THROWS_AS(a / Scalar::constant(ctx, 0), Error);
}

TEST_CASE("contexts must match") {
  auto gl = RootDatum::build(Kind::GL, 2);
  auto c4 = gl->make_context(4), c5 = gl->make_context(5);
  auto z1 = gl->zvec({1, 0});
  CHECK_THROWS_AS(theta(z1, c4) + theta(z1, c5), Error);
}

TEST_CASE("substitution") {
  auto gl = RootDatum::build(Kind::GL, 2);
  auto ctx = gl->make_context(4);
  int a = gl->simple_root(1);
  LatticeVector l = gl->l_coroot(a), z = gl->z_root(a);
  Scalar q = qfun(l, z, ctx), p = pfun(l, z, ctx);
  // lambda_{alpha^vee} -> -h is the projection for the parabolic with alpha_1
  ParabolicData P(gl, {1});
  IntMatrix proj = P.projection();
  CHECK(substitute(q, proj, ctx).is_zero());
  CHECK(substitute(p, proj, ctx).equals(Scalar::constant(ctx, 1)));
  CHECK(substitute(p, IntMatrix::identity(int(ctx->dim())), ctx).equals(p));
}

TEST_CASE("Weyl action on theta") {
  auto gl = RootDatum::build(Kind::GL, 2);
  auto ctx = gl->make_context(4);
  int a = gl->simple_root(1);
  WeylId s = gl->simple_reflection(1);
  Scalar tz = theta(gl->z_root(a), ctx), tl = theta(gl->l_coroot(a), ctx);
  CHECK(weyl_act(tz, *gl, s, true).equals(-tz));
  CHECK(weyl_act(tl, *gl, s, true).equals(tl));
  CHECK(weyl_act(tl, *gl, s, false).equals(-tl));
}

TEST_CASE("evaluation is multiplicative on random ratios") {
  auto gl = RootDatum::build(Kind::GL, 2);
  auto ctx = gl->make_context(3);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    LatticeVector u(5), v(5);
    for (auto& c : u) c = int(rng() % 5) - 2;
    for (auto& c : v) c = int(rng() % 5) - 2;
    u[0] = 1;
    v[1] = 1;
    EvaluationPoint p = EvaluationPoint::random(ctx, rng);
    Scalar a = theta(u, ctx), b = theta(v, ctx);
    CHECK(evaluate(a / b, p).equals(evaluate(a, p) / evaluate(b, p)));
    CHECK(evaluate(a * b, p).equals(evaluate(a, p) * evaluate(b, p)));
  }
}

TEST_CASE("random points are reproducible") {
  auto gl = RootDatum::build(Kind::GL, 3);
  auto ctx = gl->make_context(3);
  std::mt19937_64 r1(99), r2(99);
  CHECK(EvaluationPoint::random(ctx, r1).values() == EvaluationPoint::random(ctx, r2).values());
}

}
