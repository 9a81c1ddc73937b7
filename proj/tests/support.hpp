#pragma once
// Plain truncated power series over Q, used as an independent oracle for the
// theta layer: theta(u) = (a - 1/a) prod_{n>0} (1 - q^n a^2)(1 - q^n / a^2)
// with a = e(u/2) evaluated at a point.

#include <random>
#include <vector>

#include "esc/io.hpp"

namespace oracle {

using esc::Rational;
using Series = std::vector<Rational>;  // coefficients of q^0..q^N

inline Series mul(const Series& a, const Series& b) {
  Series r(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline Series inv(const Series& a) {
  Series r(a.size(), 0);
  r[0] = 1 / a[0];
  for (size_t k = 1; k < a.size(); ++k) {
    Rational s = 0;
    for (size_t j = 1; j <= k; ++j) s += a[j] * r[k - j];
    r[k] = -s / a[0];
  }
  return r;
}

inline Series theta(const Rational& a, int N) {
  Series r(size_t(N) + 1, 0);
  r[0] = a - 1 / a;
  Rational x = a * a;
  for (int n = 1; n <= N; ++n) {
    Series f(size_t(N) + 1, 0), g(size_t(N) + 1, 0);
    f[0] = g[0] = 1;
    f[size_t(n)] = -x;
    g[size_t(n)] = -1 / x;
    r = mul(r, mul(f, g));
  }
  return r;
}

// a = e(x/2), b = e(y/2), h = e(hbar/2)
inline Series P(const Rational& a, const Rational& b, const Rational& h, int N) {
  return mul(mul(theta(a / b, N), theta(h, N)), inv(mul(theta(b * h, N), theta(a, N))));
}
inline Series Q(const Rational& a, const Rational& b, const Rational& h, int N) {
  return mul(mul(theta(a * h, N), theta(b, N)), inv(mul(theta(b * h, N), theta(a, N))));
}

inline esc::Scalar to_scalar(const Series& s, esc::CtxPtr numeric) {
  esc::QSeries q;
  for (size_t k = 0; k < s.size(); ++k)
    if (s[k] != 0) q.c.emplace(long(k) * numeric->qden(), esc::LaurentPoly(s[k]));
  q.prec = numeric->limit();
  return esc::Scalar::from_series(numeric, q);
}

inline esc::Frame eval_frame(const esc::RootDatum& d, int N, std::mt19937_64& rng) {
  auto ctx = d.make_context(N);
  auto pt = std::make_shared<esc::EvaluationPoint>(esc::EvaluationPoint::random(ctx, rng));
  return esc::Frame::identity(std::make_shared<esc::ThetaSink>(pt));
}

inline esc::Frame symbolic_frame(const esc::RootDatum& d, int N) {
  return esc::Frame::identity(std::make_shared<esc::ThetaSink>(d.make_context(N)));
}

// e(u/2) at the frame's evaluation point
inline Rational half(const esc::Frame& f, const esc::LatticeVector& u) { return f.sink()->point()->monomial(u); }

}  // namespace oracle
