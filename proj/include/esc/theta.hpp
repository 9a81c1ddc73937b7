#pragma once

// Truncated theta q-series over exponential Laurent polynomials, and the
// fraction field they generate.

#include <gmpxx.h>

#include <climits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "esc/errors.hpp"

namespace esc {

using Rational = mpq_class;

// Doubled exponents: entry k stands for e^{pi i * v_k * sym_k}.  Trailing
// zeros are trimmed so that equal monomials compare equal.
struct ExponentVector {
  std::vector<int> v;

  ExponentVector() = default;
  explicit ExponentVector(std::vector<int> e) : v(std::move(e)) { trim(); }

  void trim() {
    while (!v.empty() && v.back() == 0) v.pop_back();
  }
  bool is_zero() const { return v.empty(); }
  int operator[](size_t i) const { return i < v.size() ? v[i] : 0; }
  ExponentVector operator+(const ExponentVector& o) const;
  ExponentVector operator-() const;
  ExponentVector scaled(int k) const;
  auto operator<=>(const ExponentVector&) const = default;
};

class LaurentPoly {
 public:
  using Map = std::map<ExponentVector, Rational>;

  LaurentPoly() = default;
  explicit LaurentPoly(const Rational& c);
  static LaurentPoly monomial(const ExponentVector& e, const Rational& c = 1);

  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_zero()); }
  Rational constant_term() const;
  size_t size() const { return t_.size(); }

  void add_term(const ExponentVector& e, const Rational& c);
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator*(const Rational& c) const;
  bool operator==(const LaurentPoly& o) const { return t_ == o.t_; }

  // add c * this * o into acc
  static void fma(LaurentPoly& acc, const LaurentPoly& a, const LaurentPoly& b);

 private:
  Map t_;
};

enum class SymbolKind { Z, Lambda, Hbar, Other };

class SeriesContext {
 public:
  static std::shared_ptr<const SeriesContext> make(int trunc, int qden, std::vector<std::string> names,
                                                   std::vector<SymbolKind> kinds);
  // symbol-free context used for values at an evaluation point
  static std::shared_ptr<const SeriesContext> numeric(int trunc, int qden = 1);

  int trunc() const { return N_; }
  int qden() const { return D_; }
  // exclusive bound on stored q-exponents, in units of 1/D
  long limit() const { return long(N_ + 1) * D_; }
  size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<SymbolKind>& kinds() const { return kinds_; }
  int index_of(const std::string& name) const;
  int hbar_index() const;

 private:
  SeriesContext() = default;
  int N_ = 5;
  int D_ = 1;
  std::vector<std::string> names_;
  std::vector<SymbolKind> kinds_;
};

using CtxPtr = std::shared_ptr<const SeriesContext>;

// Coefficients of q^{e/D}.  Everything with exponent >= prec is unknown.
struct QSeries {
  std::map<long, LaurentPoly> c;
  long prec = LONG_MAX;

  static QSeries constant(const LaurentPoly& p, long prec);
  // first exponent with a nonzero coefficient, or prec if none is known
  long order() const;
  bool is_zero() const { return order() >= prec; }
  void clip(long bound);
  QSeries shifted(long k) const;
};

QSeries series_add(const QSeries& a, const QSeries& b, bool negate_b = false);
QSeries series_mul(const QSeries& a, const QSeries& b, long cap = LONG_MAX);
QSeries series_neg(const QSeries& a);

class Scalar {
 public:
  Scalar() = default;
  Scalar(CtxPtr ctx, QSeries num, QSeries den);
  static Scalar constant(CtxPtr ctx, const Rational& c);
  static Scalar from_series(CtxPtr ctx, QSeries num);

  const CtxPtr& ctx() const { return ctx_; }
  const QSeries& num() const { return num_; }
  const QSeries& den() const { return den_; }
  bool valid() const { return ctx_ != nullptr; }

  bool is_zero() const { return num_.is_zero(); }
  bool equals(const Scalar& o) const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;

  // q-series of the quotient when the denominator is a unit; used for
  // numeric values and display
  std::string to_string() const;

 private:
  void normalize();
  void check_ctx(const Scalar& o) const;
  CtxPtr ctx_;
  QSeries num_, den_;
};

using LatticeVector = std::vector<int>;

LatticeVector lv_add(const LatticeVector& a, const LatticeVector& b);
LatticeVector lv_sub(const LatticeVector& a, const LatticeVector& b);
LatticeVector lv_neg(const LatticeVector& a);
LatticeVector lv_scale(const LatticeVector& a, int k);
LatticeVector lv_unit(size_t dim, size_t i, int k = 1);

class EvaluationPoint {
 public:
  EvaluationPoint(CtxPtr source, std::vector<Rational> values);
  // values drawn as p/q with 2 <= p,q <= 19, p != q, signs random, pairwise
  // distinct and never mutually inverse
  template <class Rng>
  static EvaluationPoint random(CtxPtr source, Rng& rng);

  const CtxPtr& source() const { return src_; }
  const CtxPtr& target() const { return tgt_; }
  const std::vector<Rational>& values() const { return vals_; }
  // value of the monomial with doubled exponents e
  Rational monomial(const ExponentVector& e) const;
  Rational monomial(const LatticeVector& u) const;

 private:
  CtxPtr src_, tgt_;
  std::vector<Rational> vals_;
};

Scalar evaluate(const Scalar& s, const EvaluationPoint& p);

struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<int> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c, 0) {}
  static IntMatrix identity(int n);
  int& at(int i, int j) { return a[size_t(i) * cols + j]; }
  int at(int i, int j) const { return a[size_t(i) * cols + j]; }
  IntMatrix operator*(const IntMatrix& o) const;
  LatticeVector apply(const LatticeVector& u) const;
  bool operator==(const IntMatrix&) const = default;
};

// Linear monomial substitution: source symbol k goes to column k of sigma,
// expressed over the target context's symbols.
Scalar substitute(const Scalar& s, const IntMatrix& sigma, CtxPtr target);

Scalar theta(const LatticeVector& u, CtxPtr ctx);
Scalar pfun(const LatticeVector& x, const LatticeVector& y, CtxPtr ctx);
Scalar qfun(const LatticeVector& x, const LatticeVector& y, CtxPtr ctx);

// theta(u + c*tau) as a Puiseux series in the context's q^{1/D}
Scalar theta_shifted(const LatticeVector& u, const Rational& c, CtxPtr ctx);

// Where theta values get produced: a symbolic context, or numeric values at an
// evaluation point.  Caches theta values.
class ThetaSink {
 public:
  explicit ThetaSink(CtxPtr symbolic);
  explicit ThetaSink(std::shared_ptr<const EvaluationPoint> point);
  // sink over the same point/context but a different truncation/qden
  const CtxPtr& result_ctx() const { return out_; }
  size_t dim() const { return dim_; }
  bool numeric() const { return point_ != nullptr; }
  const EvaluationPoint* point() const { return point_.get(); }
  Scalar theta(const LatticeVector& u, const Rational& c);

 private:
  CtxPtr sym_, out_;
  std::shared_ptr<const EvaluationPoint> point_;
  size_t dim_;
  std::mutex mu_;
  std::map<std::pair<LatticeVector, Rational>, Scalar> cache_;
};

// A linear change of variables in front of a ThetaSink.  Algorithms are written
// against a Frame; Weyl twists, specializations and the tau shift become
// compositions of the frame instead of operations on formed fractions.
class Frame {
 public:
  Frame() = default;
  Frame(std::shared_ptr<ThetaSink> sink, IntMatrix map, std::vector<Rational> tau = {});
  static Frame identity(std::shared_ptr<ThetaSink> sink);

  const CtxPtr& ctx() const { return sink_->result_ctx(); }
  const std::shared_ptr<ThetaSink>& sink() const { return sink_; }
  const IntMatrix& map() const { return map_; }
  const std::vector<Rational>& tau() const { return tau_; }
  int source_dim() const { return map_.cols; }

  Scalar theta(const LatticeVector& u) const;
  Scalar P(const LatticeVector& x, const LatticeVector& y) const;
  Scalar Q(const LatticeVector& x, const LatticeVector& y) const;
  Scalar one() const { return Scalar::constant(ctx(), 1); }
  Scalar zero() const { return Scalar::constant(ctx(), 0); }

  // u |-> map * (m * u)
  Frame then(const IntMatrix& m) const;
  // additionally send each source symbol k to (source column) + tau_k * tau
  Frame with_tau(std::vector<Rational> tau) const;
  const std::string& key() const { return key_; }

 private:
  void make_key();
  std::shared_ptr<ThetaSink> sink_;
  IntMatrix map_;
  std::vector<Rational> tau_;
  std::string key_;
};

// implementation detail exposed for tests: coefficients of
// (t - 1/t) prod_n (1 - q^n t^2)(1 - q^n t^-2) with t -> t q^{c/2}, q in units of 1/D
struct UnivariateTheta {
  std::map<long, std::map<int, Rational>> c;  // q-exponent -> (t-exponent -> coeff)
  long prec;
};
const UnivariateTheta& univariate_theta(const Rational& c, int D, long limit);

// ---- template implementation ----
template <class Rng>
EvaluationPoint EvaluationPoint::random(CtxPtr source, Rng& rng) {
  std::vector<Rational> vals;
  auto draw = [&]() {
    long p = 2 + long(rng() % 18), q = 2 + long(rng() % 18);
    Rational r(p, q);
    r.canonicalize();
    if (rng() % 2) r = -r;
    return r;
  };
  while (vals.size() < source->dim()) {
    Rational r = draw();
    bool ok = r != 1 && r != -1 && r != 0;
    for (auto& v : vals)
      if (v == r || v * r == 1 || v == -r || v * r == -1) ok = false;
    if (ok) vals.push_back(r);
  }
  return EvaluationPoint(source, vals);
}

}  // namespace esc
