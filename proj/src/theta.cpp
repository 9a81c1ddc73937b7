#include "esc/theta.hpp"

#include <algorithm>
#include <sstream>

namespace esc {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::DegeneratePoint: return "DegeneratePoint";
    case ErrorCode::SpecializedPole: return "SpecializedPole";
    case ErrorCode::UnsupportedType: return "UnsupportedType";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::SlopeOutOfRange: return "SlopeOutOfRange";
    case ErrorCode::LimitDoesNotExist: return "LimitDoesNotExist";
    case ErrorCode::InconsistentLevels: return "InconsistentLevels";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

// ---------------------------------------------------------------- monomials

ExponentVector ExponentVector::operator+(const ExponentVector& o) const {
  ExponentVector r;
  r.v.resize(std::max(v.size(), o.v.size()), 0);
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = (*this)[i] + o[i];
  r.trim();
  return r;
}

ExponentVector ExponentVector::operator-() const {
  ExponentVector r = *this;
  for (auto& x : r.v) x = -x;
  return r;
}

ExponentVector ExponentVector::scaled(int k) const {
  if (k == 0) return {};
  ExponentVector r = *this;
  for (auto& x : r.v) x *= k;
  return r;
}

LaurentPoly::LaurentPoly(const Rational& c) {
  if (c != 0) t_.emplace(ExponentVector{}, c);
}

LaurentPoly LaurentPoly::monomial(const ExponentVector& e, const Rational& c) {
  LaurentPoly p;
  if (c != 0) p.t_.emplace(e, c);
  return p;
}

Rational LaurentPoly::constant_term() const {
  auto it = t_.find(ExponentVector{});
  return it == t_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(const ExponentVector& e, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r -= o;
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [e, c] : r.t_) c = -c;
  return r;
}

void LaurentPoly::fma(LaurentPoly& acc, const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_constant() && b.is_constant()) {
    if (a.is_zero() || b.is_zero()) return;
    acc.add_term({}, a.t_.begin()->second * b.t_.begin()->second);
    return;
  }
  Rational tmp;
  for (auto& [ea, ca] : a.t_)
    for (auto& [eb, cb] : b.t_) {
      tmp = ca * cb;
      acc.add_term(ea + eb, tmp);
    }
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  fma(r, *this, o);
  return r;
}

LaurentPoly LaurentPoly::operator*(const Rational& c) const {
  if (c == 0) return {};
  LaurentPoly r = *this;
  for (auto& [e, x] : r.t_) x *= c;
  return r;
}

// ---------------------------------------------------------------- contexts

std::shared_ptr<const SeriesContext> SeriesContext::make(int trunc, int qden, std::vector<std::string> names,
                                                         std::vector<SymbolKind> kinds) {
  if (trunc < 0 || qden < 1) throw Error(ErrorCode::InvalidArgument, "truncation must be >= 0, qden >= 1");
  if (names.size() != kinds.size()) throw Error(ErrorCode::InvalidArgument, "symbol kinds do not match names");
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::InvalidArgument, "duplicate symbol");
  auto* c = new SeriesContext;
  c->N_ = trunc;
  c->D_ = qden;
  c->names_ = std::move(names);
  c->kinds_ = std::move(kinds);
  return std::shared_ptr<const SeriesContext>(c);
}

std::shared_ptr<const SeriesContext> SeriesContext::numeric(int trunc, int qden) {
  return make(trunc, qden, {}, {});
}

int SeriesContext::index_of(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return int(i);
  return -1;
}

int SeriesContext::hbar_index() const {
  for (size_t i = 0; i < kinds_.size(); ++i)
    if (kinds_[i] == SymbolKind::Hbar) return int(i);
  return -1;
}

// ---------------------------------------------------------------- series

QSeries QSeries::constant(const LaurentPoly& p, long prec) {
  QSeries s;
  s.prec = prec;
  if (!p.is_zero() && 0 < prec) s.c.emplace(0, p);
  return s;
}

long QSeries::order() const {
  for (auto& [e, p] : c)
    if (e < prec && !p.is_zero()) return e;
  return prec;
}

void QSeries::clip(long bound) {
  prec = std::min(prec, bound);
  c.erase(c.lower_bound(prec), c.end());
  for (auto it = c.begin(); it != c.end();) it = it->second.is_zero() ? c.erase(it) : std::next(it);
}

QSeries QSeries::shifted(long k) const {
  QSeries r;
  r.prec = prec == LONG_MAX ? LONG_MAX : prec + k;
  for (auto& [e, p] : c) r.c.emplace(e + k, p);
  return r;
}

QSeries series_add(const QSeries& a, const QSeries& b, bool negate_b) {
  QSeries r;
  r.prec = std::min(a.prec, b.prec);
  for (auto& [e, p] : a.c)
    if (e < r.prec) r.c[e] += p;
  for (auto& [e, p] : b.c)
    if (e < r.prec) {
      if (negate_b)
        r.c[e] -= p;
      else
        r.c[e] += p;
    }
  r.clip(r.prec);
  return r;
}

QSeries series_neg(const QSeries& a) {
  QSeries r = a;
  for (auto& [e, p] : r.c) p = -p;
  return r;
}

static long sat_add(long a, long b) {
  if (a == LONG_MAX || b == LONG_MAX) return LONG_MAX;
  return a + b;
}

QSeries series_mul(const QSeries& a, const QSeries& b, long cap) {
  QSeries r;
  long oa = a.order(), ob = b.order();
  r.prec = std::min({sat_add(a.prec, ob), sat_add(b.prec, oa), cap});
  for (auto& [ea, pa] : a.c) {
    if (ea >= a.prec) break;
    for (auto& [eb, pb] : b.c) {
      if (eb >= b.prec || ea + eb >= r.prec) break;
      LaurentPoly::fma(r.c[ea + eb], pa, pb);
    }
  }
  r.clip(r.prec);
  return r;
}

// ---------------------------------------------------------------- scalars

Scalar::Scalar(CtxPtr ctx, QSeries num, QSeries den) : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

Scalar Scalar::constant(CtxPtr ctx, const Rational& c) {
  long L = ctx->limit();
  return Scalar(ctx, QSeries::constant(LaurentPoly(c), L), QSeries::constant(LaurentPoly(1), LONG_MAX));
}

Scalar Scalar::from_series(CtxPtr ctx, QSeries num) {
  return Scalar(ctx, std::move(num), QSeries::constant(LaurentPoly(1), LONG_MAX));
}

static bool all_constant(const QSeries& s) {
  for (auto& [e, p] : s.c)
    if (!p.is_constant()) return false;
  return true;
}

void Scalar::normalize() {
  long L = ctx_->limit();
  num_.clip(L);
  if (den_.is_zero()) throw Error(ErrorCode::ZeroDenominator, "denominator vanishes to the known order");
  long k = den_.order();
  if (k != 0) {
    num_ = num_.shifted(-k);
    den_ = den_.shifted(-k);
    num_.clip(L);
  }
  if (den_.c.size() == 1 && den_.c.begin()->second.size() == 1) {
    // single monomial: divide it out exactly
    auto& [e, c] = *den_.c.begin()->second.terms().begin();
    LaurentPoly inv = LaurentPoly::monomial(-e, 1 / c);
    for (auto& [q, p] : num_.c) p = p * inv;
    den_ = QSeries::constant(LaurentPoly(1), LONG_MAX);
    return;
  }
  if (!all_constant(den_)) return;
  // rational power series: invert the denominator
  Rational d0 = den_.c.at(0).constant_term();
  long bound = std::min(den_.prec, L - std::min(0L, num_.order()));
  std::vector<Rational> inv(size_t(std::max(0L, bound)));
  std::vector<std::pair<long, Rational>> dterms;
  for (auto& [e, p] : den_.c)
    if (e > 0) dterms.emplace_back(e, p.constant_term());
  for (long i = 0; i < bound; ++i) {
    Rational acc = i == 0 ? Rational(1) : Rational(0);
    for (auto& [e, d] : dterms) {
      if (e > i) break;
      acc -= d * inv[size_t(i - e)];
    }
    inv[size_t(i)] = acc / d0;
  }
  QSeries is;
  is.prec = den_.prec;
  for (long i = 0; i < bound; ++i)
    if (inv[size_t(i)] != 0) is.c.emplace(i, LaurentPoly(inv[size_t(i)]));
  num_ = series_mul(num_, is, L);
  den_ = QSeries::constant(LaurentPoly(1), LONG_MAX);
}

void Scalar::check_ctx(const Scalar& o) const {
  if (ctx_ != o.ctx_) throw Error(ErrorCode::ContextMismatch, "scalars from different contexts");
}

static bool same_series(const QSeries& a, const QSeries& b) {
  return a.prec == b.prec && a.c == b.c;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_ctx(o);
  long L = ctx_->limit();
  if (same_series(den_, o.den_)) return Scalar(ctx_, series_add(num_, o.num_), den_);
  return Scalar(ctx_, series_add(series_mul(num_, o.den_, L), series_mul(o.num_, den_, L)),
                series_mul(den_, o.den_, L));
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_ctx(o);
  long L = ctx_->limit();
  if (same_series(den_, o.den_)) return Scalar(ctx_, series_add(num_, o.num_, true), den_);
  return Scalar(ctx_, series_add(series_mul(num_, o.den_, L), series_mul(o.num_, den_, L), true),
                series_mul(den_, o.den_, L));
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_ctx(o);
  long L = ctx_->limit();
  return Scalar(ctx_, series_mul(num_, o.num_, L), series_mul(den_, o.den_, L));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return Scalar(ctx_, den_, num_);
}

Scalar Scalar::operator/(const Scalar& o) const {
  check_ctx(o);
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero scalar");
  long L = ctx_->limit();
  return Scalar(ctx_, series_mul(num_, o.den_, L), series_mul(den_, o.num_, L));
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = series_neg(num_);
  return r;
}

bool Scalar::equals(const Scalar& o) const {
  check_ctx(o);
  // uncapped products: valid up to the known order plus the leading orders
  QSeries l = series_mul(num_, o.den_), r = series_mul(o.num_, den_);
  QSeries d = series_add(l, r, true);
  return d.is_zero();
}

static std::string rat_str(const Rational& r) { return r.get_str(); }

static std::string monomial_str(const ExponentVector& e, const SeriesContext& ctx) {
  if (e.is_zero()) return "";
  std::ostringstream os;
  os << "e(";
  bool first = true;
  for (size_t i = 0; i < e.v.size(); ++i) {
    int x = e.v[i];
    if (!x) continue;
    Rational c(x, 2);
    c.canonicalize();
    if (c < 0)
      os << (first ? "-" : "-");
    else if (!first)
      os << "+";
    Rational a = abs(c);
    if (a != 1) os << rat_str(a) << "*";
    os << (i < ctx.names().size() ? ctx.names()[i] : "s" + std::to_string(i));
    first = false;
  }
  os << ")";
  return os.str();
}

static std::string poly_str(const LaurentPoly& p, const SeriesContext& ctx) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : p.terms()) {
    std::string m = monomial_str(e, ctx);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Rational a = abs(c);
    if (m.empty())
      os << rat_str(a);
    else if (a == 1)
      os << m;
    else
      os << rat_str(a) << "*" << m;
    first = false;
  }
  return os.str();
}

static std::string series_str(const QSeries& s, const SeriesContext& ctx) {
  std::ostringstream os;
  bool first = true;
  for (auto& [e, p] : s.c) {
    if (!first) os << " + ";
    os << "(" << poly_str(p, ctx) << ")";
    if (e != 0) {
      Rational x(e, ctx.qden());
      x.canonicalize();
      os << "*q^" << (x.get_den() == 1 ? x.get_str() : "(" + x.get_str() + ")");
    }
    first = false;
  }
  if (first) os << "0";
  if (s.prec != LONG_MAX) {
    Rational x(s.prec, ctx.qden());
    x.canonicalize();
    os << " + O(q^" << x.get_str() << ")";
  }
  return os.str();
}

std::string Scalar::to_string() const {
  if (!ctx_) return "<invalid>";
  std::string n = series_str(num_, *ctx_);
  if (den_.prec == LONG_MAX && den_.c.size() == 1 && den_.c.begin()->first == 0 &&
      den_.c.begin()->second == LaurentPoly(1))
    return n;
  return "[" + n + "] / [" + series_str(den_, *ctx_) + "]";
}

// ---------------------------------------------------------------- lattice

LatticeVector lv_add(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

LatticeVector lv_neg(const LatticeVector& a) {
  LatticeVector r = a;
  for (auto& x : r) x = -x;
  return r;
}

LatticeVector lv_sub(const LatticeVector& a, const LatticeVector& b) { return lv_add(a, lv_neg(b)); }

LatticeVector lv_scale(const LatticeVector& a, int k) {
  LatticeVector r = a;
  for (auto& x : r) x *= k;
  return r;
}

LatticeVector lv_unit(size_t dim, size_t i, int k) {
  LatticeVector r(dim, 0);
  r.at(i) = k;
  return r;
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols != o.rows) throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
  IntMatrix r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      int x = at(i, k);
      if (!x) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

LatticeVector IntMatrix::apply(const LatticeVector& u) const {
  LatticeVector r(size_t(rows), 0);
  for (int j = 0; j < cols && size_t(j) < u.size(); ++j) {
    int x = u[size_t(j)];
    if (!x) continue;
    for (int i = 0; i < rows; ++i) r[size_t(i)] += at(i, j) * x;
  }
  return r;
}

// ---------------------------------------------------------------- evaluation

EvaluationPoint::EvaluationPoint(CtxPtr source, std::vector<Rational> values)
    : src_(std::move(source)), vals_(std::move(values)) {
  if (vals_.size() != src_->dim()) throw Error(ErrorCode::InvalidArgument, "evaluation point has wrong size");
  for (auto& v : vals_)
    if (v == 0 || v == 1 || v == -1) throw Error(ErrorCode::InvalidArgument, "evaluation values must avoid 0 and +-1");
  tgt_ = SeriesContext::numeric(src_->trunc(), src_->qden());
}

static Rational rpow(const Rational& b, int e) {
  Rational r = 1;
  mpz_class n = b.get_num(), d = b.get_den();
  unsigned ae = unsigned(std::abs(e));
  mpz_class pn, pd;
  mpz_pow_ui(pn.get_mpz_t(), n.get_mpz_t(), ae);
  mpz_pow_ui(pd.get_mpz_t(), d.get_mpz_t(), ae);
  r = e >= 0 ? Rational(pn, pd) : Rational(pd, pn);
  r.canonicalize();
  return r;
}

Rational EvaluationPoint::monomial(const ExponentVector& e) const {
  Rational r = 1;
  for (size_t i = 0; i < e.v.size(); ++i)
    if (e.v[i]) r *= rpow(vals_.at(i), e.v[i]);
  return r;
}

Rational EvaluationPoint::monomial(const LatticeVector& u) const {
  Rational r = 1;
  for (size_t i = 0; i < u.size(); ++i)
    if (u[i]) r *= rpow(vals_.at(i), u[i]);
  return r;
}

static QSeries eval_series(const QSeries& s, const EvaluationPoint& p) {
  QSeries r;
  r.prec = s.prec;
  for (auto& [e, poly] : s.c) {
    Rational acc = 0;
    for (auto& [m, c] : poly.terms()) acc += c * p.monomial(m);
    if (acc != 0) r.c.emplace(e, LaurentPoly(acc));
  }
  return r;
}

Scalar evaluate(const Scalar& s, const EvaluationPoint& p) {
  if (s.ctx() != p.source()) throw Error(ErrorCode::ContextMismatch, "point belongs to another context");
  QSeries d = eval_series(s.den(), p);
  if (d.is_zero()) throw Error(ErrorCode::DegeneratePoint, "denominator vanishes at the evaluation point");
  return Scalar(p.target(), eval_series(s.num(), p), d);
}

// ---------------------------------------------------------------- substitution

static ExponentVector apply_exp(const IntMatrix& sigma, const ExponentVector& e) {
  if (size_t(sigma.cols) < e.v.size()) throw Error(ErrorCode::InvalidArgument, "substitution has too few columns");
  return ExponentVector(sigma.apply(e.v));
}

static QSeries subst_series(const QSeries& s, const IntMatrix& sigma) {
  QSeries r;
  r.prec = s.prec;
  for (auto& [e, poly] : s.c) {
    LaurentPoly np;
    for (auto& [m, c] : poly.terms()) np.add_term(apply_exp(sigma, m), c);
    if (!np.is_zero()) r.c.emplace(e, std::move(np));
  }
  return r;
}

Scalar substitute(const Scalar& s, const IntMatrix& sigma, CtxPtr target) {
  if (size_t(sigma.rows) != target->dim()) throw Error(ErrorCode::InvalidArgument, "substitution rows != target dim");
  if (target->limit() != s.ctx()->limit() || target->qden() != s.ctx()->qden())
    throw Error(ErrorCode::ContextMismatch, "substitution must keep truncation");
  QSeries d = subst_series(s.den(), sigma);
  if (d.is_zero()) throw Error(ErrorCode::SpecializedPole, "substituted denominator vanishes");
  return Scalar(target, subst_series(s.num(), sigma), d);
}

// ---------------------------------------------------------------- theta

namespace {
using Bi = std::map<long, std::map<int, Rational>>;

Bi bi_mul(const Bi& a, const Bi& b, long bound) {
  Bi r;
  for (auto& [qa, ta] : a)
    for (auto& [qb, tb] : b) {
      if (qa + qb >= bound) break;
      auto& slot = r[qa + qb];
      for (auto& [ja, ca] : ta)
        for (auto& [jb, cb] : tb) slot[ja + jb] += ca * cb;
    }
  for (auto& [q, t] : r)
    for (auto it = t.begin(); it != t.end();) it = it->second == 0 ? t.erase(it) : std::next(it);
  return r;
}

long to_units(const Rational& x, int D) {
  Rational y = x * D;
  y.canonicalize();
  if (y.get_den() != 1) throw Error(ErrorCode::InvalidArgument, "q-exponent not representable with this q denominator");
  return y.get_num().get_si();
}

struct ThetaKey {
  Rational c;
  int D;
  long limit;
  bool operator<(const ThetaKey& o) const {
    if (c != o.c) return c < o.c;
    if (D != o.D) return D < o.D;
    return limit < o.limit;
  }
};
}  // namespace

const UnivariateTheta& univariate_theta(const Rational& c, int D, long limit) {
  static std::mutex mu;
  static std::map<ThetaKey, std::unique_ptr<UnivariateTheta>> cache;
  std::lock_guard<std::mutex> lock(mu);
  ThetaKey key{c, D, limit};
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;

  long half = to_units(c / 2, D);
  Bi acc;
  acc[half][1] += 1;
  acc[-half][-1] -= 1;
  long mneg = -std::abs(half);
  struct Factor {
    long e;
    int j;
  };
  std::vector<Factor> neg, pos;
  long cu = to_units(c, D);
  for (long n = 1;; ++n) {
    long e1 = n * D + cu, e2 = n * D - cu;
    if (e1 <= 0) {
      neg.push_back({e1, 2});
      mneg += e1;
    }
    if (e2 <= 0) {
      neg.push_back({e2, -2});
      mneg += e2;
    }
    if (e1 > 0 && e2 > 0) break;
  }
  long upper = limit - mneg;
  for (long n = 1;; ++n) {
    long e1 = n * D + cu, e2 = n * D - cu;
    if (std::min(e1, e2) >= upper) break;
    if (e1 > 0 && e1 < upper) pos.push_back({e1, 2});
    if (e2 > 0 && e2 < upper) pos.push_back({e2, -2});
  }
  for (auto& f : neg) {
    Bi g;
    g[0][0] = 1;
    g[f.e][f.j] -= 1;
    acc = bi_mul(acc, g, LONG_MAX);
  }
  for (auto& f : pos) {
    Bi g;
    g[0][0] = 1;
    g[f.e][f.j] -= 1;
    acc = bi_mul(acc, g, limit);
  }
  auto u = std::make_unique<UnivariateTheta>();
  for (auto& [q, t] : acc)
    if (q < limit && !t.empty()) u->c[q] = t;
  u->prec = limit;
  auto& ref = *u;
  cache.emplace(key, std::move(u));
  return ref;
}

Scalar theta_shifted(const LatticeVector& u, const Rational& c, CtxPtr ctx) {
  const auto& tab = univariate_theta(c, ctx->qden(), ctx->limit());
  ExponentVector base(u);
  QSeries s;
  s.prec = tab.prec;
  for (auto& [q, t] : tab.c) {
    LaurentPoly p;
    for (auto& [j, coef] : t) p.add_term(base.scaled(j), coef);
    if (!p.is_zero()) s.c.emplace(q, std::move(p));
  }
  return Scalar::from_series(ctx, std::move(s));
}

Scalar theta(const LatticeVector& u, CtxPtr ctx) { return theta_shifted(u, 0, std::move(ctx)); }

static LatticeVector hbar_vec(const SeriesContext& ctx) {
  int h = ctx.hbar_index();
  if (h < 0) throw Error(ErrorCode::InvalidArgument, "context has no hbar symbol");
  return lv_unit(ctx.dim(), size_t(h));
}

Scalar pfun(const LatticeVector& x, const LatticeVector& y, CtxPtr ctx) {
  auto h = hbar_vec(*ctx);
  Scalar tx = theta(x, ctx), tyh = theta(lv_add(y, h), ctx);
  if (tx.is_zero() || tyh.is_zero()) throw Error(ErrorCode::ZeroDenominator, "P has a vanishing denominator");
  return (theta(lv_sub(x, y), ctx) * theta(h, ctx)) / (tyh * tx);
}

Scalar qfun(const LatticeVector& x, const LatticeVector& y, CtxPtr ctx) {
  auto h = hbar_vec(*ctx);
  Scalar tx = theta(x, ctx), tyh = theta(lv_add(y, h), ctx);
  if (tx.is_zero() || tyh.is_zero()) throw Error(ErrorCode::ZeroDenominator, "Q has a vanishing denominator");
  return (theta(lv_add(x, h), ctx) * theta(y, ctx)) / (tyh * tx);
}

// ---------------------------------------------------------------- sinks / frames

ThetaSink::ThetaSink(CtxPtr symbolic) : sym_(symbolic), out_(symbolic), dim_(symbolic->dim()) {}

ThetaSink::ThetaSink(std::shared_ptr<const EvaluationPoint> point)
    : sym_(point->source()), out_(point->target()), point_(point), dim_(point->source()->dim()) {}

Scalar ThetaSink::theta(const LatticeVector& u, const Rational& c) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find({u, c});
    if (it != cache_.end()) return it->second;
  }
  Scalar r;
  if (!point_) {
    r = theta_shifted(u, c, out_);
  } else {
    const auto& tab = univariate_theta(c, out_->qden(), out_->limit());
    Rational t = point_->monomial(u), ti = 1 / t;
    std::map<int, Rational> pw;
    auto power = [&](int j) -> const Rational& {
      auto it = pw.find(j);
      if (it != pw.end()) return it->second;
      return pw[j] = rpow(j >= 0 ? t : ti, std::abs(j));
    };
    QSeries s;
    s.prec = tab.prec;
    for (auto& [q, tt] : tab.c) {
      Rational acc = 0;
      for (auto& [j, coef] : tt) acc += coef * power(j);
      if (acc != 0) s.c.emplace(q, LaurentPoly(acc));
    }
    r = Scalar::from_series(out_, std::move(s));
  }
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(std::make_pair(u, c), r);
  return r;
}

Frame::Frame(std::shared_ptr<ThetaSink> sink, IntMatrix map, std::vector<Rational> tau)
    : sink_(std::move(sink)), map_(std::move(map)), tau_(std::move(tau)) {
  if (size_t(map_.rows) != sink_->dim()) throw Error(ErrorCode::InvalidArgument, "frame map rows != sink dim");
  if (!tau_.empty() && tau_.size() != size_t(map_.cols)) throw Error(ErrorCode::InvalidArgument, "tau size");
  make_key();
}

Frame Frame::identity(std::shared_ptr<ThetaSink> sink) {
  int d = int(sink->dim());
  return Frame(std::move(sink), IntMatrix::identity(d));
}

void Frame::make_key() {
  std::ostringstream os;
  os << map_.rows << 'x' << map_.cols << ':';
  for (int x : map_.a) os << x << ',';
  os << '|';
  for (auto& t : tau_) os << t.get_str() << ',';
  key_ = os.str();
}

Scalar Frame::theta(const LatticeVector& u) const {
  LatticeVector v = map_.apply(u);
  Rational c = 0;
  for (size_t k = 0; k < tau_.size() && k < u.size(); ++k)
    if (u[k]) c += tau_[k] * u[k];
  return sink_->theta(v, c);
}

static LatticeVector frame_hbar(const Frame& f) {
  // hbar is the last source symbol by convention in every frame
  return lv_unit(size_t(f.source_dim()), size_t(f.source_dim() - 1));
}

Scalar Frame::P(const LatticeVector& x, const LatticeVector& y) const {
  auto h = frame_hbar(*this);
  Scalar tx = theta(x), tyh = theta(lv_add(y, h));
  if (tx.is_zero() || tyh.is_zero()) throw Error(ErrorCode::ZeroDenominator, "P has a vanishing denominator");
  return (theta(lv_sub(x, y)) * theta(h)) / (tyh * tx);
}

Scalar Frame::Q(const LatticeVector& x, const LatticeVector& y) const {
  auto h = frame_hbar(*this);
  Scalar tx = theta(x), tyh = theta(lv_add(y, h));
  if (tx.is_zero() || tyh.is_zero()) throw Error(ErrorCode::ZeroDenominator, "Q has a vanishing denominator");
  return (theta(lv_add(x, h)) * theta(y)) / (tyh * tx);
}

Frame Frame::then(const IntMatrix& m) const {
  std::vector<Rational> t;
  if (!tau_.empty()) {
    t.assign(size_t(m.cols), Rational(0));
    for (int j = 0; j < m.cols; ++j)
      for (int k = 0; k < m.rows; ++k)
        if (m.at(k, j)) t[size_t(j)] += tau_[size_t(k)] * m.at(k, j);
  }
  return Frame(sink_, map_ * m, std::move(t));
}

Frame Frame::with_tau(std::vector<Rational> tau) const { return Frame(sink_, map_, std::move(tau)); }

}  // namespace esc
