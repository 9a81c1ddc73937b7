#include "esc/ktheory.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace esc {

// ---------------------------------------------------------------- KScalar

KScalar::KScalar(CtxPtr ctx, LaurentPoly num, LaurentPoly den) : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::ZeroDenominator, "K-theory scalar with zero denominator");
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  // scale so the first denominator term is 1; leading theta coefficients come
  // with half-integral monomial prefactors that cancel this way
  auto& [e, c] = *den_.terms().begin();
  LaurentPoly inv = LaurentPoly::monomial(-e, 1 / c);
  num_ = num_ * inv;
  den_ = den_ * inv;
  // proportional num and den: a constant
  auto& [ne, nc] = *num_.terms().begin();
  if (ne == den_.terms().begin()->first && num_.size() == den_.size() && num_ == den_ * nc) {
    num_ = LaurentPoly(nc);
    den_ = LaurentPoly(1);
  }
}

KScalar KScalar::constant(CtxPtr ctx, const Rational& c) { return KScalar(std::move(ctx), LaurentPoly(c), LaurentPoly(1)); }

KScalar KScalar::e(CtxPtr ctx, const LatticeVector& x) {
  return KScalar(std::move(ctx), LaurentPoly::monomial(ExponentVector(lv_scale(x, 2))), LaurentPoly(1));
}

KScalar KScalar::y(CtxPtr ctx) {
  int h = ctx->hbar_index();
  if (h < 0) throw Error(ErrorCode::InvalidArgument, "context has no hbar symbol");
  return -e(ctx, lv_unit(ctx->dim(), size_t(h), -1));
}

bool KScalar::equals(const KScalar& o) const { return num_ * o.den_ == o.num_ * den_; }

KScalar KScalar::operator+(const KScalar& o) const {
  if (den_ == o.den_) return KScalar(ctx_, num_ + o.num_, den_);
  return KScalar(ctx_, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

KScalar KScalar::operator-(const KScalar& o) const { return *this + (-o); }
KScalar KScalar::operator*(const KScalar& o) const { return KScalar(ctx_, num_ * o.num_, den_ * o.den_); }

KScalar KScalar::operator/(const KScalar& o) const {
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero K-theory scalar");
  return KScalar(ctx_, num_ * o.den_, den_ * o.num_);
}

KScalar KScalar::operator-() const { return KScalar(ctx_, -num_, den_); }

KScalar KScalar::pow(int k) const {
  KScalar r = constant(ctx_, 1);
  KScalar b = k >= 0 ? *this : constant(ctx_, 1) / *this;
  for (int i = 0; i < std::abs(k); ++i) r = r * b;
  return r;
}

static LaurentPoly poly_substitute(const LaurentPoly& p, const IntMatrix& m) {
  LaurentPoly r;
  for (auto& [e, c] : p.terms()) {
    LatticeVector v(size_t(m.cols), 0);
    for (size_t k = 0; k < v.size(); ++k) v[k] = e[k];
    r.add_term(ExponentVector(m.apply(v)), c);
  }
  return r;
}

KScalar KScalar::substitute(const IntMatrix& m) const {
  return KScalar(ctx_, poly_substitute(num_, m), poly_substitute(den_, m));
}

namespace {

// a Laurent polynomial as a polynomial in w = e(-h): power -> rest
std::map<int, LaurentPoly> split_w(const LaurentPoly& p, int h) {
  std::map<int, LaurentPoly> out;
  for (auto& [e, c] : p.terms()) {
    int x = e[size_t(h)];
    if (x % 2) throw Error(ErrorCode::InvalidArgument, "half-integral hbar exponent in a K-theory scalar");
    std::vector<int> v = e.v;
    if (v.size() > size_t(h)) v[size_t(h)] = 0;
    out[-x / 2].add_term(ExponentVector(v), c);
  }
  return out;
}

std::string rat_text(const Rational& r) { return r.get_str(); }

std::string mono_text(const ExponentVector& e, const SeriesContext& ctx, Rational& coef) {
  std::string out, inner;
  int h = ctx.hbar_index();
  for (size_t k = 0; k < e.v.size(); ++k) {
    int x = e.v[k];
    if (!x) continue;
    if (int(k) == h && x % 2 == 0 && x < 0) {
      // e(-k h) = (-y)^k
      int p = -x / 2;
      if (p % 2) coef = -coef;
      out += (out.empty() ? "" : "*") + std::string("y") + (p > 1 ? "^" + std::to_string(p) : "");
      continue;
    }
    Rational q(x, 2);
    q.canonicalize();
    std::string t = q == 1 ? "" : q == -1 ? "-" : rat_text(q) + "*";
    if (!inner.empty() && q > 0) t = "+" + t;
    inner += t + ctx.names()[k];
  }
  if (!inner.empty()) out += (out.empty() ? "" : "*") + std::string("e(") + inner + ")";
  return out;
}

std::string poly_text(const LaurentPoly& p, const SeriesContext& ctx) {
  if (p.is_zero()) return "0";
  std::string s;
  for (auto& [e, c0] : p.terms()) {
    Rational c = c0;
    std::string m = mono_text(e, ctx, c);
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    std::string body = m.empty() ? rat_text(a) : (a == 1 ? m : rat_text(a) + "*" + m);
    if (s.empty())
      s = (neg ? "-" : "") + body;
    else
      s += (neg ? " - " : " + ") + body;
  }
  return s;
}

}  // namespace

KScalar KScalar::at_y_zero() const {
  int h = ctx_->hbar_index();
  auto n = split_w(num_, h), d = split_w(den_, h);
  if (n.empty()) return constant(ctx_, 0);
  int on = n.begin()->first, od = d.begin()->first;
  if (on > od) return constant(ctx_, 0);
  if (on < od) throw Error(ErrorCode::LimitDoesNotExist, "pole at y = 0");
  return KScalar(ctx_, n.begin()->second, d.begin()->second);
}

std::string KScalar::to_string() const {
  // clear positive hbar exponents so everything reads in powers of y
  int h = ctx_->hbar_index(), top = 0;
  for (auto* p : {&num_, &den_})
    for (auto& [e, c] : p->terms()) top = std::max(top, e[size_t(h)]);
  LaurentPoly m = LaurentPoly::monomial(ExponentVector(lv_unit(ctx_->dim(), size_t(h), -top)));
  if (top % 2) m = LaurentPoly(1);
  std::string n = poly_text(num_ * m, *ctx_);
  if (den_ == LaurentPoly(1) && top == 0) return n;
  return "(" + n + ")/(" + poly_text(den_ * m, *ctx_) + ")";
}

// ---------------------------------------------------------------- slopes and frames

static int coroot_height(const RootDatum& d, int root) {
  const Root& r = d.roots()[size_t(root)];
  if (d.kind() == Kind::GL) return r.height;
  int h = 0;
  for (int c : r.coroot) h += c;
  return h;
}

static int max_coroot_height(const RootDatum& d) {
  int h = 0;
  for (int r : d.positive_roots()) h = std::max(h, coroot_height(d, r));
  return h;
}

Rational default_slope(const RootDatum& d) {
  Rational s(1, 2 * max_coroot_height(d));
  s.canonicalize();
  return s;
}

void check_slope(const RootDatum& d, const Rational& s) {
  if (s <= 0 || s * max_coroot_height(d) >= 1)
    throw Error(ErrorCode::SlopeOutOfRange, "slope must satisfy 0 < s and s * (max coroot height) < 1, got " + s.get_str());
}

int slope_trunc(const RootDatum& d, const Rational& s) {
  Rational x = 1 + 2 * max_coroot_height(d) * s * d.length(d.longest());
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return int(c.get_si());
}

// theta(u + c tau) needs q^{c/2}
int slope_qden(const Rational& s) { return int(2 * s.get_den().get_si()); }

Frame slope_frame(const RootDatum& d, const Rational& s, const std::vector<int>& para, int trunc) {
  check_slope(d, s);
  if (trunc < 0) trunc = slope_trunc(d, s);
  int n = d.dim(), dim = d.symbol_dim();
  auto ctx = d.make_context(trunc, slope_qden(s));
  IntMatrix m(dim, dim);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  m.at(2 * n, 2 * n) = 1;
  std::vector<Rational> tau(size_t(dim), Rational(0));
  auto in_para = [&](int i) { return std::find(para.begin(), para.end(), i) != para.end(); };
  if (d.kind() == Kind::GL) {
    // l_k = l_1 - sum_{i<k} (value of alpha_i^vee), with l_1 -> 0
    int hb = 0;
    Rational t = 0;
    for (int k = 1; k <= n; ++k) {
      m.at(2 * n, n + k - 1) = hb;
      tau[size_t(n + k - 1)] = t;
      if (k < n) {
        if (in_para(k))
          ++hb;
        else
          t -= s;
      }
    }
  } else {
    // lambda symbols are coordinates in the simple coroots
    for (int k = 1; k <= n; ++k) {
      if (in_para(k))
        m.at(2 * n, n + k - 1) = -1;
      else
        tau[size_t(n + k - 1)] = s;
    }
  }
  return Frame(std::make_shared<ThetaSink>(ctx), m, tau);
}

KScalar limit_q0(const Scalar& s) {
  const QSeries& n = s.num();
  const QSeries& d = s.den();
  long od = d.order();
  if (od >= d.prec) throw Error(ErrorCode::InsufficientPrecision, "denominator unknown at its leading order");
  long on = n.order();
  if (on >= n.prec) {
    if (n.prec > od) return KScalar::constant(s.ctx(), 0);
    throw Error(ErrorCode::InsufficientPrecision, "numerator unknown at order zero");
  }
  if (on < od) throw Error(ErrorCode::LimitDoesNotExist, "negative net q-order");
  if (on > od) return KScalar::constant(s.ctx(), 0);
  return KScalar(s.ctx(), n.c.at(on), d.c.at(od));
}

// ---------------------------------------------------------------- K tables

namespace {

KScalar normalizer(const CtxPtr& ctx, int len) { return (-KScalar::y(ctx)).pow(-len); }

struct AtomLimits {
  const Frame& f;
  std::map<std::tuple<bool, LatticeVector, LatticeVector>, KScalar> memo;
  KScalar get(bool q, const LatticeVector& x, const LatticeVector& y) {
    auto key = std::make_tuple(q, x, y);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    KScalar k = limit_q0(q ? f.Q(x, y) : f.P(x, y));
    memo.emplace(key, k);
    return k;
  }
};

KScalar billey_limit(const RootDatum& d, const Word& word, WeylId w, AtomLimits& al, const ParabolicData* para,
                     const Frame& f) {
  KScalar acc = KScalar::constant(f.ctx(), 0);
  size_t l = word.size();
  auto beta = beta_sequence(d, word);
  for (unsigned long mask = 0; mask < (1UL << l); ++mask) {
    std::vector<bool> J(l);
    WeylId wJ = d.id();
    for (size_t j = 0; j < l; ++j) {
      J[j] = (mask >> j) & 1;
      if (J[j]) wJ = d.rmul_simple(wJ, word[j]);
    }
    if (wJ != w) continue;
    if (para && !subword_satisfies_parabolic(*para, word, J)) continue;
    auto g = gamma_sequence(d, word, J);
    KScalar t = KScalar::constant(f.ctx(), 1);
    for (size_t j = 0; j < l && !t.is_zero(); ++j) t = t * al.get(J[j], d.l_coroot(g.gamma[j]), d.z_root(beta[j]));
    acc = acc + t;
  }
  return acc;
}

KTable build(const DatumPtr& dp, const Frame& f, KRoute route, const ParabolicData* para) {
  const RootDatum& d = *dp;
  size_t n = d.order();
  KTable t{dp, f.ctx(), {}};
  t.k.assign(n, std::vector<KScalar>(n, KScalar::constant(f.ctx(), 0)));
  SchubertEngine eng(dp);
  Frame pf = para ? f.then(para->projection()) : f;
  AtomLimits al{pf, {}};
  for (WeylId u = 0; u < WeylId(n); ++u) {
    const std::vector<Scalar>* row = route == KRoute::Puiseux ? &eng.row_left(f, u) : nullptr;
    for (WeylId w = 0; w < WeylId(n); ++w) {
      if (para && !para->in_WP_upper(w)) continue;
      if (!d.bruhat_leq(w, u)) continue;
      KScalar v = route == KRoute::Puiseux ? limit_q0((*row)[size_t(w)])
                                           : billey_limit(d, d.reduced_word(u), w, al, para, pf);
      t.k[size_t(u)][size_t(w)] = v * normalizer(f.ctx(), d.length(w));
    }
  }
  return t;
}

}  // namespace

KTable k_table(const DatumPtr& d, const Rational& s, KRoute route) {
  return build(d, slope_frame(*d, s), route, nullptr);
}

KTable k_table_parabolic(const ParabolicData& P, const Rational& s, KRoute route) {
  return build(P.datum_ptr(), slope_frame(P.datum(), s, P.subset()), route, &P);
}

std::vector<CheckRecord> k_recursion_check(const KTable& t) {
  const RootDatum& d = *t.datum;
  auto ctx = t.ctx;
  KScalar one = KScalar::constant(ctx, 1), y = KScalar::y(ctx);
  size_t up_cases = 0, up_bad = 0, down_cases = 0, down_bad = 0;
  for (int i = 1; i <= d.rank(); ++i) {
    int a = d.simple_root(i);
    WeylId s = d.simple_reflection(i);
    IntMatrix sz = d.z_action(s);
    KScalar ea = KScalar::e(ctx, lv_neg(d.z_root(a)));
    KScalar den = one + y * ea;
    for (WeylId w = 0; w < WeylId(d.order()); ++w) {
      WeylId sw = d.lmul_simple(i, w);
      bool up = d.length(sw) > d.length(w);
      KScalar c1 = up ? (one + y) / den : (one + y) * ea / den;
      KScalar c2 = up ? (-y) * (one - ea) / den : (-y).pow(-1) * (-y) * (one - ea) / den;
      for (WeylId u = 0; u < WeylId(d.order()); ++u) {
        KScalar lhs = t.at(d.lmul_simple(i, u), w);
        KScalar rhs = c1 * t.at(u, w).substitute(sz) + c2 * t.at(u, sw).substitute(sz);
        bool ok = lhs.equals(rhs);
        (up ? up_cases : down_cases)++;
        if (!ok) (up ? up_bad : down_bad)++;
      }
    }
  }
  auto rec = [](std::string name, size_t cases, size_t bad) {
    return CheckRecord{std::move(name), bad == 0 && cases > 0,
                       std::to_string(cases - bad) + "/" + std::to_string(cases) + " instances hold"};
  };
  return {rec(d.name() + " K recursion, s_a w > w", up_cases, up_bad),
          rec(d.name() + " K recursion, s_a w < w", down_cases, down_bad)};
}

std::vector<CheckRecord> k_parabolic_checks(const ParabolicData& P, const KTable& t) {
  const RootDatum& d = P.datum();
  size_t cells = 0, bad = 0, zero_bad = 0;
  for (WeylId u = 0; u < WeylId(d.order()); ++u) {
    WeylId m = P.min_rep(u);
    for (WeylId w = 0; w < WeylId(d.order()); ++w) {
      if (!P.in_WP_upper(w)) {
        if (!t.at(u, w).is_zero()) ++zero_bad;
        continue;
      }
      ++cells;
      if (!t.at(u, w).equals(t.at(m, w))) ++bad;
    }
  }
  return {{d.name() + " parabolic K coset constancy", bad == 0,
           std::to_string(cells - bad) + "/" + std::to_string(cells) + " cells agree with the minimal representative"},
          {d.name() + " parabolic K vanishes off W^P", zero_bad == 0, std::to_string(zero_bad) + " nonzero entries"}};
}

// ---------------------------------------------------------------- closed forms and the weight table

KScalar limit_P_closed(CtxPtr ctx, bool positive, const LatticeVector& y, int hbar) {
  KScalar one = KScalar::constant(ctx, 1);
  KScalar eh = KScalar::e(ctx, lv_unit(ctx->dim(), size_t(hbar), -1)), ey = KScalar::e(ctx, lv_neg(y));
  KScalar den = one - ey * eh;
  return positive ? (one - eh) / den : (one - eh) * ey / den;
}

KScalar limit_Q_closed(CtxPtr ctx, bool positive, const LatticeVector& y, int hbar) {
  KScalar one = KScalar::constant(ctx, 1);
  KScalar eh = KScalar::e(ctx, lv_unit(ctx->dim(), size_t(hbar), -1)), ey = KScalar::e(ctx, lv_neg(y));
  KScalar den = one - ey * eh;
  return positive ? (one - ey) * eh / den : (one - ey) / den;
}

std::vector<CheckRecord> limit_weight_table_check(int n, const Rational& s) {
  if (n < 2 || n > 4) throw Error(ErrorCode::BoundExceeded, "weight table check runs for 2 <= n <= 4");
  auto gl = RootDatum::build(Kind::GL, n);
  Frame f = slope_frame(*gl, s);

  // the table, with the elliptic weights it claims to be limits of
  struct Entry {
    std::string name;
    bool cross;
    int cmp;  // sign of c - d
  };
  std::vector<Entry> entries = {{"cross c<d", true, -1}, {"cross c>d", true, 1}, {"cross c=d", true, 0},
                                {"bump c<d", false, -1}, {"bump c>d", false, 1}, {"bump c=d", false, 0}};
  // blue strands of the same block: the parabolic specialization sends the
  // coroot of two adjacent ones to -h
  auto gl2 = RootDatum::build(Kind::GL, 2);
  Frame f2 = slope_frame(*gl2, s, {1});

  std::vector<CheckRecord> out;
  for (auto& e : entries) {
    size_t cases = 0, bad = 0, cases0 = 0, bad0 = 0;
    std::string first_bad;
    auto run = [&](const Frame& fr, const LatticeVector& lam, const LatticeVector& za, int norm) {
      KScalar ea = KScalar::e(fr.ctx(), lv_neg(za));
      KScalar lim = limit_q0(e.cross ? fr.Q(lam, za) : fr.P(lam, za)) * (-KScalar::y(fr.ctx())).pow(norm);
      // table and degeneration are built in the frame's own context
      KScalar one_f = KScalar::constant(fr.ctx(), 1), yf = KScalar::y(fr.ctx());
      KScalar den = one_f + yf * ea;
      KScalar want;
      if (e.cross)
        want = e.cmp < 0 ? (-yf).pow(-1) * (-yf * (one_f - ea)) / den : e.cmp > 0 ? (-yf) * (one_f - ea) / den : one_f;
      else
        want = e.cmp < 0 ? (one_f + yf) / den : e.cmp > 0 ? (one_f + yf) * ea / den : KScalar::constant(fr.ctx(), 0);
      ++cases;
      if (!lim.equals(want)) {
        ++bad;
        if (first_bad.empty()) first_bad = "limit " + lim.to_string() + " vs table " + want.to_string();
      }
      KScalar d0 = e.cross ? (e.cmp < 0 ? one_f - ea : e.cmp > 0 ? KScalar::constant(fr.ctx(), 0) : one_f)
                           : (e.cmp < 0 ? one_f : e.cmp > 0 ? ea : KScalar::constant(fr.ctx(), 0));
      ++cases0;
      if (!lim.at_y_zero().equals(d0)) ++bad0;
    };
    if (e.cmp == 0) {
      run(f2, gl2->l_coroot(gl2->simple_root(1)), gl2->z_root(gl2->simple_root(1)), 0);
    } else {
      for (int c = 1; c <= n; ++c)
        for (int d = 1; d <= n; ++d) {
          if (c == d || (c < d) != (e.cmp < 0)) continue;
          LatticeVector lam = lv_sub(gl->lvec(lv_unit(size_t(n), size_t(c - 1))), gl->lvec(lv_unit(size_t(n), size_t(d - 1))));
          for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b) {
              if (a == b) continue;
              LatticeVector za = lv_sub(gl->zvec(lv_unit(size_t(n), size_t(a - 1))), gl->zvec(lv_unit(size_t(n), size_t(b - 1))));
              run(f, lam, za, e.cross ? (e.cmp < 0 ? -1 : 1) : 0);
            }
        }
    }
    out.push_back({"weight table " + e.name, bad == 0,
                   std::to_string(cases - bad) + "/" + std::to_string(cases) + " match" +
                       (first_bad.empty() ? "" : "; " + first_bad)});
    out.push_back({"weight table y=0 " + e.name, bad0 == 0,
                   std::to_string(cases0 - bad0) + "/" + std::to_string(cases0) + " match"});
  }
  return out;
}

std::vector<CheckRecord> limit_formula_checks(const DatumPtr& dp, const Rational& s) {
  const RootDatum& d = *dp;
  Frame f = slope_frame(d, s);
  auto ctx = f.ctx();
  int hb = ctx->hbar_index();
  std::vector<CheckRecord> out;

  // lim theta(x) = e(x/2) - e(-x/2)
  {
    size_t cases = 0, bad = 0;
    for (int r : d.positive_roots()) {
      LatticeVector x = d.z_root(r);
      KScalar want(ctx, LaurentPoly::monomial(ExponentVector(x)) - LaurentPoly::monomial(ExponentVector(lv_neg(x))), LaurentPoly(1));
      ++cases;
      if (!limit_q0(theta(x, ctx)).equals(want)) ++bad;
    }
    out.push_back({"limit of theta", bad == 0, std::to_string(cases - bad) + "/" + std::to_string(cases)});
  }

  // theta(u + c tau)/theta(c tau) -> e((floor(-c) + 1/2) u), for c = 1/2 and 3/2
  for (Rational c : {Rational(1, 2), Rational(3, 2)}) {
    auto cx = d.make_context(3, 4);
    size_t cases = 0, bad = 0;
    mpz_class fl;
    Rational mc = -c;
    mpz_fdiv_q(fl.get_mpz_t(), mc.get_num_mpz_t(), mc.get_den_mpz_t());
    int k = int(fl.get_si()) * 2 + 1;  // doubled (floor(-c) + 1/2)
    LatticeVector zero(size_t(d.symbol_dim()), 0);
    for (int r : d.positive_roots()) {
      LatticeVector u = d.z_root(r);
      KScalar lim = limit_q0(theta_shifted(u, c, cx) / theta_shifted(zero, c, cx));
      KScalar want(cx, LaurentPoly::monomial(ExponentVector(lv_scale(u, k))), LaurentPoly(1));
      ++cases;
      if (!lim.equals(want)) ++bad;
    }
    out.push_back({"theta ratio limit, c = " + c.get_str(), bad == 0, std::to_string(cases - bad) + "/" + std::to_string(cases)});
  }

  // P and Q at +-(height) s tau against the closed forms
  const char* names[] = {"P(+s tau)", "P(-s tau)", "Q(+s tau)", "Q(-s tau)"};
  for (int kind = 0; kind < 4; ++kind) {
    bool q = kind >= 2, pos = kind % 2 == 0;
    size_t cases = 0, bad = 0;
    for (int r : d.positive_roots()) {
      LatticeVector lam = d.l_coroot(r);
      if (!pos) lam = lv_neg(lam);
      for (int b : d.positive_roots()) {
        LatticeVector y = d.z_root(b);
        KScalar lim = limit_q0(q ? f.Q(lam, y) : f.P(lam, y));
        KScalar want = q ? limit_Q_closed(ctx, pos, y, hb) : limit_P_closed(ctx, pos, y, hb);
        ++cases;
        if (!lim.equals(want)) ++bad;
      }
    }
    out.push_back({std::string("limit of ") + names[kind], bad == 0, std::to_string(cases - bad) + "/" + std::to_string(cases)});
  }
  return out;
}

}  // namespace esc
