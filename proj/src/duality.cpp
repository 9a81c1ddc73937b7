#include "esc/duality.hpp"

#include <random>

namespace esc {

PairingContext::PairingContext(DatumPtr d, const Frame& f, const ParabolicData* P) : d_(std::move(d)), f_(f) {
  const RootDatum& dd = *d_;
  for (WeylId u = 0; u < WeylId(dd.order()); ++u) {
    Scalar den = f.one();
    for (int a : dd.positive_roots()) {
      if (P && P->root_in_P(a)) continue;
      den = den * f.theta(lv_neg(dd.z_root(dd.act_root(u, a))));
    }
    den_.push_back(den);
    if (!P || P->in_WP_upper(u)) support_.push_back(u);
  }
}

Scalar PairingContext::pair(const LocalizedClass& a, const LocalizedClass& b) const {
  Scalar acc = f_.zero();
  for (WeylId u : support_) {
    const Scalar &x = a(u), &y = b(u);
    if (x.is_zero() || y.is_zero()) continue;
    acc = acc + x * y / den_[size_t(u)];
  }
  return acc;
}

LocalizedClass point_class(const DatumPtr& d, const Frame& f, WeylId u) {
  LocalizedClass c{d, std::vector<Scalar>(d->order(), f.zero())};
  c.values[size_t(u)] = f.one();
  return c;
}

// E(X_{s w}) = -P(l, z_a)/Q(-l, z_a) E(X_w) + 1/Q(-l, z_a) ^{s}E(X_w), l = l_{w^-1 a^vee}
std::vector<Scalar> RescaledEngine::step(const Frame& f, int i, WeylId w, const std::vector<Scalar>& cur,
                                         const std::vector<Scalar>& twisted) const {
  const RootDatum& d = *d_;
  int a = d.simple_root(i);
  LatticeVector za = d.z_root(a), l = d.l_coroot(d.act_root(d.inv(w), a));
  Scalar q = f.Q(lv_neg(l), za);
  Scalar c1 = -(f.P(l, za) / q), c2 = f.one() / q;
  WeylId s = d.simple_reflection(i);
  std::vector<Scalar> out(d.order(), f.zero());
  for (WeylId u = 0; u < WeylId(d.order()); ++u) {
    Scalar v = f.zero();
    if (!cur[size_t(u)].is_zero()) v = v + c1 * cur[size_t(u)];
    const Scalar& t = twisted[size_t(d.mul(s, u))];
    if (!t.is_zero()) v = v + c2 * t;
    out[size_t(u)] = v;
  }
  return out;
}

static std::vector<Scalar> initial(const RootDatum& d, const Frame& f) {
  std::vector<Scalar> v(d.order(), f.zero());
  Scalar p = f.one();
  for (int a : d.positive_roots()) p = p * f.theta(lv_neg(d.z_root(a)));
  v[0] = p;
  return v;
}

const std::vector<Scalar>& RescaledEngine::rescaled(const Frame& f, WeylId w) {
  auto key = std::make_pair(f.key(), w);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  const RootDatum& d = *d_;
  std::vector<Scalar> val;
  if (w == d.id()) {
    val = initial(d, f);
  } else {
    int i = d.reduced_word(w).front();
    WeylId rest = d.lmul_simple(i, w);
    const std::vector<Scalar> cur = rescaled(f, rest);
    const std::vector<Scalar> tw = rescaled(f.then(d.z_action(d.simple_reflection(i))), rest);
    val = step(f, i, rest, cur, tw);
  }
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.emplace(key, std::move(val)).first->second;
}

std::vector<Scalar> RescaledEngine::rescaled_along(const Frame& f, const Word& word) {
  const RootDatum& d = *d_;
  if (word.empty()) return initial(d, f);
  Word rest(word.begin() + 1, word.end());
  WeylId r = d.from_word(rest);
  if (d.length(r) != int(rest.size()) || d.length(d.lmul_simple(word.front(), r)) != int(word.size()))
    throw Error(ErrorCode::InvalidArgument, "word is not reduced");
  auto cur = rescaled_along(f, rest);
  auto tw = rescaled_along(f.then(d.z_action(d.simple_reflection(word.front()))), rest);
  return step(f, word.front(), r, cur, tw);
}

LocalizedClass RescaledEngine::rescaled_class(const Frame& f, WeylId w) { return {d_, rescaled(f, w)}; }

Scalar RescaledEngine::renormalizer(const Frame& f, WeylId w) const {
  const RootDatum& d = *d_;
  Scalar r = f.one();
  LatticeVector h = d.hvec();
  for (int a : d.positive_roots()) {
    if (d.roots()[size_t(d.act_root(w, a))].positive()) continue;
    LatticeVector l = d.l_coroot(a);
    r = r * f.theta(lv_sub(l, h)) / f.theta(lv_add(l, h));
  }
  return r;
}

LocalizedClass RescaledEngine::renormalized_class(const Frame& f, WeylId w) {
  LocalizedClass c = rescaled_class(f, w);
  Scalar r = renormalizer(f, w);
  for (auto& v : c.values)
    if (!v.is_zero()) v = v * r;
  return c;
}

// The raw parabolic class restricts from the full one (summing over the Levi
// coset with the Levi tangent weights) and the raw-to-renormalized factors on
// both sides differ by the same theta'(0) power, which cancels.  What is left:
//   E'(X^P_w)(u) = sum_{v in W_P} [E'(X_w)(uv)]_P / prod_{alpha in Phi_P^+} theta(-z_{uv alpha})
LocalizedClass RescaledEngine::parabolic_renormalized_class(const ParabolicData& P, const Frame& f, WeylId w) {
  const RootDatum& d = *d_;
  if (!P.in_WP_upper(w)) throw Error(ErrorCode::InvalidArgument, "parabolic classes are indexed by W^P");
  Frame pf = f.then(P.projection());
  LocalizedClass full;
  try {
    full = renormalized_class(pf, w);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ZeroDenominator) throw Error(ErrorCode::SpecializedPole, e.what());
    throw;
  }
  LocalizedClass out{d_, std::vector<Scalar>(d.order(), f.zero())};
  for (WeylId u : P.min_reps()) {
    Scalar acc = pf.zero();
    for (WeylId v : P.levi()) {
      WeylId uv = d.mul(u, v);
      if (full(uv).is_zero()) continue;
      Scalar den = pf.one();
      for (int a : d.positive_roots())
        if (P.root_in_P(a)) den = den * pf.theta(lv_neg(d.z_root(d.act_root(uv, a))));
      acc = acc + full(uv) / den;
    }
    out.values[size_t(u)] = acc;
  }
  return out;
}

// ---------------------------------------------------------------- checks

namespace {

CheckRecord count_record(std::string name, size_t cases, size_t bad, std::string first = {}) {
  std::string det = std::to_string(cases - bad) + "/" + std::to_string(cases) + " hold";
  if (!first.empty()) det += "; first failure " + first;
  return {std::move(name), bad == 0 && cases > 0, det};
}

}  // namespace

std::vector<CheckRecord> dual_basis_check(const DatumPtr& dp, const Frame& f) {
  const RootDatum& d = *dp;
  SchubertEngine eng(dp);
  RescaledEngine re(dp);
  PairingContext pc(dp, f);
  size_t n = d.order(), cases = 0, bad = 0, dcases = 0, dbad = 0;
  std::string first, dfirst;
  std::vector<LocalizedClass> E;
  for (WeylId w = 0; w < WeylId(n); ++w) E.push_back(eng.elliptic_class(f, w));
  for (WeylId u = 0; u < WeylId(n); ++u) {
    LocalizedClass ep = re.renormalized_class(f, u);
    for (WeylId w = 0; w < WeylId(n); ++w) {
      Scalar v = pc.pair(ep, E[size_t(w)]);
      bool ok = v.equals(u == w ? f.one() : f.zero());
      ++cases;
      if (!ok && ++bad == 1) first = d.label(u) + "," + d.label(w);
    }
    // diagonal of the unrenormalized pairing
    Scalar diag = pc.pair(re.rescaled_class(f, u), E[size_t(u)]);
    Scalar want = f.one() / re.renormalizer(f, u);
    ++dcases;
    if (!diag.equals(want) && ++dbad == 1) dfirst = d.label(u);
  }
  return {count_record(d.name() + " dual basis <E'(X_u), E_w> = delta", cases, bad, first),
          count_record(d.name() + " rescaled diagonal <E(X_u), E_u>", dcases, dbad, dfirst)};
}

std::vector<CheckRecord> parabolic_dual_basis_check(const ParabolicData& P, const Frame& f) {
  const DatumPtr& dp = P.datum_ptr();
  const RootDatum& d = *dp;
  SchubertEngine eng(dp);
  RescaledEngine re(dp);
  Frame pf = f.then(P.projection());
  PairingContext pc(dp, pf, &P);
  size_t cases = 0, bad = 0;
  std::string first;
  std::vector<LocalizedClass> E;
  for (WeylId w : P.min_reps()) E.push_back(parabolic_class(eng, P, w, f, ParabolicRoute::Billey));
  for (WeylId u : P.min_reps()) {
    LocalizedClass ep = re.parabolic_renormalized_class(P, f, u);
    for (size_t k = 0; k < E.size(); ++k) {
      WeylId w = P.min_reps()[k];
      Scalar v = pc.pair(ep, E[k]);
      ++cases;
      if (!v.equals(u == w ? pf.one() : pf.zero()) && ++bad == 1) first = d.label(u) + "," + d.label(w);
    }
  }
  std::string sub;
  for (int i : P.subset()) sub += (sub.empty() ? "" : ",") + std::to_string(i);
  return {count_record(d.name() + " parabolic dual basis {" + sub + "}", cases, bad, first)};
}

std::vector<CheckRecord> duality_property_checks(const DatumPtr& dp, const Frame& f, unsigned seed) {
  const RootDatum& d = *dp;
  std::vector<CheckRecord> out;
  RescaledEngine re(dp);
  SchubertEngine eng(dp);

  // two reduced words of w0 (first and last in lexicographic order)
  {
    WeylId w0 = d.longest();
    Word a = d.reduced_word(w0), b;
    // the other end: build greedily from the largest descent
    WeylId x = w0;
    while (x != d.id()) {
      for (int i = d.rank(); i >= 1; --i) {
        WeylId y = d.lmul_simple(i, x);
        if (d.length(y) < d.length(x)) {
          b.push_back(i);
          x = y;
          break;
        }
      }
    }
    auto va = re.rescaled_along(f, a), vb = re.rescaled_along(f, b);
    size_t bad = 0;
    for (size_t u = 0; u < d.order(); ++u)
      if (!va[u].equals(vb[u])) ++bad;
    out.push_back(count_record(d.name() + " rescaled class of w0 is word independent", d.order(), bad));
  }

  // random classes built from P/Q atoms so they can be twisted at frame level
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-2, 2);
  int dim = d.symbol_dim();
  auto rand_vec = [&] {
    LatticeVector v(static_cast<size_t>(dim));
    for (auto& x : v) x = coef(rng);
    if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) v[0] = 1;
    return v;
  };
  struct Atom {
    LatticeVector x, y;
  };
  std::vector<Atom> g1, g2;
  for (size_t u = 0; u < d.order(); ++u) {
    g1.push_back({rand_vec(), rand_vec()});
    g2.push_back({rand_vec(), rand_vec()});
  }
  auto make = [&](const std::vector<Atom>& g, const Frame& fr, WeylId w) {
    // (^w g)(u) = w(g(w^-1 u)), the outer w realised by the frame
    LocalizedClass c{dp, {}};
    Frame tf = fr.then(d.z_action(w));
    for (WeylId u = 0; u < WeylId(d.order()); ++u) {
      const Atom& a = g[size_t(d.mul(d.inv(w), u))];
      c.values.push_back(tf.P(a.x, a.y));
    }
    return c;
  };
  PairingContext pc(dp, f);
  {
    auto a = make(g1, f, d.id()), b = make(g2, f, d.id());
    bool sym = pc.pair(a, b).equals(pc.pair(b, a));
    out.push_back({d.name() + " pairing symmetry", sym, sym ? "holds" : "fails"});
    // <E(X_id), g> = g(id)
    bool idp = pc.pair(re.rescaled_class(f, d.id()), a).equals(a(d.id()));
    out.push_back({d.name() + " <E(X_id), g> = g(id)", idp, idp ? "holds" : "fails"});
  }
  {
    size_t bad = 0;
    for (WeylId w = 1; w < WeylId(d.order()); ++w) {
      auto a = make(g1, f, w), b = make(g2, f, w);
      Scalar lhs = pc.pair(a, b);
      Frame tf = f.then(d.z_action(w));
      PairingContext pt(dp, tf);
      Scalar rhs = pt.pair(make(g1, tf, d.id()), make(g2, tf, d.id()));
      if (!lhs.equals(rhs)) ++bad;
    }
    out.push_back(count_record(d.name() + " pairing W-equivariance", d.order() - 1, bad));
  }
  return out;
}

}  // namespace esc
