#include "esc/twisted.hpp"

#include <algorithm>

namespace esc {

TwistedElement TwistedElement::basis(CtxPtr ctx, WeylId w, WeylId v) {
  TwistedElement e(ctx);
  e.add(w, v, Scalar::constant(ctx, 1));
  return e;
}

Scalar TwistedElement::coeff(WeylId w, WeylId v) const {
  auto it = t_.find({w, v});
  return it == t_.end() ? Scalar::constant(ctx_, 0) : it->second;
}

void TwistedElement::add(WeylId w, WeylId v, const Scalar& s) {
  auto it = t_.find({w, v});
  if (it == t_.end())
    t_.emplace(Key{w, v}, s);
  else
    it->second = it->second + s;
}

bool TwistedElement::equals(const TwistedElement& o) const {
  for (auto& [k, s] : t_)
    if (!s.equals(o.coeff(k.first, k.second))) return false;
  for (auto& [k, s] : o.t_)
    if (!t_.count(k) && !s.is_zero()) return false;
  return true;
}

Frame twist(const Frame& f, const RootDatum& d, WeylId w, WeylId v) {
  if (w == 0 && v == 0) return f;
  if (v == 0) return f.then(d.z_action(w));
  if (w == 0) return f.then(d.lambda_action(v));
  return f.then(d.z_action(w) * d.lambda_action(v));
}

Generator dl_operator(const RootDatum& d, int i) {
  int a = d.simple_root(i);
  WeylId s = d.simple_reflection(i);
  LatticeVector z = d.z_root(a), l = lv_neg(d.l_coroot(a));
  // delta^d_a P(z_a, l_a) = P(z_a, -l_a) delta^d_a
  return {GenTerm{0, s, 1, {Atom{false, z, l}}}, GenTerm{s, s, 1, {Atom{true, z, l}}}};
}

Generator dual_dl_operator(const RootDatum& d, int i) {
  int a = d.simple_root(i);
  WeylId s = d.simple_reflection(i);
  LatticeVector l = d.l_coroot(a), z = lv_neg(d.z_root(a));
  return {GenTerm{s, 0, 1, {Atom{false, l, z}}}, GenTerm{s, s, 1, {Atom{true, l, z}}}};
}

static Scalar eval_term(const GenTerm& t, const Frame& f) {
  Scalar s = Scalar::constant(f.ctx(), t.c);
  for (auto& a : t.atoms) s = s * a.eval(f);
  return s;
}

TwistedElement rmul_gen(const TwistedElement& X, const Generator& g, const RootDatum& d, const Frame& f) {
  TwistedElement out(X.ctx());
  for (auto& [k, c] : X.terms()) {
    if (c.is_zero()) continue;
    Frame tf = twist(f, d, k.first, k.second);
    for (auto& t : g) {
      Scalar a = eval_term(t, tf);
      if (a.is_zero()) continue;
      out.add(d.mul(k.first, t.w), d.mul(k.second, t.v), c * a);
    }
  }
  return out;
}

TwistedElement t_word(const RootDatum& d, const Word& word, bool dual, const Frame& f, WeylId start_w,
                      WeylId start_v) {
  TwistedElement X = TwistedElement::basis(f.ctx(), start_w, start_v);
  for (int i : word) X = rmul_gen(X, dual ? dual_dl_operator(d, i) : dl_operator(d, i), d, f);
  return X;
}

TwistedElement generator_element(const Generator& g, const Frame& f) {
  TwistedElement e(f.ctx());
  for (auto& t : g) e.add(t.w, t.v, eval_term(t, f));
  return e;
}

TwistedElement mul_symbolic(const TwistedElement& X, const TwistedElement& Y, const RootDatum& d) {
  TwistedElement out(X.ctx());
  for (auto& [k, c] : X.terms())
    for (auto& [k2, c2] : Y.terms()) {
      IntMatrix m = d.z_action(k.first) * d.lambda_action(k.second);
      Scalar tw = substitute(c2, m, c2.ctx());
      out.add(d.mul(k.first, k2.first), d.mul(k.second, k2.second), c * tw);
    }
  return out;
}

CoefficientTable expand_a(const RootDatum& d, const Frame& f, bool dual) {
  size_t n = d.order();
  CoefficientTable a(n, f.zero());
  for (WeylId u = 0; u < WeylId(n); ++u) {
    Word word = d.reduced_word(u);
    TwistedElement X = dual ? t_word(d, word, true, f, d.inv(u), 0) : t_word(d, word, false, f, 0, d.inv(u));
    for (auto& [k, c] : X.terms()) {
      WeylId rest = dual ? k.first : k.second;
      WeylId w = dual ? k.second : k.first;
      if (rest != 0) {
        if (!c.is_zero()) throw Error(ErrorCode::InvalidArgument, "expansion left the expected basis");
        continue;
      }
      a.at(u, w) = c;
    }
  }
  return a;
}

CoefficientTable invert_to_b(const RootDatum& d, const CoefficientTable& a) {
  size_t n = a.size();
  std::vector<WeylId> byLen = d.elements();
  std::stable_sort(byLen.begin(), byLen.end(), [&](WeylId x, WeylId y) { return d.length(x) > d.length(y); });
  // triangularity is what makes this a back substitution
  for (WeylId v = 0; v < WeylId(n); ++v)
    for (WeylId w = 0; w < WeylId(n); ++w)
      if (v != w && d.length(v) <= d.length(w) && !a.at(v, w).is_zero())
        throw Error(ErrorCode::SingularMatrix, "expansion table is not Bruhat triangular");
  CoefficientTable b(n, Scalar::constant(a.at(0, 0).ctx(), 0));
  for (WeylId u = 0; u < WeylId(n); ++u) {
    for (WeylId w : byLen) {
      if (d.length(w) > d.length(u)) continue;
      if (a.at(w, w).is_zero()) throw Error(ErrorCode::SingularMatrix, "zero diagonal entry");
      if (w == u) {
        b.at(u, w) = a.at(w, w).inverse();
        continue;
      }
      Scalar acc = Scalar::constant(a.at(0, 0).ctx(), 0);
      for (WeylId v = 0; v < WeylId(n); ++v)
        if (v != w && d.length(v) > d.length(w) && !b.at(u, v).is_zero() && !a.at(v, w).is_zero())
          acc = acc + b.at(u, v) * a.at(v, w);
      if (!acc.is_zero()) b.at(u, w) = -acc / a.at(w, w);
    }
  }
  return b;
}

CoefficientTable table_product(const RootDatum& d, const CoefficientTable& a, const CoefficientTable& b) {
  size_t n = a.size();
  CoefficientTable c(n, Scalar::constant(a.at(0, 0).ctx(), 0));
  for (WeylId u = 0; u < WeylId(n); ++u)
    for (WeylId w = 0; w < WeylId(n); ++w) {
      Scalar acc = c.at(u, w);
      for (WeylId v = 0; v < WeylId(n); ++v)
        if (!a.at(u, v).is_zero() && !b.at(v, w).is_zero()) acc = acc + a.at(u, v) * b.at(v, w);
      c.at(u, w) = acc;
    }
  (void)d;
  return c;
}

}  // namespace esc
