#pragma once

#include <map>
#include <utility>
#include <vector>

#include "esc/roots.hpp"

namespace esc {

// P(x,y) or Q(x,y) over the datum's symbols
struct Atom {
  bool is_q = false;
  LatticeVector x, y;
  Scalar eval(const Frame& f) const { return is_q ? f.Q(x, y) : f.P(x, y); }
};

// one term a * delta_w * delta^d_v of a generator, a a product of atoms
struct GenTerm {
  WeylId w = 0, v = 0;
  Rational c = 1;
  std::vector<Atom> atoms;
};
using Generator = std::vector<GenTerm>;

// sum of a_{w,v} delta_w delta^d_v with coefficients written on the left
class TwistedElement {
 public:
  using Key = std::pair<WeylId, WeylId>;
  TwistedElement() = default;
  explicit TwistedElement(CtxPtr ctx) : ctx_(std::move(ctx)) {}
  static TwistedElement basis(CtxPtr ctx, WeylId w, WeylId v);

  const CtxPtr& ctx() const { return ctx_; }
  const std::map<Key, Scalar>& terms() const { return t_; }
  Scalar coeff(WeylId w, WeylId v) const;
  void add(WeylId w, WeylId v, const Scalar& s);
  bool equals(const TwistedElement& o) const;

 private:
  CtxPtr ctx_;
  std::map<Key, Scalar> t_;
};

Frame twist(const Frame& f, const RootDatum& d, WeylId w, WeylId v);

Generator dl_operator(const RootDatum& d, int i);
Generator dual_dl_operator(const RootDatum& d, int i);

// X * g, the coefficients of g evaluated in the frame twisted by each term of X
TwistedElement rmul_gen(const TwistedElement& X, const Generator& g, const RootDatum& d, const Frame& f);
// product of dl (or dual dl) operators along the word, starting from a basis element
TwistedElement t_word(const RootDatum& d, const Word& word, bool dual, const Frame& f,
                      WeylId start_w = 0, WeylId start_v = 0);
// general product for symbolic coefficients (uses weyl_act)
TwistedElement mul_symbolic(const TwistedElement& X, const TwistedElement& Y, const RootDatum& d);
TwistedElement generator_element(const Generator& g, const Frame& f);

// dense |W| x |W| table; entries default to zero
class CoefficientTable {
 public:
  CoefficientTable() = default;
  CoefficientTable(size_t n, const Scalar& zero) : n_(n), v_(n * n, zero) {}
  size_t size() const { return n_; }
  const Scalar& at(WeylId u, WeylId w) const { return v_[size_t(u) * n_ + size_t(w)]; }
  Scalar& at(WeylId u, WeylId w) { return v_[size_t(u) * n_ + size_t(w)]; }

 private:
  size_t n_ = 0;
  std::vector<Scalar> v_;
};

// delta^d_{u^-1} T_u = sum_w a_{u,w} delta_w, and the dual
// delta_{u^-1} T^d_u = sum_w a^d_{u,w} delta^d_w
CoefficientTable expand_a(const RootDatum& d, const Frame& f, bool dual = false);
// matrix inverse along the Bruhat triangular structure
CoefficientTable invert_to_b(const RootDatum& d, const CoefficientTable& a);
CoefficientTable table_product(const RootDatum& d, const CoefficientTable& a, const CoefficientTable& b);

}  // namespace esc
