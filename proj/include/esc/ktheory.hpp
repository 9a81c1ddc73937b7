#pragma once

#include <string>
#include <vector>

#include "esc/schubert.hpp"

namespace esc {

// Rational function in the exponentials of a context's symbols, same doubled
// encoding as LaurentPoly.  Written back in e(-z) and y = -e(-h) for display.
class KScalar {
 public:
  KScalar() = default;
  KScalar(CtxPtr ctx, LaurentPoly num, LaurentPoly den);
  static KScalar constant(CtxPtr ctx, const Rational& c);
  // e(x) = e^{2 pi i x} for the lattice vector x
  static KScalar e(CtxPtr ctx, const LatticeVector& x);
  static KScalar y(CtxPtr ctx);

  const CtxPtr& ctx() const { return ctx_; }
  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool equals(const KScalar& o) const;

  KScalar operator+(const KScalar& o) const;
  KScalar operator-(const KScalar& o) const;
  KScalar operator*(const KScalar& o) const;
  KScalar operator/(const KScalar& o) const;
  KScalar operator-() const;
  KScalar pow(int k) const;

  // linear substitution of symbols (column k is the image of symbol k)
  KScalar substitute(const IntMatrix& m) const;
  // e(-h) -> 0, i.e. y -> 0
  KScalar at_y_zero() const;
  std::string to_string() const;

 private:
  CtxPtr ctx_;
  LaurentPoly num_, den_;
};

Rational default_slope(const RootDatum& d);
// 0 < s and every positive coroot height times s below 1
void check_slope(const RootDatum& d, const Rational& s);
int slope_trunc(const RootDatum& d, const Rational& s);
int slope_qden(const Rational& s);

// Symbolic frame in which every simple dynamical coroot becomes s*tau, or -h on
// the simple roots listed in para.  The lambda symbols drop out of the sink.
Frame slope_frame(const RootDatum& d, const Rational& s, const std::vector<int>& para = {}, int trunc = -1);

// q^0 part of a Puiseux scalar
KScalar limit_q0(const Scalar& s);

enum class KRoute { Puiseux, AtomBilley };

struct KTable {
  DatumPtr datum;
  CtxPtr ctx;
  std::vector<std::vector<KScalar>> k;  // k[u][w]
  const KScalar& at(WeylId u, WeylId w) const { return k[size_t(u)][size_t(w)]; }
};

// K_w(u) = (-y)^{-l(w)} lim E_w(u) at lambda_{alpha^vee} = s tau
KTable k_table(const DatumPtr& d, const Rational& s, KRoute route);
// same with lambda = -h on Sigma_P, for w in W^P (other columns zero)
KTable k_table_parabolic(const ParabolicData& P, const Rational& s, KRoute route);

// W_P-coset constancy in u, zero columns off W^P
std::vector<CheckRecord> k_parabolic_checks(const ParabolicData& P, const KTable& t);

// both recursions from the left, over every (w, alpha, u); failures listed
std::vector<CheckRecord> k_recursion_check(const KTable& t);

// the limits of P and Q at +-s tau in closed form
KScalar limit_P_closed(CtxPtr ctx, bool positive, const LatticeVector& y, int hbar);
KScalar limit_Q_closed(CtxPtr ctx, bool positive, const LatticeVector& y, int hbar);

// limits of theta, of theta(u + c tau)/theta(c tau) and of P, Q against the closed forms
std::vector<CheckRecord> limit_formula_checks(const DatumPtr& d, const Rational& s);

// type A crossing/bump table and its y = 0 degeneration
std::vector<CheckRecord> limit_weight_table_check(int n, const Rational& s);

}  // namespace esc
