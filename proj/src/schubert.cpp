#include "esc/schubert.hpp"

#include "esc/roots.hpp"

namespace esc {

const std::vector<Scalar>& SchubertEngine::row_left(const Frame& f, WeylId u) {
  auto key = std::make_pair(f.key(), u);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = left_.find(key);
    if (it != left_.end()) return it->second;
  }
  const RootDatum& d = *d_;
  size_t n = d.order();
  std::vector<Scalar> row(n, f.zero());
  if (u == d.id()) {
    row[0] = f.one();
  } else {
    int i = d.reduced_word(u).front();
    WeylId rest = d.lmul_simple(i, u);
    Frame tf = f.then(d.z_action(d.simple_reflection(i)));
    const std::vector<Scalar> prev = row_left(tf, rest);
    int a = d.simple_root(i);
    LatticeVector za = d.z_root(a);
    for (WeylId w = 0; w < WeylId(n); ++w) {
      if (!d.bruhat_leq(w, u)) continue;
      WeylId sw = d.lmul_simple(i, w);
      LatticeVector l = d.l_coroot(d.act_root(d.inv(w), a));
      Scalar acc = f.zero();
      if (!prev[size_t(w)].is_zero()) acc = acc + f.P(l, za) * prev[size_t(w)];
      if (!prev[size_t(sw)].is_zero()) acc = acc + f.Q(lv_neg(l), za) * prev[size_t(sw)];
      row[size_t(w)] = acc;
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  return left_.emplace(key, std::move(row)).first->second;
}

const std::vector<Scalar>& SchubertEngine::row_right(const Frame& f, WeylId u) {
  auto key = std::make_pair(f.key(), u);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = right_.find(key);
    if (it != right_.end()) return it->second;
  }
  const RootDatum& d = *d_;
  size_t n = d.order();
  std::vector<Scalar> row(n, f.zero());
  if (u == d.id()) {
    row[0] = f.one();
  } else {
    int i = d.reduced_word(u).back();
    WeylId rest = d.rmul_simple(u, i);
    int a = d.simple_root(i);
    const std::vector<Scalar> prev = row_right(f, rest);
    const std::vector<Scalar> prev_d = row_right(f.then(d.lambda_action(d.simple_reflection(i))), rest);
    LatticeVector la = d.l_coroot(a), zua = d.z_root(d.act_root(rest, a));
    for (WeylId w = 0; w < WeylId(n); ++w) {
      if (!d.bruhat_leq(w, u)) continue;
      WeylId ws = d.rmul_simple(w, i);
      Scalar acc = f.zero();
      if (!prev[size_t(w)].is_zero()) acc = acc + f.P(la, zua) * prev[size_t(w)];
      if (!prev_d[size_t(ws)].is_zero()) acc = acc + f.Q(la, zua) * prev_d[size_t(ws)];
      row[size_t(w)] = acc;
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  return right_.emplace(key, std::move(row)).first->second;
}

CoefficientTable SchubertEngine::table(const Frame& f, bool right) {
  size_t n = d_->order();
  CoefficientTable t(n, f.zero());
  for (WeylId u = 0; u < WeylId(n); ++u) {
    const auto& row = right ? row_right(f, u) : row_left(f, u);
    for (WeylId w = 0; w < WeylId(n); ++w) t.at(u, w) = row[size_t(w)];
  }
  return t;
}

LocalizedClass SchubertEngine::elliptic_class(const Frame& f, WeylId w) {
  LocalizedClass c{d_, {}};
  for (WeylId u = 0; u < WeylId(d_->order()); ++u) c.values.push_back(row_left(f, u)[size_t(w)]);
  return c;
}

// ---------------------------------------------------------------- Billey

BilleyResult billey(const RootDatum& d, const Word& word, WeylId w, const Frame& f, const ParabolicData* para,
                    bool keep_terms) {
  BilleyResult res;
  res.value = f.zero();
  size_t l = word.size();
  if (l > 24) throw Error(ErrorCode::BoundExceeded, "word too long for subword enumeration");
  if (size_t(d.length(w)) > l) return res;
  auto beta = beta_sequence(d, word);
  for (unsigned long mask = 0; mask < (1UL << l); ++mask) {
    std::vector<bool> J(l);
    for (size_t j = 0; j < l; ++j) J[j] = (mask >> j) & 1;
    // cheap product first
    WeylId wJ = d.id();
    for (size_t j = 0; j < l; ++j)
      if (J[j]) wJ = d.rmul_simple(wJ, word[j]);
    if (wJ != w) continue;
    if (para && !subword_satisfies_parabolic(*para, word, J)) continue;
    auto g = gamma_sequence(d, word, J);
    BilleyTerm term;
    term.J = J;
    Scalar v = f.one();
    for (size_t j = 0; j < l; ++j) {
      LatticeVector lg = d.l_coroot(g.gamma[j]), zb = d.z_root(beta[j]);
      v = v * (J[j] ? f.Q(lg, zb) : f.P(lg, zb));
      term.factors.push_back({int(j) + 1, bool(J[j]), beta[j], g.gamma[j]});
    }
    res.value = res.value + v;
    term.value = v;
    if (keep_terms) res.terms.push_back(std::move(term));
  }
  return res;
}

// ---------------------------------------------------------------- R-matrix

std::vector<Scalar> rmatrix_left(const RootDatum& d, const Word& word, const Frame& f) {
  size_t n = d.order();
  std::vector<Scalar> a(n, f.zero());
  std::vector<bool> live(n, false);
  a[0] = f.one();
  live[0] = true;
  auto beta = beta_sequence(d, word);
  for (size_t j = 0; j < word.size(); ++j) {
    int al = d.simple_root(word[j]);
    LatticeVector zb = d.z_root(beta[j]);
    std::vector<Scalar> b(n, f.zero());
    std::vector<bool> nl(n, false);
    for (WeylId v = 0; v < WeylId(n); ++v) {
      if (!live[size_t(v)]) continue;
      // a_v delta^d_v (P(l_a, z) + delta^d_a Q(l_a, z))
      LatticeVector lv = d.l_coroot(d.act_root(v, al));
      WeylId vs = d.rmul_simple(v, word[j]);
      b[size_t(v)] = b[size_t(v)] + a[size_t(v)] * f.P(lv, zb);
      b[size_t(vs)] = b[size_t(vs)] + a[size_t(v)] * f.Q(lv_neg(lv), zb);
      nl[size_t(v)] = nl[size_t(vs)] = true;
    }
    a = std::move(b);
    live = std::move(nl);
  }
  return a;
}

std::vector<Scalar> rmatrix_product(const RootDatum& d, const Word& word, const Frame& f) {
  size_t n = d.order();
  std::vector<Scalar> c(n, f.zero());
  for (WeylId w = 0; w < WeylId(n); ++w) {
    if (size_t(d.length(w)) > word.size()) continue;
    // delta^d_w c_w = a_w delta^d_w, so c_w is a_w seen through w^-1 on the dynamical side
    c[size_t(w)] = rmatrix_left(d, word, f.then(d.lambda_action(d.inv(w))))[size_t(w)];
  }
  return c;
}

static bool same_vec(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].equals(b[i])) return false;
  return true;
}

std::vector<CheckRecord> verify_yang_baxter(const RootDatum& d, const Frame& f) {
  std::vector<CheckRecord> out;
  int r = d.rank();
  if (r >= 1) {
    auto v = rmatrix_left(d, {1, 1}, f);
    std::vector<Scalar> one(d.order(), f.zero());
    one[0] = f.one();
    out.push_back({d.name() + " unitarity h_1(x)h_1(-x)=1", same_vec(v, one), ""});
  }
  if (r == 2) {
    Word a, b;
    WeylId w0 = d.longest();
    for (int k = 0; k < d.length(w0); ++k) {
      a.push_back(k % 2 ? 2 : 1);
      b.push_back(k % 2 ? 1 : 2);
    }
    auto x = rmatrix_left(d, a, f), y = rmatrix_left(d, b, f);
    std::string name = d.name() + " braid-length-" + std::to_string(a.size()) + " Yang-Baxter";
    out.push_back({name, same_vec(x, y), ""});
  }
  if (r >= 3) {
    // (s_1 s_3)^2 = id
    auto x = rmatrix_left(d, {1, 3}, f), y = rmatrix_left(d, {3, 1}, f);
    out.push_back({d.name() + " commuting h_1(x)h_3(y)=h_3(y)h_1(x)", same_vec(x, y), ""});
  }
  return out;
}

// ---------------------------------------------------------------- parabolic

Frame projected(const ParabolicData& P, const Frame& f) { return f.then(P.projection()); }

LocalizedClass parabolic_class(SchubertEngine& eng, const ParabolicData& P, WeylId w, const Frame& f,
                               ParabolicRoute route) {
  const RootDatum& d = eng.datum();
  Frame pf = projected(P, f);
  LocalizedClass c{eng.datum_ptr(), std::vector<Scalar>(d.order(), f.zero())};
  try {
    for (WeylId u = 0; u < WeylId(d.order()); ++u) {
      switch (route) {
        case ParabolicRoute::Billey:
          c.values[size_t(u)] = billey(d, d.reduced_word(u), w, pf, &P, false).value;
          break;
        case ParabolicRoute::Unrestricted:
          c.values[size_t(u)] = billey(d, d.reduced_word(u), w, pf, nullptr, false).value;
          break;
        case ParabolicRoute::Recursion: {
          // [P(l_a, .)]_P = 1 and [Q(l_a, .)]_P = 0 for a in Sigma_P, so the
          // right recursion collapses to b_{us,w} = b_{u,w} there
          WeylId x = u;
          while (true) {
            bool moved = false;
            for (int i : P.subset())
              if (d.length(d.rmul_simple(x, i)) < d.length(x)) {
                x = d.rmul_simple(x, i);
                moved = true;
              }
            if (!moved) break;
          }
          c.values[size_t(u)] = eng.row_right(pf, x)[size_t(w)];
          break;
        }
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ZeroDenominator) throw Error(ErrorCode::SpecializedPole, e.what());
    throw;
  }
  return c;
}

CoefficientTable mirror_matrix(SchubertEngine& eng, const Frame& f) {
  const RootDatum& d = eng.datum();
  CoefficientTable b = eng.table(f);
  CoefficientTable bd = invert_to_b(d, expand_a(d, f, true));
  size_t n = d.order();
  CoefficientTable m(n, f.zero());
  for (WeylId u = 0; u < WeylId(n); ++u)
    for (WeylId v = 0; v < WeylId(n); ++v) {
      Scalar acc = f.zero();
      for (WeylId w = 0; w < WeylId(n); ++w) {
        const Scalar& x = b.at(u, w);
        const Scalar& y = bd.at(d.inv(w), d.inv(v));
        if (!x.is_zero() && !y.is_zero()) acc = acc + x * y;
      }
      m.at(u, v) = acc;
    }
  return m;
}

}  // namespace esc
