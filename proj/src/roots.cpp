#include "esc/roots.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>

namespace esc {

namespace {
std::mutex bruhat_mu;

int dot(const LatticeVector& a, const LatticeVector& b) {
  int s = 0;
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

IntMatrix transpose(const IntMatrix& m) {
  IntMatrix t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}
}  // namespace

Kind parse_kind(const std::string& s) {
  if (s == "A" || s == "GL") return Kind::GL;
  if (s == "SL") return Kind::A;
  if (s == "B" || s == "B2") return Kind::B2;
  if (s == "G" || s == "G2") return Kind::G2;
  throw Error(ErrorCode::UnsupportedType, "unknown root system type '" + s + "'");
}

std::string RootDatum::name() const {
  switch (kind_) {
    case Kind::GL: return "GL" + std::to_string(n_);
    case Kind::A: return "A" + std::to_string(r_);
    case Kind::B2: return "B2";
    case Kind::G2: return "G2";
  }
  return "?";
}

std::shared_ptr<const RootDatum> RootDatum::build(Kind kind, int n, size_t max_order) {
  auto* d = new RootDatum;
  d->kind_ = kind;
  std::vector<LatticeVector> sr, sc;
  if (kind == Kind::GL) {
    if (n < 1) throw Error(ErrorCode::UnsupportedType, "GL_n needs n >= 1");
    d->n_ = n;
    d->r_ = n - 1;
    for (int i = 0; i < n - 1; ++i) {
      LatticeVector a(size_t(n), 0);
      a[size_t(i)] = 1;
      a[size_t(i + 1)] = -1;
      sr.push_back(a);
      sc.push_back(a);
    }
  } else {
    std::vector<std::vector<int>> A;
    int r = n;
    if (kind == Kind::A) {
      if (n < 1) throw Error(ErrorCode::UnsupportedType, "A_r needs r >= 1");
      A.assign(size_t(r), std::vector<int>(size_t(r), 0));
      for (int i = 0; i < r; ++i) {
        A[size_t(i)][size_t(i)] = 2;
        if (i + 1 < r) A[size_t(i)][size_t(i + 1)] = A[size_t(i + 1)][size_t(i)] = -1;
      }
    } else if (kind == Kind::B2) {
      r = 2;
      A = {{2, -1}, {-2, 2}};
    } else {
      r = 2;
      A = {{2, -3}, {-1, 2}};
    }
    d->n_ = r;
    d->r_ = r;
    // characters in the fundamental weight basis, cocharacters in the simple coroot basis
    for (int j = 0; j < r; ++j) {
      LatticeVector a(static_cast<size_t>(r)), c(static_cast<size_t>(r), 0);
      for (int i = 0; i < r; ++i) a[size_t(i)] = A[size_t(i)][size_t(j)];
      c[size_t(j)] = 1;
      sr.push_back(a);
      sc.push_back(c);
    }
  }

  // roots by reflecting the simple ones
  int r = d->r_;
  std::deque<int> todo;
  auto add = [&](const Root& rt) {
    auto it = d->root_index_.find(rt.chr);
    if (it != d->root_index_.end()) return it->second;
    int id = int(d->roots_.size());
    d->roots_.push_back(rt);
    d->root_index_[rt.chr] = id;
    todo.push_back(id);
    return id;
  };
  for (int i = 0; i < r; ++i) {
    Root rt;
    rt.chr = sr[size_t(i)];
    rt.coroot = sc[size_t(i)];
    rt.coeffs.assign(size_t(r), 0);
    rt.coeffs[size_t(i)] = 1;
    rt.height = 1;
    d->simple_.push_back(add(rt));
  }
  while (!todo.empty()) {
    int id = todo.front();
    todo.pop_front();
    for (int i = 0; i < r; ++i) {
      Root b = d->roots_[size_t(id)];
      int p = dot(b.chr, sc[size_t(i)]);
      int pc = dot(sr[size_t(i)], b.coroot);
      for (size_t k = 0; k < b.chr.size(); ++k) b.chr[k] -= p * sr[size_t(i)][k];
      for (size_t k = 0; k < b.coroot.size(); ++k) b.coroot[k] -= pc * sc[size_t(i)][k];
      b.coeffs[size_t(i)] -= p;
      b.height = std::accumulate(b.coeffs.begin(), b.coeffs.end(), 0);
      add(b);
    }
  }
  d->neg_.assign(d->roots_.size(), -1);
  for (size_t i = 0; i < d->roots_.size(); ++i) {
    d->neg_[i] = d->find_root(lv_neg(d->roots_[i].chr));
    if (d->roots_[i].positive()) d->pos_.push_back(int(i));
  }
  std::sort(d->pos_.begin(), d->pos_.end(), [&](int a, int b) {
    if (d->roots_[size_t(a)].height != d->roots_[size_t(b)].height)
      return d->roots_[size_t(a)].height < d->roots_[size_t(b)].height;
    return d->roots_[size_t(a)].coeffs > d->roots_[size_t(b)].coeffs;
  });
  std::shared_ptr<const RootDatum> out(d);
  d->enumerate(max_order);
  return out;
}

int RootDatum::find_root(const LatticeVector& chr) const {
  auto it = root_index_.find(chr);
  return it == root_index_.end() ? -1 : it->second;
}

int RootDatum::max_height() const {
  int h = 0;
  for (auto& r : roots_) h = std::max(h, r.height);
  return h;
}

void RootDatum::enumerate(size_t max_order) {
  int n = n_, r = r_;
  std::vector<IntMatrix> S;
  for (int i = 0; i < r; ++i) {
    IntMatrix m = IntMatrix::identity(n);
    const Root& a = roots_[size_t(simple_[size_t(i)])];
    // s_i(chi) = chi - <chi, alpha_i^vee> alpha_i
    for (int row = 0; row < n; ++row)
      for (int col = 0; col < n; ++col) m.at(row, col) -= a.chr[size_t(row)] * a.coroot[size_t(col)];
    S.push_back(m);
  }
  elems_.push_back(IntMatrix::identity(n));
  elem_index_[elems_[0].a] = 0;
  len_.push_back(0);
  lmul_.assign(size_t(r), {});
  std::vector<int> parent{-1}, letter{-1};
  for (size_t k = 0; k < elems_.size(); ++k) {
    for (int i = 0; i < r; ++i) {
      IntMatrix m = S[size_t(i)] * elems_[k];
      auto it = elem_index_.find(m.a);
      int id;
      if (it == elem_index_.end()) {
        if (elems_.size() >= max_order)
          throw Error(ErrorCode::BoundExceeded, "Weyl group larger than " + std::to_string(max_order));
        id = int(elems_.size());
        elem_index_[m.a] = id;
        elems_.push_back(m);
        len_.push_back(len_[k] + 1);
        parent.push_back(int(k));
        letter.push_back(i);
      } else {
        id = it->second;
      }
      if (lmul_[size_t(i)].size() <= k) lmul_[size_t(i)].resize(k + 1, -1);
      lmul_[size_t(i)][k] = id;
    }
  }
  size_t N = elems_.size();
  for (auto& t : lmul_) t.resize(N, -1);
  rmul_.assign(size_t(r), std::vector<int>(N, -1));
  for (size_t k = 0; k < N; ++k)
    for (int i = 0; i < r; ++i) rmul_[size_t(i)][k] = elem_index_.at((elems_[k] * S[size_t(i)]).a);
  inv_.assign(N, 0);
  for (size_t k = 1; k < N; ++k) inv_[k] = rmul_[size_t(letter[k])][size_t(inv_[size_t(parent[k])])];
  rootperm_.assign(N, std::vector<int>(roots_.size()));
  for (size_t k = 0; k < N; ++k)
    for (size_t j = 0; j < roots_.size(); ++j) rootperm_[k][j] = find_root(elems_[k].apply(roots_[j].chr));
  longest_ = int(std::max_element(len_.begin(), len_.end()) - len_.begin());
}

WeylId RootDatum::mul(WeylId a, WeylId b) const {
  for (int i : reduced_word(b)) a = rmul_simple(a, i);
  return a;
}

WeylId RootDatum::from_word(const Word& w) const {
  WeylId x = 0;
  for (int i : w) {
    if (i < 1 || i > r_) throw Error(ErrorCode::InvalidArgument, "simple index out of range");
    x = rmul_simple(x, i);
  }
  return x;
}

Word RootDatum::reduced_word(WeylId w) const {
  Word out;
  while (len_[size_t(w)] > 0) {
    for (int i = 1; i <= r_; ++i) {
      WeylId v = lmul_simple(i, w);
      if (len_[size_t(v)] < len_[size_t(w)]) {
        out.push_back(i);
        w = v;
        break;
      }
    }
  }
  return out;
}

bool RootDatum::bruhat_leq(WeylId u, WeylId w) const {
  if (u == w || u == 0) return true;
  if (len_[size_t(u)] >= len_[size_t(w)]) return false;
  {
    std::lock_guard<std::mutex> lock(bruhat_mu);
    auto it = bruhat_memo_.find({u, w});
    if (it != bruhat_memo_.end()) return it->second;
  }
  int s = 0;
  for (int i = 1; i <= r_; ++i)
    if (len_[size_t(rmul_simple(w, i))] < len_[size_t(w)]) {
      s = i;
      break;
    }
  WeylId ws = rmul_simple(w, s), us = rmul_simple(u, s);
  bool res = len_[size_t(us)] < len_[size_t(u)] ? bruhat_leq(us, ws) : bruhat_leq(u, ws);
  std::lock_guard<std::mutex> lock(bruhat_mu);
  bruhat_memo_[{u, w}] = res;
  return res;
}

LatticeVector RootDatum::act_cochar(WeylId w, const LatticeVector& c) const {
  return transpose(elems_[size_t(inv(w))]).apply(c);
}

std::vector<int> RootDatum::permutation(WeylId w) const {
  if (kind_ != Kind::GL) throw Error(ErrorCode::UnsupportedType, "permutations exist only for GL_n");
  std::vector<int> p(static_cast<size_t>(n_));
  const IntMatrix& m = elems_[size_t(w)];
  for (int col = 0; col < n_; ++col)
    for (int row = 0; row < n_; ++row)
      if (m.at(row, col) == 1) p[size_t(col)] = row + 1;
  return p;
}

WeylId RootDatum::from_permutation(const std::vector<int>& p) const {
  if (kind_ != Kind::GL || int(p.size()) != n_) throw Error(ErrorCode::InvalidArgument, "permutation of wrong size");
  IntMatrix m(n_, n_);
  std::vector<bool> seen(size_t(n_), false);
  for (int col = 0; col < n_; ++col) {
    int v = p[size_t(col)];
    if (v < 1 || v > n_ || seen[size_t(v - 1)]) throw Error(ErrorCode::InvalidArgument, "not a permutation");
    seen[size_t(v - 1)] = true;
    m.at(v - 1, col) = 1;
  }
  return elem_index_.at(m.a);
}

std::string RootDatum::label(WeylId w) const {
  if (kind_ == Kind::GL) {
    std::string s;
    auto p = permutation(w);
    for (size_t i = 0; i < p.size(); ++i) {
      if (n_ >= 10 && i) s += ",";
      s += std::to_string(p[i]);
    }
    return s;
  }
  auto word = reduced_word(w);
  if (word.empty()) return "id";
  std::string s;
  for (int i : word) s += "s" + std::to_string(i);
  return s;
}

CtxPtr RootDatum::make_context(int trunc, int qden) const {
  std::vector<std::string> names;
  std::vector<SymbolKind> kinds;
  for (int i = 1; i <= n_; ++i) {
    names.push_back("z" + std::to_string(i));
    kinds.push_back(SymbolKind::Z);
  }
  for (int i = 1; i <= n_; ++i) {
    names.push_back("l" + std::to_string(i));
    kinds.push_back(SymbolKind::Lambda);
  }
  names.push_back("h");
  kinds.push_back(SymbolKind::Hbar);
  return SeriesContext::make(trunc, qden, names, kinds);
}

LatticeVector RootDatum::zvec(const LatticeVector& chr) const {
  LatticeVector v(size_t(symbol_dim()), 0);
  for (size_t i = 0; i < chr.size(); ++i) v[i] = chr[i];
  return v;
}

LatticeVector RootDatum::lvec(const LatticeVector& c) const {
  LatticeVector v(size_t(symbol_dim()), 0);
  for (size_t i = 0; i < c.size(); ++i) v[size_t(n_) + i] = c[i];
  return v;
}

LatticeVector RootDatum::hvec(int k) const { return lv_unit(size_t(symbol_dim()), size_t(2 * n_), k); }

IntMatrix RootDatum::z_action(WeylId w) const {
  IntMatrix m = IntMatrix::identity(symbol_dim());
  const IntMatrix& a = elems_[size_t(w)];
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.at(i, j) = a.at(i, j);
  return m;
}

IntMatrix RootDatum::lambda_action(WeylId w) const {
  IntMatrix m = IntMatrix::identity(symbol_dim());
  IntMatrix a = transpose(elems_[size_t(inv(w))]);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.at(n_ + i, n_ + j) = a.at(i, j);
  return m;
}

IntMatrix RootDatum::swap_matrix() const {
  if (kind_ != Kind::GL) throw Error(ErrorCode::UnsupportedType, "z/lambda swap implemented for GL_n");
  IntMatrix m(symbol_dim(), symbol_dim());
  for (int i = 0; i < n_; ++i) {
    m.at(n_ + i, i) = 1;
    m.at(i, n_ + i) = 1;
  }
  m.at(2 * n_, 2 * n_) = 1;
  return m;
}

std::vector<WeylId> RootDatum::elements() const {
  std::vector<WeylId> v(elems_.size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<int> beta_sequence(const RootDatum& d, const Word& word) {
  std::vector<int> out;
  WeylId p = d.id();
  for (int i : word) {
    out.push_back(d.act_root(p, d.simple_root(i)));
    p = d.rmul_simple(p, i);
  }
  return out;
}

GammaData gamma_sequence(const RootDatum& d, const Word& word, const std::vector<bool>& J) {
  GammaData g;
  g.gamma.assign(word.size(), -1);
  WeylId S = d.id();
  for (size_t j = word.size(); j-- > 0;) {
    g.gamma[j] = d.act_root(S, d.simple_root(word[j]));
    if (J[j]) S = d.rmul_simple(S, word[j]);
  }
  for (size_t j = 0; j < word.size(); ++j)
    if (J[j]) g.wJ = d.rmul_simple(g.wJ, word[j]);
  return g;
}

Scalar weyl_act(const Scalar& s, const RootDatum& d, WeylId w, bool z_side) {
  if (s.ctx()->dim() != size_t(d.symbol_dim())) throw Error(ErrorCode::ContextMismatch, "scalar is not over this datum");
  return substitute(s, z_side ? d.z_action(w) : d.lambda_action(w), s.ctx());
}

// ---------------------------------------------------------------- parabolic

ParabolicData::ParabolicData(DatumPtr d, std::vector<int> sub) : d_(std::move(d)), sub_(std::move(sub)) {
  std::sort(sub_.begin(), sub_.end());
  sub_.erase(std::unique(sub_.begin(), sub_.end()), sub_.end());
  for (int i : sub_)
    if (i < 1 || i > d_->rank()) throw Error(ErrorCode::InvalidArgument, "parabolic subset index out of range");
  for (WeylId w : d_->elements()) {
    if (in_WP_upper(w)) upper_.push_back(w);
    auto word = d_->reduced_word(w);
    if (std::all_of(word.begin(), word.end(), [&](int i) { return in_subset(i); })) levi_.push_back(w);
  }
}

ParabolicData ParabolicData::from_composition(DatumPtr d, const std::vector<int>& comp) {
  if (d->kind() != Kind::GL) throw Error(ErrorCode::UnsupportedType, "compositions describe GL_n parabolics");
  int total = 0;
  std::vector<int> sub;
  for (int part : comp) {
    if (part < 1) throw Error(ErrorCode::InvalidArgument, "composition parts must be positive");
    for (int k = 1; k < part; ++k) sub.push_back(total + k);
    total += part;
  }
  if (total != d->dim()) throw Error(ErrorCode::InvalidArgument, "composition does not sum to n");
  return ParabolicData(std::move(d), sub);
}

bool ParabolicData::in_subset(int i) const { return std::binary_search(sub_.begin(), sub_.end(), i); }

bool ParabolicData::in_WP_upper(WeylId w) const {
  for (int i : sub_)
    if (!d_->roots()[size_t(d_->act_root(w, d_->simple_root(i)))].positive()) return false;
  return true;
}

bool ParabolicData::root_in_P(int root) const {
  const auto& c = d_->roots()[size_t(root)].coeffs;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0 && !in_subset(int(i) + 1)) return false;
  return true;
}

bool ParabolicData::in_WP_upper_by_inversions(WeylId w) const {
  for (int a : d_->positive_roots())
    if (root_in_P(a) && !d_->roots()[size_t(d_->act_root(w, a))].positive()) return false;
  return true;
}

bool ParabolicData::in_WP(WeylId w) const { return std::binary_search(levi_.begin(), levi_.end(), w); }

WeylId ParabolicData::min_rep(WeylId u) const {
  bool again = true;
  while (again) {
    again = false;
    for (int i : sub_)
      if (!d_->roots()[size_t(d_->act_root(u, d_->simple_root(i)))].positive()) {
        u = d_->rmul_simple(u, i);
        again = true;
      }
  }
  return u;
}

IntMatrix ParabolicData::projection() const {
  const RootDatum& d = *d_;
  int n = d.dim();
  IntMatrix m = IntMatrix::identity(d.symbol_dim());
  int h = 2 * n;
  if (d.kind() == Kind::GL) {
    // lambda_k -> lambda_a + (k - a) hbar inside each block starting at a
    int a = 0;
    for (int k = 0; k < n; ++k) {
      if (k == 0 || !in_subset(k)) a = k;
      if (a != k) {
        m.at(n + k, n + k) = 0;
        m.at(n + a, n + k) = 1;
        m.at(h, n + k) = k - a;
      }
    }
  } else {
    for (int i : sub_) {
      m.at(n + i - 1, n + i - 1) = 0;
      m.at(h, n + i - 1) = -1;
    }
  }
  return m;
}

bool subword_satisfies_parabolic(const ParabolicData& P, const Word& word, const std::vector<bool>& J) {
  const RootDatum& d = P.datum();
  WeylId s = d.id();
  for (size_t j = word.size(); j-- > 0;) {
    if (J[j]) s = d.lmul_simple(word[j], s);
    if (!P.in_WP_upper(s)) return false;
  }
  return true;
}

}  // namespace esc
