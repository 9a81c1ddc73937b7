#include "esc/typea.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace esc {

namespace {

// GL root -> (a, b) with chr = e_a - e_b, 1-based
std::pair<int, int> eps_pair(const RootDatum& gl, int root) {
  const auto& c = gl.roots()[size_t(root)].chr;
  int a = 0, b = 0;
  for (size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 1) a = int(k) + 1;
    if (c[k] == -1) b = int(k) + 1;
  }
  return {a, b};
}

void require_gl(const RootDatum& d) {
  if (d.kind() != Kind::GL) throw Error(ErrorCode::UnsupportedType, "type A diagrams need a GL_n datum");
}

std::string eps_text(int a, int b) { return "e" + std::to_string(a) + "-e" + std::to_string(b); }

}  // namespace

// ---------------------------------------------------------------- sub-wiring

SubWiring make_subwiring(const RootDatum& gl, const Word& word, const std::vector<bool>& J) {
  require_gl(gl);
  if (J.size() != word.size()) throw Error(ErrorCode::InvalidArgument, "subset size differs from word length");
  SubWiring s{word, J, 0, {}};
  auto beta = beta_sequence(gl, word);
  auto g = gamma_sequence(gl, word, J);
  s.w = g.wJ;
  for (size_t j = 0; j < word.size(); ++j) {
    WiringFactor f;
    f.j = int(j) + 1;
    f.kept = J[j];
    std::tie(f.a, f.b) = eps_pair(gl, beta[j]);
    std::tie(f.c, f.d) = eps_pair(gl, g.gamma[j]);
    s.factors.push_back(f);
  }
  return s;
}

Scalar subwiring_weight(const RootDatum& gl, const SubWiring& s, const Frame& f) {
  Scalar v = f.one();
  int n = gl.dim();
  for (auto& x : s.factors) {
    LatticeVector l = lv_sub(gl.lvec(lv_unit(size_t(n), size_t(x.c - 1))), gl.lvec(lv_unit(size_t(n), size_t(x.d - 1))));
    LatticeVector z = lv_sub(gl.zvec(lv_unit(size_t(n), size_t(x.a - 1))), gl.zvec(lv_unit(size_t(n), size_t(x.b - 1))));
    v = v * (x.kept ? f.Q(l, z) : f.P(l, z));
  }
  return v;
}

std::string render_subwiring(const RootDatum& gl, const SubWiring& s, const std::string& format) {
  std::ostringstream o;
  if (format == "json") {
    nlohmann::json j;
    j["schema"] = "esc.subwiring/1";
    j["word"] = s.word;
    std::vector<int> J;
    for (size_t k = 0; k < s.J.size(); ++k)
      if (s.J[k]) J.push_back(int(k) + 1);
    j["J"] = J;
    j["w"] = gl.permutation(s.w);
    for (auto& f : s.factors)
      j["positions"].push_back({{"j", f.j}, {"kept", f.kept}, {"beta", {f.a, f.b}}, {"gamma", {f.c, f.d}}});
    return j.dump(2);
  }
  bool tex = format == "latex";
  for (auto& f : s.factors) {
    if (tex) {
      o << "\\beta_{" << f.j << "} = \\epsilon_{" << f.a << "}-\\epsilon_{" << f.b << "}, \\quad \\check\\gamma_{"
        << f.j << "}^J = \\epsilon_{" << f.c << "}-\\epsilon_{" << f.d << "}" << (f.kept ? ", \\ j\\in J" : ", \\ j\\notin J")
        << " \\\\\n";
    } else {
      o << "j=" << f.j << (f.kept ? " in J " : "      ") << " s" << s.word[size_t(f.j - 1)] << "  beta=" << eps_text(f.a, f.b)
        << "  gamma=" << eps_text(f.c, f.d) << "  " << (f.kept ? "Q" : "P") << "(l" << f.c << "-l" << f.d << ", z" << f.a
        << "-z" << f.b << ")\n";
    }
  }
  return o.str();
}

// ---------------------------------------------------------------- sub-sub-wiring

SubSubReport subsub_cancellation_check(const RootDatum& gl, const Word& word, WeylId v, const Frame& f) {
  require_gl(gl);
  size_t l = word.size();
  if (l > 14) throw Error(ErrorCode::BoundExceeded, "word too long for sub-sub-wiring enumeration");
  auto beta = beta_sequence(gl, word);
  SubSubReport rep;
  rep.total = f.zero();

  // state per position: 0 = (I) in K, 1 = (II) in J\K, 2 = (III) not in J
  auto weight = [&](const std::vector<int>& st) -> std::optional<Scalar> {
    std::vector<bool> J(l), K(l);
    for (size_t j = 0; j < l; ++j) {
      J[j] = st[j] != 2;
      K[j] = st[j] == 0;
    }
    WeylId wK = gl.id();
    for (size_t j = 0; j < l; ++j)
      if (K[j]) wK = gl.rmul_simple(wK, word[j]);
    if (wK != v) return std::nullopt;
    auto g = gamma_sequence(gl, word, J);
    Scalar s = f.one();
    WeylId prefK = gl.id();
    for (size_t j = 0; j < l; ++j) {
      LatticeVector lam = gl.l_coroot(g.gamma[j]), zb = gl.z_root(beta[j]);
      if (st[j] == 2) {
        s = s * f.P(lam, zb);
      } else {
        LatticeVector ze = gl.z_root(gl.act_root(prefK, gl.simple_root(word[j])));
        s = s * f.Q(lam, zb) * (st[j] == 0 ? f.Q(ze, lam) : f.P(ze, lam));
      }
      if (K[j]) prefK = gl.rmul_simple(prefK, word[j]);
    }
    return s;
  };

  size_t total = 1;
  for (size_t j = 0; j < l; ++j) total *= 3;
  std::vector<int> st(l);
  for (size_t code = 0; code < total; ++code) {
    size_t c = code;
    for (size_t j = 0; j < l; ++j) {
      st[j] = int(c % 3);
      c /= 3;
    }
    auto w = weight(st);
    if (!w) continue;
    ++rep.diagrams;
    rep.total = rep.total + *w;
    auto it = std::find_if(st.begin(), st.end(), [](int x) { return x != 0; });
    if (it == st.end()) {
      ++rep.fixed;
      if (!w->equals(f.one())) rep.fixed_weight_one = false;
      continue;
    }
    if (*it != 1) continue;  // count each pair once, from its (II) side
    std::vector<int> partner = st;
    partner[size_t(it - st.begin())] = 2;
    auto w2 = weight(partner);
    ++rep.pairs;
    if (w2 && (*w + *w2).is_zero()) ++rep.cancelling_pairs;
  }
  return rep;
}

// ---------------------------------------------------------------- u_0

U0Data u0_data(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  U0Data u{n, {}, {}};
  for (int k = n; k >= 1; --k)
    for (int m = k; m <= k + n - 1; ++m) u.word.push_back(m);
  // strands move right to left, so position -> red pair by permutation tracking:
  // beta_j = e_a - e_b with a <= n < b and cell (b - n, a)
  std::vector<int> perm(size_t(2 * n));
  for (int i = 0; i < 2 * n; ++i) perm[size_t(i)] = i + 1;
  for (int s : u.word) {
    // beta_j = (s_{i_1}...s_{i_{j-1}})(e_s - e_{s+1})
    int a = perm[size_t(s - 1)], b = perm[size_t(s)];
    if (a > b) std::swap(a, b);
    u.cell.push_back({b - n, a});
    std::swap(perm[size_t(s - 1)], perm[size_t(s)]);
  }
  return u;
}

// ---------------------------------------------------------------- weight expressions

WeightExpr WeightExpr::atom(bool q, LatticeVector x, LatticeVector y) {
  WeightExpr e;
  e.op = q ? Op::Q : Op::P;
  e.x = std::move(x);
  e.y = std::move(y);
  while (!e.x.empty() && e.x.back() == 0) e.x.pop_back();
  while (!e.y.empty() && e.y.back() == 0) e.y.pop_back();
  return e;
}

WeightExpr WeightExpr::zero() {
  WeightExpr e;
  e.op = Op::Zero;
  return e;
}

WeightExpr WeightExpr::sum(std::vector<WeightExpr> k) {
  WeightExpr e;
  e.op = Op::Sum;
  e.kids = std::move(k);
  return e;
}

WeightExpr WeightExpr::product(std::vector<WeightExpr> k) {
  WeightExpr e;
  e.op = Op::Product;
  e.kids = std::move(k);
  return e;
}

CtxPtr pipe_context(int n, int trunc) {
  std::vector<std::string> names;
  std::vector<SymbolKind> kinds;
  for (const char* p : {"x", "y", "l"})
    for (int i = 1; i <= n; ++i) {
      names.push_back(p + std::to_string(i));
      kinds.push_back(*p == 'l' ? SymbolKind::Lambda : SymbolKind::Z);
    }
  names.push_back("h");
  kinds.push_back(SymbolKind::Hbar);
  return SeriesContext::make(trunc, 1, names, kinds);
}

static LatticeVector padded(const LatticeVector& v, int dim) {
  LatticeVector r(size_t(dim), 0);
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

Scalar flatten(const WeightExpr& e, const Frame& f) {
  using Op = WeightExpr::Op;
  switch (e.op) {
    case Op::One: return f.one();
    case Op::Zero: return f.zero();
    case Op::P: return f.P(padded(e.x, f.source_dim()), padded(e.y, f.source_dim()));
    case Op::Q: return f.Q(padded(e.x, f.source_dim()), padded(e.y, f.source_dim()));
    case Op::Sum: {
      Scalar s = f.zero();
      for (auto& k : e.kids) s = s + flatten(k, f);
      return s;
    }
    case Op::Product: {
      Scalar s = f.one();
      for (auto& k : e.kids) {
        s = s * flatten(k, f);
        if (s.is_zero()) break;
      }
      return s;
    }
  }
  return f.zero();
}

static std::string linear_text(const LatticeVector& v, int n, bool tex) {
  std::string out;
  auto name = [&](size_t k) -> std::string {
    int blk = int(k) / n, i = int(k) % n + 1;
    if (int(k) == 3 * n) return tex ? "\\hbar" : "h";
    const char* p[] = {"x", "y", tex ? "\\lambda" : "l"};
    return std::string(p[blk]) + (tex ? "_{" + std::to_string(i) + "}" : std::to_string(i));
  };
  for (size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    int c = v[k];
    if (c < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (std::abs(c) != 1) out += std::to_string(std::abs(c));
    out += name(k);
  }
  return out.empty() ? "0" : out;
}

static std::string expr_text(const WeightExpr& e, int n, bool tex) {
  using Op = WeightExpr::Op;
  switch (e.op) {
    case Op::One: return "1";
    case Op::Zero: return "0";
    case Op::P:
    case Op::Q: {
      std::string f = e.op == Op::P ? (tex ? "\\mathsf{P}" : "P") : (tex ? "\\mathsf{Q}" : "Q");
      return f + "(" + linear_text(e.x, n, tex) + (tex ? ", " : ",") + linear_text(e.y, n, tex) + ")";
    }
    case Op::Sum: {
      if (e.kids.empty()) return "0";
      std::string s;
      for (size_t i = 0; i < e.kids.size(); ++i) s += (i ? (tex ? "\n+ " : " + ") : "") + expr_text(e.kids[i], n, tex);
      return s;
    }
    case Op::Product: {
      if (e.kids.empty()) return "1";
      std::string s;
      for (size_t i = 0; i < e.kids.size(); ++i) {
        std::string k = expr_text(e.kids[i], n, tex);
        if (e.kids[i].op == Op::Sum) k = "(" + k + ")";
        s += (i ? (tex ? " " : "*") : "") + k;
      }
      return s;
    }
  }
  return "";
}

std::string weight_text(const WeightExpr& e, int n) { return expr_text(e, n, false); }
std::string weight_latex(const WeightExpr& e, int n) { return expr_text(e, n, true); }

// ---------------------------------------------------------------- pipe dreams

std::string PipeDream::tile_string() const {
  std::string s;
  for (int i = 1; i <= n; ++i) {
    if (i > 1) s += '/';
    for (int j = 1; j <= n; ++j) s += char(at(i, j));
  }
  return s;
}

namespace {

enum Side { L, Bm, R, T, None };

Side exit_side(Tile t, Side in) {
  switch (t) {
    case Tile::X: return in == L ? R : in == Bm ? T : None;
    case Tile::B: return in == L ? T : in == Bm ? R : None;
    case Tile::H: return in == L ? R : None;
    case Tile::J: return in == L ? T : None;
    case Tile::I: return in == Bm ? T : None;
    case Tile::F: return in == Bm ? R : None;
    case Tile::O: return None;
  }
  return None;
}

bool wants_left(Tile t) { return t == Tile::X || t == Tile::B || t == Tile::H || t == Tile::J; }
bool wants_bottom(Tile t) { return t == Tile::X || t == Tile::B || t == Tile::I || t == Tile::F; }
bool single(Tile t) { return t == Tile::H || t == Tile::J || t == Tile::I || t == Tile::F; }

// walks pipe p; calls visit(i, j, tile) at each cell
template <class Visit>
int walk(const PipeDream& d, int p, Visit&& visit) {
  int i = p, j = 1;
  Side in = L;
  while (true) {
    Tile t = d.at(i, j);
    Side out = exit_side(t, in);
    if (out == None) return -1;
    visit(i, j, t);
    if (out == R) {
      if (++j > d.n) return -1;
      in = L;
    } else {
      if (--i < 1) return j;
      in = Bm;
    }
  }
}

}  // namespace

bool trace_pipes(PipeDream& d) {
  size_t cells = size_t(d.n) * size_t(d.n);
  if (d.tiles.size() != cells) return false;
  d.left.assign(cells, 0);
  d.bottom.assign(cells, 0);
  d.perm.assign(size_t(d.n), 0);
  std::vector<bool> used(size_t(d.n) + 1, false);
  for (int p = 1; p <= d.n; ++p) {
    int i = p, j = 1;
    Side in = L;
    bool ok = true;
    int exit = walk(d, p, [&](int ci, int cj, Tile) {
      size_t k = size_t((ci - 1) * d.n + (cj - 1));
      auto& slot = in == L ? d.left[k] : d.bottom[k];
      if (slot) ok = false;
      slot = p;
      Side out = exit_side(d.at(ci, cj), in);
      if (out == R) {
        j = cj + 1;
        in = L;
      } else {
        i = ci - 1;
        in = Bm;
      }
    });
    if (!ok || exit < 0 || used[size_t(exit)]) return false;
    used[size_t(exit)] = true;
    d.perm[size_t(p - 1)] = exit;
  }
  for (int i = 1; i <= d.n; ++i)
    for (int j = 1; j <= d.n; ++j) {
      size_t k = size_t((i - 1) * d.n + (j - 1));
      Tile t = d.at(i, j);
      if (bool(d.left[k]) != wants_left(t) || bool(d.bottom[k]) != wants_bottom(t)) return false;
    }
  return true;
}

std::vector<int> walking_levels(const PipeDream& d) {
  std::vector<int> lv(size_t(d.n) * size_t(d.n), -1);
  for (int p = 1; p <= d.n; ++p) {
    int c = 0;
    walk(d, p, [&](int i, int j, Tile t) {
      size_t k = size_t((i - 1) * d.n + (j - 1));
      switch (t) {
        case Tile::H: lv[k] = c++; break;
        case Tile::I: lv[k] = --c; break;
        case Tile::J: lv[k] = c; break;
        // entering from below the pipe sits one strand lower than the counter says
        case Tile::F: lv[k] = c - 1; break;
        default: break;
      }
    });
  }
  return lv;
}

std::vector<int> level_assignment(const PipeDream& d, const std::vector<int>& truth) {
  auto lv = walking_levels(d);
  if (lv != truth) throw Error(ErrorCode::InconsistentLevels, "walking levels disagree with the strand trace on " + d.tile_string());
  for (size_t k = 0; k < lv.size(); ++k)
    if (single(d.tiles[k]) && (lv[k] < 0 || lv[k] > d.n - 1))
      throw Error(ErrorCode::InconsistentLevels, "level out of range on " + d.tile_string());
  return lv;
}

std::vector<PipeDream> gpd_enumerate(int n, const std::vector<int>& w, size_t max_count) {
  if (n < 1 || int(w.size()) != n) throw Error(ErrorCode::InvalidArgument, "permutation size differs from n");
  if (n > 6) throw Error(ErrorCode::BoundExceeded, "pipe dream enumeration is limited to n <= 6");
  std::vector<int> seen(size_t(n) + 1, 0);
  for (int x : w) {
    if (x < 1 || x > n || seen[size_t(x)]++) throw Error(ErrorCode::InvalidArgument, "not a permutation");
  }
  std::vector<PipeDream> out;
  PipeDream cur;
  cur.n = n;
  cur.tiles.assign(size_t(n * n), Tile::O);
  // up[j]: pipe leaving the cell below through its top, by column
  std::vector<int> up(size_t(n) + 1, 0);

  std::function<void(int, int, int)> rec = [&](int i, int j, int carry) {
    if (j > n) {
      if (carry) return;  // right boundary is empty
      if (i == 1) {
        for (int c = 1; c <= n; ++c)
          if (!up[size_t(c)] || w[size_t(up[size_t(c)] - 1)] != c) return;
        PipeDream d = cur;
        if (!trace_pipes(d)) throw Error(ErrorCode::InvalidArgument, "grid search produced an invalid routing");
        d.level = walking_levels(d);
        out.push_back(std::move(d));
        if (out.size() > max_count) throw Error(ErrorCode::BoundExceeded, "too many pipe dreams");
        return;
      }
      rec(i - 1, 1, i - 1);
      return;
    }
    size_t k = size_t((i - 1) * n + (j - 1));
    int below = up[size_t(j)];
    auto fits = [&](int p, int col) { return !p || col <= w[size_t(p - 1)]; };
    auto place = [&](Tile t, int right, int top) {
      // pipes never move left, so one already past its exit column is dead
      if (!fits(right, j + 1) || !fits(top, j)) return;
      if (i == 1 && top && w[size_t(top - 1)] != j) return;
      cur.tiles[k] = t;
      up[size_t(j)] = top;
      rec(i, j + 1, right);
      up[size_t(j)] = below;
    };
    if (carry && below) {
      place(Tile::X, carry, below);
      place(Tile::B, below, carry);
    } else if (carry) {
      place(Tile::H, carry, 0);
      place(Tile::J, 0, carry);
    } else if (below) {
      place(Tile::I, 0, below);
      place(Tile::F, below, 0);
    } else {
      place(Tile::O, 0, 0);
    }
  };
  rec(n, 1, n);
  std::sort(out.begin(), out.end(), [](const PipeDream& a, const PipeDream& b) { return a.tile_string() < b.tile_string(); });
  return out;
}

namespace {

// GL_{2n} symbols -> pipe alphabet after the projection: z_j -> y_j, z_{n+i} -> x_i,
// l_i -> l_i, l_{n+1} -> 0, h -> h
IntMatrix pipe_substitution(int n) {
  IntMatrix m(3 * n + 1, 4 * n + 1);
  for (int j = 1; j <= n; ++j) m.at(n + j - 1, j - 1) = 1;
  for (int i = 1; i <= n; ++i) m.at(i - 1, n + i - 1) = 1;
  for (int i = 1; i <= n; ++i) m.at(2 * n + i - 1, 2 * n + i - 1) = 1;
  m.at(3 * n, 4 * n) = 1;
  return m;
}

struct BigSide {
  DatumPtr gl;
  std::unique_ptr<ParabolicData> P;
  IntMatrix M;  // symbols of GL_{2n} -> pipe alphabet
};

const BigSide& big_side(int n) {
  static std::mutex mu;
  static std::map<int, BigSide> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  BigSide& b = cache[n];
  b.gl = RootDatum::build(Kind::GL, 2 * n);
  std::vector<int> sub;
  for (int k = n + 1; k <= 2 * n - 1; ++k) sub.push_back(k);
  b.P = std::make_unique<ParabolicData>(b.gl, sub);
  b.M = pipe_substitution(n) * b.P->projection();
  return b;
}

LatticeVector cell_arg(int n, int i, int j) {
  LatticeVector v(size_t(3 * n + 1), 0);
  v[size_t(n + j - 1)] = 1;
  v[size_t(i - 1)] = -1;
  return v;
}

LatticeVector lam(int n, int p) { return lv_unit(size_t(3 * n + 1), size_t(2 * n + p - 1)); }

}  // namespace

std::vector<SubwordDream> gpd_from_subwords(int n, const std::vector<int>& w) {
  if (n > 4) throw Error(ErrorCode::BoundExceeded, "subword oracle is limited to n <= 4");
  const BigSide& big = big_side(n);
  const RootDatum& gl = *big.gl;
  U0Data u0 = u0_data(n);
  std::vector<int> ww = w;
  for (int k = n + 1; k <= 2 * n; ++k) ww.push_back(k);
  WeylId target = gl.from_permutation(ww);
  auto beta = beta_sequence(gl, u0.word);
  std::vector<SubwordDream> out;
  size_t l = u0.word.size();
  for (unsigned long mask = 0; mask < (1UL << l); ++mask) {
    std::vector<bool> J(l);
    WeylId wJ = gl.id();
    for (size_t j = 0; j < l; ++j) {
      J[j] = (mask >> j) & 1;
      if (J[j]) wJ = gl.rmul_simple(wJ, u0.word[j]);
    }
    if (wJ != target || !subword_satisfies_parabolic(*big.P, u0.word, J)) continue;
    auto g = gamma_sequence(gl, u0.word, J);
    SubwordDream sd;
    sd.dream.n = n;
    sd.dream.tiles.assign(size_t(n * n), Tile::O);
    sd.dream.level.assign(size_t(n * n), -1);
    sd.cell_weight.assign(size_t(n * n), WeightExpr::one());
    for (size_t j = 0; j < l; ++j) {
      auto [a, b] = eps_pair(gl, beta[j]);
      auto [c, d] = eps_pair(gl, g.gamma[j]);
      if (a > n || b <= n) throw Error(ErrorCode::InvalidArgument, "unexpected red pair in u_0 word");
      int ci = b - n, cj = a;
      if (std::make_pair(ci, cj) != u0.cell[j]) throw Error(ErrorCode::InvalidArgument, "cell map disagrees with the root data");
      size_t k = size_t((ci - 1) * n + (cj - 1));
      bool pc = c <= n, pd = d <= n;
      Tile t;
      if (pc && pd)
        t = J[j] ? Tile::X : Tile::B;
      else if (pc)
        t = J[j] ? Tile::H : Tile::J;
      else if (pd)
        t = J[j] ? Tile::I : Tile::F;
      else
        t = Tile::O;
      sd.dream.tiles[k] = t;
      if (single(t)) sd.dream.level[k] = (pc ? d : c) - n - 1;
      WeightExpr atom = WeightExpr::atom(J[j], big.M.apply(gl.l_coroot(g.gamma[j])), big.M.apply(gl.z_root(beta[j])));
      if (t == Tile::O) {
        // adjacent trivial strands: [P(-h, .)]_P = 1
        if (atom != WeightExpr::atom(false, lv_neg(lv_unit(size_t(3 * n + 1), size_t(3 * n))), cell_arg(n, ci, cj)))
          throw Error(ErrorCode::InvalidArgument, "trivial strands met away from a simple coroot");
        atom = WeightExpr::one();
      }
      sd.cell_weight[k] = atom;
    }
    if (!trace_pipes(sd.dream) || sd.dream.perm != w)
      throw Error(ErrorCode::InvalidArgument, "subword tiling does not route to w");
    out.push_back(std::move(sd));
  }
  std::sort(out.begin(), out.end(),
            [](const SubwordDream& a, const SubwordDream& b) { return a.dream.tile_string() < b.dream.tile_string(); });
  return out;
}

std::vector<WeightExpr> gpd_cell_weights(const PipeDream& d) {
  int n = d.n;
  std::vector<WeightExpr> out(size_t(n * n), WeightExpr::one());
  LatticeVector hb = lv_unit(size_t(3 * n + 1), size_t(3 * n));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      size_t k = size_t((i - 1) * n + (j - 1));
      LatticeVector y = cell_arg(n, i, j);
      Tile t = d.tiles[k];
      int c = d.level[k];
      switch (t) {
        case Tile::X:
        case Tile::B:
          out[k] = WeightExpr::atom(t == Tile::X, lv_sub(lam(n, d.left[k]), lam(n, d.bottom[k])), y);
          break;
        case Tile::H:
        case Tile::J:
          out[k] = WeightExpr::atom(t == Tile::H, lv_sub(lam(n, d.left[k]), lv_scale(hb, c)), y);
          break;
        case Tile::I:
        case Tile::F:
          out[k] = WeightExpr::atom(t == Tile::I, lv_sub(lv_scale(hb, c), lam(n, d.bottom[k])), y);
          break;
        case Tile::O: break;
      }
    }
  return out;
}

WeightExpr gpd_weight(const PipeDream& d) {
  std::vector<WeightExpr> f;
  for (auto& e : gpd_cell_weights(d))
    if (e.op != WeightExpr::Op::One) f.push_back(e);
  return WeightExpr::product(std::move(f));
}

WeightExpr polynomial_rep(int n, const std::vector<int>& w) {
  std::vector<WeightExpr> terms;
  for (auto& d : gpd_enumerate(n, w)) terms.push_back(gpd_weight(d));
  return WeightExpr::sum(std::move(terms));
}

Frame loc_frame(const RootDatum& gl, const Frame& f, WeylId u) {
  require_gl(gl);
  int n = gl.dim();
  auto perm = gl.permutation(u);
  IntMatrix m(2 * n + 1, 3 * n + 1);
  for (int i = 1; i <= n; ++i) {
    m.at(perm[size_t(i - 1)] - 1, i - 1) = 1;  // x_i -> z_{u(i)}
    m.at(i - 1, n + i - 1) = 1;                // y_i -> z_i
    m.at(n + i - 1, 2 * n + i - 1) = 1;
  }
  m.at(2 * n, 3 * n) = 1;
  return f.then(m);
}

Scalar loc(const WeightExpr& e, const RootDatum& gl, const Frame& f, WeylId u) {
  try {
    return flatten(e, loc_frame(gl, f, u));
  } catch (const Error& err) {
    if (err.code() == ErrorCode::ZeroDenominator) throw Error(ErrorCode::SpecializedPole, err.what());
    throw;
  }
}

std::pair<Scalar, Scalar> poly_recursion_sides(int n, const std::vector<int>& w, int alpha, const Frame& f) {
  if (alpha < 1 || alpha >= n) throw Error(ErrorCode::InvalidArgument, "simple root index out of range");
  std::vector<int> sw = w;
  for (auto& x : sw)
    if (x == alpha)
      x = alpha + 1;
    else if (x == alpha + 1)
      x = alpha;
  // w^-1 alpha^vee = e_{w^-1(a)} - e_{w^-1(a+1)}
  std::vector<int> winv(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) winv[size_t(w[size_t(i)] - 1)] = i + 1;
  LatticeVector l = lv_sub(lam(n, winv[size_t(alpha - 1)]), lam(n, winv[size_t(alpha)]));
  LatticeVector my = lv_sub(lv_unit(size_t(3 * n + 1), size_t(n + alpha)), lv_unit(size_t(3 * n + 1), size_t(n + alpha - 1)));
  IntMatrix swap = IntMatrix::identity(3 * n + 1);
  swap.at(n + alpha - 1, n + alpha - 1) = swap.at(n + alpha, n + alpha) = 0;
  swap.at(n + alpha, n + alpha - 1) = swap.at(n + alpha - 1, n + alpha) = 1;
  WeightExpr ew = polynomial_rep(n, w);
  Scalar lhs = flatten(polynomial_rep(n, sw), f);
  Scalar q = f.Q(lv_neg(l), my);
  Scalar rhs = (-f.P(l, my) * flatten(ew, f) + flatten(ew, f.then(swap))) / q;
  return {lhs, rhs};
}

// ---------------------------------------------------------------- rendering

std::string render_dream(const PipeDream& d, const std::string& format) {
  int n = d.n;
  if (format == "json") {
    nlohmann::json j;
    j["schema"] = "esc.gpd/1";
    j["n"] = n;
    std::vector<std::string> rows;
    std::vector<std::vector<nlohmann::json>> lv;
    for (int i = 1; i <= n; ++i) {
      std::string r;
      std::vector<nlohmann::json> lr;
      for (int j2 = 1; j2 <= n; ++j2) {
        r += char(d.at(i, j2));
        int c = d.level_at(i, j2);
        lr.push_back(c < 0 ? nlohmann::json(nullptr) : nlohmann::json(c));
      }
      rows.push_back(r);
      lv.push_back(lr);
    }
    j["rows"] = rows;
    j["levels"] = lv;
    j["perm"] = d.perm;
    return j.dump();
  }
  std::ostringstream o;
  if (format == "latex") {
    o << "\\begin{array}{|" << std::string(size_t(n), 'c') << "|}\n\\hline\n";
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        o << (j > 1 ? " & " : "") << "\\mathsf{" << char(d.at(i, j)) << "}";
        if (d.level_at(i, j) >= 0) o << "_{" << d.level_at(i, j) << "}";
      }
      o << " \\\\\n";
    }
    o << "\\hline\n\\end{array}";
    return o.str();
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      o << char(d.at(i, j));
      int c = d.level_at(i, j);
      o << (c >= 0 ? std::to_string(c) : std::string(" ")) << (j < n ? " " : "");
    }
    o << "\n";
  }
  return o.str();
}

PipeDream parse_dream_json(const std::string& text) {
  PipeDream d;
  try {
    auto j = nlohmann::json::parse(text);
    if (j.value("schema", "") != "esc.gpd/1") throw Error(ErrorCode::InvalidArgument, "unknown pipe dream schema");
    d.n = j.at("n").get<int>();
    for (auto& r : j.at("rows")) {
      auto s = r.get<std::string>();
      if (int(s.size()) != d.n) throw Error(ErrorCode::InvalidArgument, "row length differs from n");
      for (char c : s) {
        if (std::string("XBHJIFO").find(c) == std::string::npos) throw Error(ErrorCode::InvalidArgument, "unknown tile");
        d.tiles.push_back(Tile(c));
      }
    }
    for (auto& r : j.at("levels"))
      for (auto& c : r) d.level.push_back(c.is_null() ? -1 : c.get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, e.what());
  }
  if (!trace_pipes(d)) throw Error(ErrorCode::InvalidArgument, "tiles do not form a pipe dream");
  if (d.level.size() != d.tiles.size()) throw Error(ErrorCode::InvalidArgument, "level grid size mismatch");
  return d;
}

}  // namespace esc
