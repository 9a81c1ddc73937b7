#pragma once

#include <string>
#include <vector>

#include "esc/schubert.hpp"

namespace esc {

// ---- sub-wiring diagrams

struct WiringFactor {
  int j = 0;
  bool kept = false;
  int a = 0, b = 0;  // beta_j = e_a - e_b (red targets)
  int c = 0, d = 0;  // gamma_j^J = e_c - e_d (blue sources)
};

struct SubWiring {
  Word word;
  std::vector<bool> J;
  WeylId w = 0;
  std::vector<WiringFactor> factors;
};

SubWiring make_subwiring(const RootDatum& gl, const Word& word, const std::vector<bool>& J);
Scalar subwiring_weight(const RootDatum& gl, const SubWiring& s, const Frame& f);
std::string render_subwiring(const RootDatum& gl, const SubWiring& s, const std::string& format);

struct SubSubReport {
  Scalar total;
  size_t diagrams = 0;
  size_t pairs = 0;            // involution orbits of size two
  size_t cancelling_pairs = 0; // whose two weights sum to zero
  size_t fixed = 0;            // diagrams with no (II)/(III) configuration
  bool fixed_weight_one = true;
};

// sum over K within J within the word with w(K) = v of the (I)/(II)/(III) weights
SubSubReport subsub_cancellation_check(const RootDatum& gl, const Word& word_u, WeylId v, const Frame& f);

// ---- u_0 in S_{2n}

struct U0Data {
  int n = 0;
  Word word;
  std::vector<std::pair<int, int>> cell;  // position -> (row i, column j), 1-based
};
U0Data u0_data(int n);

// ---- weight expressions over x_1..x_n, y_1..y_n, l_1..l_n, h

struct WeightExpr {
  enum class Op { Sum, Product, P, Q, One, Zero };
  Op op = Op::One;
  std::vector<WeightExpr> kids;
  LatticeVector x, y;

  static WeightExpr atom(bool q, LatticeVector x, LatticeVector y);
  static WeightExpr one() { return WeightExpr{}; }
  static WeightExpr zero();
  static WeightExpr sum(std::vector<WeightExpr> k);
  static WeightExpr product(std::vector<WeightExpr> k);
  bool operator==(const WeightExpr& o) const = default;
};

CtxPtr pipe_context(int n, int trunc);
Scalar flatten(const WeightExpr& e, const Frame& f);
std::string weight_latex(const WeightExpr& e, int n);
std::string weight_text(const WeightExpr& e, int n);

// ---- generic pipe dreams

enum class Tile : char { X = 'X', B = 'B', H = 'H', J = 'J', I = 'I', F = 'F', O = 'O' };

struct PipeDream {
  int n = 0;
  std::vector<Tile> tiles;  // row-major, row 1 on top
  std::vector<int> level;   // -1 on tiles that are not single-pipe
  std::vector<int> left, bottom;  // pipe entering from the left / from below, 0 if none
  std::vector<int> perm;    // pipe p exits at the top of column perm[p-1]

  Tile at(int i, int j) const { return tiles[size_t((i - 1) * n + (j - 1))]; }
  int level_at(int i, int j) const { return level[size_t((i - 1) * n + (j - 1))]; }
  std::string tile_string() const;
  bool operator==(const PipeDream& o) const { return n == o.n && tiles == o.tiles && level == o.level; }
};

// fills left/bottom/perm from the tiles; false if the tiling is not a valid routing
bool trace_pipes(PipeDream& p);
// levels by walking along each pipe
std::vector<int> walking_levels(const PipeDream& p);

// grid search over tile assignments
std::vector<PipeDream> gpd_enumerate(int n, const std::vector<int>& w, size_t max_count = 200000);

// subword side: parabolic Billey terms for w x id at u_0, each with its tiling,
// levels read from the trivial strands and the P/Q factor per cell
struct SubwordDream {
  PipeDream dream;
  std::vector<WeightExpr> cell_weight;  // row-major
};
std::vector<SubwordDream> gpd_from_subwords(int n, const std::vector<int>& w);

// levels from the trivial strands; throws InconsistentLevels if walking disagrees
std::vector<int> level_assignment(const PipeDream& p, const std::vector<int>& ground_truth);

std::vector<WeightExpr> gpd_cell_weights(const PipeDream& p);
WeightExpr gpd_weight(const PipeDream& p);
WeightExpr polynomial_rep(int n, const std::vector<int>& w);

// x_i -> z_{u(i)}, y_i -> z_i over a GL_n frame
Frame loc_frame(const RootDatum& gl, const Frame& f, WeylId u);
Scalar loc(const WeightExpr& e, const RootDatum& gl, const Frame& f, WeylId u);

// both sides of the polynomial recursion for s_a w, in a frame over the pipe alphabet
std::pair<Scalar, Scalar> poly_recursion_sides(int n, const std::vector<int>& w, int alpha, const Frame& f);

std::string render_dream(const PipeDream& p, const std::string& format);
PipeDream parse_dream_json(const std::string& text);

}  // namespace esc
