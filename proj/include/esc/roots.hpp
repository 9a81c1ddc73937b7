#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "esc/theta.hpp"

namespace esc {

enum class Kind { GL, A, B2, G2 };

struct Root {
  LatticeVector chr;     // in the character lattice basis
  LatticeVector coroot;  // in the cocharacter lattice basis
  std::vector<int> coeffs;  // in the simple roots
  int height = 0;
  bool positive() const { return height > 0; }
};

// Weyl group elements are dense ids into the datum's enumeration; id 0 is the
// identity.
using WeylId = int;
using Word = std::vector<int>;  // 1-based simple reflection indices

class RootDatum {
 public:
  static std::shared_ptr<const RootDatum> build(Kind kind, int n, size_t max_order = 40320);

  Kind kind() const { return kind_; }
  std::string name() const;
  int dim() const { return n_; }        // rank of the character lattice
  int rank() const { return r_; }       // number of simple roots
  int symbol_dim() const { return 2 * n_ + 1; }

  const std::vector<Root>& roots() const { return roots_; }
  const std::vector<int>& positive_roots() const { return pos_; }
  int simple_root(int i) const { return simple_[size_t(i - 1)]; }  // root id of alpha_i
  int negate(int root) const { return neg_[size_t(root)]; }
  int find_root(const LatticeVector& chr) const;
  int max_height() const;

  // Weyl group
  size_t order() const { return elems_.size(); }
  WeylId id() const { return 0; }
  WeylId simple_reflection(int i) const { return lmul_[size_t(i - 1)][0]; }
  WeylId mul(WeylId a, WeylId b) const;
  WeylId inv(WeylId a) const { return inv_[size_t(a)]; }
  WeylId lmul_simple(int i, WeylId w) const { return lmul_[size_t(i - 1)][size_t(w)]; }
  WeylId rmul_simple(WeylId w, int i) const { return rmul_[size_t(i - 1)][size_t(w)]; }
  WeylId from_word(const Word& w) const;
  int length(WeylId w) const { return len_[size_t(w)]; }
  WeylId longest() const { return longest_; }
  Word reduced_word(WeylId w) const;
  bool bruhat_leq(WeylId u, WeylId w) const;
  // root id of w(root)
  int act_root(WeylId w, int root) const { return rootperm_[size_t(w)][size_t(root)]; }
  const IntMatrix& char_matrix(WeylId w) const { return elems_[size_t(w)]; }
  LatticeVector act_char(WeylId w, const LatticeVector& chr) const { return elems_[size_t(w)].apply(chr); }
  LatticeVector act_cochar(WeylId w, const LatticeVector& c) const;

  // GL_n only: one-line notation w(1)..w(n)
  std::vector<int> permutation(WeylId w) const;
  WeylId from_permutation(const std::vector<int>& p) const;
  std::string label(WeylId w) const;

  // symbols: z_1..z_n, l_1..l_n, hbar
  CtxPtr make_context(int trunc, int qden = 1) const;
  LatticeVector zvec(const LatticeVector& chr) const;
  LatticeVector lvec(const LatticeVector& cochr) const;
  LatticeVector hvec(int k = 1) const;
  LatticeVector z_root(int root) const { return zvec(roots_[size_t(root)].chr); }
  LatticeVector l_coroot(int root) const { return lvec(roots_[size_t(root)].coroot); }
  // substitutions realising the z-side and dynamical (lambda-side) actions
  IntMatrix z_action(WeylId w) const;
  IntMatrix lambda_action(WeylId w) const;
  // z <-> lambda exchange (only for self-dual data: GL_n and simply laced A)
  IntMatrix swap_matrix() const;

  std::vector<WeylId> elements() const;

 private:
  RootDatum() = default;
  void enumerate(size_t max_order);
  Kind kind_ = Kind::GL;
  int n_ = 0, r_ = 0;
  std::vector<Root> roots_;
  std::vector<int> pos_, simple_, neg_;
  std::map<LatticeVector, int> root_index_;
  std::vector<IntMatrix> elems_;
  std::map<std::vector<int>, int> elem_index_;
  std::vector<std::vector<int>> lmul_, rmul_;
  std::vector<int> inv_, len_;
  std::vector<std::vector<int>> rootperm_;
  WeylId longest_ = 0;
  mutable std::map<std::pair<int, int>, bool> bruhat_memo_;
};

using DatumPtr = std::shared_ptr<const RootDatum>;

Kind parse_kind(const std::string& s);

// every simple-root index i with positions where the word's product acts
std::vector<int> beta_sequence(const RootDatum& d, const Word& word);

struct GammaData {
  std::vector<int> gamma;  // root ids whose coroots are gamma_j^J
  WeylId wJ = 0;
};
GammaData gamma_sequence(const RootDatum& d, const Word& word, const std::vector<bool>& J);

Scalar weyl_act(const Scalar& s, const RootDatum& d, WeylId w, bool z_side);

class ParabolicData {
 public:
  ParabolicData(DatumPtr d, std::vector<int> simple_subset);
  // type A composition, e.g. {2,1} for GL_3 -> Sigma_P = {alpha_1}
  static ParabolicData from_composition(DatumPtr d, const std::vector<int>& comp);

  const RootDatum& datum() const { return *d_; }
  const DatumPtr& datum_ptr() const { return d_; }
  const std::vector<int>& subset() const { return sub_; }
  bool in_subset(int i) const;
  bool in_WP_upper(WeylId w) const;  // w in W^P
  bool in_WP_upper_by_inversions(WeylId w) const;
  bool in_WP(WeylId w) const;        // w in W_P
  bool root_in_P(int root) const;    // root in Phi_P
  const std::vector<WeylId>& min_reps() const { return upper_; }
  const std::vector<WeylId>& levi() const { return levi_; }
  WeylId min_rep(WeylId u) const;
  // the lattice projection on symbols: alpha^vee -> -hbar for alpha in Sigma_P
  IntMatrix projection() const;

 private:
  DatumPtr d_;
  std::vector<int> sub_;
  std::vector<WeylId> upper_, levi_;
};

// every suffix product s_{i_j}^{e_j}...s_{i_l}^{e_l} lies in W^P
bool subword_satisfies_parabolic(const ParabolicData& P, const Word& word, const std::vector<bool>& J);

}  // namespace esc
