#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "esc/twisted.hpp"

namespace esc {

struct LocalizedClass {
  DatumPtr datum;
  std::vector<Scalar> values;  // indexed by WeylId
  const Scalar& operator()(WeylId u) const { return values.at(size_t(u)); }
};

// b_{u,w} tables, built per frame and memoised by (frame, u)
class SchubertEngine {
 public:
  explicit SchubertEngine(DatumPtr d) : d_(std::move(d)) {}
  const RootDatum& datum() const { return *d_; }
  const DatumPtr& datum_ptr() const { return d_; }

  // row u of b via b_{s_a u, w} = P(l_{w^-1 a}, z_a) ^{s_a}b_{u,w} + Q(-l_{w^-1 a}, z_a) ^{s_a}b_{u, s_a w}
  const std::vector<Scalar>& row_left(const Frame& f, WeylId u);
  // via b_{u s_a, w} = P(l_a, z_{ua}) b_{u,w} + Q(l_a, z_{ua}) ^{s_a^d}b_{u, w s_a}
  const std::vector<Scalar>& row_right(const Frame& f, WeylId u);
  CoefficientTable table(const Frame& f, bool right = false);
  LocalizedClass elliptic_class(const Frame& f, WeylId w);

 private:
  DatumPtr d_;
  std::mutex mu_;
  std::map<std::pair<std::string, WeylId>, std::vector<Scalar>> left_, right_;
};

struct BilleyFactor {
  int j = 0;        // 1-based position
  bool in_J = false;
  int beta = -1;    // root id
  int gamma = -1;   // root id whose coroot is gamma_j^J
};

struct BilleyTerm {
  std::vector<bool> J;
  std::vector<BilleyFactor> factors;
  Scalar value;
};

struct BilleyResult {
  Scalar value;
  std::vector<BilleyTerm> terms;
};

// sum over subwords J with w(J) = w of prod_j Q or P(l_{gamma_j^J}, z_{beta_j});
// with P given, only subwords whose suffixes stay in W^P
class ParabolicData;
BilleyResult billey(const RootDatum& d, const Word& word, WeylId w, const Frame& f,
                    const ParabolicData* para = nullptr, bool keep_terms = true);

// left coefficients a_v of h_{i_1}(beta_1)...h_{i_l}(beta_l) = sum a_v delta^d_v
std::vector<Scalar> rmatrix_left(const RootDatum& d, const Word& word, const Frame& f);
// coefficient of delta^d_w written on the right, which is E_w(u)
std::vector<Scalar> rmatrix_product(const RootDatum& d, const Word& word, const Frame& f);

struct CheckRecord {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CheckRecord> verify_yang_baxter(const RootDatum& d, const Frame& f);

// E^P_w(u) for all u in W, through the projected frame
enum class ParabolicRoute { Billey, Recursion, Unrestricted };
LocalizedClass parabolic_class(SchubertEngine& eng, const ParabolicData& P, WeylId w, const Frame& f,
                               ParabolicRoute route);
Frame projected(const ParabolicData& P, const Frame& f);

// sum_w b_{u,w} b^d_{w^-1, v^-1}
CoefficientTable mirror_matrix(SchubertEngine& eng, const Frame& f);

}  // namespace esc
