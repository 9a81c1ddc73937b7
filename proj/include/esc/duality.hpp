#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "esc/schubert.hpp"

namespace esc {

// Denominators prod theta(-z_{u alpha}) per u, over all positive roots or only
// those outside the Levi.
class PairingContext {
 public:
  PairingContext(DatumPtr d, const Frame& f, const ParabolicData* P = nullptr);
  const Scalar& denominator(WeylId u) const { return den_.at(size_t(u)); }
  // u in W, or u in W^P for the parabolic pairing
  const std::vector<WeylId>& support() const { return support_; }
  Scalar pair(const LocalizedClass& a, const LocalizedClass& b) const;

 private:
  DatumPtr d_;
  Frame f_;
  std::vector<Scalar> den_;
  std::vector<WeylId> support_;
};

// delta function class f_u
LocalizedClass point_class(const DatumPtr& d, const Frame& f, WeylId u);
// the W-action (^w g)(u) = w(g(w^-1 u)) needs the class as a function of the
// frame, so it lives inside the engine below

// rescaled classes built by the R-matrix recursion from the left, memoised per
// (frame, w) like the Schubert engine
class RescaledEngine {
 public:
  explicit RescaledEngine(DatumPtr d) : d_(std::move(d)) {}
  const RootDatum& datum() const { return *d_; }

  // along the canonical reduced word
  const std::vector<Scalar>& rescaled(const Frame& f, WeylId w);
  // along the given reduced word of w (not memoised)
  std::vector<Scalar> rescaled_along(const Frame& f, const Word& word);
  LocalizedClass rescaled_class(const Frame& f, WeylId w);
  LocalizedClass renormalized_class(const Frame& f, WeylId w);
  // prod_{alpha > 0, w alpha < 0} theta(l_{alpha^vee} - h)/theta(l_{alpha^vee} + h)
  Scalar renormalizer(const Frame& f, WeylId w) const;
  // the parabolic renormalized class on W^P (zero elsewhere)
  LocalizedClass parabolic_renormalized_class(const ParabolicData& P, const Frame& f, WeylId w);

 private:
  std::vector<Scalar> step(const Frame& f, int i, WeylId w, const std::vector<Scalar>& cur,
                           const std::vector<Scalar>& twisted) const;
  DatumPtr d_;
  std::mutex mu_;
  std::map<std::pair<std::string, WeylId>, std::vector<Scalar>> memo_;
};

// <E'(X_u), E_w> = delta and <E(X_u), E_u> = prod theta(l+h)/theta(l-h)
std::vector<CheckRecord> dual_basis_check(const DatumPtr& d, const Frame& f);
std::vector<CheckRecord> parabolic_dual_basis_check(const ParabolicData& P, const Frame& f);
// word independence of E' on w0, <E(X_id), g> = g(id), pairing symmetry and W-equivariance
std::vector<CheckRecord> duality_property_checks(const DatumPtr& d, const Frame& f, unsigned seed);

}  // namespace esc
