#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mfchern/matrix.hpp"
#include "mfchern/scheme.hpp"

namespace mfc {

using FracMatrix = Matrix<LocalFrac>;

FracMatrix frac_identity(const RingPtr& r, int n);
FracMatrix frac_zero(const RingPtr& r, int rows, int cols);
FracMatrix frac_mul(const FracMatrix& a, const FracMatrix& b);
FracMatrix frac_apply(const RingMap& m, const FracMatrix& a);
bool frac_equal(const FracMatrix& a, const FracMatrix& b);

inline int parity(int degree) { return degree & 1; }

// Graded free module on each patch glued by transition matrices.
// Convention: local frames satisfy s_i = g_ij s_j, so g_ij turns j-frame
// coordinates into i-frame coordinates.
class VectorBundle {
 public:
  VectorBundle() = default;
  // transitions keyed by (i, j), i < j, on the ring of (i, j); inverses computed
  // from `inverse` when supplied, else required to be supplied for every pair
  VectorBundle(std::shared_ptr<const CoveredScheme> X, std::vector<int> degrees,
               std::map<std::pair<int, int>, FracMatrix> forward, std::map<std::pair<int, int>, FracMatrix> inverse);
  static std::shared_ptr<const VectorBundle> trivial(std::shared_ptr<const CoveredScheme> X, std::vector<int> degrees);
  static std::shared_ptr<const VectorBundle> line(std::shared_ptr<const CoveredScheme> X) { return trivial(X, {0}); }

  const std::shared_ptr<const CoveredScheme>& scheme() const { return X_; }
  const CoveredScheme& X() const { return *X_; }
  int rank() const { return static_cast<int>(degrees_.size()); }
  const std::vector<int>& degrees() const { return degrees_; }
  int degree(int k) const { return degrees_.at(k); }

  // g_ab pulled back to the ring of K (which contains a and b); identity if a == b
  const FracMatrix& transition(int a, int b, const Tuple& K) const;
  const std::map<std::pair<int, int>, FracMatrix>& forward() const { return fwd_; }
  const std::map<std::pair<int, int>, FracMatrix>& inverse() const { return inv_; }

  // cocycle and invertibility violations, empty when valid
  std::vector<std::string> check() const;

 private:
  std::shared_ptr<const CoveredScheme> X_;
  std::vector<int> degrees_;
  std::map<std::pair<int, int>, FracMatrix> fwd_, inv_;
  mutable std::map<std::pair<std::pair<int, int>, Tuple>, FracMatrix> cache_;
};
using BundlePtr = std::shared_ptr<const VectorBundle>;

bool same_bundle(const BundlePtr& a, const BundlePtr& b);

}  // namespace mfc
