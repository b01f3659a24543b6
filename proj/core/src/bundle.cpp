#include "mfchern/bundle.hpp"

#include <stdexcept>

namespace mfc {

FracMatrix frac_identity(const RingPtr& r, int n) {
  FracMatrix m(n, n, LocalFrac(r));
  for (int i = 0; i < n; ++i) m(i, i) = LocalFrac::constant(r, 1);
  return m;
}

FracMatrix frac_zero(const RingPtr& r, int rows, int cols) { return FracMatrix(rows, cols, LocalFrac(r)); }

FracMatrix frac_mul(const FracMatrix& a, const FracMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix shape mismatch");
  RingPtr r = !a.a.empty() ? a.a[0].ring() : (!b.a.empty() ? b.a[0].ring() : nullptr);
  FracMatrix c(a.rows, b.cols, LocalFrac(r));
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols; ++j)
        if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

FracMatrix frac_apply(const RingMap& m, const FracMatrix& a) {
  FracMatrix c(a.rows, a.cols, LocalFrac(m.target()));
  for (size_t k = 0; k < a.a.size(); ++k) c.a[k] = m.apply(a.a[k]);
  return c;
}

bool frac_equal(const FracMatrix& a, const FracMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (size_t k = 0; k < a.a.size(); ++k)
    if (a.a[k] != b.a[k]) return false;
  return true;
}

VectorBundle::VectorBundle(std::shared_ptr<const CoveredScheme> X, std::vector<int> degrees,
                           std::map<std::pair<int, int>, FracMatrix> forward,
                           std::map<std::pair<int, int>, FracMatrix> inverse)
    : X_(std::move(X)), degrees_(std::move(degrees)), fwd_(std::move(forward)), inv_(std::move(inverse)) {
  int n = rank();
  for (const Tuple& t : X_->tuples(1)) {
    std::pair<int, int> key{t[0], t[1]};
    auto it = fwd_.find(key);
    if (it == fwd_.end()) throw std::invalid_argument("bundle: missing transition " + tuple_str(t));
    if (it->second.rows != n || it->second.cols != n) throw std::invalid_argument("bundle: transition " + tuple_str(t) + " has wrong shape");
    if (!inv_.count(key)) throw std::invalid_argument("bundle: missing inverse transition " + tuple_str(t));
    // transitions must preserve the grading
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (degrees_[a] != degrees_[b] && (!it->second(a, b).is_zero() || !inv_.at(key)(a, b).is_zero()))
          throw std::invalid_argument("bundle: transition " + tuple_str(t) + " is not of degree 0");
  }
}

BundlePtr VectorBundle::trivial(std::shared_ptr<const CoveredScheme> X, std::vector<int> degrees) {
  std::map<std::pair<int, int>, FracMatrix> f, inv;
  int n = static_cast<int>(degrees.size());
  for (const Tuple& t : X->tuples(1)) {
    f[{t[0], t[1]}] = frac_identity(X->ring(t), n);
    inv[{t[0], t[1]}] = frac_identity(X->ring(t), n);
  }
  return std::make_shared<VectorBundle>(std::move(X), std::move(degrees), std::move(f), std::move(inv));
}

const FracMatrix& VectorBundle::transition(int a, int b, const Tuple& K) const {
  auto key = std::make_pair(std::make_pair(a, b), K);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  FracMatrix m;
  if (a == b) {
    m = frac_identity(X_->ring(K), rank());
  } else {
    Tuple pair{std::min(a, b), std::max(a, b)};
    const FracMatrix& g = a < b ? fwd_.at({a, b}) : inv_.at({b, a});
    m = frac_apply(X_->restriction(pair, K), g);
  }
  return cache_.emplace(key, std::move(m)).first->second;
}

std::vector<std::string> VectorBundle::check() const {
  std::vector<std::string> bad;
  int n = rank();
  for (const Tuple& t : X_->tuples(1)) {
    FracMatrix id = frac_identity(X_->ring(t), n);
    if (!frac_equal(frac_mul(transition(t[0], t[1], t), transition(t[1], t[0], t)), id))
      bad.push_back("transition " + tuple_str(t) + " times its inverse is not the identity");
  }
  for (const Tuple& t : X_->tuples(2)) {
    if (!frac_equal(frac_mul(transition(t[0], t[1], t), transition(t[1], t[2], t)), transition(t[0], t[2], t)))
      bad.push_back("cocycle condition fails on " + tuple_str(t));
  }
  return bad;
}

bool same_bundle(const BundlePtr& a, const BundlePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->scheme() != b->scheme() || a->degrees() != b->degrees()) return false;
  if (a->forward().size() != b->forward().size()) return false;
  for (const auto& [k, m] : a->forward()) {
    auto it = b->forward().find(k);
    if (it == b->forward().end() || !frac_equal(m, it->second)) return false;
  }
  return true;
}

}  // namespace mfc
