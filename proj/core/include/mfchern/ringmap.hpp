#pragma once

#include <vector>

#include "mfchern/localfrac.hpp"

namespace mfc {

// Substitution homomorphism: source variable i goes to images[i] in the target ring.
class RingMap {
 public:
  RingMap() = default;
  RingMap(RingPtr source, RingPtr target, std::vector<LocalFrac> images);
  static RingMap identity(const RingPtr& r);
  // same variables, target has (possibly) more inverted generators
  static RingMap inclusion(const RingPtr& source, const RingPtr& target);

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  const std::vector<LocalFrac>& images() const { return images_; }

  LocalFrac apply(const LocalFrac& a) const;
  LocalFrac apply_poly(const Poly& p) const;
  // (*this) after first
  RingMap compose_after(const RingMap& first) const;
  bool operator==(const RingMap& o) const;

 private:
  RingPtr source_, target_;
  std::vector<LocalFrac> images_;
  std::vector<LocalFrac> gen_inverses_;
};

}  // namespace mfc
