#include "mfchern/ringmap.hpp"

#include <stdexcept>

namespace mfc {

RingMap::RingMap(RingPtr source, RingPtr target, std::vector<LocalFrac> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != source_->nvars())
    throw std::invalid_argument("ring map needs one image per source variable");
  for (auto& im : images_)
    if (!same_ring(im.ring(), target_)) throw std::invalid_argument("ring map image in wrong ring");
  for (const Poly& g : source_->gens) {
    LocalFrac img = apply_poly(g), inv;
    if (!img.invert_unit(inv))
      throw std::domain_error("ring map sends denominator " + g.str(source_->vars) + " to a non-unit " + img.str());
    gen_inverses_.push_back(inv);
  }
}

RingMap RingMap::identity(const RingPtr& r) { return inclusion(r, r); }

RingMap RingMap::inclusion(const RingPtr& source, const RingPtr& target) {
  if (source->vars.size() != target->vars.size()) throw std::invalid_argument("inclusion needs equal variables");
  std::vector<LocalFrac> im;
  for (int i = 0; i < source->nvars(); ++i) im.push_back(LocalFrac::variable(target, i));
  return RingMap(source, target, std::move(im));
}

LocalFrac RingMap::apply_poly(const Poly& p) const {
  int n = source_->nvars();
  std::vector<std::vector<LocalFrac>> powers(n);
  LocalFrac out(target_);
  for (const auto& [e, c] : p.terms()) {
    LocalFrac t = LocalFrac::constant(target_, c);
    for (int i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(LocalFrac::constant(target_, 1));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images_[i]);
      t = t * pw[e[i]];
    }
    out += t;
  }
  return out;
}

LocalFrac RingMap::apply(const LocalFrac& a) const {
  if (!same_ring(a.ring(), source_)) throw std::invalid_argument("ring map applied outside its source");
  LocalFrac out = apply_poly(a.num());
  for (size_t k = 0; k < a.den().size(); ++k)
    for (int j = 0; j < a.den()[k]; ++j) out = out * gen_inverses_[k];
  return out;
}

RingMap RingMap::compose_after(const RingMap& first) const {
  if (!same_ring(first.target_, source_)) throw std::invalid_argument("ring maps not composable");
  std::vector<LocalFrac> im;
  for (const auto& x : first.images_) im.push_back(apply(x));
  return RingMap(first.source_, target_, std::move(im));
}

bool RingMap::operator==(const RingMap& o) const {
  if (!same_ring(source_, o.source_) || !same_ring(target_, o.target_)) return false;
  for (size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != o.images_[i]) return false;
  return true;
}

}  // namespace mfc
