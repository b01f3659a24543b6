#include "mfchern/forms.hpp"

#include <stdexcept>

namespace mfc {

int popcount(std::uint32_t m) { return __builtin_popcount(m); }

bool FormKeyLess::operator()(const FormKey& a, const FormKey& b) const {
  if (a.u != b.u) return a.u < b.u;
  int pa = popcount(a.mask), pb = popcount(b.mask);
  if (pa != pb) return pa < pb;
  // lexicographic on increasing index tuples: lower bits first
  std::uint32_t x = a.mask, y = b.mask;
  while (x && y) {
    int ix = __builtin_ctz(x), iy = __builtin_ctz(y);
    if (ix != iy) return ix < iy;
    x &= x - 1;
    y &= y - 1;
  }
  return false;
}

int wedge_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  int inversions = 0;
  for (std::uint32_t y = b; y; y &= y - 1) {
    int j = __builtin_ctz(y);
    inversions += popcount(a >> (j + 1));  // bits of a above j
  }
  return (inversions & 1) ? -1 : 1;
}

DifferentialForm DifferentialForm::scalar(const LocalFrac& f, int u) {
  DifferentialForm w(f.ring());
  w.add({u, 0}, f);
  return w;
}

DifferentialForm DifferentialForm::dx(RingPtr r, int var) {
  DifferentialForm w(r);
  w.add({0, 1u << var}, LocalFrac::constant(r, 1));
  return w;
}

void DifferentialForm::add(const FormKey& k, const LocalFrac& c) {
  if (c.is_zero()) return;
  if (!ring_) ring_ = c.ring();
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

DifferentialForm& DifferentialForm::operator+=(const DifferentialForm& o) {
  if (!ring_) ring_ = o.ring_;
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

DifferentialForm DifferentialForm::operator+(const DifferentialForm& o) const {
  DifferentialForm r = *this;
  r += o;
  return r;
}

DifferentialForm DifferentialForm::operator-() const {
  DifferentialForm r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

DifferentialForm DifferentialForm::operator-(const DifferentialForm& o) const { return *this + (-o); }

DifferentialForm DifferentialForm::operator*(const Rational& c) const {
  if (c == 0) return DifferentialForm(ring_);
  DifferentialForm r = *this;
  for (auto& [k, v] : r.terms_) v = v * c;
  return r;
}

DifferentialForm DifferentialForm::times(const LocalFrac& f) const {
  DifferentialForm r(ring_);
  for (const auto& [k, v] : terms_) r.add(k, v * f);
  return r;
}

DifferentialForm DifferentialForm::truncated(int u_trunc) const {
  DifferentialForm r(ring_);
  for (const auto& [k, v] : terms_)
    if (k.u <= u_trunc) r.terms_.emplace(k, v);
  return r;
}

DifferentialForm DifferentialForm::shift_u(int s) const {
  DifferentialForm r(ring_);
  for (const auto& [k, v] : terms_) r.terms_.emplace(FormKey{k.u + s, k.mask}, v);
  return r;
}

DifferentialForm DifferentialForm::u_slice(int m) const {
  DifferentialForm r(ring_);
  for (const auto& [k, v] : terms_)
    if (k.u == m) r.terms_.emplace(k, v);
  return r;
}

DifferentialForm DifferentialForm::parity_twist() const {
  DifferentialForm r = *this;
  for (auto& [k, v] : r.terms_)
    if (popcount(k.mask) & 1) v = -v;
  return r;
}

std::string DifferentialForm::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [k, v] : terms_) {
    if (!s.empty()) s += " + ";
    s += "[" + v.str() + "]";
    if (k.u) s += "*u^" + std::to_string(k.u);
    for (std::uint32_t m = k.mask; m; m &= m - 1) s += "*d" + ring_->vars.at(__builtin_ctz(m));
  }
  return s;
}

DifferentialForm de_rham_d(const DifferentialForm& w) {
  DifferentialForm r(w.ring());
  if (!w.ring()) return r;
  int n = w.ring()->nvars();
  for (const auto& [k, f] : w.terms())
    for (int i = 0; i < n; ++i) {
      if (k.mask & (1u << i)) continue;
      LocalFrac df = f.derivative(i);
      if (df.is_zero()) continue;
      int s = wedge_sign(1u << i, k.mask);
      r.add({k.u, k.mask | (1u << i)}, s > 0 ? df : -df);
    }
  return r;
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b, int u_trunc) {
  DifferentialForm r(a.ring() ? a.ring() : b.ring());
  for (const auto& [ka, fa] : a.terms())
    for (const auto& [kb, fb] : b.terms()) {
      if (ka.u + kb.u > u_trunc) continue;
      int s = wedge_sign(ka.mask, kb.mask);
      if (s == 0) continue;
      LocalFrac c = fa * fb;
      r.add({ka.u + kb.u, ka.mask | kb.mask}, s > 0 ? c : -c);
    }
  return r;
}

DifferentialForm pullback(const RingMap& m, const DifferentialForm& w) {
  const RingPtr& tgt = m.target();
  DifferentialForm out(tgt);
  int ns = m.source()->nvars();
  std::vector<DifferentialForm> dimg;
  for (int i = 0; i < ns; ++i) dimg.push_back(de_rham_d(DifferentialForm::scalar(m.images()[i])));
  for (const auto& [k, f] : w.terms()) {
    DifferentialForm t = DifferentialForm::scalar(m.apply(f), k.u);
    for (std::uint32_t mm = k.mask; mm; mm &= mm - 1) t = wedge(t, dimg[__builtin_ctz(mm)]);
    out += t;
  }
  return out;
}

}  // namespace mfc
