#include "mfchern/poly.hpp"

#include <numeric>
#include <stdexcept>

namespace mfc {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
  long da = std::accumulate(a.begin(), a.end(), 0L);
  long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da < db;
  // earlier variables weigh more: x > y means x^1 y^0 sorts after x^0 y^1
  return a < b;
}

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int index) {
  Exponent e(nvars, 0);
  e.at(index) = 1;
  return monomial(e, 1);
}

Poly Poly::monomial(const Exponent& e, const Rational& c) {
  Poly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (int x : terms_.begin()->first)
    if (x != 0) return false;
  return true;
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Exponent(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  const Exponent& e = terms_.rbegin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

void Poly::add_term(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("exponent length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("poly variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Rational& c) const {
  if (c == 0) return Poly(nvars_);
  Poly r = *this;
  for (auto& [e, v] : r.terms_) v *= c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (o.nvars_ != nvars_) throw std::invalid_argument("poly variable count mismatch");
  Poly r(nvars_);
  Exponent e(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly Poly::pow(int k) const {
  Poly r = constant(nvars_, 1);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

Poly Poly::derivative(int var) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    f[var] -= 1;
    r.add_term(f, c * e[var]);
  }
  return r;
}

bool Poly::divide_exact(const Poly& o, Poly& quotient) const {
  if (o.is_zero()) throw std::domain_error("division by zero polynomial");
  quotient = Poly(nvars_);
  Poly rem = *this;
  const Exponent& lo = o.leading_exponent();
  const Rational& lc = o.terms_.rbegin()->second;
  while (!rem.is_zero()) {
    Exponent le = rem.leading_exponent();
    Exponent q(nvars_);
    for (int i = 0; i < nvars_; ++i) {
      q[i] = le[i] - lo[i];
      if (q[i] < 0) return false;
    }
    Rational c = rem.terms_.rbegin()->second / lc;
    Poly t = monomial(q, c);
    quotient += t;
    rem = rem - t * o;
  }
  return true;
}

std::string Poly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(i);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    Rational a = abs(c);
    std::string coef = to_string(a);
    std::string term;
    if (mono.empty()) term = coef;
    else if (a == 1) term = mono;
    else term = coef + "*" + mono;
    if (first) out = (c < 0 ? "-" : "") + term;
    else out += (c < 0 ? " - " : " + ") + term;
    first = false;
  }
  return out;
}

}  // namespace mfc
