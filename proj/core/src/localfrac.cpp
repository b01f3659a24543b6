#include "mfchern/localfrac.hpp"

#include <stdexcept>

namespace mfc {

bool Ring::laurent() const {
  for (int k = 0; k < static_cast<int>(gens.size()); ++k)
    if (gen_variable(k) < 0) return false;
  return true;
}

int Ring::gen_variable(int k) const {
  const Poly& g = gens.at(k);
  if (g.terms().size() != 1) return -1;
  const auto& [e, c] = *g.terms().begin();
  if (c != 1) return -1;
  int var = -1;
  for (int i = 0; i < static_cast<int>(e.size()); ++i) {
    if (e[i] == 0) continue;
    if (e[i] != 1 || var >= 0) return -1;
    var = i;
  }
  return var;
}

RingPtr make_ring(std::string name, std::vector<std::string> vars, std::vector<Poly> gens) {
  auto r = std::make_shared<Ring>();
  r->name = std::move(name);
  r->vars = std::move(vars);
  for (auto& g : gens) {
    if (g.nvars() != r->nvars()) throw std::invalid_argument("generator in wrong ring");
    if (g.is_zero()) throw std::invalid_argument("zero denominator generator");
    bool dup = false;
    for (auto& h : r->gens) dup = dup || h == g;
    if (!dup) r->gens.push_back(std::move(g));
  }
  return r;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->vars == b->vars && a->gens == b->gens;
}

LocalFrac::LocalFrac(RingPtr r) : ring_(std::move(r)), num_(ring_->nvars()), den_(ring_->gens.size(), 0) {}

LocalFrac::LocalFrac(RingPtr r, Poly num) : ring_(std::move(r)), num_(std::move(num)), den_(ring_->gens.size(), 0) {
  if (num_.nvars() != ring_->nvars()) throw std::invalid_argument("numerator in wrong ring");
}

LocalFrac::LocalFrac(RingPtr r, Poly num, std::vector<int> den)
    : ring_(std::move(r)), num_(std::move(num)), den_(std::move(den)) {
  if (num_.nvars() != ring_->nvars()) throw std::invalid_argument("numerator in wrong ring");
  if (den_.size() != ring_->gens.size()) throw std::invalid_argument("denominator length mismatch");
  canonicalize();
}

LocalFrac LocalFrac::constant(RingPtr r, const Rational& c) {
  int n = r->nvars();
  return LocalFrac(std::move(r), Poly::constant(n, c));
}

LocalFrac LocalFrac::variable(RingPtr r, int index) {
  int n = r->nvars();
  return LocalFrac(std::move(r), Poly::variable(n, index));
}

LocalFrac LocalFrac::from_laurent(RingPtr r, const Laurent& l) {
  int n = r->nvars();
  int ng = static_cast<int>(r->gens.size());
  std::vector<int> gen_of(n, -1);
  for (int k = 0; k < ng; ++k) {
    int v = r->gen_variable(k);
    if (v >= 0 && gen_of[v] < 0) gen_of[v] = k;
  }
  std::vector<int> den(ng, 0);
  for (const auto& [e, c] : l)
    for (int i = 0; i < n; ++i)
      if (e[i] < 0) {
        if (gen_of[i] < 0) throw std::domain_error("negative exponent on a non-inverted variable");
        den[gen_of[i]] = std::max(den[gen_of[i]], -e[i]);
      }
  Poly num(n);
  Exponent f(n);
  for (const auto& [e, c] : l) {
    for (int i = 0; i < n; ++i) f[i] = e[i] + (gen_of[i] >= 0 ? den[gen_of[i]] : 0);
    num.add_term(f, c);
  }
  return LocalFrac(std::move(r), std::move(num), std::move(den));
}

void LocalFrac::canonicalize() {
  if (num_.is_zero()) {
    std::fill(den_.begin(), den_.end(), 0);
    return;
  }
  for (size_t k = 0; k < den_.size(); ++k) {
    while (den_[k] > 0) {
      Poly q;
      if (!num_.divide_exact(ring_->gens[k], q)) break;
      num_ = std::move(q);
      --den_[k];
    }
  }
}

bool LocalFrac::is_constant() const {
  for (int e : den_)
    if (e != 0) return false;
  return num_.is_constant();
}

Rational LocalFrac::constant_value() const {
  if (!is_constant()) throw std::domain_error("not a constant");
  return num_.constant_term();
}

static Poly gen_power(const Ring& r, const std::vector<int>& e) {
  Poly p = Poly::constant(r.nvars(), 1);
  for (size_t k = 0; k < e.size(); ++k)
    for (int i = 0; i < e[k]; ++i) p = p * r.gens[k];
  return p;
}

LocalFrac& LocalFrac::operator+=(const LocalFrac& o) {
  *this = *this + o;
  return *this;
}

LocalFrac LocalFrac::operator+(const LocalFrac& o) const {
  if (!same_ring(ring_, o.ring_)) throw std::invalid_argument("mismatched ambient ring");
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  std::vector<int> d(den_.size()), ea(den_.size()), eb(den_.size());
  bool trivial = true;
  for (size_t k = 0; k < den_.size(); ++k) {
    d[k] = std::max(den_[k], o.den_[k]);
    ea[k] = d[k] - den_[k];
    eb[k] = d[k] - o.den_[k];
    trivial = trivial && ea[k] == 0 && eb[k] == 0;
  }
  Poly n = trivial ? num_ + o.num_ : num_ * gen_power(*ring_, ea) + o.num_ * gen_power(*ring_, eb);
  return LocalFrac(ring_, std::move(n), std::move(d));
}

LocalFrac LocalFrac::operator-() const {
  LocalFrac r = *this;
  r.num_ = -r.num_;
  return r;
}

LocalFrac LocalFrac::operator-(const LocalFrac& o) const { return *this + (-o); }

LocalFrac LocalFrac::operator*(const LocalFrac& o) const {
  if (!same_ring(ring_, o.ring_)) throw std::invalid_argument("mismatched ambient ring");
  if (is_zero() || o.is_zero()) return LocalFrac(ring_);
  std::vector<int> d(den_.size());
  for (size_t k = 0; k < den_.size(); ++k) d[k] = den_[k] + o.den_[k];
  return LocalFrac(ring_, num_ * o.num_, std::move(d));
}

LocalFrac LocalFrac::operator*(const Rational& c) const {
  LocalFrac r = *this;
  if (c == 0) return LocalFrac(ring_);
  r.num_ = r.num_ * c;
  return r;
}

bool LocalFrac::operator==(const LocalFrac& o) const { return (*this - o).is_zero(); }

LocalFrac LocalFrac::derivative(int var) const {
  LocalFrac out(ring_, num_.derivative(var), den_);
  for (size_t k = 0; k < den_.size(); ++k) {
    if (den_[k] == 0) continue;
    Poly dg = ring_->gens[k].derivative(var);
    if (dg.is_zero()) continue;
    std::vector<int> d = den_;
    d[k] += 1;
    out += LocalFrac(ring_, num_ * dg * Rational(-den_[k]), std::move(d));
  }
  return out;
}

bool LocalFrac::invert_unit(LocalFrac& out) const {
  if (is_zero()) return false;
  Poly n = num_;
  std::vector<int> a(den_.size(), 0);
  for (size_t k = 0; k < den_.size(); ++k) {
    Poly q;
    while (!n.is_constant() && n.divide_exact(ring_->gens[k], q)) {
      n = std::move(q);
      ++a[k];
    }
  }
  if (!n.is_constant()) return false;
  Rational c = n.constant_term();
  out = LocalFrac(ring_, gen_power(*ring_, den_) * Rational(1 / c), a);
  return true;
}

Laurent LocalFrac::laurent() const {
  int n = ring_->nvars();
  std::vector<int> shift(n, 0);
  for (size_t k = 0; k < den_.size(); ++k) {
    if (den_[k] == 0) continue;
    int v = ring_->gen_variable(static_cast<int>(k));
    if (v < 0) throw std::domain_error("ring has no Laurent monomial basis: " + ring_->name);
    shift[v] += den_[k];
  }
  Laurent out;
  Exponent f(n);
  for (const auto& [e, c] : num_.terms()) {
    for (int i = 0; i < n; ++i) f[i] = e[i] - shift[i];
    out.emplace(f, c);
  }
  return out;
}

std::string LocalFrac::str() const {
  std::string s = num_.str(ring_->vars);
  bool has_den = false;
  std::string d;
  for (size_t k = 0; k < den_.size(); ++k) {
    if (den_[k] == 0) continue;
    if (has_den) d += "*";
    has_den = true;
    d += "(" + ring_->gens[k].str(ring_->vars) + ")";
    if (den_[k] != 1) d += "^" + std::to_string(den_[k]);
  }
  if (!has_den) return s;
  return "(" + s + ")/" + d;
}

}  // namespace mfc
