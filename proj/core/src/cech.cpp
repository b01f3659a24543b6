#include "mfchern/cech.hpp"

#include <stdexcept>

namespace mfc {

namespace {

FormMatrix form_zero(const RingPtr& r, int rows, int cols) { return FormMatrix(rows, cols, DifferentialForm(r)); }

bool block_zero(const FormMatrix& m) {
  for (const auto& f : m.a)
    if (!f.is_zero()) return false;
  return true;
}

// g · y with g a matrix of functions
FormMatrix left_frac(const FracMatrix& g, const FormMatrix& y, const RingPtr& r) {
  FormMatrix out = form_zero(r, g.rows, y.cols);
  for (int i = 0; i < g.rows; ++i)
    for (int k = 0; k < g.cols; ++k) {
      if (g(i, k).is_zero()) continue;
      for (int j = 0; j < y.cols; ++j)
        if (!y(k, j).is_zero()) out(i, j) += y(k, j).times(g(i, k));
    }
  return out;
}

FormMatrix right_frac(const FormMatrix& y, const FracMatrix& g, const RingPtr& r) {
  FormMatrix out = form_zero(r, y.rows, g.cols);
  for (int i = 0; i < y.rows; ++i)
    for (int k = 0; k < y.cols; ++k) {
      if (y(i, k).is_zero()) continue;
      for (int j = 0; j < g.cols; ++j)
        if (!g(k, j).is_zero()) out(i, j) += y(i, k).times(g(k, j));
    }
  return out;
}

DifferentialForm signed_by(const DifferentialForm& f, int base) {
  // multiply each term by (-1)^{base + form degree}
  DifferentialForm r(f.ring());
  for (const auto& [k, v] : f.terms()) r.add(k, ((base + popcount(k.mask)) & 1) ? -v : v);
  return r;
}

}  // namespace

CechCochain::CechCochain(BundlePtr tgt, BundlePtr src, int u_trunc)
    : tgt_(std::move(tgt)), src_(std::move(src)), u_trunc_(u_trunc) {
  if (!tgt_ || !src_) throw std::invalid_argument("cochain needs source and target bundles");
  if (tgt_->scheme() != src_->scheme()) throw std::invalid_argument("cochain bundles live on different schemes");
}

CechCochain CechCochain::scalar(std::shared_ptr<const CoveredScheme> X, int u_trunc) {
  auto O = VectorBundle::line(std::move(X));
  return CechCochain(O, O, u_trunc);
}

CechCochain CechCochain::identity(BundlePtr P, int u_trunc) {
  CechCochain c(P, P, u_trunc);
  for (const Tuple& t : P->X().tuples(0)) {
    FormMatrix& m = c.at(t);
    for (int a = 0; a < P->rank(); ++a) m(a, a) = DifferentialForm::scalar(LocalFrac::constant(P->X().ring(t), 1));
  }
  return c;
}

bool CechCochain::is_zero() const {
  for (const auto& [t, m] : entries_)
    if (!block_zero(m)) return false;
  return true;
}

FormMatrix CechCochain::zero_block(const Tuple& I) const { return form_zero(X().ring(I), tgt_->rank(), src_->rank()); }

FormMatrix& CechCochain::at(const Tuple& I) {
  auto it = entries_.find(I);
  if (it != entries_.end()) return it->second;
  if (!X().has_tuple(I)) throw std::out_of_range("no intersection " + tuple_str(I));
  return entries_.emplace(I, zero_block(I)).first->second;
}

const FormMatrix* CechCochain::find(const Tuple& I) const {
  auto it = entries_.find(I);
  return it == entries_.end() ? nullptr : &it->second;
}

void CechCochain::add(const Tuple& I, int a, int b, const DifferentialForm& f) {
  if (f.is_zero()) return;
  at(I)(a, b) += f.truncated(u_trunc_);
}

void CechCochain::prune() {
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (block_zero(it->second))
      it = entries_.erase(it);
    else
      ++it;
  }
}

CechCochain& CechCochain::operator+=(const CechCochain& o) {
  if (!same_bundle(tgt_, o.tgt_) || !same_bundle(src_, o.src_)) throw std::invalid_argument("cochain bundle mismatch in sum");
  for (const auto& [t, m] : o.entries_) {
    FormMatrix& mine = at(t);
    for (size_t k = 0; k < m.a.size(); ++k) mine.a[k] += m.a[k];
  }
  prune();
  return *this;
}

CechCochain CechCochain::operator+(const CechCochain& o) const {
  CechCochain r = *this;
  r.u_trunc_ = std::min(u_trunc_, o.u_trunc_);
  r += o.truncated(r.u_trunc_);
  return r.truncated(r.u_trunc_);
}

CechCochain CechCochain::operator-() const {
  CechCochain r = *this;
  for (auto& [t, m] : r.entries_)
    for (auto& f : m.a) f = -f;
  return r;
}

CechCochain CechCochain::operator-(const CechCochain& o) const { return *this + (-o); }

CechCochain CechCochain::operator*(const Rational& c) const {
  CechCochain r = *this;
  for (auto& [t, m] : r.entries_)
    for (auto& f : m.a) f = f * c;
  r.prune();
  return r;
}

CechCochain CechCochain::truncated(int u_trunc) const {
  CechCochain r = *this;
  r.u_trunc_ = std::min(u_trunc, u_trunc_);
  for (auto& [t, m] : r.entries_)
    for (auto& f : m.a) f = f.truncated(r.u_trunc_);
  r.prune();
  return r;
}

CechCochain CechCochain::shift_u(int k) const {
  CechCochain r = *this;
  for (auto& [t, m] : r.entries_)
    for (auto& f : m.a) f = f.shift_u(k).truncated(u_trunc_);
  r.prune();
  return r;
}

CechCochain CechCochain::u_slice(int mm) const {
  CechCochain r = *this;
  for (auto& [t, m] : r.entries_)
    for (auto& f : m.a) f = f.u_slice(mm);
  r.prune();
  return r;
}

CechCochain CechCochain::cech_slice(int p) const {
  CechCochain r(tgt_, src_, u_trunc_);
  for (const auto& [t, m] : entries_)
    if (static_cast<int>(t.size()) - 1 == p) r.entries_.emplace(t, m);
  return r;
}

std::string CechCochain::str() const {
  std::string s;
  bool scalar = tgt_->rank() == 1 && src_->rank() == 1;
  for (const auto& [t, m] : entries_) {
    if (block_zero(m)) continue;
    s += "C^" + std::to_string(t.size() - 1) + " " + tuple_str(t) + ":\n";
    for (int a = 0; a < m.rows; ++a)
      for (int b = 0; b < m.cols; ++b) {
        if (m(a, b).is_zero()) continue;
        s += "  ";
        if (!scalar) s += "[" + std::to_string(a) + "," + std::to_string(b) + "] ";
        s += m(a, b).str() + "\n";
      }
  }
  return s.empty() ? "0\n" : s;
}

FormMatrix transport(const FormMatrix& y, const Tuple& J, const Tuple& I, const VectorBundle& tgt,
                     const VectorBundle& src) {
  const CoveredScheme& X = tgt.X();
  const RingPtr& rI = X.ring(I);
  FormMatrix out = form_zero(rI, y.rows, y.cols);
  if (J == I) return y;
  const RingMap& m = X.restriction(J, I);
  for (size_t k = 0; k < y.a.size(); ++k)
    if (!y.a[k].is_zero()) out.a[k] = pullback(m, y.a[k]);
  if (J.front() == I.front()) return out;
  out = left_frac(tgt.transition(I.front(), J.front(), I), out, rI);
  return right_frac(out, src.transition(J.front(), I.front(), I), rI);
}

CechCochain cech_differential(const CechCochain& c) {
  CechCochain out(c.tgt(), c.src(), c.u_trunc());
  const CoveredScheme& X = c.X();
  for (int p = 1; p <= X.max_cech_degree(); ++p)
    for (const Tuple& K : X.tuples(p)) {
      FormMatrix acc = c.zero_block(K);
      bool any = false;
      for (size_t k = 0; k < K.size(); ++k) {
        Tuple J = K;
        J.erase(J.begin() + k);
        const FormMatrix* y = c.find(J);
        if (!y) continue;
        any = true;
        FormMatrix t = transport(*y, J, K, *c.tgt(), *c.src());
        for (size_t e = 0; e < t.a.size(); ++e) acc.a[e] += (k & 1) ? -t.a[e] : t.a[e];
      }
      if (!any) continue;
      // Koszul: d_Č passes the value γ E, sign (-1)^{|γ| + |E|}
      for (int a = 0; a < acc.rows; ++a)
        for (int b = 0; b < acc.cols; ++b)
          if (!acc(a, b).is_zero()) out.at(K)(a, b) = signed_by(acc(a, b), c.unit_degree(a, b));
    }
  out.prune();
  return out;
}

CechCochain de_rham(const CechCochain& c) {
  CechCochain out(c.tgt(), c.src(), c.u_trunc());
  for (const auto& [t, m] : c.entries())
    for (int a = 0; a < m.rows; ++a)
      for (int b = 0; b < m.cols; ++b)
        if (!m(a, b).is_zero()) out.add(t, a, b, de_rham_d(m(a, b)));
  out.prune();
  return out;
}

FormMatrix block_product(const FormMatrix& xa, const FormMatrix& yb, int p1, const VectorBundle& A, const VectorBundle& M,
                         const VectorBundle& B, int trunc) {
  RingPtr r = xa.a.empty() ? nullptr : xa.a[0].ring();
  FormMatrix acc(xa.rows, yb.cols, DifferentialForm(r));
  for (int row = 0; row < xa.rows; ++row)
    for (int m = 0; m < xa.cols; ++m) {
      const DifferentialForm& f1 = xa(row, m);
      if (f1.is_zero()) continue;
      int e1 = A.degree(row) - M.degree(m);
      for (int c = 0; c < yb.cols; ++c) {
        const DifferentialForm& f2 = yb(m, c);
        if (f2.is_zero()) continue;
        int e2 = M.degree(m) - B.degree(c);
        DifferentialForm prod(f1.ring());
        for (const auto& [k1, c1] : f1.terms())
          for (const auto& [k2, c2] : f2.terms()) {
            if (k1.u + k2.u > trunc) continue;
            int s = wedge_sign(k1.mask, k2.mask);
            if (s == 0) continue;
            s *= acw_sign(p1, popcount(k2.mask), e1, e2);
            LocalFrac v = c1 * c2;
            prod.add({k1.u + k2.u, k1.mask | k2.mask}, s > 0 ? v : -v);
          }
        acc(row, c) += prod;
      }
    }
  return acc;
}

CechCochain acw_product(const CechCochain& x, const CechCochain& y) {
  if (!same_bundle(x.src(), y.tgt())) throw std::invalid_argument("acw_product: shape mismatch (source of left factor differs from target of right)");
  int trunc = std::min(x.u_trunc(), y.u_trunc());
  CechCochain out(x.tgt(), y.src(), trunc);
  const CoveredScheme& X = x.X();
  const VectorBundle& A = *x.tgt();
  const VectorBundle& M = *x.src();
  const VectorBundle& B = *y.src();
  for (const auto& [I, xv] : x.entries()) {
    int p1 = static_cast<int>(I.size()) - 1;
    for (const auto& [J, yv] : y.entries()) {
      if (J.front() != I.back()) continue;
      Tuple K = I;
      K.insert(K.end(), J.begin() + 1, J.end());
      if (!X.has_tuple(K)) continue;
      FormMatrix xa = transport(xv, I, K, A, M);
      FormMatrix yb = transport(yv, J, K, M, B);
      FormMatrix prod = block_product(xa, yb, p1, A, M, B, trunc);
      FormMatrix& acc = out.at(K);
      for (size_t e = 0; e < prod.a.size(); ++e) acc.a[e] += prod.a[e];
    }
  }
  out.prune();
  return out;
}

CechCochain parity_twist(const CechCochain& c) {
  CechCochain out = c;
  for (const auto& [t, m] : c.entries()) {
    int p = static_cast<int>(t.size()) - 1;
    FormMatrix& o = out.at(t);
    for (int a = 0; a < m.rows; ++a)
      for (int b = 0; b < m.cols; ++b) o(a, b) = signed_by(m(a, b), p + c.unit_degree(a, b));
  }
  return out;
}

CechCochain exp_neg(const CechCochain& c) {
  if (!same_bundle(c.src(), c.tgt())) throw std::invalid_argument("exp_neg needs an endomorphism cochain");
  CechCochain result = CechCochain::identity(c.src(), c.u_trunc());
  CechCochain power = result;
  const CoveredScheme& X = c.X();
  int limit = X.dimension() + X.max_cech_degree() + c.u_trunc() + 2;
  Rational fact = 1;
  for (int m = 1;; ++m) {
    power = acw_product(power, c);
    if (power.is_zero()) break;
    if (m > limit) throw std::runtime_error("exp_neg: input is not nilpotent");
    fact *= m;
    Rational coef = Rational((m & 1) ? -1 : 1) / fact;
    result += power * coef;
  }
  return result;
}

CechCochain supertrace(const CechCochain& c) {
  if (c.tgt()->rank() != c.src()->rank() || c.tgt()->degrees() != c.src()->degrees())
    throw std::invalid_argument("supertrace of a non-square cochain");
  CechCochain out = CechCochain::scalar(c.scheme(), c.u_trunc());
  for (const auto& [t, m] : c.entries()) {
    DifferentialForm acc(c.X().ring(t));
    for (int a = 0; a < m.rows; ++a) acc += parity(c.tgt()->degree(a)) ? -m(a, a) : m(a, a);
    out.add(t, 0, 0, acc);
  }
  out.prune();
  return out;
}

CechCochain wedge_left(const std::vector<DifferentialForm>& omega, const CechCochain& c) {
  CechCochain out(c.tgt(), c.src(), c.u_trunc());
  const CoveredScheme& X = c.X();
  for (const auto& [t, m] : c.entries()) {
    DifferentialForm w = pullback(X.restriction({t.front()}, t), omega.at(t.front()));
    for (int a = 0; a < m.rows; ++a)
      for (int b = 0; b < m.cols; ++b)
        if (!m(a, b).is_zero()) out.add(t, a, b, wedge(w, m(a, b), c.u_trunc()));
  }
  out.prune();
  return out;
}

}  // namespace mfc
