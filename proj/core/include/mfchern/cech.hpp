#pragma once

#include <map>
#include <memory>
#include <string>

#include "mfchern/bundle.hpp"
#include "mfchern/forms.hpp"

namespace mfc {

using FormMatrix = Matrix<DifferentialForm>;

// Ordered Čech cochain with values in forms ⊗ Hom(src, tgt) ⊗ Q[u].
//
// A basis element is written in the normal order  γ · E_ab · e_I · u^m  where γ is
// a monomial form (each dx odd), E_ab a matrix unit of degree deg_tgt(a) - deg_src(b)
// and e_I the Čech generator of degree |I| - 1. The value at I is stored in the
// coordinates of the ring of I and in the frame of patch I.front().
class CechCochain {
 public:
  CechCochain() = default;
  CechCochain(BundlePtr tgt, BundlePtr src, int u_trunc);
  static CechCochain scalar(std::shared_ptr<const CoveredScheme> X, int u_trunc);
  static CechCochain identity(BundlePtr P, int u_trunc);

  const CoveredScheme& X() const { return tgt_->X(); }
  const std::shared_ptr<const CoveredScheme>& scheme() const { return tgt_->scheme(); }
  const BundlePtr& tgt() const { return tgt_; }
  const BundlePtr& src() const { return src_; }
  int u_trunc() const { return u_trunc_; }
  const std::map<Tuple, FormMatrix>& entries() const { return entries_; }
  bool is_zero() const;

  FormMatrix zero_block(const Tuple& I) const;
  // mutable entry at I, created as zero if absent
  FormMatrix& at(const Tuple& I);
  const FormMatrix* find(const Tuple& I) const;
  // add c * (form) at entry (a, b) of tuple I
  void add(const Tuple& I, int a, int b, const DifferentialForm& f);
  void prune();

  // degree of the matrix unit E_ab
  int unit_degree(int a, int b) const { return tgt_->degree(a) - src_->degree(b); }

  CechCochain operator+(const CechCochain& o) const;
  CechCochain operator-(const CechCochain& o) const;
  CechCochain operator-() const;
  CechCochain operator*(const Rational& c) const;
  CechCochain& operator+=(const CechCochain& o);
  bool operator==(const CechCochain& o) const { return (*this - o).is_zero(); }

  CechCochain truncated(int u_trunc) const;
  CechCochain shift_u(int k) const;
  CechCochain u_slice(int m) const;
  // keep only Čech degree p
  CechCochain cech_slice(int p) const;

  // canonical text: tuples lexicographic, then matrix entries, each form in (u, dx) order
  std::string str() const;

 private:
  BundlePtr tgt_, src_;
  int u_trunc_ = 0;
  std::map<Tuple, FormMatrix> entries_;
};

// Value at J moved to the bigger tuple I: restrict coefficients, change frame
// from J.front() to I.front() on both sides.
FormMatrix transport(const FormMatrix& y, const Tuple& J, const Tuple& I, const VectorBundle& tgt, const VectorBundle& src);

// The three sign rules (Koszul transposition, Čech past value, End past form)
// in one place. For (γ1 E1 e_I)(γ2 E2 e_J): (-1)^{p1(|γ2|+|E2|) + |E1||γ2|}
inline int acw_sign(int p1, int form2, int unit1, int unit2) {
  return ((p1 * (form2 + unit2) + unit1 * form2) & 1) ? -1 : 1;
}

// x · y for single blocks on a common tuple, x from Čech degree p1; A ← M ← B bundles
FormMatrix block_product(const FormMatrix& x, const FormMatrix& y, int p1, const VectorBundle& A, const VectorBundle& M,
                         const VectorBundle& B, int u_trunc);

CechCochain cech_differential(const CechCochain& c);
// entrywise de Rham differential on the form factor: d(f γ E e_I) = d(f γ) E e_I
CechCochain de_rham(const CechCochain& c);
CechCochain acw_product(const CechCochain& a, const CechCochain& b);
// (-1)^{p + |γ| + |E|} on each basis term
CechCochain parity_twist(const CechCochain& c);
CechCochain exp_neg(const CechCochain& c);
CechCochain supertrace(const CechCochain& c);
// left multiplication by a scalar Čech-0 form on every patch: ω ∧ (value)
CechCochain wedge_left(const std::vector<DifferentialForm>& omega_per_patch, const CechCochain& c);

// total degree of a basis term: Čech p, form q, u-power m, unit degree e
inline int total_degree(int p, int q, int m, int e) { return p - q + 2 * m + e; }

}  // namespace mfc
