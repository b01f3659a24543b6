#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mfchern/cech.hpp"

namespace mfc {

// Curved module: δ_i on each patch with δ_i² = ν_i·id. A matrix factorization has
// ν = w; other ν give the quasi-objects whose categorical curvature ν - w is nonzero.
struct MatrixFactorization {
  BundlePtr bundle;
  std::vector<FracMatrix> delta;    // per patch, in the patch frame
  std::vector<LocalFrac> nu;        // per patch

  const CoveredScheme& X() const { return bundle->X(); }
  int rank() const { return bundle->rank(); }
  // δ as a Čech-0 endomorphism cochain
  CechCochain delta_cochain(int u_trunc) const;
  // categorical curvature (ν - w)·id as a Čech-0 cochain
  CechCochain curvature_cochain(int u_trunc) const;
  bool is_curved() const;
};
using MFPtr = std::shared_ptr<const MatrixFactorization>;

// nu defaults to the potential of each patch
MFPtr make_mf(BundlePtr bundle, std::vector<FracMatrix> delta, std::vector<LocalFrac> nu = {});

// list of violated invariants, empty when P is a matrix factorization of w
std::vector<std::string> check_mf(const MatrixFactorization& P);

// Exterior-algebra model with δ = Σ_j (a_j e_j∧ + b_j ι_j) on the trivial bundle.
// a[i][j], b[i][j] are the functions on patch i. Basis: even wedge monomials first.
MFPtr koszul_mf(std::shared_ptr<const CoveredScheme> X, const std::vector<std::vector<LocalFrac>>& a,
                const std::vector<std::vector<LocalFrac>>& b);
// same functions on every patch (pulled back from patch 0 coordinates when patches share variables)
MFPtr koszul_mf_global(std::shared_ptr<const CoveredScheme> X, const std::vector<Poly>& a, const std::vector<Poly>& b);

MFPtr direct_sum(const MatrixFactorization& P, const MatrixFactorization& Q);
// raises every degree by one and negates δ
MFPtr shift(const MatrixFactorization& P);

// D(φ) = δ_Q φ - (-1)^{|φ|} φ δ_P + d_Čech φ
CechCochain hom_differential(const MatrixFactorization& Q, const MatrixFactorization& P, const CechCochain& phi);

// f∘g = 1_P with g: P → N and f: N → P closed of degree 0
struct RetractData {
  MFPtr P, N;
  CechCochain g, f;
  CechCochain pi() const { return acw_product(g, f); }
  std::vector<std::string> check() const;
};

// gP = (g^{-1})^* P through the action maps
MFPtr twist(const MatrixFactorization& P, const GroupAction& G, int g);
FracMatrix act_on(const GroupAction& G, const CoveredScheme& X, int g, const Tuple& t, const FracMatrix& m);

// φ_g : gP → P per group element and patch
struct EquivariantMF {
  MFPtr P;
  std::shared_ptr<const GroupAction> G;
  std::vector<std::vector<FracMatrix>> phi;  // phi[g][patch]
  std::vector<std::string> check() const;
};

// element g of the group applied to a morphism cochain: g(a) = (g^{-1})^* a
CechCochain act_on_cochain(const GroupAction& G, int g, const CechCochain& a, BundlePtr tgt, BundlePtr src);

}  // namespace mfc
