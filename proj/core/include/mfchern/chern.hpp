#pragma once

#include <memory>
#include <vector>

#include "mfchern/cohomology.hpp"
#include "mfchern/hochschild.hpp"

namespace mfc {

// str(exp(-R)) with R = [∇, δ + d_Čech] + u∇²
CechCochain chern_hn(const MatrixFactorization& P, const Connection& c, int u_trunc,
                     BracketConvention conv = BracketConvention::Transported);
// the u⁰ slice
CechCochain chern_hh(const MatrixFactorization& P, const Connection& c,
                     BracketConvention conv = BracketConvention::Transported);

// The sign ε in ch_HN(O_{ℙ¹}(n)) = 1 + ε·n·dz/z under this library's conventions,
// read off from O(1).
int hkr_epsilon();

// I = I1 ⊔ I2; the patches of I1 cover the support Z, those of I2 cover X∖Z
struct SupportSplit {
  std::vector<int> I1, I2;
  void validate(const CoveredScheme& X) const;
};

bool in_relative_subcomplex(const CechCochain& c, const SupportSplit& split);

// str(1_Z · exp(-R)), 1_Z the identity on the patches of I1 and zero elsewhere.
// Throws std::runtime_error when the result leaves the relative subcomplex.
CechCochain chern_localized(const MatrixFactorization& P, const SupportSplit& split, const Connection& c, int u_trunc,
                            BracketConvention conv = BracketConvention::Transported);

// ---- restriction to a fixed locus ----------------------------------------------
// XF must present F.scheme (e.g. EquivariantFamily::locus_scheme)
FracMatrix restrict_frac(const FixedLocus& F, const Tuple& t, const FracMatrix& m);
BundlePtr restrict_bundle(const VectorBundle& E, const FixedLocus& F, SchemePtr XF);
MFPtr restrict_mf(const MatrixFactorization& P, const FixedLocus& F, SchemePtr XF);
Connection restrict_connection(const Connection& c, const FixedLocus& F, BundlePtr E);
CechCochain restrict_cochain(const CechCochain& a, const FixedLocus& F, BundlePtr tgt, BundlePtr src);

// g·∇ on gP
Connection twist_connection(const Connection& c, const GroupAction& G, int g, BundlePtr gE);
// φ_g : gP → P as a Čech-0 cochain
CechCochain phi_cochain(const EquivariantMF& P, int g, BundlePtr gE, int u_trunc);

// (1/|G|) ⊕_g str(φ_g|X^g · exp(-[∇, δ + d_Čech]|X^g))
EquivariantFamily chern_equivariant_hh(const EquivariantMF& P, const Connection& c,
                                       BracketConvention conv = BracketConvention::Transported);
// tr_∇ Ψ(η_π) with π = Σ_g (1/|G|) φ_g ⊗ g; η_π is cut at u^u_trunc
EquivariantFamily chern_equivariant_hn(const EquivariantMF& P, const Connection& c, int u_trunc,
                                       BracketConvention conv = BracketConvention::Transported);
// (1/|G|) ⊕_g str((κ∘φ_g)|X^g · exp(-[∇, δ + d_Čech]|X^g)), κ a closed even endomorphism
EquivariantFamily boundary_bulk(const CechCochain& kappa, const EquivariantMF& P, const Connection& c,
                                BracketConvention conv = BracketConvention::Transported);

}  // namespace mfc
