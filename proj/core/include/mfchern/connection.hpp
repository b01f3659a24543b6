#pragma once

#include <vector>

#include "mfchern/mf.hpp"

namespace mfc {

// How [∇, κ] treats the right factor at a tuple I = (i0 < … < ip).
//  Transported: κ_I is followed by ∇_{ip} moved into the i0 frame (the operator
//               commutator on Č(P); the default).
//  FrontPatch:  ∇_{i0} on both sides of κ_I.
enum class BracketConvention { Transported, FrontPatch };

// ∇_i = d + C_i in the frame of patch i; C_i has 1-form entries and unit degree 0.
struct Connection {
  BundlePtr bundle;
  std::vector<FormMatrix> C;  // per patch

  // C_i as a Čech-0 cochain
  CechCochain cochain(int u_trunc) const;
  // ∇_i written in the frame of I.front() on the ring of I: g C_i g^{-1} + g d(g^{-1})
  FormMatrix in_frame(int i, const Tuple& I) const;
};

Connection default_connection(BundlePtr E);
// C_i ↦ (1/|G|) Σ_g φ_g g(C_i) φ_g^{-1} + φ_g d(φ_g^{-1})
Connection average_connection(const Connection& c, const EquivariantMF& P);
bool is_equivariant(const Connection& c, const EquivariantMF& P);

// [∇, κ] for κ : src → tgt
CechCochain nabla_bracket(const Connection& tgt, const Connection& src, const CechCochain& kappa,
                          BracketConvention conv = BracketConvention::Transported);

// Č¹ component ∏_{i<j} (∇_i - ∇_j), each value in the frame of i
CechCochain atiyah_cocycle(const Connection& c, int u_trunc);
// ∏_i ∇_i² = dC_i + C_i C_i
CechCochain connection_curvature(const Connection& c, int u_trunc);
// R = u∇² + [∇, δ] + Atiyah cocycle
CechCochain total_curvature(const MatrixFactorization& P, const Connection& c, bool with_u, int u_trunc,
                            BracketConvention conv = BracketConvention::Transported);

// [u∇ + δ + d_Čech, x] for an endomorphism-valued cochain x of P with forms
CechCochain big_nabla_bracket(const MatrixFactorization& Q, const Connection& cq, const MatrixFactorization& P,
                              const Connection& cp, const CechCochain& x,
                              BracketConvention conv = BracketConvention::Transported);

}  // namespace mfc
