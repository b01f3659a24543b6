#pragma once

#include "mfchern/chern.hpp"
#include "mfchern/examples.hpp"

namespace fx {

using namespace mfc;

inline Poly X1() { return Poly::variable(1, 0); }

inline MFPtr line_mf(SchemePtr X, int n) {
  BundlePtr E = line_bundle_p1(X, n);
  return make_mf(E, {frac_zero(X->ring({0}), 1, 1), frac_zero(X->ring({1}), 1, 1)});
}

inline LocalFrac c(const RingPtr& r, const Rational& q) { return LocalFrac::constant(r, q); }

// ℤ/2 acting by x ↦ -x on (𝔸¹, x²) with Koszul (x,x) and φ_s = diag(1, -1)
struct Z2Koszul {
  SchemePtr X;
  MFPtr P;
  std::shared_ptr<GroupAction> G;
  EquivariantMF E;

  Z2Koszul() {
    Poly x = X1();
    X = affine_space({"x"}, x * x);
    P = koszul_mf_global(X, {x}, {x});
    G = std::make_shared<GroupAction>();
    G->names = {"e", "s"};
    G->table = {{0, 1}, {1, 0}};
    G->matrices = {{{{Rational(1)}}}, {{{Rational(-1)}}}};
    G->validate(*X);
    const RingPtr& r = X->ring({0});
    FracMatrix s = frac_identity(r, 2);
    s(1, 1) = c(r, -1);
    E = EquivariantMF{P, G, {{frac_identity(r, 2)}, {s}}};
  }
};

}  // namespace fx
