#include "mfchern/connection.hpp"

#include <stdexcept>

namespace mfc {

namespace {

FormMatrix frac_times_dfrac(const FracMatrix& g, const FracMatrix& h, const RingPtr& r) {
  // g · d(h)
  FormMatrix out(g.rows, h.cols, DifferentialForm(r));
  for (int i = 0; i < g.rows; ++i)
    for (int k = 0; k < g.cols; ++k) {
      if (g(i, k).is_zero()) continue;
      for (int j = 0; j < h.cols; ++j) {
        if (h(k, j).is_zero()) continue;
        out(i, j) += de_rham_d(DifferentialForm::scalar(h(k, j))).times(g(i, k));
      }
    }
  return out;
}

FormMatrix frac_form_frac(const FracMatrix& a, const FormMatrix& m, const FracMatrix& b, const RingPtr& r) {
  FormMatrix t(a.rows, m.cols, DifferentialForm(r));
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < m.cols; ++j)
        if (!m(k, j).is_zero()) t(i, j) += m(k, j).times(a(i, k));
    }
  FormMatrix out(t.rows, b.cols, DifferentialForm(r));
  for (int i = 0; i < t.rows; ++i)
    for (int k = 0; k < t.cols; ++k) {
      if (t(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols; ++j)
        if (!b(k, j).is_zero()) out(i, j) += t(i, k).times(b(k, j));
    }
  return out;
}

void add_into(FormMatrix& acc, const FormMatrix& x, int sign = 1) {
  for (size_t e = 0; e < x.a.size(); ++e) acc.a[e] += sign > 0 ? x.a[e] : -x.a[e];
}

}  // namespace

CechCochain Connection::cochain(int u_trunc) const {
  CechCochain c(bundle, bundle, u_trunc);
  for (const Tuple& t : bundle->X().tuples(0)) {
    const FormMatrix& m = C.at(t[0]);
    for (int a = 0; a < m.rows; ++a)
      for (int b = 0; b < m.cols; ++b) c.add(t, a, b, m(a, b));
  }
  return c;
}

FormMatrix Connection::in_frame(int i, const Tuple& I) const {
  FormMatrix out = transport(C.at(i), {i}, I, *bundle, *bundle);
  int i0 = I.front();
  if (i == i0) return out;
  add_into(out, frac_times_dfrac(bundle->transition(i0, i, I), bundle->transition(i, i0, I), bundle->X().ring(I)));
  return out;
}

Connection default_connection(BundlePtr E) {
  Connection c;
  for (int i = 0; i < E->X().num_patches(); ++i)
    c.C.emplace_back(E->rank(), E->rank(), DifferentialForm(E->X().ring({i})));
  c.bundle = std::move(E);
  return c;
}

Connection average_connection(const Connection& c, const EquivariantMF& P) {
  const GroupAction& G = *P.G;
  const CoveredScheme& X = c.bundle->X();
  Connection out = c;
  Rational inv_order(1, G.order());
  for (int i = 0; i < X.num_patches(); ++i) {
    const RingPtr& r = X.ring({i});
    FormMatrix acc(c.bundle->rank(), c.bundle->rank(), DifferentialForm(r));
    for (int g = 0; g < G.order(); ++g) {
      RingMap act = G.action_map(X, g, {i});
      const FracMatrix& phi = P.phi[g][i];
      FracMatrix phi_inv = frac_apply(act, P.phi[G.inverse(g)][i]);
      FormMatrix gc(c.C[i].rows, c.C[i].cols, DifferentialForm(r));
      for (size_t e = 0; e < gc.a.size(); ++e) gc.a[e] = pullback(act, c.C[i].a[e]);
      add_into(acc, frac_form_frac(phi, gc, phi_inv, r));
      add_into(acc, frac_times_dfrac(phi, phi_inv, r));
    }
    for (auto& f : acc.a) f = f * inv_order;
    out.C[i] = acc;
  }
  return out;
}

bool is_equivariant(const Connection& c, const EquivariantMF& P) {
  Connection avg = average_connection(c, P);
  for (size_t i = 0; i < c.C.size(); ++i)
    for (size_t e = 0; e < c.C[i].a.size(); ++e)
      if (!(avg.C[i].a[e] == c.C[i].a[e])) return false;
  return true;
}

CechCochain nabla_bracket(const Connection& tgt, const Connection& src, const CechCochain& kappa, BracketConvention conv) {
  int k = kappa.u_trunc();
  CechCochain out = de_rham(kappa) + acw_product(tgt.cochain(k), kappa);
  CechCochain tw = parity_twist(kappa);
  CechCochain right(kappa.tgt(), kappa.src(), k);
  for (const auto& [I, y] : tw.entries()) {
    int p = static_cast<int>(I.size()) - 1;
    FormMatrix ch = src.in_frame(conv == BracketConvention::Transported ? I.back() : I.front(), I);
    FormMatrix prod = block_product(y, ch, p, *kappa.tgt(), *kappa.src(), *kappa.src(), k);
    add_into(right.at(I), prod);
  }
  right.prune();
  return out - right;
}

CechCochain atiyah_cocycle(const Connection& c, int u_trunc) {
  CechCochain out(c.bundle, c.bundle, u_trunc);
  for (const Tuple& t : c.bundle->X().tuples(1)) {
    FormMatrix a = c.in_frame(t[0], t);
    add_into(a, c.in_frame(t[1], t), -1);
    for (int r = 0; r < a.rows; ++r)
      for (int s = 0; s < a.cols; ++s) out.add(t, r, s, a(r, s));
  }
  return out;
}

CechCochain connection_curvature(const Connection& c, int u_trunc) {
  CechCochain C = c.cochain(u_trunc);
  return de_rham(C) + acw_product(C, C);
}

CechCochain total_curvature(const MatrixFactorization& P, const Connection& c, bool with_u, int u_trunc,
                            BracketConvention conv) {
  CechCochain R = nabla_bracket(c, c, P.delta_cochain(u_trunc), conv) + atiyah_cocycle(c, u_trunc);
  if (with_u) R += connection_curvature(c, u_trunc).shift_u(1);
  return R;
}

CechCochain big_nabla_bracket(const MatrixFactorization& Q, const Connection& cq, const MatrixFactorization& P,
                              const Connection& cp, const CechCochain& x, BracketConvention conv) {
  return nabla_bracket(cq, cp, x, conv).shift_u(1) + hom_differential(Q, P, x);
}

}  // namespace mfc
