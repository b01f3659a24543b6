#include "mfchern/chern.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <tuple>

#include "mfchern/examples.hpp"

namespace mfc {

CechCochain chern_hn(const MatrixFactorization& P, const Connection& c, int u_trunc, BracketConvention conv) {
  auto bad = check_mf(P);
  if (!bad.empty()) throw std::invalid_argument("not a matrix factorization: " + bad.front());
  return supertrace(exp_neg(total_curvature(P, c, true, u_trunc, conv)));
}

CechCochain chern_hh(const MatrixFactorization& P, const Connection& c, BracketConvention conv) {
  auto bad = check_mf(P);
  if (!bad.empty()) throw std::invalid_argument("not a matrix factorization: " + bad.front());
  return supertrace(exp_neg(total_curvature(P, c, false, 0, conv)));
}

int hkr_epsilon() {
  SchemePtr X = projective_line();
  BundlePtr E = line_bundle_p1(X, 1);
  MFPtr P = make_mf(E, {frac_zero(X->ring({0}), 1, 1), frac_zero(X->ring({1}), 1, 1)});
  CechCochain ch = chern_hn(*P, default_connection(E), 0);
  const FormMatrix* m = ch.find({0, 1});
  if (!m) throw std::logic_error("ε calibration: no Č¹ component");
  const RingPtr& r = X->ring({0, 1});
  DifferentialForm dz_over_z = DifferentialForm::dx(r, 0).times(LocalFrac::from_laurent(r, Laurent{{{-1}, 1}}));
  if ((*m)(0, 0) == dz_over_z) return 1;
  if ((*m)(0, 0) == -dz_over_z) return -1;
  throw std::logic_error("ε calibration: unexpected Č¹ component " + (*m)(0, 0).str());
}

void SupportSplit::validate(const CoveredScheme& X) const {
  std::set<int> seen;
  for (const auto* part : {&I1, &I2})
    for (int i : *part) {
      if (i < 0 || i >= X.num_patches()) throw std::invalid_argument("support split: patch index out of range");
      if (!seen.insert(i).second) throw std::invalid_argument("support split: I1 and I2 overlap");
    }
  if (static_cast<int>(seen.size()) != X.num_patches())
    throw std::invalid_argument("support split: I1 ∪ I2 must be every patch");
}

bool in_relative_subcomplex(const CechCochain& c, const SupportSplit& split) {
  for (const auto& [I, m] : c.entries()) {
    bool inside = std::all_of(I.begin(), I.end(), [&](int i) {
      return std::find(split.I2.begin(), split.I2.end(), i) != split.I2.end();
    });
    if (!inside) continue;
    for (const auto& f : m.a)
      if (!f.is_zero()) return false;
  }
  return true;
}

CechCochain chern_localized(const MatrixFactorization& P, const SupportSplit& split, const Connection& c, int u_trunc,
                            BracketConvention conv) {
  split.validate(P.X());
  auto bad = check_mf(P);
  if (!bad.empty()) throw std::invalid_argument("not a matrix factorization: " + bad.front());
  CechCochain one(P.bundle, P.bundle, u_trunc);
  for (int i : split.I1) {
    const RingPtr& r = P.X().ring({i});
    for (int a = 0; a < P.rank(); ++a) one.add({i}, a, a, DifferentialForm::scalar(LocalFrac::constant(r, 1)));
  }
  CechCochain out = supertrace(acw_product(one, exp_neg(total_curvature(P, c, true, u_trunc, conv))));
  if (!in_relative_subcomplex(out, split))
    throw std::runtime_error("localized character leaves the relative subcomplex; is P acyclic off the support?");
  return out;
}

// ---- restriction ----------------------------------------------------------------

namespace {

Tuple ambient_tuple(const FixedLocus& F, const Tuple& nt) {
  Tuple t;
  for (int i : nt) t.push_back(F.patches.at(i));
  return t;
}

}  // namespace

FracMatrix restrict_frac(const FixedLocus& F, const Tuple& t, const FracMatrix& m) {
  return frac_apply(F.restrict_map.at(t), m);
}

BundlePtr restrict_bundle(const VectorBundle& E, const FixedLocus& F, SchemePtr XF) {
  std::map<std::pair<int, int>, FracMatrix> fwd, inv;
  for (const Tuple& nt : XF->tuples(1)) {
    Tuple t = ambient_tuple(F, nt);
    fwd[{nt[0], nt[1]}] = restrict_frac(F, t, E.transition(t[0], t[1], t));
    inv[{nt[0], nt[1]}] = restrict_frac(F, t, E.transition(t[1], t[0], t));
  }
  return std::make_shared<const VectorBundle>(std::move(XF), E.degrees(), fwd, inv);
}

MFPtr restrict_mf(const MatrixFactorization& P, const FixedLocus& F, SchemePtr XF) {
  BundlePtr E = restrict_bundle(*P.bundle, F, XF);
  std::vector<FracMatrix> delta;
  std::vector<LocalFrac> nu;
  for (int i : F.patches) {
    delta.push_back(restrict_frac(F, {i}, P.delta.at(i)));
    nu.push_back(F.restrict_map.at({i}).apply(P.nu.at(i)));
  }
  return make_mf(std::move(E), std::move(delta), std::move(nu));
}

Connection restrict_connection(const Connection& c, const FixedLocus& F, BundlePtr E) {
  Connection out;
  for (int i : F.patches) {
    const FormMatrix& m = c.C.at(i);
    FormMatrix r(m.rows, m.cols, DifferentialForm(F.restrict_map.at({i}).target()));
    for (size_t e = 0; e < m.a.size(); ++e) r.a[e] = pullback(F.restrict_map.at({i}), m.a[e]);
    out.C.push_back(std::move(r));
  }
  out.bundle = std::move(E);
  return out;
}

CechCochain restrict_cochain(const CechCochain& a, const FixedLocus& F, BundlePtr tgt, BundlePtr src) {
  CechCochain out(std::move(tgt), std::move(src), a.u_trunc());
  for (const auto& [t, m] : a.entries()) {
    auto it = F.tuple_map.find(t);
    if (it == F.tuple_map.end()) continue;
    const RingMap& rm = F.restrict_map.at(t);
    for (int r = 0; r < m.rows; ++r)
      for (int s = 0; s < m.cols; ++s)
        if (!m(r, s).is_zero()) out.add(it->second, r, s, pullback(rm, m(r, s)));
  }
  out.prune();
  return out;
}

Connection twist_connection(const Connection& c, const GroupAction& G, int g, BundlePtr gE) {
  Connection out;
  const CoveredScheme& X = c.bundle->X();
  for (int i = 0; i < X.num_patches(); ++i) {
    RingMap act = G.action_map(X, g, {i});
    FormMatrix m(c.C[i].rows, c.C[i].cols, DifferentialForm(X.ring({i})));
    for (size_t e = 0; e < m.a.size(); ++e) m.a[e] = pullback(act, c.C[i].a[e]);
    out.C.push_back(std::move(m));
  }
  out.bundle = std::move(gE);
  return out;
}

CechCochain phi_cochain(const EquivariantMF& P, int g, BundlePtr gE, int u_trunc) {
  CechCochain out(P.P->bundle, std::move(gE), u_trunc);
  for (int i = 0; i < P.P->X().num_patches(); ++i) {
    const FracMatrix& m = P.phi.at(g).at(i);
    for (int r = 0; r < m.rows; ++r)
      for (int s = 0; s < m.cols; ++s)
        if (!m(r, s).is_zero()) out.add({i}, r, s, DifferentialForm::scalar(m(r, s)));
  }
  return out;
}

// ---- equivariant characters ----------------------------------------------------

namespace {

void require_equivariant(const EquivariantMF& P, const Connection& c) {
  auto bad = P.check();
  if (!bad.empty()) throw std::invalid_argument("equivariant structure: " + bad.front());
  if (!is_equivariant(c, P)) throw std::invalid_argument("connection is not G-equivariant");
}

// (1/|G|) str(κ_g|X^g · exp(-R_g)) per g, κ_g : gP → P of degree 0 given on X
EquivariantFamily twisted_supertraces(const EquivariantMF& P, const Connection& c, BracketConvention conv,
                                      const std::vector<CechCochain>& kappa) {
  const GroupAction& G = *P.G;
  EquivariantFamily f = make_family(P.G, P.P->bundle->scheme());
  Rational inv_order(1, G.order());
  for (int g = 0; g < G.order(); ++g) {
    const FixedLocus& F = *f.loci[g];
    SchemePtr XF = f.locus_scheme(g);
    if (XF->num_patches() == 0) continue;
    MFPtr Pg = restrict_mf(*P.P, F, XF);
    Connection cg = restrict_connection(c, F, Pg->bundle);
    // gP and P agree on X^g, so both ends use the restricted P
    CechCochain k = restrict_cochain(kappa[g], F, Pg->bundle, Pg->bundle);
    CechCochain R = total_curvature(*Pg, cg, false, 0, conv);
    f.comp[g] = supertrace(acw_product(k, exp_neg(R))) * inv_order;
  }
  return f;
}

// one summand of a slot: coef · (a ⊗ h), a = φ_h or the identity
struct Piece {
  Rational coef;
  int h;
  CechCochain a;
};

// the two slot kinds of η_π: π and 2π - 1
struct SlotKinds {
  using Mor = int;
};

}  // namespace

EquivariantFamily chern_equivariant_hh(const EquivariantMF& P, const Connection& c, BracketConvention conv) {
  require_equivariant(P, c);
  std::vector<CechCochain> phis;
  for (int g = 0; g < P.G->order(); ++g) phis.push_back(phi_cochain(P, g, twist(*P.P, *P.G, g)->bundle, 0));
  return twisted_supertraces(P, c, conv, phis);
}

EquivariantFamily chern_equivariant_hn(const EquivariantMF& P, const Connection& c, int u_trunc, BracketConvention conv) {
  require_equivariant(P, c);
  const GroupAction& G = *P.G;
  const int n = G.order();
  Rational inv_order(1, n);

  std::vector<MFPtr> Pt;
  std::vector<Connection> ct;
  for (int h = 0; h < n; ++h) {
    Pt.push_back(h == 0 ? P.P : twist(*P.P, G, h));
    ct.push_back(h == 0 ? c : twist_connection(c, G, h, Pt[h]->bundle));
  }
  std::vector<std::vector<Piece>> kinds(2);
  for (int h = 0; h < n; ++h) {
    CechCochain phi = phi_cochain(P, h, Pt[h]->bundle, u_trunc);
    kinds[0].push_back({inv_order, h, phi});
    kinds[1].push_back({inv_order * 2, h, phi});
  }
  kinds[1].push_back({Rational(-1), 0, CechCochain::identity(P.P->bundle, u_trunc)});

  Chain<int> eta = eta_pi(SlotKinds{}, 0, 1, u_trunc);

  EquivariantFamily f = make_family(P.G, P.P->bundle->scheme());
  for (int g = 0; g < n; ++g) {
    const FixedLocus& F = *f.loci[g];
    SchemePtr XF = f.locus_scheme(g);
    if (XF->num_patches() == 0) continue;
    // objects hP|X^g; gP|X^g is identified with P|X^g
    auto obj = [&](int h) { return h == g ? 0 : h; };
    std::vector<CechObject> objects;
    for (int h = 0; h < n; ++h) {
      int k = obj(h);
      MFPtr Q = restrict_mf(*Pt[k], F, XF);
      objects.push_back({Q, restrict_connection(ct[k], F, Q->bundle)});
    }
    CechCategory cat(objects, u_trunc, conv);

    // p(a) restricted, keyed by (prefix, kind, piece)
    std::map<std::tuple<int, int, int>, std::vector<CechCategory::Mor>> cache;
    auto slot = [&](int p, int kind, int piece) -> const std::vector<CechCategory::Mor>& {
      auto key = std::make_tuple(p, kind, piece);
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
      const Piece& pc = kinds[kind][piece];
      int q = G.mul(p, pc.h);
      CechCochain moved = act_on_cochain(G, p, pc.a, Pt[p]->bundle, Pt[q]->bundle);
      CechCochain r = restrict_cochain(moved, F, cat.object(obj(p)).P->bundle, cat.object(obj(q)).P->bundle);
      return cache[key] = cat.homogeneous(obj(q), obj(p), r);
    };

    CechChain psi{u_trunc, {}};
    for (const auto& t : eta.terms) {
      const int len = static_cast<int>(t.s.size());
      // depth-first over piece choices, tracking the prefix product
      std::vector<CechCategory::Mor> cur;
      std::function<void(int, int, Rational)> rec = [&](int k, int p, Rational coef) {
        if (k == len) {
          if (p == g) psi.add(coef, t.u, cur);
          return;
        }
        const auto& ps = kinds[t.s[k]];
        for (int i = 0; i < static_cast<int>(ps.size()); ++i) {
          for (const auto& m : slot(p, t.s[k], i)) {
            cur.push_back(m);
            rec(k + 1, G.mul(p, ps[i].h), coef * ps[i].coef);
            cur.pop_back();
          }
        }
      };
      rec(0, 0, t.coef);
    }
    f.comp[g] = tr_nabla(cat, psi);
  }
  return f;
}

EquivariantFamily boundary_bulk(const CechCochain& kappa, const EquivariantMF& P, const Connection& c,
                                BracketConvention conv) {
  require_equivariant(P, c);
  if (!hom_differential(*P.P, *P.P, kappa).is_zero()) throw std::invalid_argument("κ is not closed");
  std::vector<CechCochain> k;
  for (int g = 0; g < P.G->order(); ++g) {
    CechCochain phi = phi_cochain(P, g, twist(*P.P, *P.G, g)->bundle, kappa.u_trunc());
    k.push_back(acw_product(kappa, phi).truncated(0));
  }
  return twisted_supertraces(P, c, conv, k);
}

}  // namespace mfc
