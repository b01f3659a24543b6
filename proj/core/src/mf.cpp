#include "mfchern/mf.hpp"

#include <algorithm>
#include <stdexcept>

namespace mfc {

namespace {

FracMatrix scalar_matrix(const LocalFrac& c, int n) {
  FracMatrix m(n, n, LocalFrac(c.ring()));
  for (int i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

FracMatrix block_diag(const FracMatrix& a, const FracMatrix& b, const RingPtr& r) {
  FracMatrix m(a.rows + b.rows, a.cols + b.cols, LocalFrac(r));
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) m(i, j) = a(i, j);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) m(a.rows + i, a.cols + j) = b(i, j);
  return m;
}

bool odd_degree_ok(const CoveredScheme& X, int da, int db) {
  return X.grading() == Grading::Z ? da - db == 1 : parity(da - db) == 1;
}

}  // namespace

CechCochain MatrixFactorization::delta_cochain(int u_trunc) const {
  CechCochain c(bundle, bundle, u_trunc);
  for (const Tuple& t : X().tuples(0)) {
    const FracMatrix& d = delta.at(t[0]);
    for (int a = 0; a < d.rows; ++a)
      for (int b = 0; b < d.cols; ++b)
        if (!d(a, b).is_zero()) c.add(t, a, b, DifferentialForm::scalar(d(a, b)));
  }
  return c;
}

CechCochain MatrixFactorization::curvature_cochain(int u_trunc) const {
  CechCochain c(bundle, bundle, u_trunc);
  for (const Tuple& t : X().tuples(0)) {
    LocalFrac k = nu.at(t[0]) - X().potential(t);
    if (k.is_zero()) continue;
    for (int a = 0; a < rank(); ++a) c.add(t, a, a, DifferentialForm::scalar(k));
  }
  return c;
}

bool MatrixFactorization::is_curved() const {
  for (const Tuple& t : X().tuples(0))
    if (nu.at(t[0]) != X().potential(t)) return true;
  return false;
}

MFPtr make_mf(BundlePtr bundle, std::vector<FracMatrix> delta, std::vector<LocalFrac> nu) {
  const CoveredScheme& X = bundle->X();
  if (static_cast<int>(delta.size()) != X.num_patches()) throw std::invalid_argument("mf: need one δ per patch");
  for (int i = 0; i < X.num_patches(); ++i)
    if (delta[i].rows != bundle->rank() || delta[i].cols != bundle->rank())
      throw std::invalid_argument("mf: δ on patch " + X.patch_name(i) + " has wrong shape");
  if (nu.empty())
    for (int i = 0; i < X.num_patches(); ++i) nu.push_back(X.potential({i}));
  auto P = std::make_shared<MatrixFactorization>();
  P->bundle = std::move(bundle);
  P->delta = std::move(delta);
  P->nu = std::move(nu);
  return P;
}

std::vector<std::string> check_mf(const MatrixFactorization& P) {
  std::vector<std::string> bad = P.bundle->check();
  const CoveredScheme& X = P.X();
  int n = P.rank();
  for (int i = 0; i < X.num_patches(); ++i) {
    const FracMatrix& d = P.delta[i];
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (!d(a, b).is_zero() && !odd_degree_ok(X, P.bundle->degree(a), P.bundle->degree(b)))
          bad.push_back("δ on patch " + X.patch_name(i) + " is not of degree 1 at entry (" + std::to_string(a) + "," +
                        std::to_string(b) + ")");
    if (!frac_equal(frac_mul(d, d), scalar_matrix(X.potential({i}), n)))
      bad.push_back("w-mismatch: δ² ≠ w·id on patch " + X.patch_name(i));
  }
  for (const Tuple& t : X.tuples(1)) {
    const RingMap& ri = X.restriction({t[0]}, t);
    const RingMap& rj = X.restriction({t[1]}, t);
    const FracMatrix& g = P.bundle->transition(t[0], t[1], t);
    if (!frac_equal(frac_mul(g, frac_apply(rj, P.delta[t[1]])), frac_mul(frac_apply(ri, P.delta[t[0]]), g)))
      bad.push_back("δ not compatible with the transition on " + tuple_str(t));
  }
  return bad;
}

MFPtr koszul_mf(std::shared_ptr<const CoveredScheme> X, const std::vector<std::vector<LocalFrac>>& a,
                const std::vector<std::vector<LocalFrac>>& b) {
  int np = X->num_patches();
  if (static_cast<int>(a.size()) != np || static_cast<int>(b.size()) != np)
    throw std::invalid_argument("koszul_mf: need data on every patch");
  int m = static_cast<int>(a[0].size());
  std::vector<int> masks;
  for (int s = 0; s < (1 << m); ++s) masks.push_back(s);
  std::stable_sort(masks.begin(), masks.end(), [](int x, int y) { return (popcount(x) & 1) < (popcount(y) & 1); });
  std::vector<int> pos(1 << m), degrees;
  for (size_t k = 0; k < masks.size(); ++k) {
    pos[masks[k]] = static_cast<int>(k);
    degrees.push_back(X->grading() == Grading::Z ? popcount(masks[k]) : popcount(masks[k]) & 1);
  }
  std::vector<FracMatrix> delta;
  for (int i = 0; i < np; ++i) {
    const RingPtr& r = X->ring({i});
    LocalFrac sum(r);
    FracMatrix d = frac_zero(r, 1 << m, 1 << m);
    if (static_cast<int>(a[i].size()) != m || static_cast<int>(b[i].size()) != m)
      throw std::invalid_argument("koszul_mf: a and b lengths differ");
    for (int j = 0; j < m; ++j) {
      sum += a[i][j] * b[i][j];
      for (int s = 0; s < (1 << m); ++s) {
        int sign = (popcount(s & ((1 << j) - 1)) & 1) ? -1 : 1;
        if (s & (1 << j)) {
          LocalFrac v = sign > 0 ? b[i][j] : -b[i][j];
          d(pos[s ^ (1 << j)], pos[s]) += v;
        } else {
          LocalFrac v = sign > 0 ? a[i][j] : -a[i][j];
          d(pos[s | (1 << j)], pos[s]) += v;
        }
      }
    }
    if (sum != X->potential({i}))
      throw std::invalid_argument("koszul_mf: Σ a_j b_j ≠ w on patch " + X->patch_name(i));
    delta.push_back(std::move(d));
  }
  return make_mf(VectorBundle::trivial(X, degrees), std::move(delta));
}

MFPtr koszul_mf_global(std::shared_ptr<const CoveredScheme> X, const std::vector<Poly>& a, const std::vector<Poly>& b) {
  std::vector<std::vector<LocalFrac>> A, B;
  for (int i = 0; i < X->num_patches(); ++i) {
    const RingPtr& r = X->ring({i});
    std::vector<LocalFrac> ai, bi;
    for (const Poly& p : a) ai.emplace_back(r, p);
    for (const Poly& p : b) bi.emplace_back(r, p);
    A.push_back(ai);
    B.push_back(bi);
  }
  return koszul_mf(std::move(X), A, B);
}

MFPtr direct_sum(const MatrixFactorization& P, const MatrixFactorization& Q) {
  if (P.bundle->scheme() != Q.bundle->scheme()) throw std::invalid_argument("direct_sum: different schemes");
  const auto& X = P.bundle->scheme();
  std::vector<int> deg = P.bundle->degrees();
  for (int d : Q.bundle->degrees()) deg.push_back(d);
  std::map<std::pair<int, int>, FracMatrix> f, inv;
  for (const Tuple& t : X->tuples(1)) {
    const RingPtr& r = X->ring(t);
    f[{t[0], t[1]}] = block_diag(P.bundle->transition(t[0], t[1], t), Q.bundle->transition(t[0], t[1], t), r);
    inv[{t[0], t[1]}] = block_diag(P.bundle->transition(t[1], t[0], t), Q.bundle->transition(t[1], t[0], t), r);
  }
  std::vector<FracMatrix> delta;
  for (int i = 0; i < X->num_patches(); ++i) {
    if (P.nu[i] != Q.nu[i]) throw std::invalid_argument("direct_sum: curvature mismatch");
    delta.push_back(block_diag(P.delta[i], Q.delta[i], X->ring({i})));
  }
  auto B = std::make_shared<VectorBundle>(X, deg, f, inv);
  return make_mf(B, delta, P.nu);
}

MFPtr shift(const MatrixFactorization& P) {
  std::vector<int> deg = P.bundle->degrees();
  for (int& d : deg) d = P.X().grading() == Grading::Z ? d + 1 : (d + 1) & 1;
  auto B = std::make_shared<VectorBundle>(P.bundle->scheme(), deg, P.bundle->forward(), P.bundle->inverse());
  std::vector<FracMatrix> delta = P.delta;
  for (auto& d : delta)
    for (auto& e : d.a) e = -e;
  return make_mf(B, delta, P.nu);
}

CechCochain hom_differential(const MatrixFactorization& Q, const MatrixFactorization& P, const CechCochain& phi) {
  int k = phi.u_trunc();
  return acw_product(Q.delta_cochain(k), phi) - acw_product(parity_twist(phi), P.delta_cochain(k)) + cech_differential(phi);
}

std::vector<std::string> RetractData::check() const {
  std::vector<std::string> bad;
  int k = g.u_trunc();
  if (!(acw_product(f, g) == CechCochain::identity(P->bundle, k))) bad.push_back("f∘g ≠ 1_P");
  CechCochain p = pi();
  if (!(acw_product(p, p) == p)) bad.push_back("π² ≠ π");
  if (!hom_differential(*N, *P, g).is_zero()) bad.push_back("g is not closed");
  if (!hom_differential(*P, *N, f).is_zero()) bad.push_back("f is not closed");
  return bad;
}

FracMatrix act_on(const GroupAction& G, const CoveredScheme& X, int g, const Tuple& t, const FracMatrix& m) {
  return frac_apply(G.action_map(X, g, t), m);
}

MFPtr twist(const MatrixFactorization& P, const GroupAction& G, int g) {
  const auto& X = P.bundle->scheme();
  std::map<std::pair<int, int>, FracMatrix> f, inv;
  for (const Tuple& t : X->tuples(1)) {
    f[{t[0], t[1]}] = act_on(G, *X, g, t, P.bundle->transition(t[0], t[1], t));
    inv[{t[0], t[1]}] = act_on(G, *X, g, t, P.bundle->transition(t[1], t[0], t));
  }
  std::vector<FracMatrix> delta;
  std::vector<LocalFrac> nu;
  for (int i = 0; i < X->num_patches(); ++i) {
    delta.push_back(act_on(G, *X, g, {i}, P.delta[i]));
    nu.push_back(G.action_map(*X, g, {i}).apply(P.nu[i]));
  }
  auto B = std::make_shared<VectorBundle>(X, P.bundle->degrees(), f, inv);
  return make_mf(B, delta, nu);
}

std::vector<std::string> EquivariantMF::check() const {
  std::vector<std::string> bad;
  const CoveredScheme& X = P->X();
  int n = G->order();
  if (static_cast<int>(phi.size()) != n) return {"φ must be given for every group element"};
  int r = P->rank();
  for (int g = 0; g < n; ++g) {
    MFPtr gP = twist(*P, *G, g);
    for (int i = 0; i < X.num_patches(); ++i) {
      const FracMatrix& ph = phi[g].at(i);
      if (ph.rows != r || ph.cols != r) {
        bad.push_back("φ has wrong shape");
        continue;
      }
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
          if (!ph(a, b).is_zero() && P->bundle->degree(a) != gP->bundle->degree(b))
            bad.push_back("φ_" + G->names[g] + " is not of degree 0");
      if (!frac_equal(frac_mul(P->delta[i], ph), frac_mul(ph, gP->delta[i])))
        bad.push_back("φ_" + G->names[g] + " does not commute with δ on patch " + X.patch_name(i));
      for (int h = 0; h < n; ++h) {
        FracMatrix rhs = frac_mul(ph, act_on(*G, X, g, {i}, phi[h][i]));
        if (!frac_equal(phi[G->mul(g, h)][i], rhs))
          bad.push_back("φ_gh ≠ φ_g·g(φ_h) for g=" + G->names[g] + ", h=" + G->names[h]);
      }
    }
    for (const Tuple& t : X.tuples(1)) {
      FracMatrix lhs = frac_mul(P->bundle->transition(t[0], t[1], t), frac_apply(X.restriction({t[1]}, t), phi[g][t[1]]));
      FracMatrix rhs = frac_mul(frac_apply(X.restriction({t[0]}, t), phi[g][t[0]]), gP->bundle->transition(t[0], t[1], t));
      if (!frac_equal(lhs, rhs)) bad.push_back("φ_" + G->names[g] + " not compatible with transitions on " + tuple_str(t));
    }
  }
  return bad;
}

CechCochain act_on_cochain(const GroupAction& G, int g, const CechCochain& a, BundlePtr tgt, BundlePtr src) {
  CechCochain out(std::move(tgt), std::move(src), a.u_trunc());
  for (const auto& [t, m] : a.entries()) {
    RingMap act = G.action_map(a.X(), g, t);
    for (int r = 0; r < m.rows; ++r)
      for (int c = 0; c < m.cols; ++c)
        if (!m(r, c).is_zero()) out.add(t, r, c, pullback(act, m(r, c)));
  }
  return out;
}

}  // namespace mfc
