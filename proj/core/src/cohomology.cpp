#include "mfchern/cohomology.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace mfc {

CechCochain total_differential(const CechCochain& c) {
  const CoveredScheme& X = c.X();
  std::vector<DifferentialForm> dw;
  for (int i = 0; i < X.num_patches(); ++i) dw.push_back(-de_rham_d(DifferentialForm::scalar(X.potential({i}))));
  return de_rham(c).shift_u(1) + cech_differential(c) + wedge_left(dw, c);
}

bool is_cocycle(const CechCochain& c) { return total_differential(c).is_zero(); }

int homogeneous_degree(const CechCochain& c) {
  bool z2 = c.X().grading() == Grading::Z2;
  bool seen = false;
  int deg = 0;
  for (const auto& [I, m] : c.entries())
    for (int a = 0; a < m.rows; ++a)
      for (int b = 0; b < m.cols; ++b)
        for (const auto& [k, coef] : m(a, b).terms()) {
          int d = total_degree(static_cast<int>(I.size()) - 1, popcount(k.mask), k.u, c.unit_degree(a, b));
          if (z2) d &= 1;
          if (seen && d != deg) throw std::invalid_argument("cochain is not homogeneous in total degree");
          seen = true;
          deg = d;
        }
  if (!seen) throw std::invalid_argument("zero cochain has no degree");
  return deg;
}

namespace {

struct Coord {
  Tuple I;
  int u;
  std::uint32_t mask;
  Exponent e;
  bool operator<(const Coord& o) const {
    return std::tie(I, u, mask, e) < std::tie(o.I, o.u, o.mask, o.e);
  }
};

void collect(const CechCochain& c, std::map<Coord, Rational>& out) {
  for (const auto& [I, m] : c.entries())
    for (const auto& [k, coef] : m(0, 0).terms())
      for (const auto& [e, q] : coef.laurent()) out[{I, k.u, k.mask, e}] += q;
}

}  // namespace

ClassComparison cohomologous(const CechCochain& c1, const CechCochain& c2, int degree_bound) {
  CechCochain diff = c1 - c2;
  ClassComparison res;
  res.primitive = CechCochain(c1.tgt(), c1.src(), c1.u_trunc());
  if (!c1.is_zero() && !c2.is_zero() && homogeneous_degree(c1) != homogeneous_degree(c2))
    throw std::invalid_argument("cohomologous: total degrees differ");
  if (diff.is_zero()) {
    res.status = SolveStatus::Solved;
    return res;
  }
  const CoveredScheme& X = c1.X();
  bool z2 = X.grading() == Grading::Z2;
  int target = homogeneous_degree(diff) - 1;
  int ut = diff.u_trunc();

  // unknown basis: (I, u, form monomial, Laurent monomial) of the right total degree
  std::vector<Coord> unknowns;
  for (int p = 0; p <= X.max_cech_degree(); ++p)
    for (const Tuple& I : X.tuples(p)) {
      const RingPtr& r = X.ring(I);
      auto mons = monomials_up_to(r->nvars(), degree_bound, inverted_variables(*r));
      for (int m = 0; m <= ut; ++m)
        for (std::uint32_t mask = 0; mask < (1u << r->nvars()); ++mask) {
          if (popcount(mask) > X.dimension()) continue;
          int d = total_degree(p, popcount(mask), m, 0);
          if (z2 ? ((d - target) & 1) != 0 : d != target) continue;
          for (const Exponent& e : mons) unknowns.push_back({I, m, mask, e});
        }
    }

  std::map<Coord, int> row_of;
  std::vector<SparseRow> rows;
  auto row = [&](const Coord& k) -> SparseRow& {
    auto it = row_of.find(k);
    if (it != row_of.end()) return rows[it->second];
    row_of.emplace(k, static_cast<int>(rows.size()));
    rows.push_back({});
    return rows.back();
  };
  for (size_t j = 0; j < unknowns.size(); ++j) {
    const Coord& u = unknowns[j];
    CechCochain basis(c1.tgt(), c1.src(), ut);
    DifferentialForm f(X.ring(u.I));
    f.add({u.u, u.mask}, LocalFrac::from_laurent(X.ring(u.I), Laurent{{u.e, 1}}));
    basis.add(u.I, 0, 0, f);
    std::map<Coord, Rational> img;
    collect(total_differential(basis), img);
    for (const auto& [k, q] : img)
      if (q != 0) row(k).coef[static_cast<int>(j)] += q;
  }
  std::map<Coord, Rational> rhs;
  collect(diff, rhs);
  for (const auto& [k, q] : rhs)
    if (q != 0) row(k).rhs = q;

  RationalSolution sol = solve_rational_system(static_cast<int>(unknowns.size()), rows);
  res.status = sol.status;
  if (sol.status != SolveStatus::Solved) return res;
  for (size_t j = 0; j < unknowns.size(); ++j) {
    if (sol.values[j] == 0) continue;
    const Coord& u = unknowns[j];
    DifferentialForm f(X.ring(u.I));
    f.add({u.u, u.mask}, LocalFrac::from_laurent(X.ring(u.I), Laurent{{u.e, sol.values[j]}}));
    res.primitive.add(u.I, 0, 0, f);
  }
  // back-substitution guards the solver
  if (!(total_differential(res.primitive) == diff)) throw std::logic_error("cohomologous: primitive does not verify");
  return res;
}

bool EquivariantFamily::operator==(const EquivariantFamily& o) const {
  if (comp.size() != o.comp.size()) return false;
  for (size_t g = 0; g < comp.size(); ++g)
    if (!(comp[g] == o.comp[g])) return false;
  return true;
}

std::string EquivariantFamily::str() const {
  std::ostringstream os;
  for (size_t g = 0; g < comp.size(); ++g) {
    os << "component " << G->names.at(g) << ":\n";
    std::string s = comp[g].str();
    os << (s.empty() ? "  0\n" : s);
  }
  return os.str();
}

namespace {

// Families over the same (X, G) share their fixed loci so that components compare
// directly.
struct LociCache {
  std::weak_ptr<const CoveredScheme> X;
  std::weak_ptr<const GroupAction> G;
  std::vector<std::shared_ptr<const FixedLocus>> loci;
};

std::vector<std::shared_ptr<const FixedLocus>> shared_loci(const std::shared_ptr<const GroupAction>& G,
                                                           const std::shared_ptr<const CoveredScheme>& X) {
  static std::mutex mu;
  static std::vector<LociCache> cache;
  std::lock_guard<std::mutex> lock(mu);
  std::erase_if(cache, [](const LociCache& c) { return c.X.expired() || c.G.expired(); });
  for (const auto& c : cache)
    if (c.X.lock() == X && c.G.lock() == G) return c.loci;
  LociCache c{X, G, {}};
  for (int g = 0; g < G->order(); ++g) c.loci.push_back(std::make_shared<const FixedLocus>(fixed_locus(*X, *G, g)));
  cache.push_back(c);
  return c.loci;
}

}  // namespace

EquivariantFamily make_family(std::shared_ptr<const GroupAction> G, std::shared_ptr<const CoveredScheme> X) {
  EquivariantFamily f;
  f.loci = shared_loci(G, X);
  f.G = std::move(G);
  f.X = std::move(X);
  for (int g = 0; g < f.G->order(); ++g) f.comp.push_back(CechCochain::scalar(f.locus_scheme(g), 0));
  return f;
}

namespace {

// index a with restrict_map image x_a = t_k exactly
int free_variable(const RingMap& restrict, int k) {
  const RingPtr& r = restrict.target();
  LocalFrac tk = LocalFrac::variable(r, k);
  for (size_t a = 0; a < restrict.images().size(); ++a)
    if (restrict.images()[a] == tk) return static_cast<int>(a);
  throw std::logic_error("fixed locus coordinate without a free ambient variable");
}

}  // namespace

CechCochain conjugate_component(const EquivariantFamily& f, int h, int g) {
  const GroupAction& G = *f.G;
  int gp = G.mul(G.mul(G.inverse(h), g), h);
  const FixedLocus& Fg = *f.loci.at(g);
  const FixedLocus& Fp = *f.loci.at(gp);
  const CechCochain& src = f.comp.at(gp);
  CechCochain out = CechCochain::scalar(f.locus_scheme(g), src.u_trunc());
  for (const auto& [xt, tg] : Fg.tuple_map) {
    auto it = Fp.tuple_map.find(xt);
    if (it == Fp.tuple_map.end()) continue;
    const FormMatrix* v = src.find(it->second);
    if (!v) continue;
    // t'_k ↦ (M_h x)_{free'_k} with x written in X^g coordinates
    const auto& M = G.matrices.at(h).at(xt.front());
    const RingMap& rp = Fp.restrict_map.at(xt);
    const RingMap& rg = Fg.restrict_map.at(xt);
    std::vector<LocalFrac> im;
    for (int k = 0; k < rp.target()->nvars(); ++k) {
      int a = free_variable(rp, k);
      LocalFrac acc(rg.target());
      for (size_t b = 0; b < M[a].size(); ++b)
        if (M[a][b] != 0) acc += rg.images()[b] * M[a][b];
      im.push_back(acc);
    }
    RingMap move(rp.target(), rg.target(), std::move(im));
    out.add(tg, 0, 0, pullback(move, (*v)(0, 0)));
  }
  out.prune();
  return out;
}

EquivariantFamily coinvariant_project(const EquivariantFamily& f) {
  EquivariantFamily out = f;
  int n = f.G->order();
  Rational inv(1, n);
  for (int g = 0; g < n; ++g) {
    CechCochain acc = CechCochain::scalar(f.locus_scheme(g), f.comp[g].u_trunc());
    for (int h = 0; h < n; ++h) acc += conjugate_component(f, h, g);
    out.comp[g] = acc * inv;
  }
  return out;
}

}  // namespace mfc
