#include "mfchern/scheme.hpp"

#include <algorithm>
#include <stdexcept>

#include "mfchern/linsolve.hpp"

namespace mfc {

bool is_subtuple(const Tuple& small, const Tuple& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::string tuple_str(const Tuple& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

static std::vector<Tuple> all_subsets(int n) {
  std::vector<Tuple> out;
  for (int mask = 1; mask < (1 << n); ++mask) {
    Tuple t;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) t.push_back(i);
    out.push_back(t);
  }
  std::sort(out.begin(), out.end(), [](const Tuple& a, const Tuple& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

void CoveredScheme::index_tuples() {
  by_degree_.clear();
  for (const auto& [t, r] : rings_) {
    size_t p = t.size() - 1;
    if (by_degree_.size() <= p) by_degree_.resize(p + 1);
    by_degree_[p].push_back(t);
  }
  for (auto& v : by_degree_) std::sort(v.begin(), v.end());
}

const std::vector<Tuple>& CoveredScheme::tuples(int p) const {
  static const std::vector<Tuple> empty;
  if (p < 0 || p >= static_cast<int>(by_degree_.size())) return empty;
  return by_degree_[p];
}

const RingPtr& CoveredScheme::ring(const Tuple& t) const {
  auto it = rings_.find(t);
  if (it == rings_.end()) throw std::out_of_range("no intersection " + tuple_str(t));
  return it->second;
}

const RingMap& CoveredScheme::restriction(const Tuple& from, const Tuple& to) const {
  auto it = restr_.find({from, to});
  if (it == restr_.end()) throw std::out_of_range("missing restriction map " + tuple_str(from) + " -> " + tuple_str(to));
  return it->second;
}

LocalFrac CoveredScheme::potential(const Tuple& t) const {
  return restriction({t.front()}, t).apply(potential_.at(t.front()));
}

CoveredScheme CoveredScheme::from_parts(Grading g, int dim, std::vector<std::string> names,
                                        std::map<Tuple, RingPtr> rings,
                                        std::map<std::pair<Tuple, Tuple>, RingMap> restr,
                                        std::vector<LocalFrac> potential) {
  CoveredScheme X;
  X.grading_ = g;
  X.dimension_ = dim;
  X.names_ = std::move(names);
  X.rings_ = std::move(rings);
  X.restr_ = std::move(restr);
  X.potential_ = std::move(potential);
  for (size_t i = 0; i < X.names_.size(); ++i) X.patch_rings_.push_back(X.rings_.at({static_cast<int>(i)}));
  X.index_tuples();
  return X;
}

CoveredScheme CoveredScheme::build(const SchemeSpec& spec) {
  CoveredScheme X;
  X.grading_ = spec.grading;
  X.dimension_ = spec.dimension;
  X.star_ = spec.star_condition;
  if (spec.dimension < 0) throw std::invalid_argument("negative dimension");
  int n = static_cast<int>(spec.patches.size());
  if (n == 0) throw std::invalid_argument("scheme needs at least one patch");
  if (static_cast<int>(spec.potential.size()) != n)
    throw std::invalid_argument("potential missing for patch " +
                                spec.patches[std::min(spec.potential.size(), spec.patches.size() - 1)].name);
  std::map<std::pair<int, int>, const GluingSpec*> glue;
  for (const auto& gs : spec.gluings) {
    if (gs.i >= gs.j || gs.j >= n) throw std::invalid_argument("gluing indices must satisfy i < j < #patches");
    glue[{gs.i, gs.j}] = &gs;
  }
  for (const auto& p : spec.patches) {
    X.names_.push_back(p.name);
    X.patch_rings_.push_back(make_ring(p.name, p.vars, p.denominators));
  }
  for (const Tuple& t : all_subsets(n)) {
    bool ok = true;
    for (size_t a = 0; a < t.size() && ok; ++a)
      for (size_t b = a + 1; b < t.size() && ok; ++b) ok = glue.count({t[a], t[b]}) > 0;
    if (!ok) continue;
    int i0 = t.front();
    if (t.size() == 1) {
      X.rings_[t] = X.patch_rings_[i0];
      continue;
    }
    std::vector<Poly> gens = spec.patches[i0].denominators;
    for (size_t a = 1; a < t.size(); ++a)
      for (const Poly& d : glue[{i0, t[a]}]->denominators) gens.push_back(d);
    X.rings_[t] = make_ring(spec.patches[i0].name + tuple_str(t), spec.patches[i0].vars, gens);
  }
  // restriction maps J -> I for J a nonempty subtuple of I
  for (const auto& [I, rI] : X.rings_) {
    for (const auto& [J, rJ] : X.rings_) {
      if (!is_subtuple(J, I)) continue;
      if (J.front() == I.front()) {
        X.restr_.emplace(std::make_pair(J, I), RingMap::inclusion(rJ, rI));
        continue;
      }
      const GluingSpec& gs = *glue[{I.front(), J.front()}];
      if (static_cast<int>(gs.images.size()) != rJ->nvars())
        throw std::invalid_argument("gluing " + tuple_str({gs.i, gs.j}) + " needs one image per variable");
      std::vector<LocalFrac> im;
      for (const auto& [num, exps] : gs.images) {
        std::vector<int> den(rI->gens.size(), 0);
        for (size_t k = 0; k < exps.size(); ++k) {
          if (exps[k] == 0) continue;
          auto pos = std::find(rI->gens.begin(), rI->gens.end(), gs.denominators.at(k));
          den[pos - rI->gens.begin()] += exps[k];
        }
        im.emplace_back(rI, num, den);
      }
      X.restr_.emplace(std::make_pair(J, I), RingMap(rJ, rI, std::move(im)));
    }
  }
  for (int i = 0; i < n; ++i) X.potential_.push_back(LocalFrac(X.patch_rings_[i], spec.potential[i]));
  X.index_tuples();

  if (X.grading_ == Grading::Z)
    for (int i = 0; i < n; ++i)
      if (!X.potential_[i].is_zero()) throw std::invalid_argument("grading Z requires w = 0 (patch " + X.names_[i] + ")");
  // potentials agree on overlaps; restrictions compose
  for (const auto& [I, rI] : X.rings_) {
    LocalFrac wI = X.potential(I);
    for (int j : I)
      if (X.restriction({j}, I).apply(X.potential_[j]) != wI)
        throw std::invalid_argument("potential mismatch on intersection " + tuple_str(I));
    for (const auto& [K, rK] : X.rings_) {
      if (!is_subtuple(K, I)) continue;
      for (const auto& [J, rJ] : X.rings_) {
        if (!is_subtuple(J, K)) continue;
        RingMap via = X.restriction(K, I).compose_after(X.restriction(J, K));
        if (!(via == X.restriction(J, I)))
          throw std::invalid_argument("inconsistent restrictions " + tuple_str(J) + " -> " + tuple_str(K) + " -> " + tuple_str(I));
      }
    }
  }
  if (spec.covering_check_bound > 0) {
    // only meaningful when all patches are principal opens of one affine chart
    bool affine = true;
    for (const auto& gs : spec.gluings) {
      for (size_t v = 0; v < gs.images.size() && affine; ++v)
        affine = gs.images[v].first == Poly::variable(spec.patches[gs.i].vars.size(), v) &&
                 std::all_of(gs.images[v].second.begin(), gs.images[v].second.end(), [](int e) { return e == 0; });
    }
    if (!affine) {
      X.warnings_.push_back("covering check skipped: patches are not principal opens of one chart");
    } else {
      RingPtr r0 = make_ring("ambient", spec.patches[0].vars);
      LinearEquation eq;
      eq.rhs = LocalFrac::constant(r0, 1);
      for (const auto& p : spec.patches) {
        Poly f = Poly::constant(r0->nvars(), 1);
        for (const Poly& d : p.denominators) f = f * d;
        eq.coeffs.emplace_back(r0, f);
      }
      auto sol = solve_linear_graded({eq}, n, spec.covering_check_bound);
      if (sol.status != SolveStatus::Solved)
        X.warnings_.push_back("covering check inconclusive: 1 not found in the ideal of patch denominators");
    }
  }
  return X;
}

int GroupAction::inverse(int g) const {
  for (int h = 0; h < order(); ++h)
    if (mul(g, h) == 0) return h;
  throw std::logic_error("group element without inverse");
}

RingMap GroupAction::action_map(const CoveredScheme& X, int g, const Tuple& t) const {
  const RingPtr& r = X.ring(t);
  const auto& M = matrices.at(g).at(t.front());
  std::vector<LocalFrac> im;
  for (int a = 0; a < r->nvars(); ++a) {
    Poly p(r->nvars());
    for (int b = 0; b < r->nvars(); ++b) p.add_term(Poly::variable(r->nvars(), b).terms().begin()->first, M[a][b]);
    im.emplace_back(r, p);
  }
  return RingMap(r, r, std::move(im));
}

void GroupAction::validate(const CoveredScheme& X) const {
  int n = order();
  if (n == 0 || static_cast<int>(matrices.size()) != n) throw std::invalid_argument("group table and action size differ");
  for (int g = 0; g < n; ++g)
    if (mul(0, g) != g || mul(g, 0) != g) throw std::invalid_argument("element 0 must be the identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw std::invalid_argument("group table not associative");
  for (int p = 0; p <= X.max_cech_degree(); ++p)
    for (const Tuple& t : X.tuples(p)) {
      for (int g = 0; g < n; ++g) {
        RingMap mg = action_map(X, g, t);
        if (mg.apply(X.potential(t)) != X.potential(t)) throw std::invalid_argument("potential not G-fixed");
        for (int h = 0; h < n; ++h)
          if (!(mg.compose_after(action_map(X, h, t)) == action_map(X, mul(g, h), t)))
            throw std::invalid_argument("action maps violate the group law");
      }
      // compatibility with restrictions
      for (int g = 0; g < n; ++g)
        for (int j : t) {
          RingMap a = X.restriction({j}, t).compose_after(action_map(X, g, {j}));
          RingMap b = action_map(X, g, t).compose_after(X.restriction({j}, t));
          if (!(a == b)) throw std::invalid_argument("action does not commute with gluing on " + tuple_str(t));
        }
    }
}

// reduced echelon nullspace basis of A (rows x cols); columns of the result are basis vectors
static std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> A, int cols, std::vector<int>& free_cols) {
  int rows = static_cast<int>(A.size());
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (A[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(A[r], A[piv]);
    Rational lead = A[r][c];
    for (auto& v : A[r]) v /= lead;
    for (int i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rational f = A[i][c];
      for (int k = 0; k < cols; ++k) A[i][k] -= f * A[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  free_cols.clear();
  for (int c = 0; c < cols; ++c)
    if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) free_cols.push_back(c);
  std::vector<std::vector<Rational>> basis;
  for (int f : free_cols) {
    std::vector<Rational> v(cols, Rational(0));
    v[f] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -A[i][f];
    basis.push_back(v);
  }
  return basis;
}

FixedLocus fixed_locus(const CoveredScheme& X, const GroupAction& G, int g) {
  FixedLocus F;
  F.element = g;
  int n = X.num_patches();
  std::vector<std::vector<std::vector<Rational>>> V(n);  // V[i][k] = k-th basis vector
  std::vector<std::vector<int>> free(n);
  for (int i = 0; i < n; ++i) {
    const auto& M = G.matrices.at(g).at(i);
    int m = X.ring({i})->nvars();
    if (static_cast<int>(M.size()) != m) throw std::invalid_argument("unsupported action: matrix shape");
    for (const auto& row : M)
      if (static_cast<int>(row.size()) != m) throw std::invalid_argument("unsupported action: matrix shape");
    auto A = M;
    for (int a = 0; a < m; ++a) A[a][a] -= 1;
    V[i] = nullspace(A, m, free[i]);
  }
  // substitution x = V t into a tuple ring presented in patch i0 coordinates
  std::map<Tuple, RingPtr> rings;
  std::map<Tuple, std::vector<LocalFrac>> subst;  // images of X variables
  std::map<Tuple, RingPtr> xrings;
  for (int p = 0; p <= X.max_cech_degree(); ++p)
    for (const Tuple& t : X.tuples(p)) {
      int i0 = t.front();
      const RingPtr& r = X.ring(t);
      std::vector<std::string> tv;
      for (int f : free[i0]) tv.push_back(r->vars[f]);
      int nt = static_cast<int>(tv.size());
      auto base = make_ring("tmp", tv);
      auto sub = [&](const Poly& poly) {
        std::vector<LocalFrac> im;
        for (int a = 0; a < r->nvars(); ++a) {
          Poly q(nt);
          for (int k = 0; k < nt; ++k) {
            Exponent e(nt, 0);
            e[k] = 1;
            q.add_term(e, V[i0][k][a]);
          }
          im.emplace_back(base, q);
        }
        return RingMap(make_ring("poly", r->vars), base, im).apply_poly(poly);
      };
      std::vector<Poly> gens;
      bool empty = false;
      for (const Poly& gpoly : r->gens) {
        Poly rest = sub(gpoly).num();
        if (rest.is_zero()) empty = true;
        else if (!rest.is_constant()) gens.push_back(rest);
      }
      if (empty) continue;
      std::string nm = "fix" + std::to_string(g) + tuple_str(t);
      RingPtr rg = make_ring(nm, tv, gens);
      rings[t] = rg;
      std::vector<LocalFrac> im;
      for (int a = 0; a < r->nvars(); ++a) {
        Poly q(nt);
        for (int k = 0; k < nt; ++k) {
          Exponent e(nt, 0);
          e[k] = 1;
          q.add_term(e, V[i0][k][a]);
        }
        im.emplace_back(rg, q);
      }
      F.restrict_map.emplace(t, RingMap(r, rg, im));
    }
  // renumber surviving patches
  std::map<int, int> newidx;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    if (rings.count({i})) {
      newidx[i] = static_cast<int>(names.size());
      F.patches.push_back(i);
      names.push_back(X.patch_name(i));
    }
  std::map<Tuple, RingPtr> frings;
  for (const auto& [t, rg] : rings) {
    bool ok = true;
    Tuple nt;
    for (int i : t) {
      if (!newidx.count(i)) ok = false;
      else nt.push_back(newidx[i]);
    }
    if (!ok) continue;
    F.tuple_map[t] = nt;
    frings[nt] = rg;
  }
  std::map<std::pair<Tuple, Tuple>, RingMap> restr;
  for (const auto& [I, nI] : F.tuple_map)
    for (const auto& [J, nJ] : F.tuple_map) {
      if (!is_subtuple(J, I)) continue;
      // t_J = free coordinates of x^{(j0)}, expressed on the fixed part of U_I
      const RingMap& xr = X.restriction(J, I);
      const RingMap& fr = F.restrict_map.at(I);
      std::vector<LocalFrac> im;
      for (int f : free[J.front()]) im.push_back(fr.apply(xr.images()[f]));
      restr.emplace(std::make_pair(nJ, nI), RingMap(frings.at(nJ), frings.at(nI), std::move(im)));
    }
  std::vector<LocalFrac> pot;
  int dim = 0;
  for (int i : F.patches) {
    pot.push_back(F.restrict_map.at({i}).apply(X.potential({i})));
    dim = std::max(dim, static_cast<int>(free[i].size()));
  }
  F.scheme = CoveredScheme::from_parts(X.grading(), dim, names, frings, restr, pot);
  return F;
}

}  // namespace mfc
