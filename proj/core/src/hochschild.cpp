#include "mfchern/hochschild.hpp"

#include <sstream>

namespace mfc {

namespace {

const char* kArrowName[] = {"1_P", "g", "f", "1_N", "pi"};
const int kArrowSrc[] = {0, 0, 1, 1, 1};
const int kArrowTgt[] = {0, 1, 0, 1, 1};

// a∘b for basis arrows, -1 when not composable
int compose_arrows(int a, int b) {
  using M = RetractCategoryM;
  if (kArrowSrc[a] != kArrowTgt[b]) return -1;
  if (a == M::OneP || a == M::OneN) return b;
  if (b == M::OneP || b == M::OneN) return a;
  if (a == M::F && b == M::G) return M::OneP;
  if (a == M::G && b == M::F) return M::Pi;
  if (a == M::Pi && b == M::G) return M::G;
  if (a == M::F && b == M::Pi) return M::F;
  if (a == M::Pi && b == M::Pi) return M::Pi;
  return -1;
}

CechCochain with_trunc(const CechCochain& v, int u_trunc) {
  CechCochain out(v.tgt(), v.src(), u_trunc);
  for (const auto& [I, m] : v.entries())
    for (int a = 0; a < m.rows; ++a)
      for (int b = 0; b < m.cols; ++b)
        if (!m(a, b).is_zero()) out.add(I, a, b, m(a, b));
  return out;
}

std::string atom_str(const Atom& a) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

std::string m_atom_str(const Atom& a) { return kArrowName[a[3]]; }

std::string m_canonical_str(const Canonical& c) {
  std::ostringstream os;
  for (const auto& [key, coef] : c) {
    os << coef.get_str() << " u^" << key.first << " ";
    for (size_t i = 0; i < key.second.size(); ++i)
      os << (i == 0 ? "" : (i == 1 ? "[" : "|")) << m_atom_str(key.second[i]);
    if (key.second.size() > 1) os << "]";
    os << "\n";
  }
  return os.str();
}

}  // namespace

std::string canonical_str(const Canonical& c) {
  std::ostringstream os;
  for (const auto& [key, coef] : c) {
    os << coef.get_str() << " u^" << key.first;
    for (const Atom& a : key.second) os << " " << atom_str(a);
    os << "\n";
  }
  return os.str();
}

// ---- M --------------------------------------------------------------------------

RetractCategoryM::Mor RetractCategoryM::arrow(Arrow a, const Rational& c) {
  Mor m{kArrowSrc[a], kArrowTgt[a], {}};
  if (c != 0) m.c[a] = c;
  return m;
}

RetractCategoryM::Mor RetractCategoryM::lin(std::initializer_list<std::pair<Arrow, Rational>> terms) {
  Mor m;
  bool first = true;
  for (const auto& [a, c] : terms) {
    if (first) {
      m.src = kArrowSrc[a];
      m.tgt = kArrowTgt[a];
      first = false;
    } else if (m.src != kArrowSrc[a] || m.tgt != kArrowTgt[a]) {
      throw std::invalid_argument("RetractCategoryM::lin: arrows with different ends");
    }
    m.c[a] += c;
    if (m.c[a] == 0) m.c.erase(a);
  }
  return m;
}

RetractCategoryM::Mor RetractCategoryM::compose(const Mor& a, const Mor& b) const {
  if (a.src != b.tgt) throw std::invalid_argument("RetractCategoryM: composability failure");
  Mor out{b.src, a.tgt, {}};
  for (const auto& [x, cx] : a.c)
    for (const auto& [y, cy] : b.c) {
      int z = compose_arrows(x, y);
      if (z < 0) throw std::logic_error("RetractCategoryM: missing structure constant");
      out.c[z] += cx * cy;
    }
  for (auto it = out.c.begin(); it != out.c.end();) it = it->second == 0 ? out.c.erase(it) : std::next(it);
  return out;
}

bool RetractCategoryM::is_scalar_identity(const Mor& a) const {
  if (a.src != a.tgt) return false;
  int id = a.src == 0 ? OneP : OneN;
  for (const auto& [x, c] : a.c)
    if (x != id) return false;
  return true;
}

std::vector<std::pair<Atom, Rational>> RetractCategoryM::expand(const Mor& a) const {
  std::vector<std::pair<Atom, Rational>> out;
  for (const auto& [x, c] : a.c) out.push_back({{a.src, a.tgt, (x == OneP || x == OneN) ? 0 : 1, x}, c});
  return out;
}

MChain xi_sequence(int i) {
  using M = RetractCategoryM;
  if (i < 1) throw std::invalid_argument("xi_sequence: i >= 1");
  MChain out{0, {}};
  const auto g = M::arrow(M::G), f = M::arrow(M::F), pi = M::arrow(M::Pi), oneN = M::arrow(M::OneN);
  if (i == 1) {
    out.add(1, 0, {g, f});
    return out;
  }
  Rational fact = 1;
  for (int k = 2; k < i; ++k) fact *= k;
  Rational c = (i - 1) % 2 ? -fact : fact;
  std::vector<M::Mor> lead{g, f};
  for (int k = 1; k < i; ++k) {
    lead.push_back(g);
    lead.push_back(f);
  }
  out.add(c, 0, lead);
  // 1_N[π^{2k-1} | (g|f)^{i-k}] for k = 1 … i-1
  for (int k = 1; k < i; ++k) {
    std::vector<M::Mor> s{oneN};
    for (int r = 0; r < 2 * k - 1; ++r) s.push_back(pi);
    for (int r = 0; r < i - k; ++r) {
      s.push_back(g);
      s.push_back(f);
    }
    out.add(-c, 0, std::move(s));
  }
  return out;
}

MChain eta_component(int i) {
  using M = RetractCategoryM;
  M cat;
  auto full = eta_pi(cat, M::arrow(M::Pi), M::lin({{M::Pi, 2}, {M::OneN, -1}}), i);
  MChain out{0, {}};
  for (const auto& t : full.terms)
    if (t.u == i) out.add(t.coef, 0, t.s);
  return out;
}

bool in_D_prime(const std::vector<Atom>& s) {
  using M = RetractCategoryM;
  if (s.empty()) return false;
  if (s[0][3] != M::Pi && s[0][3] != M::OneN) return false;
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i][3] != M::Pi) return false;
  return true;
}

bool in_D_double_prime(const std::vector<Atom>& s) {
  using M = RetractCategoryM;
  size_t n = s.size();
  if (n < 2) return false;
  for (size_t i = 0; i < n; ++i)
    if (s[i][3] == M::F && s[(i + 1) % n][3] == M::Pi) return true;
  return false;
}

bool RetractReport::all_pass() const {
  for (const auto& it : items)
    if (!it.pass) return false;
  return true;
}

RetractReport retract_check(int i_max, int u_trunc_eta) {
  using M = RetractCategoryM;
  M cat;
  RetractReport rep;
  for (int i = 1; i < i_max; ++i) {
    MChain lhs = hoch_b(cat, xi_sequence(i + 1), false);
    lhs.append(connes_B(cat, xi_sequence(i)));
    // b(ξ_{i+1}) + B(ξ_i) - η_i modulo D' + D''
    MChain with_eta = lhs;
    with_eta.append(eta_component(i), -1);
    for (int pass = 0; pass < 2; ++pass) {
      Canonical c = canonical(cat, pass == 0 ? with_eta : lhs, true);
      Canonical residual;
      for (const auto& [key, coef] : c) {
        bool killed = in_D_double_prime(key.second) || (pass == 0 && in_D_prime(key.second));
        if (!killed) residual[key] = coef;
      }
      std::string name = pass == 0 ? "b(xi_" + std::to_string(i + 1) + ") = eta_" + std::to_string(i) + " - B(xi_" +
                                         std::to_string(i) + ") mod D' + D''"
                                   : "b(xi_" + std::to_string(i + 1) + ") = -B(xi_" + std::to_string(i) + ") in the double quotient";
      // the double quotient also divides by D'
      if (pass == 1) {
        for (auto it = residual.begin(); it != residual.end();)
          it = in_D_prime(it->first.second) ? residual.erase(it) : std::next(it);
      }
      rep.items.push_back({name, residual.empty(), m_canonical_str(residual)});
    }
  }
  auto eta = eta_pi(cat, M::arrow(M::Pi), M::lin({{M::Pi, 2}, {M::OneN, -1}}), u_trunc_eta);
  Canonical c = canonical(cat, negative_cyclic_d(cat, eta, false, false), true);
  rep.items.push_back({"(b + uB)(eta_pi) = 0 through u^" + std::to_string(u_trunc_eta), c.empty(), m_canonical_str(c)});
  return rep;
}

// ---- Čech model -----------------------------------------------------------------

CechCategory::CechCategory(std::vector<CechObject> objects, int u_trunc, BracketConvention conv)
    : objects_(std::move(objects)), u_trunc_(u_trunc), conv_(conv) {
  if (objects_.empty()) throw std::invalid_argument("CechCategory: no objects");
  for (const auto& o : objects_) {
    if (!o.P) throw std::invalid_argument("CechCategory: null object");
    if (!o.nabla.bundle) throw std::invalid_argument("CechCategory: missing connection");
    if (!same_bundle(o.nabla.bundle, o.P->bundle)) throw std::invalid_argument("CechCategory: connection on a different bundle");
  }
}

std::vector<CechCategory::Mor> CechCategory::homogeneous(int src, int tgt, const CechCochain& v) const {
  const auto& S = objects_.at(src).P->bundle;
  const auto& T = objects_.at(tgt).P->bundle;
  if (!same_bundle(v.src(), S) || !same_bundle(v.tgt(), T))
    throw std::invalid_argument("CechCategory: morphism between the wrong objects");
  CechCochain part[2] = {CechCochain(T, S, u_trunc_), CechCochain(T, S, u_trunc_)};
  for (const auto& [I, m] : v.entries()) {
    int p = static_cast<int>(I.size()) - 1;
    for (int a = 0; a < m.rows; ++a)
      for (int b = 0; b < m.cols; ++b) {
        const DifferentialForm& f = m(a, b);
        for (const auto& [k, c] : f.terms()) {
          DifferentialForm one(f.ring());
          one.add(k, c);
          int par = (p + popcount(k.mask) + v.unit_degree(a, b)) & 1;
          part[par].add(I, a, b, one);
        }
      }
  }
  std::vector<Mor> out;
  for (int par = 0; par < 2; ++par)
    if (!part[par].is_zero()) out.push_back({src, tgt, par, part[par]});
  return out;
}

CechCategory::Mor CechCategory::make(int src, int tgt, const CechCochain& v) const {
  auto parts = homogeneous(src, tgt, v);
  if (parts.size() > 1) throw std::invalid_argument("CechCategory::make: morphism is not parity-homogeneous");
  if (parts.empty()) return {src, tgt, 0, CechCochain(objects_.at(tgt).P->bundle, objects_.at(src).P->bundle, u_trunc_)};
  return parts[0];
}

CechCategory::Mor CechCategory::compose(const Mor& a, const Mor& b) const {
  if (a.src != b.tgt) throw std::invalid_argument("CechCategory: composability failure");
  return {b.src, a.tgt, (a.par + b.par) & 1, acw_product(a.v, b.v)};
}

CechCategory::Mor CechCategory::differential(const Mor& a) const {
  return {a.src, a.tgt, a.par ^ 1, hom_differential(*objects_.at(a.tgt).P, *objects_.at(a.src).P, a.v)};
}

CechCategory::Mor CechCategory::identity(int obj) const {
  return {obj, obj, 0, CechCochain::identity(objects_.at(obj).P->bundle, u_trunc_)};
}

CechCategory::Mor CechCategory::curvature(int obj) const {
  return {obj, obj, 0, with_trunc(objects_.at(obj).P->curvature_cochain(u_trunc_), u_trunc_)};
}

namespace {

// coefficient of the designated identity atom: tuple (0), entry (0,0), u^0, no forms, exponent 0
Rational designated_coefficient(const CechCochain& v) {
  const Tuple& t0 = v.X().tuples(0).front();
  const FormMatrix* m = v.find(t0);
  if (!m || m->rows == 0) return 0;
  const DifferentialForm& f = (*m)(0, 0);
  auto it = f.terms().find(FormKey{0, 0});
  if (it == f.terms().end()) return 0;
  Laurent l = it->second.laurent();
  auto z = l.find(Exponent(static_cast<size_t>(v.X().ring(t0)->nvars()), 0));
  return z == l.end() ? Rational(0) : z->second;
}

}  // namespace

bool CechCategory::is_scalar_identity(const Mor& a) const {
  if (a.src != a.tgt || a.par != 0) return false;
  if (a.v.is_zero()) return true;
  Rational c = designated_coefficient(a.v);
  return (a.v - CechCochain::identity(objects_.at(a.src).P->bundle, u_trunc_) * c).is_zero();
}

std::vector<std::pair<Atom, Rational>> CechCategory::expand(const Mor& a) const {
  std::vector<std::pair<Atom, Rational>> out;
  CechCochain rest = a.v;
  if (a.src == a.tgt) {
    Rational c = designated_coefficient(a.v);
    if (c != 0) {
      out.push_back({{a.src, a.tgt, 0}, c});
      rest = a.v - CechCochain::identity(objects_.at(a.src).P->bundle, u_trunc_) * c;
    }
  }
  for (const auto& [I, m] : rest.entries())
    for (int r = 0; r < m.rows; ++r)
      for (int s = 0; s < m.cols; ++s)
        for (const auto& [k, coef] : m(r, s).terms())
          for (const auto& [e, c] : coef.laurent()) {
            Atom atom{a.src, a.tgt, 1, static_cast<int>(I.size())};
            atom.insert(atom.end(), I.begin(), I.end());
            atom.push_back(r);
            atom.push_back(s);
            atom.push_back(k.u);
            atom.push_back(static_cast<int>(k.mask));
            atom.insert(atom.end(), e.begin(), e.end());
            out.push_back({std::move(atom), c});
          }
  return out;
}

const CechCochain& CechCategory::curvature_R(int obj) const {
  auto it = R_.find(obj);
  if (it != R_.end()) return it->second;
  const auto& o = objects_.at(obj);
  return R_.emplace(obj, total_curvature(*o.P, o.nabla, true, u_trunc_, conv_)).first->second;
}

CechCochain CechCategory::bracket(const Mor& a) const {
  return nabla_bracket(objects_.at(a.tgt).nabla, objects_.at(a.src).nabla, a.v, conv_);
}

CechCochain tr_word(const CechCategory& cat, const std::vector<CechCochain>& slots, const std::vector<int>& r_objs,
                    const Rational& coef, int u) {
  const CoveredScheme& X = cat.X();
  int n = static_cast<int>(slots.size()) - 1;
  CechCochain zero = CechCochain::scalar(slots[0].scheme(), cat.u_trunc());
  // every R and every later slot carries at least one form degree
  int jmax = X.dimension() - n;
  if (jmax < 0 || u > cat.u_trunc()) return zero;

  // state: J used so far -> running product
  std::map<int, CechCochain> state{{0, slots[0]}};
  auto apply_R = [&](int obj) {
    const CechCochain& R = cat.curvature_R(obj);
    std::map<int, CechCochain> next;
    for (const auto& [J, acc] : state) {
      CechCochain cur = acc;
      for (int j = 0; J + j <= jmax; ++j) {
        if (j > 0) cur = acw_product(cur, R);
        if (cur.is_zero()) break;
        auto it = next.find(J + j);
        if (it == next.end()) next.emplace(J + j, cur);
        else it->second += cur;
      }
    }
    state = std::move(next);
  };
  for (int k = 1; k <= n; ++k) {
    apply_R(r_objs[k - 1]);
    for (auto& [J, acc] : state) acc = acw_product(acc, slots[k]);
  }
  apply_R(r_objs[n]);

  CechCochain out = zero;
  for (const auto& [J, acc] : state) {
    if (acc.is_zero()) continue;
    Rational fact = 1;
    for (int m = 2; m <= n + J; ++m) fact *= m;
    Rational c = coef / fact;
    if (J & 1) c = -c;
    out += supertrace(acc) * c;
  }
  return u ? out.shift_u(u) : out;
}

CechCochain tr_nabla_term(const CechCategory& cat, const ChainTerm<CechCategory::Mor>& t) {
  if (t.s.back().src != t.s[0].tgt) throw std::invalid_argument("tr_nabla: string is not cyclic");
  int n = static_cast<int>(t.s.size()) - 1;
  if (cat.X().dimension() < n || t.u > cat.u_trunc()) return CechCochain::scalar(t.s[0].v.scheme(), cat.u_trunc());
  std::vector<CechCochain> slots{t.s[0].v};
  std::vector<int> r_objs;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) slots.push_back(cat.bracket(t.s[k]));
    r_objs.push_back(t.s[k].src);
  }
  return tr_word(cat, slots, r_objs, t.coef, t.u);
}

CechCochain tr_nabla(const CechCategory& cat, const CechChain& x) {
  CechCochain out = CechCochain::scalar(cat.object(0).P->bundle->scheme(), cat.u_trunc());
  for (const auto& t : x.terms) out += tr_nabla_term(cat, t);
  return out;
}

}  // namespace mfc
