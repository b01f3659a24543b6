#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfchern/connection.hpp"

namespace mfc {

// A string coef · u^u · a0[a1|…|an]; every slot is parity-homogeneous.
template <class Mor>
struct ChainTerm {
  Rational coef;
  int u = 0;
  std::vector<Mor> s;
};

template <class Mor>
struct Chain {
  int u_trunc = 0;
  std::vector<ChainTerm<Mor>> terms;

  void add(Rational c, int u, std::vector<Mor> s) {
    if (c == 0 || u > u_trunc) return;
    terms.push_back({std::move(c), u, std::move(s)});
  }
  void append(const Chain& o, const Rational& scale = 1, int ushift = 0) {
    for (const auto& t : o.terms) add(t.coef * scale, t.u + ushift, t.s);
  }
};

// basis atom of a morphism space: [src, tgt, tag, ...]; tag 0 marks the identity
using Atom = std::vector<int>;
using StringKey = std::pair<int, std::vector<Atom>>;  // (u-power, atoms)
using Canonical = std::map<StringKey, Rational>;

std::string canonical_str(const Canonical& c);

// ---- generic operators --------------------------------------------------------
// Cat provides: Mor, parity, compose (a∘b), differential, identity(obj), curvature(obj),
// has_curvature, source, target, is_zero, expand (atoms with identity split off).

template <class Cat>
int slot_parity_sum(const Cat& cat, const std::vector<typename Cat::Mor>& s, int upto) {
  int e = 0;
  for (int j = 0; j <= upto; ++j) e += cat.parity(s[j]);
  return e;
}

template <class Cat>
Chain<typename Cat::Mor> hoch_b2(const Cat& cat, const Chain<typename Cat::Mor>& x) {
  Chain<typename Cat::Mor> out{x.u_trunc, {}};
  for (const auto& t : x.terms) {
    int n = static_cast<int>(t.s.size()) - 1;
    for (int i = 0; i < n; ++i) {
      int e = slot_parity_sum(cat, t.s, i) - i;
      auto m = cat.compose(t.s[i], t.s[i + 1]);
      if (cat.is_zero(m)) continue;
      std::vector<typename Cat::Mor> s(t.s.begin(), t.s.begin() + i);
      s.push_back(std::move(m));
      s.insert(s.end(), t.s.begin() + i + 2, t.s.end());
      out.add((e & 1) ? -t.coef : t.coef, t.u, std::move(s));
    }
    if (n >= 1) {
      // Koszul sign for rotating s(an) to the front, and one more -1
      int e = (cat.parity(t.s[n]) - 1) * (slot_parity_sum(cat, t.s, n - 1) - (n - 1)) + 1;
      auto m = cat.compose(t.s[n], t.s[0]);
      if (cat.is_zero(m)) continue;
      std::vector<typename Cat::Mor> s{std::move(m)};
      s.insert(s.end(), t.s.begin() + 1, t.s.begin() + n);
      out.add((e & 1) ? -t.coef : t.coef, t.u, std::move(s));
    }
  }
  return out;
}

template <class Cat>
Chain<typename Cat::Mor> hoch_b1(const Cat& cat, const Chain<typename Cat::Mor>& x) {
  Chain<typename Cat::Mor> out{x.u_trunc, {}};
  for (const auto& t : x.terms) {
    int n = static_cast<int>(t.s.size()) - 1;
    for (int i = 0; i <= n; ++i) {
      auto m = cat.differential(t.s[i]);
      if (cat.is_zero(m)) continue;
      int e = i == 0 ? 0 : slot_parity_sum(cat, t.s, i - 1) - i;
      auto s = t.s;
      s[i] = std::move(m);
      out.add((e & 1) ? -t.coef : t.coef, t.u, std::move(s));
    }
  }
  return out;
}

template <class Cat>
Chain<typename Cat::Mor> hoch_b0(const Cat& cat, const Chain<typename Cat::Mor>& x) {
  Chain<typename Cat::Mor> out{x.u_trunc, {}};
  for (const auto& t : x.terms) {
    int n = static_cast<int>(t.s.size()) - 1;
    for (int k = 0; k <= n; ++k) {
      int obj = cat.source(t.s[k]);
      if (!cat.has_curvature(obj)) continue;
      int e = slot_parity_sum(cat, t.s, k) - k;
      auto s = t.s;
      s.insert(s.begin() + k + 1, cat.curvature(obj));
      out.add((e & 1) ? -t.coef : t.coef, t.u, std::move(s));
    }
  }
  return out;
}

template <class Cat>
Chain<typename Cat::Mor> hoch_b(const Cat& cat, const Chain<typename Cat::Mor>& x, bool with_curvature = true) {
  auto out = hoch_b2(cat, x);
  out.append(hoch_b1(cat, x));
  if (with_curvature) out.append(hoch_b0(cat, x));
  return out;
}

// t(a0[a1|…|an]) = (-1)^{(|a0|-1) Σ_{i≥1}(|ai|-1)} a1[a2|…|an|a0]
template <class Cat>
ChainTerm<typename Cat::Mor> cyclic_t(const Cat& cat, const ChainTerm<typename Cat::Mor>& t) {
  int n = static_cast<int>(t.s.size()) - 1;
  if (n == 0) return t;
  int rest = 0;
  for (int i = 1; i <= n; ++i) rest += cat.parity(t.s[i]) - 1;
  int e = (cat.parity(t.s[0]) - 1) * rest;
  std::vector<typename Cat::Mor> s(t.s.begin() + 1, t.s.end());
  s.push_back(t.s[0]);
  return {(e & 1) ? -t.coef : t.coef, t.u, std::move(s)};
}

// inverse of t: a_n[a0|…|a_{n-1}] with sign (-1)^{(|an|-1) Σ_{i<n}(|ai|-1)}
template <class Cat>
ChainTerm<typename Cat::Mor> cyclic_t_inv(const Cat& cat, const ChainTerm<typename Cat::Mor>& t) {
  int n = static_cast<int>(t.s.size()) - 1;
  if (n == 0) return t;
  int rest = 0;
  for (int i = 0; i < n; ++i) rest += cat.parity(t.s[i]) - 1;
  int e = (cat.parity(t.s[n]) - 1) * rest;
  std::vector<typename Cat::Mor> s{t.s[n]};
  s.insert(s.end(), t.s.begin(), t.s.begin() + n);
  return {(e & 1) ? -t.coef : t.coef, t.u, std::move(s)};
}

template <class Cat>
Chain<typename Cat::Mor> cyclic_N(const Cat& cat, const Chain<typename Cat::Mor>& x) {
  Chain<typename Cat::Mor> out{x.u_trunc, {}};
  for (const auto& t : x.terms) {
    ChainTerm<typename Cat::Mor> cur = t;
    for (size_t i = 0; i < t.s.size(); ++i) {
      out.add(cur.coef, cur.u, cur.s);
      cur = cyclic_t(cat, cur);
    }
  }
  return out;
}

// s(a0[a1|…|an]) = 1[a0|a1|…|an]
template <class Cat>
Chain<typename Cat::Mor> extra_s(const Cat& cat, const Chain<typename Cat::Mor>& x) {
  Chain<typename Cat::Mor> out{x.u_trunc, {}};
  for (const auto& t : x.terms) {
    std::vector<typename Cat::Mor> s{cat.identity(cat.target(t.s[0]))};
    s.insert(s.end(), t.s.begin(), t.s.end());
    out.add(t.coef, t.u, std::move(s));
  }
  return out;
}

// B = (1 - t^{-1}) s N. With `normalized` the t^{-1} part, whose strings all carry an
// identity in slot 1, is dropped.
template <class Cat>
Chain<typename Cat::Mor> connes_B(const Cat& cat, const Chain<typename Cat::Mor>& x, bool normalized = false) {
  auto sn = extra_s(cat, cyclic_N(cat, x));
  if (normalized) return sn;
  Chain<typename Cat::Mor> out = sn;
  for (const auto& t : sn.terms) {
    auto r = cyclic_t_inv(cat, t);
    out.add(-r.coef, r.u, std::move(r.s));
  }
  return out;
}

// b + uB
template <class Cat>
Chain<typename Cat::Mor> negative_cyclic_d(const Cat& cat, const Chain<typename Cat::Mor>& x, bool normalized = false,
                                           bool with_curvature = true) {
  auto out = hoch_b(cat, x, with_curvature);
  out.append(connes_B(cat, x, normalized), 1, 1);
  return out;
}

// drop strings with an exact scalar multiple of an identity in a slot >= 1
template <class Cat>
Chain<typename Cat::Mor> normalize(const Cat& cat, const Chain<typename Cat::Mor>& x) {
  Chain<typename Cat::Mor> out{x.u_trunc, {}};
  for (const auto& t : x.terms) {
    bool degenerate = false;
    for (size_t i = 1; i < t.s.size() && !degenerate; ++i) degenerate = cat.is_scalar_identity(t.s[i]);
    if (!degenerate) out.add(t.coef, t.u, t.s);
  }
  return out;
}

// full expansion in the atom basis; `normalized` drops strings with an identity atom in slots >= 1
template <class Cat>
Canonical canonical(const Cat& cat, const Chain<typename Cat::Mor>& x, bool normalized) {
  Canonical out;
  for (const auto& t : x.terms) {
    std::vector<std::pair<std::vector<Atom>, Rational>> partial{{{}, t.coef}};
    for (size_t i = 0; i < t.s.size() && !partial.empty(); ++i) {
      std::vector<std::pair<std::vector<Atom>, Rational>> next;
      for (const auto& [atom, c] : cat.expand(t.s[i])) {
        if (normalized && i >= 1 && atom[2] == 0) continue;
        for (const auto& [prefix, pc] : partial) {
          auto key = prefix;
          key.push_back(atom);
          next.emplace_back(std::move(key), pc * c);
        }
      }
      partial = std::move(next);
    }
    for (auto& [key, c] : partial) {
      Rational& slot = out[{t.u, key}];
      slot += c;
      if (slot == 0) out.erase({t.u, key});
    }
  }
  return out;
}

template <class Cat>
Canonical canonical_difference(const Cat& cat, const Chain<typename Cat::Mor>& a, const Chain<typename Cat::Mor>& b,
                               bool normalized) {
  Chain<typename Cat::Mor> d = a;
  d.append(b, -1);
  return canonical(cat, d, normalized);
}

// η_π = π + Σ_{i≥1} (-1)^i (2i)!/(2·i!) (2π - 1_N)[π|…|π] u^i  (2i copies of π)
template <class Cat>
Chain<typename Cat::Mor> eta_pi(const Cat& cat, const typename Cat::Mor& pi, const typename Cat::Mor& two_pi_minus_one,
                                int u_trunc) {
  Chain<typename Cat::Mor> out{u_trunc, {}};
  out.add(1, 0, {pi});
  Rational fact2 = 1, facti = 1;
  for (int i = 1; i <= u_trunc; ++i) {
    fact2 *= (2 * i - 1) * (2 * i);
    facti *= i;
    Rational c = fact2 / (2 * facti);
    if (i & 1) c = -c;
    std::vector<typename Cat::Mor> s{two_pi_minus_one};
    for (int k = 0; k < 2 * i; ++k) s.push_back(pi);
    out.add(c, i, std::move(s));
  }
  (void)cat;
  return out;
}

// ---- the retract category -----------------------------------------------------
// objects P = 0, N = 1; arrows 1_P, g: P→N, f: N→P, 1_N, π
struct RetractCategoryM {
  enum Arrow { OneP = 0, G = 1, F = 2, OneN = 3, Pi = 4 };
  struct Mor {
    int src = 0, tgt = 0;
    std::map<int, Rational> c;
  };
  static Mor arrow(Arrow a, const Rational& c = 1);
  static Mor lin(std::initializer_list<std::pair<Arrow, Rational>> terms);

  int parity(const Mor&) const { return 0; }
  int source(const Mor& m) const { return m.src; }
  int target(const Mor& m) const { return m.tgt; }
  Mor compose(const Mor& a, const Mor& b) const;
  Mor differential(const Mor& a) const { return Mor{a.src, a.tgt, {}}; }
  Mor identity(int obj) const { return arrow(obj == 0 ? OneP : OneN); }
  bool has_curvature(int) const { return false; }
  Mor curvature(int obj) const { return Mor{obj, obj, {}}; }
  bool is_zero(const Mor& a) const { return a.c.empty(); }
  bool is_scalar_identity(const Mor& a) const;
  std::vector<std::pair<Atom, Rational>> expand(const Mor& a) const;
};

using MChain = Chain<RetractCategoryM::Mor>;

// ξ_i in the normalized complex of M
MChain xi_sequence(int i);
// η_i of η_π = Σ η_i u^i for π in M, as u^0 chains
MChain eta_component(int i);

struct RetractReport {
  struct Item {
    std::string name;
    bool pass = false;
    std::string residual;
  };
  std::vector<Item> items;
  bool all_pass() const;
};
// strings spanning D' (a0 ∈ {π, 1_N}, every other slot π) or D'' (a cyclically adjacent f, π)
bool in_D_prime(const std::vector<Atom>& s);
bool in_D_double_prime(const std::vector<Atom>& s);
RetractReport retract_check(int i_max, int u_trunc_eta = 4);

// ---- the Čech model of matrix factorizations -----------------------------------
struct CechObject {
  MFPtr P;
  Connection nabla;
};

class CechCategory {
 public:
  struct Mor {
    int src = 0, tgt = 0;
    int par = 0;
    CechCochain v;
  };

  CechCategory(std::vector<CechObject> objects, int u_trunc,
               BracketConvention conv = BracketConvention::Transported);

  const std::vector<CechObject>& objects() const { return objects_; }
  const CechObject& object(int i) const { return objects_.at(i); }
  int u_trunc() const { return u_trunc_; }
  BracketConvention convention() const { return conv_; }
  const CoveredScheme& X() const { return objects_.at(0).P->X(); }

  // a morphism cochain src → tgt split into its parity-homogeneous parts
  std::vector<Mor> homogeneous(int src, int tgt, const CechCochain& v) const;
  Mor make(int src, int tgt, const CechCochain& v) const;  // must be homogeneous

  int parity(const Mor& m) const { return m.par; }
  int source(const Mor& m) const { return m.src; }
  int target(const Mor& m) const { return m.tgt; }
  Mor compose(const Mor& a, const Mor& b) const;
  Mor differential(const Mor& a) const;
  Mor identity(int obj) const;
  bool has_curvature(int obj) const { return objects_.at(obj).P->is_curved(); }
  Mor curvature(int obj) const;
  bool is_zero(const Mor& a) const { return a.v.is_zero(); }
  bool is_scalar_identity(const Mor& a) const;
  std::vector<std::pair<Atom, Rational>> expand(const Mor& a) const;

  // total curvature R of an object (cached)
  const CechCochain& curvature_R(int obj) const;
  // [∇, κ]
  CechCochain bracket(const Mor& a) const;

 private:
  std::vector<CechObject> objects_;
  int u_trunc_;
  BracketConvention conv_;
  mutable std::map<int, CechCochain> R_;
};

using CechChain = Chain<CechCategory::Mor>;

// Σ_{j} (-1)^J tr(κ0 R^{j0} κ1' R^{j1} ⋯ κn' R^{jn}) / (n+J)!, κ' = [∇, κ]
CechCochain tr_nabla(const CechCategory& cat, const CechChain& x);
CechCochain tr_nabla_term(const CechCategory& cat, const ChainTerm<CechCategory::Mor>& t);
// coef · u^u · Σ_J (-1)^J tr(s0 R^{j0} s1 R^{j1} ⋯ sn R^{jn}) / (n+J)! for prepared slots;
// the k-th R is the total curvature of object r_objs[k]
CechCochain tr_word(const CechCategory& cat, const std::vector<CechCochain>& slots, const std::vector<int>& r_objs,
                    const Rational& coef, int u);

}  // namespace mfc
