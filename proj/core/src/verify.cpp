#include "mfchern/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "mfchern/cohomology.hpp"
#include "mfchern/examples.hpp"
#include "mfchern/linsolve.hpp"

namespace mfc {

std::vector<VerifySetup> standard_setups() {
  std::vector<VerifySetup> out;
  {
    Poly x = Poly::variable(1, 0);
    SchemePtr X = affine_space({"x"}, x * x);
    auto P = koszul_mf_global(X, {x}, {x});
    auto S = shift(*P);
    const RingPtr& r = X->ring({0});
    auto E = VectorBundle::trivial(X, {0, 1});
    FracMatrix d = frac_zero(r, 2, 2);
    d(0, 1) = LocalFrac(r, x + Poly::constant(1, 1));
    d(1, 0) = LocalFrac(r, x);
    auto Q = make_mf(E, {d}, {LocalFrac(r, x * x + x)});
    out.push_back({"A1", X,
                   {{P, default_connection(P->bundle)}, {S, default_connection(S->bundle)},
                    {Q, default_connection(Q->bundle)}}});
  }
  {
    Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    SchemePtr X = affine_space({"x", "y"}, x * x + y * y);
    auto P = koszul_mf_global(X, {x, y}, {x, y});
    auto S = shift(*P);
    out.push_back({"A2", X, {{P, default_connection(P->bundle)}, {S, default_connection(S->bundle)}}});
  }
  {
    SchemePtr X = projective_line();
    std::vector<CechObject> objs;
    for (int n : {1, -1}) {
      auto E = line_bundle_p1(X, n);
      auto P = make_mf(E, {frac_zero(X->ring({0}), 1, 1), frac_zero(X->ring({1}), 1, 1)});
      objs.push_back({P, default_connection(E)});
    }
    out.push_back({"P1", X, objs});
  }
  return out;
}

CechCochain random_cochain(Rng& rng, BundlePtr tgt, BundlePtr src, int u_trunc, int max_terms, int max_deg) {
  CechCochain c(tgt, src, u_trunc);
  const CoveredScheme& X = tgt->X();
  std::vector<Tuple> all;
  for (int p = 0; p <= X.max_cech_degree(); ++p)
    for (const Tuple& t : X.tuples(p)) all.push_back(t);
  int nt = 1 + static_cast<int>(rng() % max_terms);
  for (int k = 0; k < nt; ++k) {
    const Tuple& t = all[rng() % all.size()];
    const RingPtr& r = X.ring(t);
    auto mons = monomials_up_to(r->nvars(), max_deg, inverted_variables(*r));
    Exponent e = mons[rng() % mons.size()];
    int cf = static_cast<int>(rng() % 5) - 2;
    if (cf == 0) cf = 1;
    std::uint32_t mask = static_cast<std::uint32_t>(rng() % (1u << r->nvars()));
    int u = static_cast<int>(rng() % 2);
    if (u > u_trunc) u = 0;
    DifferentialForm f(r);
    f.add(FormKey{u, mask}, LocalFrac::from_laurent(r, Laurent{{e, Rational(cf)}}));
    c.add(t, static_cast<int>(rng() % tgt->rank()), static_cast<int>(rng() % src->rank()), f);
  }
  c.prune();
  return c;
}

CechChain random_chain(Rng& rng, const CechCategory& cat, int max_tensor) {
  CechChain x{cat.u_trunc(), {}};
  int n = static_cast<int>(rng() % (max_tensor + 1));
  int nobj = static_cast<int>(cat.objects().size());
  std::vector<int> ob(n + 1);
  for (auto& o : ob) o = static_cast<int>(rng() % nobj);
  std::vector<CechCategory::Mor> s;
  for (int i = 0; i <= n; ++i) {
    int tgt = ob[i], src = ob[(i + 1) % (n + 1)];
    auto parts = cat.homogeneous(src, tgt,
                                 random_cochain(rng, cat.object(tgt).P->bundle, cat.object(src).P->bundle, cat.u_trunc()));
    if (parts.empty()) return x;
    s.push_back(parts[rng() % parts.size()]);
  }
  x.add(1, 0, std::move(s));
  return x;
}

namespace {

std::string clip(std::string s) {
  const size_t limit = 4000;
  if (s.size() > limit) s = s.substr(0, limit) + "\n…";
  return s;
}

// Tracks one check over many instances; keeps the first failure.
struct Tally {
  CheckReport rep;
  Tally(std::string name, std::string anchor, std::string instance, std::uint64_t seed) {
    rep.name = std::move(name);
    rep.anchor = std::move(anchor);
    rep.instance = std::move(instance);
    rep.seed = seed;
    rep.pass = true;
  }
  void cochain(const CechCochain& residual) {
    ++rep.instances;
    if (!residual.is_zero() && rep.pass) {
      rep.pass = false;
      rep.residual = clip("instance " + std::to_string(rep.instances) + ":\n" + residual.str());
    }
  }
  void chain(const Canonical& residual) {
    ++rep.instances;
    if (!residual.empty() && rep.pass) {
      rep.pass = false;
      rep.residual = clip("instance " + std::to_string(rep.instances) + ":\n" + canonical_str(residual));
    }
  }
};

// A negative control passes when the wrong identity is caught on some instance.
struct Control {
  CheckReport rep;
  Control(std::string name, std::string anchor, std::string instance, std::uint64_t seed) {
    rep.name = std::move(name);
    rep.anchor = std::move(anchor);
    rep.instance = std::move(instance);
    rep.seed = seed;
  }
  void observe(bool nonzero) {
    ++rep.instances;
    if (nonzero) rep.pass = true;
  }
  CheckReport done() {
    if (!rep.pass) rep.residual = "the deliberately wrong sign went undetected";
    return rep;
  }
};

std::uint64_t mix(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : name) h = (h ^ c) * 1099511628211ull;
  return seed ^ h;
}

struct Context {
  std::uint64_t seed;
  SuiteSizes sz;
  std::vector<VerifySetup> setups;
  std::map<std::string, std::unique_ptr<CechCategory>> cats;

  const CechCategory& cat(const VerifySetup& s) {
    auto& c = cats[s.name];
    if (!c) c = std::make_unique<CechCategory>(s.objects, sz.u_trunc);
    return *c;
  }
  std::string chains_desc(const VerifySetup& s) const {
    return "setup " + s.name + ", random strings of tensor degree ≤ " + std::to_string(sz.max_tensor) + ", u^" +
           std::to_string(sz.u_trunc);
  }
  std::string cochains_desc(const VerifySetup& s) const {
    return "setup " + s.name + ", random cochains, u^" + std::to_string(sz.u_trunc);
  }
};

// sample `count` nonempty chains
void each_chain(Context& ctx, const VerifySetup& s, Rng& rng, int count, const std::function<void(const CechChain&)>& f) {
  const CechCategory& cat = ctx.cat(s);
  int done = 0, tries = 0;
  while (done < count && tries < 20 * count) {
    ++tries;
    CechChain x = random_chain(rng, cat, ctx.sz.max_tensor);
    if (x.terms.empty()) continue;
    f(x);
    ++done;
  }
}

// parity-homogeneous random morphism src → tgt, nullopt when every sample vanished
std::optional<CechCategory::Mor> random_mor(Rng& rng, const CechCategory& cat, int src, int tgt) {
  for (int k = 0; k < 20; ++k) {
    auto parts = cat.homogeneous(
        src, tgt, random_cochain(rng, cat.object(tgt).P->bundle, cat.object(src).P->bundle, cat.u_trunc()));
    if (!parts.empty()) return parts[rng() % parts.size()];
  }
  return std::nullopt;
}

// b₂ with the wrap term sign flipped, a test double for the negative controls
CechChain b_wrong_wrap(const CechCategory& cat, const CechChain& x) {
  CechChain out = hoch_b(cat, x);
  for (const auto& t : x.terms) {
    int n = static_cast<int>(t.s.size()) - 1;
    if (n < 1) continue;
    int e = (cat.parity(t.s[n]) - 1) * (slot_parity_sum(cat, t.s, n - 1) - (n - 1)) + 1;
    auto m = cat.compose(t.s[n], t.s[0]);
    if (cat.is_zero(m)) continue;
    std::vector<CechCategory::Mor> s{std::move(m)};
    s.insert(s.end(), t.s.begin() + 1, t.s.begin() + n);
    // remove the correct term twice
    out.add((e & 1) ? 2 * t.coef : -2 * t.coef, t.u, std::move(s));
  }
  return out;
}

using CheckFn = std::function<std::vector<CheckReport>(Context&)>;

std::vector<CheckReport> per_setup(Context& ctx, const std::string& name,
                                   const std::function<CheckReport(const VerifySetup&, Rng&)>& body,
                                   bool single_patch_only = false) {
  std::vector<CheckReport> out;
  for (const auto& s : ctx.setups) {
    if (single_patch_only && s.X->num_patches() != 1) continue;
    std::uint64_t sd = mix(ctx.seed, name + "/" + s.name);
    Rng rng(sd);
    CheckReport r = body(s, rng);
    r.name = name + "/" + s.name;
    r.seed = ctx.seed;
    out.push_back(std::move(r));
  }
  return out;
}

CechCochain commutator_R(const CechCategory& cat, const CechCategory::Mor& k) {
  return acw_product(cat.curvature_R(k.tgt), k.v) - acw_product(k.v, cat.curvature_R(k.src));
}

std::map<std::string, CheckFn> registry() {
  std::map<std::string, CheckFn> reg;

  reg["tr_nabla_cochain_map"] = [](Context& ctx) {
    return per_setup(ctx, "tr_nabla_cochain_map", [&](const VerifySetup& s, Rng& rng) {
      Tally t("", "(ud + d_Čech - dw)∘tr_∇ = tr_∇∘(uB + b₂ + b₁ + b₀)", ctx.chains_desc(s), 0);
      const CechCategory& cat = ctx.cat(s);
      each_chain(ctx, s, rng, ctx.sz.chains, [&](const CechChain& x) {
        t.cochain(total_differential(tr_nabla(cat, x)) - tr_nabla(cat, negative_cyclic_d(cat, x)));
      });
      return t.rep;
    });
  };

  reg["curvature_bracket"] = [](Context& ctx) {
    return per_setup(ctx, "curvature_bracket", [&](const VerifySetup& s, Rng& rng) {
      Tally t("", "[u∇ + δ, κ'] = [R, κ] - ([δ, κ])'", ctx.cochains_desc(s), 0);
      const CechCategory& cat = ctx.cat(s);
      int nobj = static_cast<int>(s.objects.size());
      for (int k = 0; k < ctx.sz.instances; ++k) {
        int src = static_cast<int>(rng() % nobj), tgt = static_cast<int>(rng() % nobj);
        auto m = random_mor(rng, cat, src, tgt);
        if (!m) continue;
        const CechObject& Q = cat.object(tgt);
        const CechObject& P = cat.object(src);
        CechCochain kp = cat.bracket(*m);
        CechCochain lhs = big_nabla_bracket(*Q.P, Q.nabla, *P.P, P.nabla, kp, cat.convention());
        CechCochain rhs = commutator_R(cat, *m) -
                          nabla_bracket(Q.nabla, P.nabla, hom_differential(*Q.P, *P.P, m->v), cat.convention());
        t.cochain(lhs - rhs);
      }
      return t.rep;
    });
  };

  reg["curvature_powers"] = [](Context& ctx) {
    return per_setup(ctx, "curvature_powers", [&](const VerifySetup& s, Rng&) {
      Tally t("", "[u∇ + δ, R^j] = -j dν R^{j-1}",
              "setup " + s.name + ", every object, j ≤ " + std::to_string(ctx.sz.max_power), 0);
      const CechCategory& cat = ctx.cat(s);
      for (int o = 0; o < static_cast<int>(s.objects.size()); ++o) {
        const CechObject& P = cat.object(o);
        const CechCochain& R = cat.curvature_R(o);
        std::vector<DifferentialForm> dnu;
        for (const auto& nu : P.P->nu) dnu.push_back(de_rham_d(DifferentialForm::scalar(nu)));
        CechCochain prev = CechCochain::identity(P.P->bundle, cat.u_trunc());
        for (int j = 1; j <= ctx.sz.max_power; ++j) {
          CechCochain pow = acw_product(prev, R);
          CechCochain lhs = big_nabla_bracket(*P.P, P.nabla, *P.P, P.nabla, pow, cat.convention());
          CechCochain rhs = wedge_left(dnu, prev) * Rational(-j);
          t.cochain(lhs - rhs);
          prev = pow;
        }
      }
      return t.rep;
    });
  };

  reg["trace_b2"] = [](Context& ctx) {
    return per_setup(ctx, "trace_b2", [&](const VerifySetup& s, Rng& rng) {
      Tally t("", "tr(Σᵢ ± κ₀R⋯[R,κᵢ]⋯κₙ'R) = tr_∇∘b₂", ctx.chains_desc(s), 0);
      const CechCategory& cat = ctx.cat(s);
      each_chain(ctx, s, rng, ctx.sz.instances, [&](const CechChain& x) {
        const auto& term = x.terms[0];
        int n = static_cast<int>(term.s.size()) - 1;
        CechCochain lhs = CechCochain::scalar(s.X, cat.u_trunc());
        std::vector<CechCochain> base{term.s[0].v};
        std::vector<int> r_objs{term.s[0].src};
        for (int k = 1; k <= n; ++k) {
          base.push_back(cat.bracket(term.s[k]));
          r_objs.push_back(term.s[k].src);
        }
        for (int i = 1; i <= n; ++i) {
          auto slots = base;
          slots[i] = commutator_R(cat, term.s[i]);
          int e = i - 1 + slot_parity_sum(cat, term.s, i - 1);
          lhs += tr_word(cat, slots, r_objs, (e & 1) ? -term.coef : term.coef, term.u);
        }
        t.cochain(lhs - tr_nabla(cat, hoch_b2(cat, x)));
      });
      return t.rep;
    });
  };

  reg["trace_uB"] = [](Context& ctx) {
    return per_setup(ctx, "trace_uB", [&](const VerifySetup& s, Rng& rng) {
      Tally t("", "tr(Σ u κ₀'R⋯κₙ'R) = tr_∇∘(uB)", ctx.chains_desc(s), 0);
      const CechCategory& cat = ctx.cat(s);
      each_chain(ctx, s, rng, ctx.sz.instances, [&](const CechChain& x) {
        const auto& term = x.terms[0];
        std::vector<CechCochain> slots;
        std::vector<int> r_objs;
        for (const auto& m : term.s) {
          slots.push_back(cat.bracket(m));
          r_objs.push_back(m.src);
        }
        CechCochain lhs = tr_word(cat, slots, r_objs, term.coef, term.u + 1);
        CechChain uB{x.u_trunc, {}};
        uB.append(connes_B(cat, x), 1, 1);
        t.cochain(lhs - tr_nabla(cat, uB));
      });
      return t.rep;
    });
  };

  reg["retract_eta"] = [](Context& ctx) {
    CheckReport r;
    r.name = "retract_eta";
    r.anchor = "b(ξ_{i+1}) - η_i + B(ξ_i) ∈ D' + D''; η_π is a (b + uB)-cycle";
    r.instance = "i ≤ " + std::to_string(ctx.sz.retract_i) + ", η_π through u^" + std::to_string(ctx.sz.retract_u);
    r.seed = ctx.seed;
    RetractReport a = retract_check(ctx.sz.retract_i, ctx.sz.retract_u);
    r.pass = a.all_pass();
    r.instances = static_cast<int>(a.items.size());
    for (const auto& it : a.items)
      if (!it.pass) r.residual += it.name + ": " + it.residual + "\n";
    r.residual = clip(r.residual);
    return std::vector<CheckReport>{r};
  };

  auto chain_identity = [&reg](const std::string& name, const std::string& anchor,
                               std::function<Canonical(const CechCategory&, const CechChain&)> f) {
    reg[name] = [name, anchor, f](Context& ctx) {
      return per_setup(ctx, name, [&](const VerifySetup& s, Rng& rng) {
        Tally t("", anchor, ctx.chains_desc(s), 0);
        const CechCategory& cat = ctx.cat(s);
        each_chain(ctx, s, rng, ctx.sz.instances, [&](const CechChain& x) { t.chain(f(cat, x)); });
        return t.rep;
      });
    };
  };
  chain_identity("b_squared", "b² = 0", [](const CechCategory& cat, const CechChain& x) {
    return canonical(cat, hoch_b(cat, hoch_b(cat, x)), false);
  });
  chain_identity("B_squared", "B² = 0", [](const CechCategory& cat, const CechChain& x) {
    return canonical(cat, connes_B(cat, connes_B(cat, x)), false);
  });
  chain_identity("bB_anticommute", "bB + Bb = 0 on normalized chains", [](const CechCategory& cat, const CechChain& x) {
    CechChain y = hoch_b(cat, connes_B(cat, x));
    y.append(connes_B(cat, hoch_b(cat, x)));
    return canonical(cat, y, true);
  });

  auto cochain_identity = [&reg](const std::string& name, const std::string& anchor,
                                 std::function<CechCochain(const CechCategory&, Rng&)> f, bool single_patch = false) {
    reg[name] = [name, anchor, f, single_patch](Context& ctx) {
      return per_setup(
          ctx, name,
          [&](const VerifySetup& s, Rng& rng) {
            Tally t("", anchor, ctx.cochains_desc(s), 0);
            const CechCategory& cat = ctx.cat(s);
            for (int k = 0; k < ctx.sz.instances; ++k) t.cochain(f(cat, rng));
            return t.rep;
          },
          single_patch);
    };
  };
  auto any_obj = [](const CechCategory& cat, Rng& rng) {
    return static_cast<int>(rng() % cat.objects().size());
  };
  auto scalar_cochain = [](const CechCategory& cat, Rng& rng) {
    auto O = VectorBundle::line(cat.object(0).P->bundle->scheme());
    return random_cochain(rng, O, O, cat.u_trunc());
  };
  auto any_cochain = [any_obj](const CechCategory& cat, Rng& rng) {
    int a = any_obj(cat, rng), b = any_obj(cat, rng);
    return random_cochain(rng, cat.object(a).P->bundle, cat.object(b).P->bundle, cat.u_trunc());
  };

  cochain_identity("de_rham_squared", "d² = 0", [any_cochain](const CechCategory& cat, Rng& rng) {
    return de_rham(de_rham(any_cochain(cat, rng)));
  });
  cochain_identity("cech_squared", "d_Čech² = 0", [any_cochain](const CechCategory& cat, Rng& rng) {
    return cech_differential(cech_differential(any_cochain(cat, rng)));
  });
  cochain_identity("total_differential_squared", "(d_Čech - dw + ud)² = 0",
                   [scalar_cochain](const CechCategory& cat, Rng& rng) {
                     return total_differential(total_differential(scalar_cochain(cat, rng)));
                   });
  cochain_identity("acw_associative", "(ab)c = a(bc)", [any_obj](const CechCategory& cat, Rng& rng) {
    int o[4];
    for (int& v : o) v = any_obj(cat, rng);
    auto b = [&](int i) { return cat.object(o[i]).P->bundle; };
    CechCochain a = random_cochain(rng, b(0), b(1), cat.u_trunc());
    CechCochain bb = random_cochain(rng, b(1), b(2), cat.u_trunc());
    CechCochain c = random_cochain(rng, b(2), b(3), cat.u_trunc());
    return acw_product(acw_product(a, bb), c) - acw_product(a, acw_product(bb, c));
  });
  // D(ab) = D(a)b + (-1)^{|a|} a D(b); `flip` gives the wrong sign
  auto leibniz = [any_obj](const CechCategory& cat, Rng& rng, bool flip) {
    int o[3];
    for (int& v : o) v = any_obj(cat, rng);
    auto a = random_mor(rng, cat, o[1], o[0]);
    auto b = random_mor(rng, cat, o[2], o[1]);
    if (!a || !b) return CechCochain::scalar(cat.object(0).P->bundle->scheme(), cat.u_trunc());
    const auto& A = *cat.object(o[0]).P;
    const auto& M = *cat.object(o[1]).P;
    const auto& B = *cat.object(o[2]).P;
    CechCochain lhs = hom_differential(A, B, acw_product(a->v, b->v));
    CechCochain right = acw_product(a->v, hom_differential(M, B, b->v));
    bool minus = (a->par & 1) != flip;
    CechCochain rhs = acw_product(hom_differential(A, M, a->v), b->v) + (minus ? -right : right);
    return lhs - rhs;
  };
  cochain_identity("acw_leibniz", "D(ab) = D(a)b + (-1)^{|a|} a D(b)",
                   [leibniz](const CechCategory& cat, Rng& rng) { return leibniz(cat, rng, false); });
  cochain_identity("cdg_curvature", "D²φ = (ν_Q - w)φ - φ(ν_P - w)", [any_obj](const CechCategory& cat, Rng& rng) {
    int q = any_obj(cat, rng), p = any_obj(cat, rng);
    const auto& Q = *cat.object(q).P;
    const auto& P = *cat.object(p).P;
    CechCochain phi = random_cochain(rng, Q.bundle, P.bundle, cat.u_trunc());
    CechCochain lhs = hom_differential(Q, P, hom_differential(Q, P, phi));
    CechCochain rhs = acw_product(Q.curvature_cochain(cat.u_trunc()), phi) -
                      acw_product(phi, P.curvature_cochain(cat.u_trunc()));
    return lhs - rhs;
  });
  // the supertrace is a trace only on a single patch; the ACW product is not graded
  // commutative across Čech degrees
  cochain_identity(
      "str_commutator", "str(ab - (-1)^{|a||b|} ba) = 0",
      [any_obj](const CechCategory& cat, Rng& rng) {
        int p = any_obj(cat, rng), q = any_obj(cat, rng);
        auto a = random_mor(rng, cat, p, q);
        auto b = random_mor(rng, cat, q, p);
        if (!a || !b) return CechCochain::scalar(cat.object(0).P->bundle->scheme(), cat.u_trunc());
        CechCochain ba = supertrace(acw_product(b->v, a->v));
        return supertrace(acw_product(a->v, b->v)) - ((a->par & b->par & 1) ? -ba : ba);
      },
      true);

  reg["negative_control_b_squared"] = [](Context& ctx) {
    const VerifySetup& s = ctx.setups[0];
    Control c("negative_control_b_squared", "b² ≠ 0 once the wrap term of b₂ has the wrong sign",
              ctx.chains_desc(s), ctx.seed);
    Rng rng(mix(ctx.seed, c.rep.name));
    const CechCategory& cat = ctx.cat(s);
    each_chain(ctx, s, rng, ctx.sz.instances,
               [&](const CechChain& x) { c.observe(!canonical(cat, b_wrong_wrap(cat, b_wrong_wrap(cat, x)), false).empty()); });
    return std::vector<CheckReport>{c.done()};
  };
  reg["negative_control_cochain_map"] = [](Context& ctx) {
    const VerifySetup& s = ctx.setups[0];
    Control c("negative_control_cochain_map", "tr_∇ stops being a cochain map once b₂ has the wrong wrap sign",
              ctx.chains_desc(s), ctx.seed);
    Rng rng(mix(ctx.seed, c.rep.name));
    const CechCategory& cat = ctx.cat(s);
    each_chain(ctx, s, rng, ctx.sz.instances, [&](const CechChain& x) {
      CechChain d = b_wrong_wrap(cat, x);
      d.append(connes_B(cat, x), 1, 1);
      c.observe(!(total_differential(tr_nabla(cat, x)) - tr_nabla(cat, d)).is_zero());
    });
    return std::vector<CheckReport>{c.done()};
  };
  reg["negative_control_leibniz"] = [leibniz](Context& ctx) {
    const VerifySetup& s = ctx.setups[0];
    Control c("negative_control_leibniz", "Leibniz fails with the sign (-1)^{|a|+1}", ctx.cochains_desc(s), ctx.seed);
    Rng rng(mix(ctx.seed, c.rep.name));
    const CechCategory& cat = ctx.cat(s);
    for (int k = 0; k < ctx.sz.instances; ++k) c.observe(!leibniz(cat, rng, true).is_zero());
    return std::vector<CheckReport>{c.done()};
  };
  return reg;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

std::vector<CheckReport> run_suite(const std::vector<std::string>& names, std::uint64_t seed, const SuiteSizes& sizes) {
  auto reg = registry();
  std::vector<std::string> chosen;
  for (const auto& n : names) {
    if (n == "all") {
      for (const auto& [k, fn] : reg) chosen.push_back(k);
    } else if (!reg.count(n)) {
      throw std::invalid_argument("unknown check: " + n);
    } else {
      chosen.push_back(n);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  Context ctx{seed, sizes, standard_setups(), {}};
  std::vector<CheckReport> out;
  for (const auto& n : chosen) {
    auto r = reg.at(n)(ctx);
    out.insert(out.end(), r.begin(), r.end());
  }
  std::sort(out.begin(), out.end(), [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
  return out;
}

std::string report_str(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << (r.pass ? "PASS " : "FAIL ") << r.name << "  [" << r.instances << " instances, seed " << r.seed << "]\n";
    os << "  identity: " << r.anchor << "\n  sampled: " << r.instance << "\n";
    if (!r.residual.empty()) os << "  residual:\n" << r.residual << "\n";
  }
  return os.str();
}

}  // namespace mfc
