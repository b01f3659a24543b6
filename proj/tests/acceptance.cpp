// Acceptance suite: one PASS/FAIL line per criterion, details indented below it.
// Usage: acceptance [criterion ...]   (no arguments runs all nine)
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "mfchern/chern.hpp"
#include "mfchern/examples.hpp"
#include "mfchern/verify.hpp"

#ifndef MFCHERN_CLI_PATH
#define MFCHERN_CLI_PATH "mfchern_cli"
#endif
#ifndef MFCHERN_CONFIG_DIR
#define MFCHERN_CONFIG_DIR "."
#endif

using namespace mfc;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void note(const std::string& s) { notes.push_back(s); }
  void require(bool ok, const std::string& what) {
    note(std::string(ok ? "ok   " : "FAIL ") + what);
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void suite_into(Outcome& o, const std::vector<std::string>& names, const SuiteSizes& sz, std::uint64_t seed = 1) {
  for (const auto& r : run_suite(names, seed, sz)) {
    o.require(r.pass, r.name + " (" + std::to_string(r.instances) + " instances)");
    if (!r.pass) {
      std::istringstream in(r.residual);
      std::string line;
      for (int k = 0; k < 6 && std::getline(in, line); ++k) o.note("       " + line);
    }
  }
}

MFPtr line_mf(SchemePtr X, int n) {
  BundlePtr E = line_bundle_p1(X, n);
  return make_mf(E, {frac_zero(X->ring({0}), 1, 1), frac_zero(X->ring({1}), 1, 1)});
}

// Laurent coefficients of the dz part of a one-variable Laurent form
std::map<int, Rational> dz_coefficients(const DifferentialForm& f) {
  std::map<int, Rational> out;
  for (const auto& [k, c] : f.terms()) {
    if (k.u != 0 || k.mask != 1) continue;
    for (const auto& [e, q] : c.laurent()) out[e[0]] += q;
  }
  return out;
}

Outcome criterion1() {
  Outcome o;
  SuiteSizes sz;
  sz.chains = 100;
  sz.max_tensor = 3;
  sz.u_trunc = 3;
  auto t0 = std::chrono::steady_clock::now();
  suite_into(o, {"tr_nabla_cochain_map"}, sz, 7);
  double t = seconds_since(t0);
  o.require(t < 120, "runtime " + std::to_string(t) + " s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  SuiteSizes sz;
  sz.instances = 50;
  sz.max_power = 3;
  suite_into(o, {"curvature_bracket", "curvature_powers"}, sz, 2);
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  RetractReport r = retract_check(3, 4);
  double t = seconds_since(t0);
  for (const auto& it : r.items) o.require(it.pass, it.name + (it.pass ? "" : ": " + it.residual));
  o.require(t < 10, "runtime " + std::to_string(t) + " s");
  return o;
}

Outcome criterion4() {
  Outcome o;
  SuiteSizes sz;
  sz.instances = 50;
  suite_into(o,
             {"b_squared", "B_squared", "bB_anticommute", "de_rham_squared", "cech_squared", "acw_associative",
              "acw_leibniz", "cdg_curvature", "str_commutator", "total_differential_squared",
              "negative_control_b_squared", "negative_control_cochain_map", "negative_control_leibniz"},
             sz, 4);
  return o;
}

Outcome criterion5() {
  Outcome o;
  SchemePtr X = projective_line();
  const RingPtr& r01 = X->ring({0, 1});
  std::set<int> eps_seen;
  std::map<int, CechCochain> ch;
  for (int n = -2; n <= 3; ++n) {
    MFPtr P = line_mf(X, n);
    ch.emplace(n, chern_hn(*P, default_connection(P->bundle), 3));
    const FracMatrix& g = P->bundle->transition(0, 1, {0, 1});
    const CechCochain& c = ch.at(n);
    bool ok = is_cocycle(c);
    for (int i : {0, 1}) {
      const FormMatrix* m = c.find({i});
      ok = ok && m && (*m)(0, 0) == DifferentialForm::scalar(LocalFrac::constant(X->ring({i}), 1));
    }
    const FormMatrix* m01 = c.find({0, 1});
    DifferentialForm f = m01 ? (*m01)(0, 0) : DifferentialForm(r01);
    auto coeffs = dz_coefficients(f);
    // ε·n·dz/z: only the z^{-1} coefficient survives
    if (n == 0) {
      ok = ok && f.is_zero();
    } else {
      ok = ok && coeffs.size() == 1 && coeffs.count(-1);
      if (ok) {
        Rational e = coeffs.at(-1) / n;
        ok = ok && (e == 1 || e == -1);
        if (ok) eps_seen.insert(e == 1 ? 1 : -1);
      }
    }
    // residue oracle straight from the transition function: Res g⁻¹ dg/dz = n
    LocalFrac ginv;
    bool unit = g(0, 0).invert_unit(ginv);
    Laurent lg = (ginv * g(0, 0).derivative(0)).laurent();
    Rational res_oracle = lg.count({-1}) ? lg.at({-1}) : Rational(0);
    Rational res = coeffs.count(-1) ? coeffs.at(-1) : Rational(0);
    ok = ok && unit && abs(res) == abs(res_oracle) && abs(res_oracle) == std::abs(n);
    o.require(ok, "O(" + std::to_string(n) + "): 1 on each patch, Č¹ entry ε·n·dz/z, |residue| = |Res g⁻¹dg| = " +
                      std::to_string(std::abs(n)) + ", cocycle");
  }
  o.require(eps_seen.size() == 1, "one global ε across n (ε = " + (eps_seen.size() == 1 ? std::to_string(*eps_seen.begin()) : std::string("?")) + ")");
  o.require(eps_seen.size() == 1 && *eps_seen.begin() == hkr_epsilon(), "ε matches the library calibration");
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 2}, {-2, 3}, {0, -1}}) {
    MFPtr Pa = line_mf(X, a), Pb = line_mf(X, b);
    MFPtr S = direct_sum(*Pa, *Pb);
    CechCochain cs = chern_hn(*S, default_connection(S->bundle), 3);
    o.require(cs == ch.at(a) + ch.at(b), "additivity O(" + std::to_string(a) + ")⊕O(" + std::to_string(b) + ")");
  }
  return o;
}

void primitive_check(Outcome& o, const std::string& label, const CechCochain& c1, const CechCochain& c2, int bound) {
  o.require(!(c1 == c2), label + ": the two representatives differ");
  ClassComparison cmp = cohomologous(c1, c2, bound);
  bool solved = cmp.status == SolveStatus::Solved;
  o.require(solved, label + ": primitive found within degree bound " + std::to_string(bound));
  if (solved) o.require((total_differential(cmp.primitive) - (c1 - c2)).is_zero(), label + ": back-substitution residual is zero");
}

Outcome criterion6() {
  Outcome o;
  {
    SchemePtr X = projective_line();
    MFPtr P = line_mf(X, 1);
    primitive_check(o, "O(1) on ℙ¹", chern_hn(*P, default_connection(P->bundle), 3),
                    chern_hn(*P, p1_alt_connection(P->bundle, 1), 3), 6);
  }
  {
    Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    SchemePtr X = affine_space({"x", "y"}, x * x + y * y);
    MFPtr P = koszul_mf_global(X, {x, y}, {x, y});
    const RingPtr& r = X->ring({0});
    Connection c2 = default_connection(P->bundle);
    LocalFrac fx = LocalFrac::variable(r, 0), fy = LocalFrac::variable(r, 1);
    // even block {0,1}, odd block {2,3}
    c2.C[0](0, 1) = DifferentialForm::dx(r, 0).times(fy);
    c2.C[0](0, 0) = DifferentialForm::dx(r, 0).times(fx);
    c2.C[0](2, 3) = DifferentialForm::dx(r, 1).times(fx);
    primitive_check(o, "Koszul on 𝔸²", chern_hn(*P, default_connection(P->bundle), 3), chern_hn(*P, c2, 3), 6);
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  Poly x = Poly::variable(1, 0);
  SchemePtr X = punctured_line_cover(x * x);
  MFPtr P = koszul_mf_global(X, {x}, {x});
  SupportSplit split{{0}, {1}};
  CechCochain ch = chern_localized(*P, split, default_connection(P->bundle), 3);
  o.note("     value: " + (ch.is_zero() ? std::string("0") : ch.str()));
  o.require(in_relative_subcomplex(ch, split), "lies in the relative subcomplex");
  o.require(is_cocycle(ch), "cocycle");
  ClassComparison cmp = cohomologous(ch, CechCochain::scalar(X, 3), 8);
  o.require(cmp.status != SolveStatus::Solved, "no primitive within degree bound 8 (nonzero relative class)");
  return o;
}

Outcome criterion8() {
  Outcome o;
  Poly x = Poly::variable(1, 0);
  SchemePtr X = affine_space({"x"}, x * x);
  MFPtr P = koszul_mf_global(X, {x}, {x});
  auto G = std::make_shared<GroupAction>();
  G->names = {"e", "-1"};
  G->table = {{0, 1}, {1, 0}};
  G->matrices = {{{{Rational(1)}}}, {{{Rational(-1)}}}};
  G->validate(*X);
  const RingPtr& r = X->ring({0});
  FracMatrix id = frac_identity(r, 2), sg = frac_identity(r, 2);
  sg(1, 1) = LocalFrac::constant(r, -1);  // the induced action on e₁
  EquivariantMF E{P, G, {{id}, {sg}}};
  Connection c = default_connection(P->bundle);

  EquivariantFamily hh = chern_equivariant_hh(E, c);
  EquivariantFamily hn = chern_equivariant_hn(E, c, 3);
  CechCochain half_hh = chern_hh(*P, c) * Rational(1, 2);
  o.require(hh.comp[0].str() == half_hh.str(), "g = e component equals (1/2)·ch_HH(P)");

  // oracle: at the origin φ_{-1} = diag(1, -1) on (even, odd); exp(-R) restricts to the identity
  Rational phi[2][2] = {{1, 0}, {0, -1}};
  Rational oracle = Rational(1, 2) * (phi[0][0] - phi[1][1]);
  const FormMatrix* m = hh.comp[1].find({0});
  bool only = m && hh.comp[1].entries().size() == 1 &&
              (*m)(0, 0) == DifferentialForm::scalar(LocalFrac::constant((*m)(0, 0).ring(), oracle));
  o.require(only, "g = -1 component equals the 2×2 oracle (1/2)·str(φ_{-1}|₀) = " + oracle.get_str());

  bool slice = true;
  for (int g = 0; g < 2; ++g) slice = slice && hn.comp[g].u_slice(0) == hh.comp[g];
  o.require(slice, "u⁰ slice of tr_∇Ψ(η_π) equals the HH formula");
  bool cov = true;
  for (int h = 0; h < 2; ++h)
    for (int g = 0; g < 2; ++g) cov = cov && conjugate_component(hn, h, g) == hn.comp[g];
  o.require(cov, "conjugation covariance");
  EquivariantFamily p = coinvariant_project(hn);
  o.require(coinvariant_project(p) == p, "coinvariant projection is idempotent");
  o.require(p == hn, "the family is already coinvariant");
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion9() {
  Outcome o;
  std::string cli = MFCHERN_CLI_PATH, dir = MFCHERN_CONFIG_DIR;
  std::vector<std::string> jobs = {
      "--command chern --input " + dir + "/p1_o3.json",
      "--command chern-equivariant --input " + dir + "/koszul_z2.json",
      "--command chern-localized --input " + dir + "/koszul_localized.json",
      "--command verify --suite b_squared curvature_bracket --seed 11",
  };
  for (size_t k = 0; k < jobs.size(); ++k) {
    std::string out[2];
    for (int run = 0; run < 2; ++run) {
      out[run] = "acceptance_cli_" + std::to_string(k) + "_" + std::to_string(run) + ".json";
      std::string cmd = cli + " " + jobs[k] + " --output " + out[run] + " > /dev/null 2>&1";
      int rc = std::system(cmd.c_str());
      (void)rc;
    }
    std::string a = slurp(out[0]), b = slurp(out[1]);
    o.require(!a.empty() && a == b, "byte-identical: " + jobs[k]);
    std::remove(out[0].c_str());
    std::remove(out[1].c_str());
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::pair<std::string, std::function<Outcome()>>> crit = {
      {"tr_nabla intertwines (uB + b) with (ud + d_Čech - dw) on 𝔸¹, 𝔸², ℙ¹", criterion1},
      {"curvature identities [u∇+δ, κ'] and [u∇+δ, R^j]", criterion2},
      {"retract chains ξ_i and the cycle η_π", criterion3},
      {"homological algebra suite with negative controls", criterion4},
      {"ℙ¹ golden values, additivity and residues", criterion5},
      {"connection independence by explicit primitives", criterion6},
      {"localized character of Koszul (x,x) is a nonzero relative class", criterion7},
      {"ℤ/2-equivariant character on (𝔸¹, x²)", criterion8},
      {"CLI determinism", criterion9},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  bool all = true;
  for (size_t k = 0; k < crit.size(); ++k) {
    int id = static_cast<int>(k) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = crit[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << id << " " << crit[k].first << "\n";
    for (const auto& n : o.notes) std::cout << "     " << n << "\n";
    std::cout.flush();
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
