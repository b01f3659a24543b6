#include "mfchern/linsolve.hpp"

#include <cstdlib>
#include <stdexcept>

namespace mfc {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved: return "solved";
    case SolveStatus::NoneWithinBound: return "none-within-bound";
    case SolveStatus::NoSolution: return "no-solution";
  }
  return "?";
}

RationalSolution solve_rational_system(int nunknowns, const std::vector<SparseRow>& rows) {
  RationalSolution out;
  std::map<int, SparseRow> pivots;  // pivot column -> row with leading coefficient 1
  bool inconsistent = false;
  for (const SparseRow& r0 : rows) {
    if (r0.coef.empty() && r0.rhs != 0) {
      out.status = SolveStatus::NoSolution;
      return out;
    }
    SparseRow r = r0;
    for (auto it = r.coef.begin(); it != r.coef.end();) {
      if (it->second == 0) it = r.coef.erase(it);
      else ++it;
    }
    // reduce against existing pivots in increasing column order
    while (!r.coef.empty()) {
      auto lead = r.coef.begin();
      auto p = pivots.find(lead->first);
      if (p == pivots.end()) break;
      Rational f = lead->second;
      for (const auto& [c, v] : p->second.coef) {
        Rational& slot = r.coef[c];
        slot -= f * v;
        if (slot == 0) r.coef.erase(c);
      }
      r.rhs -= f * p->second.rhs;
    }
    if (r.coef.empty()) {
      if (r.rhs != 0) inconsistent = true;
      continue;
    }
    // remaining non-leading columns may still hold pivots; the back substitution handles them
    Rational lead = r.coef.begin()->second;
    for (auto& [c, v] : r.coef) v /= lead;
    r.rhs /= lead;
    pivots.emplace(r.coef.begin()->first, std::move(r));
  }
  if (inconsistent) {
    out.status = SolveStatus::NoneWithinBound;
    return out;
  }
  out.values.assign(nunknowns, Rational(0));
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    Rational v = it->second.rhs;
    for (const auto& [c, a] : it->second.coef)
      if (c != it->first) v -= a * out.values[c];
    out.values[it->first] = v;
  }
  out.status = SolveStatus::Solved;
  return out;
}

std::vector<bool> inverted_variables(const Ring& r) {
  std::vector<bool> out(r.nvars(), false);
  for (int k = 0; k < static_cast<int>(r.gens.size()); ++k) {
    int v = r.gen_variable(k);
    if (v >= 0) out[v] = true;
  }
  return out;
}

static void enumerate(int i, int remaining, const std::vector<bool>& neg, Exponent& cur, std::vector<Exponent>& out) {
  if (i == static_cast<int>(cur.size())) {
    out.push_back(cur);
    return;
  }
  int lo = neg[i] ? -remaining : 0;
  for (int e = lo; e <= remaining; ++e) {
    cur[i] = e;
    enumerate(i + 1, remaining - std::abs(e), neg, cur, out);
  }
  cur[i] = 0;
}

std::vector<Exponent> monomials_up_to(int nvars, int bound, const std::vector<bool>& allow_negative) {
  std::vector<Exponent> out;
  Exponent cur(nvars, 0);
  enumerate(0, bound, allow_negative, cur, out);
  return out;
}

GradedSolution solve_linear_graded(const std::vector<LinearEquation>& eqs, int nunknowns, int degree_bound) {
  GradedSolution out;
  if (eqs.empty()) {
    out.status = SolveStatus::Solved;
    return out;
  }
  RingPtr ring = eqs.front().rhs.ring();
  if (!ring->laurent()) throw std::domain_error("graded solving needs a Laurent-presentable ring");
  auto monos = monomials_up_to(ring->nvars(), degree_bound, inverted_variables(*ring));
  int m = static_cast<int>(monos.size());
  std::vector<SparseRow> rows;
  for (const auto& eq : eqs) {
    if (static_cast<int>(eq.coeffs.size()) != nunknowns) throw std::invalid_argument("equation arity mismatch");
    std::map<Exponent, SparseRow, GrlexLess> by_mono;
    for (const auto& [e, c] : eq.rhs.laurent()) by_mono[e].rhs += c;
    for (int j = 0; j < nunknowns; ++j) {
      if (eq.coeffs[j].is_zero()) continue;
      Laurent cl = eq.coeffs[j].laurent();
      for (int a = 0; a < m; ++a)
        for (const auto& [e, c] : cl) {
          Exponent f = e;
          for (size_t i = 0; i < f.size(); ++i) f[i] += monos[a][i];
          by_mono[f].coef[j * m + a] += c;
        }
    }
    for (auto& [e, row] : by_mono) rows.push_back(std::move(row));
  }
  RationalSolution rs = solve_rational_system(nunknowns * m, rows);
  out.status = rs.status;
  if (rs.status != SolveStatus::Solved) return out;
  for (int j = 0; j < nunknowns; ++j) {
    Laurent l;
    for (int a = 0; a < m; ++a)
      if (rs.values[j * m + a] != 0) l[monos[a]] = rs.values[j * m + a];
    out.unknowns.push_back(LocalFrac::from_laurent(ring, l));
  }
  return out;
}

}  // namespace mfc
