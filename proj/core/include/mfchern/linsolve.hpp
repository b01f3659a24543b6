#pragma once

#include <map>
#include <vector>

#include "mfchern/localfrac.hpp"

namespace mfc {

enum class SolveStatus { Solved, NoneWithinBound, NoSolution };
const char* to_string(SolveStatus s);

struct SparseRow {
  std::map<int, Rational> coef;
  Rational rhs;
};

struct RationalSolution {
  SolveStatus status = SolveStatus::NoneWithinBound;
  std::vector<Rational> values;  // free unknowns set to zero
};

// Exact Gaussian elimination over Q. Inconsistent systems report NoneWithinBound,
// except a row with no unknowns and nonzero right side, which is NoSolution.
RationalSolution solve_rational_system(int nunknowns, const std::vector<SparseRow>& rows);

// Equation sum_j coeffs[j] * a_j = rhs, all in one Laurent-presentable ring.
struct LinearEquation {
  std::vector<LocalFrac> coeffs;
  LocalFrac rhs;
};

struct GradedSolution {
  SolveStatus status = SolveStatus::NoneWithinBound;
  std::vector<LocalFrac> unknowns;
};

// Unknowns range over Laurent polynomials whose monomials have |exponent|_1 <= bound
// (negative exponents only on inverted variables).
GradedSolution solve_linear_graded(const std::vector<LinearEquation>& eqs, int nunknowns, int degree_bound);

// all exponents with |e|_1 <= bound; allow_negative[i] permits e[i] < 0
std::vector<Exponent> monomials_up_to(int nvars, int bound, const std::vector<bool>& allow_negative);
std::vector<bool> inverted_variables(const Ring& r);

}  // namespace mfc
