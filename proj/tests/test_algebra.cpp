#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mfchern/config.hpp"
#include "mfchern/linsolve.hpp"

using namespace mfc;

TEST(Poly, ArithmeticAndExactDivision) {
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  Poly p = (x + y) * (x - y);
  EXPECT_EQ(p, x * x - y * y);
  Poly q;
  ASSERT_TRUE(p.divide_exact(x + y, q));
  EXPECT_EQ(q, x - y);
  EXPECT_FALSE(p.divide_exact(x + y * Rational(2), q));
  EXPECT_EQ((x + y).pow(3).total_degree(), 3);
  EXPECT_EQ((x * x * y).derivative(0), x * y * Rational(2));
}

TEST(Poly, GrlexOrdersByDegreeFirst) {
  GrlexLess lt;
  EXPECT_TRUE(lt({0, 1}, {2, 0}));
  EXPECT_TRUE(lt({0, 1}, {1, 0}));
  EXPECT_FALSE(lt({1, 1}, {2, 0}) && lt({2, 0}, {1, 1}));
}

TEST(LocalFrac, CancelsDeclaredGenerators) {
  RingPtr r = make_ring("U", {"z"}, {Poly::variable(1, 0)});
  LocalFrac z = LocalFrac::variable(r, 0);
  LocalFrac zi;
  ASSERT_TRUE(z.invert_unit(zi));
  EXPECT_EQ(z * zi, fx::c(r, 1));
  EXPECT_TRUE((z * zi - fx::c(r, 1)).is_zero());
  LocalFrac one_plus = z + fx::c(r, 1);
  LocalFrac dummy;
  EXPECT_FALSE(one_plus.invert_unit(dummy));
}

TEST(LocalFrac, LaurentExpansionAndDerivative) {
  RingPtr r = make_ring("U", {"z"}, {Poly::variable(1, 0)});
  LocalFrac z = LocalFrac::variable(r, 0), zi;
  ASSERT_TRUE(z.invert_unit(zi));
  LocalFrac f = zi * zi * fx::c(r, 3) + z;
  Laurent l = f.laurent();
  EXPECT_EQ(l.size(), 2u);
  EXPECT_EQ(l.at({-2}), 3);
  EXPECT_EQ(l.at({1}), 1);
  EXPECT_EQ(f.derivative(0), zi * zi * zi * fx::c(r, -6) + fx::c(r, 1));
  EXPECT_EQ(LocalFrac::from_laurent(r, l), f);
}

TEST(RingMap, ComposeMatchesSequentialApplication) {
  RingPtr a = make_ring("A", {"x", "y"});
  RingPtr b = make_ring("B", {"s", "t"});
  LocalFrac s = LocalFrac::variable(b, 0), t = LocalFrac::variable(b, 1);
  RingMap m(a, b, {s + t, s * t});
  RingMap swap(b, b, {t, s});
  LocalFrac f = LocalFrac::variable(a, 0) * LocalFrac::variable(a, 1);
  EXPECT_EQ(swap.compose_after(m).apply(f), swap.apply(m.apply(f)));
}

TEST(Forms, WedgeAnticommutesAndDSquaredVanishes) {
  RingPtr r = make_ring("A", {"x", "y"});
  DifferentialForm dx = DifferentialForm::dx(r, 0), dy = DifferentialForm::dx(r, 1);
  EXPECT_EQ(wedge(dx, dy), -wedge(dy, dx));
  EXPECT_TRUE(wedge(dx, dx).is_zero());
  LocalFrac f = LocalFrac::variable(r, 0) * LocalFrac::variable(r, 1) * LocalFrac::variable(r, 1);
  DifferentialForm w = dx.times(f);
  EXPECT_TRUE(de_rham_d(de_rham_d(DifferentialForm::scalar(f))).is_zero());
  EXPECT_EQ(de_rham_d(w), wedge(dy, dx).times(LocalFrac::variable(r, 0) * LocalFrac::variable(r, 1) * Rational(2)));
  EXPECT_EQ(wedge_sign(2, 1), -1);
  EXPECT_EQ(wedge_sign(1, 1), 0);
}

TEST(Forms, UTruncationDropsHighPowers) {
  RingPtr r = make_ring("A", {"x"});
  DifferentialForm a = DifferentialForm::scalar(fx::c(r, 1), 1);
  EXPECT_TRUE(wedge(a, a, 1).is_zero());
  EXPECT_FALSE(wedge(a, a, 2).is_zero());
  EXPECT_EQ(wedge(a, a, 2).u_slice(2), DifferentialForm::scalar(fx::c(r, 1), 2));
}

TEST(LinearSolve, SolvesAndReportsInconsistency) {
  std::vector<SparseRow> rows(2);
  rows[0].coef = {{0, 1}, {1, 1}};
  rows[0].rhs = 3;
  rows[1].coef = {{0, 1}, {1, -1}};
  rows[1].rhs = 1;
  RationalSolution s = solve_rational_system(2, rows);
  ASSERT_EQ(s.status, SolveStatus::Solved);
  EXPECT_EQ(s.values[0], 2);
  EXPECT_EQ(s.values[1], 1);
  rows[1].coef = {{0, 2}, {1, 2}};
  rows[1].rhs = 7;
  EXPECT_NE(solve_rational_system(2, rows).status, SolveStatus::Solved);
}

TEST(LinearSolve, MonomialEnumeration) {
  EXPECT_EQ(monomials_up_to(2, 2, {false, false}).size(), 6u);
  // |e|_1 <= 1 with a Laurent variable: 1, x, 1/x
  EXPECT_EQ(monomials_up_to(1, 1, {true}).size(), 3u);
}

TEST(ParseExpr, HandlesPrecedenceAndUnits) {
  RingPtr r = make_ring("U", {"x", "y"}, {Poly::variable(2, 0)});
  LocalFrac x = LocalFrac::variable(r, 0), y = LocalFrac::variable(r, 1);
  EXPECT_EQ(parse_expr("x + 2*y^2", r), x + y * y * Rational(2));
  EXPECT_EQ(parse_expr("-(x - y)*(x + y)", r), -(x * x - y * y));
  LocalFrac xi;
  ASSERT_TRUE(x.invert_unit(xi));
  EXPECT_EQ(parse_expr("y/x", r), y * xi);
  EXPECT_EQ(parse_expr("3/2", r), fx::c(r, Rational(3, 2)));
}

TEST(ParseExpr, RejectsBadInput) {
  RingPtr r = make_ring("U", {"x", "y"});
  EXPECT_ANY_THROW(parse_expr("x/y", r));
  EXPECT_ANY_THROW(parse_expr("x + q", r));
  EXPECT_ANY_THROW(parse_expr("(x", r));
  EXPECT_ANY_THROW(parse_expr("", r));
}
