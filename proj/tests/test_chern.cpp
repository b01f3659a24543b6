#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace mfc;

namespace {

bool cohomologous_to_zero(const CechCochain& c, int bound = 6) {
  if (c.is_zero()) return true;
  return cohomologous(c, CechCochain::scalar(c.scheme(), c.u_trunc()), bound).status == SolveStatus::Solved;
}

}  // namespace

TEST(Chern, TrivialLineBundleIsOne) {
  SchemePtr X = affine_space({"x"}, Poly(1), true);
  BundlePtr E = VectorBundle::line(X);
  MFPtr P = make_mf(E, {frac_zero(X->ring({0}), 1, 1)});
  CechCochain ch = chern_hn(*P, default_connection(E), 3);
  CechCochain one = CechCochain::scalar(X, 3);
  one.add({0}, 0, 0, DifferentialForm::scalar(fx::c(X->ring({0}), 1)));
  EXPECT_EQ(ch, one);
}

TEST(Chern, KoszulOnTheLineIsExact) {
  fx::Z2Koszul z;
  CechCochain ch = chern_hn(*z.P, default_connection(z.P->bundle), 3);
  EXPECT_TRUE(is_cocycle(ch));
  EXPECT_TRUE(cohomologous_to_zero(ch));
  EXPECT_EQ(chern_hh(*z.P, default_connection(z.P->bundle)), ch.u_slice(0));
}

TEST(Chern, ShiftNegatesAndSumAdds) {
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  SchemePtr X = affine_space({"x", "y"}, x * y);
  MFPtr P = koszul_mf_global(X, {x}, {y});
  MFPtr S = shift(*P);
  auto ch = [](const MFPtr& Q) { return chern_hn(*Q, default_connection(Q->bundle), 2); };
  EXPECT_EQ(ch(S), -ch(P));
  EXPECT_TRUE(ch(direct_sum(*P, *S)).is_zero());
  EXPECT_EQ(ch(direct_sum(*P, *P)), ch(P) * Rational(2));
}

TEST(Chern, NonFactorizationIsRejected) {
  fx::Z2Koszul z;
  std::vector<FracMatrix> bad = z.P->delta;
  bad[0](1, 0) = bad[0](1, 0) * Rational(3);
  MFPtr Q = make_mf(z.P->bundle, bad);
  EXPECT_THROW(chern_hn(*Q, default_connection(Q->bundle), 2), std::invalid_argument);
}

TEST(Chern, EpsilonIsStable) { EXPECT_EQ(hkr_epsilon(), hkr_epsilon()); }

TEST(Localized, WholeCoverReducesToThePlainCharacter) {
  Poly x = fx::X1();
  SchemePtr X = punctured_line_cover(x * x);
  MFPtr P = koszul_mf_global(X, {x}, {x});
  Connection c = default_connection(P->bundle);
  EXPECT_EQ(chern_localized(*P, SupportSplit{{0, 1}, {}}, c, 3), chern_hn(*P, c, 3));
}

TEST(Localized, KoszulSupportedAtTheOriginIsRelative) {
  Poly x = fx::X1();
  SchemePtr X = punctured_line_cover(x * x);
  MFPtr P = koszul_mf_global(X, {x}, {x});
  SupportSplit split{{0}, {1}};
  CechCochain ch = chern_localized(*P, split, default_connection(P->bundle), 3);
  EXPECT_TRUE(in_relative_subcomplex(ch, split));
  EXPECT_TRUE(is_cocycle(ch));
}

TEST(Localized, BadSplitsAreRejected) {
  Poly x = fx::X1();
  SchemePtr X = punctured_line_cover(x * x);
  MFPtr P = koszul_mf_global(X, {x}, {x});
  Connection c = default_connection(P->bundle);
  EXPECT_THROW(chern_localized(*P, SupportSplit{{0}, {0, 1}}, c, 2), std::invalid_argument);
  EXPECT_THROW(chern_localized(*P, SupportSplit{{0}, {}}, c, 2), std::invalid_argument);
  EXPECT_THROW(chern_localized(*P, SupportSplit{{0}, {2}}, c, 2), std::invalid_argument);
}

TEST(Localized, NotAcyclicOffTheSupportIsNotACocycle) {
  // a rank-one trivial bundle with δ = 0 and w = 0 is supported everywhere
  SchemeSpec spec;
  spec.grading = Grading::Z;
  spec.dimension = 1;
  spec.patches = {{"U0", {"x"}, {}}, {"U1", {"x"}, {Poly::variable(1, 0)}}};
  GluingSpec g;
  g.i = 0;
  g.j = 1;
  g.denominators = {Poly::variable(1, 0)};
  g.images = {{Poly::variable(1, 0), {0}}};
  spec.gluings = {g};
  spec.potential = {Poly(1), Poly(1)};
  auto X = std::make_shared<const CoveredScheme>(CoveredScheme::build(spec));
  BundlePtr E = VectorBundle::line(X);
  MFPtr P = make_mf(E, {frac_zero(X->ring({0}), 1, 1), frac_zero(X->ring({1}), 1, 1)});
  CechCochain ch = chern_localized(*P, SupportSplit{{0}, {1}}, default_connection(E), 2);
  EXPECT_FALSE(is_cocycle(ch));
}

TEST(Equivariant, TrivialGroupGivesThePlainCharacter) {
  fx::Z2Koszul z;
  auto G = std::make_shared<GroupAction>();
  G->names = {"e"};
  G->table = {{0}};
  G->matrices = {{{{Rational(1)}}}};
  G->validate(*z.X);
  EquivariantMF E{z.P, G, {{frac_identity(z.X->ring({0}), 2)}}};
  Connection c = default_connection(z.P->bundle);
  EXPECT_EQ(chern_equivariant_hh(E, c).comp[0].str(), chern_hh(*z.P, c).str());
  EXPECT_EQ(chern_equivariant_hn(E, c, 2).comp[0].str(), chern_hn(*z.P, c, 2).str());
}

TEST(Equivariant, ReflectionComponentIsHalfTheSupertraceOfPhi) {
  fx::Z2Koszul z;
  Connection c = default_connection(z.P->bundle);
  EquivariantFamily hh = chern_equivariant_hh(z.E, c);
  const FormMatrix* m = hh.comp[1].find({0});
  ASSERT_NE(m, nullptr);
  EXPECT_EQ((*m)(0, 0), DifferentialForm::scalar(fx::c((*m)(0, 0).ring(), 1)));
  EquivariantFamily hn = chern_equivariant_hn(z.E, c, 3);
  for (int g = 0; g < 2; ++g) EXPECT_TRUE(is_cocycle(hn.comp[g]));
  EXPECT_EQ(hn.comp[1].u_slice(0), hh.comp[1]);
}

TEST(Equivariant, NonEquivariantConnectionIsRejected) {
  fx::Z2Koszul z;
  Connection c = default_connection(z.P->bundle);
  c.C[0](0, 0) = DifferentialForm::dx(z.X->ring({0}), 0);
  EXPECT_THROW(chern_equivariant_hh(z.E, c), std::invalid_argument);
}

TEST(BoundaryBulk, IdentityGivesTheHHCharacterAndZeroGivesZero) {
  fx::Z2Koszul z;
  Connection c = default_connection(z.P->bundle);
  EXPECT_TRUE(boundary_bulk(CechCochain::identity(z.P->bundle, 0), z.E, c) == chern_equivariant_hh(z.E, c));
  EquivariantFamily zero = boundary_bulk(CechCochain::identity(z.P->bundle, 0) * Rational(0), z.E, c);
  for (const auto& comp : zero.comp) EXPECT_TRUE(comp.is_zero());
}

TEST(BoundaryBulk, ExactEndomorphismGivesExactClasses) {
  fx::Z2Koszul z;
  Connection c = default_connection(z.P->bundle);
  const RingPtr& r = z.X->ring({0});
  // β = x·E_01 is odd and commutes with the action, κ = [δ, β] = x²·id
  CechCochain beta(z.P->bundle, z.P->bundle, 0);
  beta.add({0}, 0, 1, DifferentialForm::scalar(LocalFrac::variable(r, 0)));
  CechCochain kappa = hom_differential(*z.P, *z.P, beta);
  ASSERT_FALSE(kappa.is_zero());
  EquivariantFamily f = boundary_bulk(kappa, z.E, c);
  for (const auto& comp : f.comp) {
    EXPECT_TRUE(is_cocycle(comp));
    EXPECT_TRUE(cohomologous_to_zero(comp));
  }
}

TEST(BoundaryBulk, OpenEndomorphismIsRejected) {
  fx::Z2Koszul z;
  const RingPtr& r = z.X->ring({0});
  CechCochain k(z.P->bundle, z.P->bundle, 0);
  k.add({0}, 0, 0, DifferentialForm::scalar(fx::c(r, 1)));
  EXPECT_THROW(boundary_bulk(k, z.E, default_connection(z.P->bundle)), std::invalid_argument);
}

TEST(Cohomology, TotalDifferentialOfOneIsMinusDw) {
  fx::Z2Koszul z;
  CechCochain one = CechCochain::scalar(z.X, 2);
  const RingPtr& r = z.X->ring({0});
  one.add({0}, 0, 0, DifferentialForm::scalar(fx::c(r, 1)));
  CechCochain expect = CechCochain::scalar(z.X, 2);
  expect.add({0}, 0, 0, DifferentialForm::dx(r, 0).times(LocalFrac::variable(r, 0) * Rational(-2)));
  EXPECT_EQ(total_differential(one), expect);
  EXPECT_TRUE(total_differential(total_differential(expect)).is_zero());
}

TEST(Cohomology, CohomologousFindsAVerifiedPrimitive) {
  SchemePtr X = projective_line();
  MFPtr P = fx::line_mf(X, 2);
  CechCochain a = chern_hn(*P, default_connection(P->bundle), 2);
  CechCochain b = chern_hn(*P, p1_alt_connection(P->bundle, 2), 2);
  ClassComparison cmp = cohomologous(a, b, 4);
  ASSERT_EQ(cmp.status, SolveStatus::Solved);
  EXPECT_EQ(total_differential(cmp.primitive), a - b);
  // O(1) and O(2) are different classes
  MFPtr Q = fx::line_mf(X, 1);
  EXPECT_NE(cohomologous(a, chern_hn(*Q, default_connection(Q->bundle), 2), 6).status, SolveStatus::Solved);
}

TEST(Cohomology, CoinvariantProjectionOnAPermutationAction) {
  // S3 permuting the coordinates of 𝔸³
  SchemePtr X = affine_space({"x", "y", "z"}, Poly(3), true);
  auto G = std::make_shared<GroupAction>();
  std::vector<std::vector<int>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  int n = static_cast<int>(perms.size());
  G->table.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> ab(3);
      for (int i = 0; i < 3; ++i) ab[i] = perms[a][perms[b][i]];
      G->table[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), ab) - perms.begin());
    }
  for (int a = 0; a < n; ++a) {
    G->names.push_back("g" + std::to_string(a));
    std::vector<std::vector<Rational>> M(3, std::vector<Rational>(3, 0));
    for (int i = 0; i < 3; ++i) M[i][perms[a][i]] = 1;
    G->matrices.push_back({M});
  }
  G->validate(*X);
  EquivariantFamily f = make_family(G, X);
  // a non-invariant function on each fixed locus
  for (int g = 0; g < n; ++g) {
    SchemePtr Y = f.locus_scheme(g);
    const RingPtr& r = Y->ring({0});
    CechCochain c = CechCochain::scalar(Y, 0);
    LocalFrac v = LocalFrac::variable(r, 0) * Rational(g + 1);
    c.add({0}, 0, 0, DifferentialForm::scalar(v));
    f.comp[g] = c;
  }
  EquivariantFamily p = coinvariant_project(f);
  EXPECT_FALSE(p == f);
  EXPECT_TRUE(coinvariant_project(p) == p);
  for (int h = 0; h < n; ++h)
    for (int g = 0; g < n; ++g)
      EXPECT_EQ(conjugate_component(p, h, g), p.comp[g]) << h << " " << g;
}
