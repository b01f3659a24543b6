#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mfchern/verify.hpp"

using namespace mfc;

namespace {

VerifySetup setup_named(const std::string& name) {
  for (auto& s : standard_setups())
    if (s.name == name) return s;
  throw std::out_of_range(name);
}

}  // namespace

TEST(Scheme, ProjectiveLineTuplesAndPotential) {
  SchemePtr X = projective_line();
  EXPECT_EQ(X->num_patches(), 2);
  EXPECT_EQ(X->grading(), Grading::Z);
  EXPECT_EQ(X->tuples(1).size(), 1u);
  EXPECT_EQ(X->max_cech_degree(), 1);
  EXPECT_TRUE(X->potential({0, 1}).is_zero());
  // t = 1/z pulled back to U01 composes to the identity on z
  const RingMap& m = X->restriction({1}, {0, 1});
  LocalFrac t = m.apply(LocalFrac::variable(X->ring({1}), 0));
  EXPECT_EQ(t * LocalFrac::variable(X->ring({0, 1}), 0), fx::c(X->ring({0, 1}), 1));
}

TEST(Scheme, RejectsMissingPotentialAndBadGroup) {
  SchemeSpec spec;
  spec.dimension = 1;
  spec.patches = {{"U", {"x"}, {}}};
  EXPECT_THROW(CoveredScheme::build(spec), std::invalid_argument);

  SchemePtr X = affine_space({"x"}, fx::X1() * fx::X1() * fx::X1());
  GroupAction G;
  G.names = {"e", "s"};
  G.table = {{0, 1}, {1, 0}};
  G.matrices = {{{{Rational(1)}}}, {{{Rational(-1)}}}};
  EXPECT_THROW(G.validate(*X), std::invalid_argument);  // x³ is not fixed
}

TEST(Scheme, FixedLocusOfReflectionIsThePoint) {
  fx::Z2Koszul z;
  FixedLocus e = fixed_locus(*z.X, *z.G, 0), s = fixed_locus(*z.X, *z.G, 1);
  EXPECT_EQ(e.scheme.dimension(), 1);
  EXPECT_EQ(s.scheme.dimension(), 0);
  EXPECT_EQ(s.patches, std::vector<int>{0});
  EXPECT_TRUE(s.scheme.potential({0}).is_zero());
}

TEST(Bundle, LineBundlesSatisfyTheCocycleCondition) {
  SchemePtr X = projective_line();
  for (int n = -2; n <= 3; ++n) EXPECT_TRUE(line_bundle_p1(X, n)->check().empty()) << n;
  BundlePtr E = line_bundle_p1(X, 2);
  const FracMatrix& g = E->transition(0, 1, {0, 1});
  const FracMatrix& h = E->transition(1, 0, {0, 1});
  EXPECT_TRUE(frac_equal(frac_mul(g, h), frac_identity(X->ring({0, 1}), 1)));
}

TEST(Cech, DifferentialSquaresToZeroAndIdentityIsUnit) {
  VerifySetup s = setup_named("P1");
  Rng rng(5);
  BundlePtr E = s.objects[0].P->bundle, F = s.objects[1].P->bundle;
  for (int k = 0; k < 20; ++k) {
    CechCochain a = random_cochain(rng, E, F, 2);
    EXPECT_TRUE(cech_differential(cech_differential(a)).is_zero());
    EXPECT_EQ(acw_product(CechCochain::identity(E, 2), a), a);
    EXPECT_EQ(acw_product(a, CechCochain::identity(F, 2)), a);
  }
}

TEST(Cech, AcwProductIsAssociative) {
  VerifySetup s = setup_named("P1");
  Rng rng(9);
  BundlePtr E = s.objects[0].P->bundle, F = s.objects[1].P->bundle;
  for (int k = 0; k < 20; ++k) {
    CechCochain a = random_cochain(rng, E, F, 2), b = random_cochain(rng, F, E, 2), c = random_cochain(rng, E, F, 2);
    EXPECT_EQ(acw_product(acw_product(a, b), c), acw_product(a, acw_product(b, c)));
  }
}

TEST(Cech, ExpNegInvertsOnNilpotentCurvature) {
  SchemePtr X = projective_line();
  MFPtr P = fx::line_mf(X, 2);
  CechCochain R = total_curvature(*P, default_connection(P->bundle), true, 2);
  EXPECT_FALSE(R.is_zero());
  EXPECT_EQ(acw_product(exp_neg(R), exp_neg(-R)), CechCochain::identity(P->bundle, 2));
}

TEST(MF, KoszulIsAFactorizationAndWrongDeltaIsCaught) {
  fx::Z2Koszul z;
  EXPECT_TRUE(check_mf(*z.P).empty());
  EXPECT_FALSE(z.P->is_curved());
  std::vector<FracMatrix> bad = z.P->delta;
  bad[0](0, 1) = bad[0](0, 1) * Rational(2);
  MFPtr Q = make_mf(z.P->bundle, bad);
  EXPECT_FALSE(check_mf(*Q).empty());
  Poly x = fx::X1();
  EXPECT_THROW(koszul_mf_global(z.X, {x}, {x * Rational(3)}), std::invalid_argument);
}

TEST(MF, ShiftAndSumStayFactorizations) {
  fx::Z2Koszul z;
  MFPtr S = shift(*z.P);
  EXPECT_TRUE(check_mf(*S).empty());
  EXPECT_EQ(S->bundle->degree(0), z.P->bundle->degree(0) + 1);
  MFPtr D = direct_sum(*z.P, *S);
  EXPECT_TRUE(check_mf(*D).empty());
  EXPECT_EQ(D->rank(), 4);
  // the identity is closed, δ itself is not: D(δ) = 2δ² = 2w
  EXPECT_TRUE(hom_differential(*z.P, *z.P, CechCochain::identity(z.P->bundle, 0)).is_zero());
  Poly x = fx::X1();
  CechCochain two_w = CechCochain::identity(z.P->bundle, 0);
  for (auto& f : two_w.at({0}).a)
    if (!f.is_zero()) f = f.times(LocalFrac(z.X->ring({0}), x * x * Rational(2)));
  EXPECT_EQ(hom_differential(*z.P, *z.P, z.P->delta_cochain(0)), two_w);
}

TEST(MF, EquivariantStructureChecks) {
  fx::Z2Koszul z;
  EXPECT_TRUE(z.E.check().empty());
  EquivariantMF wrong = z.E;
  wrong.phi[1][0] = frac_identity(z.X->ring({0}), 2);
  EXPECT_FALSE(wrong.check().empty());
}

TEST(Connection, AtiyahClassOfLineBundles) {
  SchemePtr X = projective_line();
  const RingPtr& r = X->ring({0, 1});
  LocalFrac z = LocalFrac::variable(r, 0), zi;
  ASSERT_TRUE(z.invert_unit(zi));
  for (int n = -2; n <= 3; ++n) {
    BundlePtr E = line_bundle_p1(X, n);
    CechCochain at = atiyah_cocycle(default_connection(E), 0);
    EXPECT_TRUE(cech_differential(at).is_zero());
    DifferentialForm expect = DifferentialForm::dx(r, 0).times(zi * Rational(n));
    const FormMatrix* m = at.find({0, 1});
    if (n == 0) {
      EXPECT_TRUE(at.is_zero());
      continue;
    }
    ASSERT_NE(m, nullptr);
    EXPECT_TRUE((*m)(0, 0) == expect || (*m)(0, 0) == -expect) << (*m)(0, 0).str();
  }
}

TEST(Connection, AveragingProducesAnEquivariantConnection) {
  fx::Z2Koszul z;
  const RingPtr& r = z.X->ring({0});
  Connection c = default_connection(z.P->bundle);
  EXPECT_TRUE(is_equivariant(c, z.E));
  c.C[0](0, 0) = DifferentialForm::dx(r, 0);  // dx is odd under x ↦ -x
  c.C[0](1, 1) = DifferentialForm::dx(r, 0).times(LocalFrac::variable(r, 0));
  EXPECT_FALSE(is_equivariant(c, z.E));
  Connection avg = average_connection(c, z.E);
  EXPECT_TRUE(is_equivariant(avg, z.E));
  EXPECT_TRUE(avg.C[0](0, 0).is_zero());
  EXPECT_EQ(avg.C[0](1, 1), c.C[0](1, 1));
}

TEST(Connection, CurvatureOfTrivialConnectionOnAffineSpaceIsDelta) {
  fx::Z2Koszul z;
  Connection c = default_connection(z.P->bundle);
  EXPECT_TRUE(connection_curvature(c, 0).is_zero());
  EXPECT_FALSE(total_curvature(*z.P, c, true, 2).is_zero());
}

TEST(Hochschild, BSquaredAndBBAnticommuteOnNormalizedChains) {
  VerifySetup s = setup_named("A1");
  CechCategory cat(s.objects, 3);
  Rng rng(3);
  int sampled = 0;
  for (int k = 0; k < 30; ++k) {
    CechChain x = random_chain(rng, cat, 3);
    if (x.terms.empty()) continue;
    ++sampled;
    EXPECT_TRUE(canonical(cat, hoch_b(cat, hoch_b(cat, x)), false).empty());
    EXPECT_TRUE(canonical(cat, connes_B(cat, connes_B(cat, x)), false).empty());
    auto bB = hoch_b(cat, connes_B(cat, x));
    bB.append(connes_B(cat, hoch_b(cat, x)));
    EXPECT_TRUE(canonical(cat, bB, true).empty());
  }
  EXPECT_GT(sampled, 10);
}

TEST(Hochschild, TraceOfTheIdentityStringIsTheChernCharacter) {
  VerifySetup s = setup_named("P1");
  CechCategory cat(s.objects, 3);
  CechChain x{3, {}};
  x.add(1, 0, {cat.identity(0)});
  const CechObject& o = s.objects[0];
  EXPECT_EQ(tr_nabla(cat, x), chern_hn(*o.P, o.nabla, 3));
}

TEST(Hochschild, CyclicOperatorHasOrderNPlusOne) {
  VerifySetup s = setup_named("A2");
  CechCategory cat(s.objects, 2);
  Rng rng(12);
  for (int k = 0; k < 20; ++k) {
    CechChain x = random_chain(rng, cat, 3);
    for (const auto& t : x.terms) {
      auto cur = t;
      for (size_t i = 0; i < t.s.size(); ++i) cur = cyclic_t(cat, cur);
      CechChain a{2, {}}, b{2, {}};
      a.add(cur.coef, cur.u, cur.s);
      b.add(t.coef, t.u, t.s);
      EXPECT_TRUE(canonical_difference(cat, a, b, false).empty());
    }
  }
}

TEST(Hochschild, RetractCycleIsClosed) {
  RetractReport r = retract_check(2, 3);
  EXPECT_TRUE(r.all_pass());
}
