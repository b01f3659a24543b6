#include "mfchern/examples.hpp"

namespace mfc {

SchemePtr affine_space(std::vector<std::string> vars, const Poly& w, bool z_graded) {
  SchemeSpec s;
  s.grading = z_graded ? Grading::Z : Grading::Z2;
  s.dimension = static_cast<int>(vars.size());
  s.patches.push_back({"U", std::move(vars), {}});
  s.potential.push_back(w);
  return std::make_shared<const CoveredScheme>(CoveredScheme::build(s));
}

SchemePtr punctured_line_cover(const Poly& w) {
  SchemeSpec s;
  s.dimension = 1;
  Poly x = Poly::variable(1, 0);
  s.patches.push_back({"U0", {"x"}, {}});
  s.patches.push_back({"U1", {"x"}, {x}});
  s.gluings.push_back({0, 1, {x}, {{x, {0}}}});
  s.potential = {w, w};
  return std::make_shared<const CoveredScheme>(CoveredScheme::build(s));
}

SchemePtr projective_line() {
  SchemeSpec s;
  s.grading = Grading::Z;
  s.dimension = 1;
  Poly z = Poly::variable(1, 0);
  s.patches.push_back({"U0", {"z"}, {}});
  s.patches.push_back({"U1", {"t"}, {}});
  s.gluings.push_back({0, 1, {z}, {{Poly::constant(1, 1), {1}}}});
  s.potential = {Poly(1), Poly(1)};
  return std::make_shared<const CoveredScheme>(CoveredScheme::build(s));
}

BundlePtr line_bundle_p1(SchemePtr X, int n) {
  const RingPtr& r = X->ring({0, 1});
  FracMatrix g(1, 1, LocalFrac::from_laurent(r, Laurent{{{n}, 1}}));
  FracMatrix gi(1, 1, LocalFrac::from_laurent(r, Laurent{{{-n}, 1}}));
  return std::make_shared<const VectorBundle>(X, std::vector<int>{0}, std::map<std::pair<int, int>, FracMatrix>{{{0, 1}, g}},
                                              std::map<std::pair<int, int>, FracMatrix>{{{0, 1}, gi}});
}

Connection p1_alt_connection(BundlePtr E, int n) {
  Connection c = default_connection(E);
  const RingPtr& r = E->X().ring({0});
  c.C[0](0, 0) = DifferentialForm::dx(r, 0).times(LocalFrac::variable(r, 0) * Rational(n == 0 ? 1 : n));
  return c;
}

}  // namespace mfc
