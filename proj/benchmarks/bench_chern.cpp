#include <benchmark/benchmark.h>

#include "mfchern/chern.hpp"
#include "mfchern/examples.hpp"
#include "mfchern/verify.hpp"

using namespace mfc;

namespace {

MFPtr koszul_affine(int n) {
  std::vector<std::string> names;
  std::vector<Poly> xs;
  Poly w(n);
  for (int i = 0; i < n; ++i) {
    names.push_back("x" + std::to_string(i));
    xs.push_back(Poly::variable(n, i));
    w += xs.back() * xs.back();
  }
  return koszul_mf_global(affine_space(names, w), xs, xs);
}

}  // namespace

static void BM_ChernKoszul(benchmark::State& state) {
  MFPtr P = koszul_affine(static_cast<int>(state.range(0)));
  Connection c = default_connection(P->bundle);
  for (auto _ : state) benchmark::DoNotOptimize(chern_hn(*P, c, 3));
}
BENCHMARK(BM_ChernKoszul)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_ChernLineBundle(benchmark::State& state) {
  SchemePtr X = projective_line();
  int n = static_cast<int>(state.range(0));
  BundlePtr E = line_bundle_p1(X, n);
  MFPtr P = make_mf(E, {frac_zero(X->ring({0}), 1, 1), frac_zero(X->ring({1}), 1, 1)});
  Connection c = p1_alt_connection(E, n);
  for (auto _ : state) benchmark::DoNotOptimize(chern_hn(*P, c, 3));
}
BENCHMARK(BM_ChernLineBundle)->Arg(1)->Arg(5);

static void BM_TrNablaRandomChains(benchmark::State& state) {
  auto setups = standard_setups();
  const VerifySetup& s = setups.at(static_cast<size_t>(state.range(0)));
  CechCategory cat(s.objects, 3);
  Rng rng(1);
  std::vector<CechChain> chains;
  while (chains.size() < 20) {
    CechChain x = random_chain(rng, cat, 3);
    if (!x.terms.empty()) chains.push_back(std::move(x));
  }
  for (auto _ : state)
    for (const auto& x : chains) benchmark::DoNotOptimize(tr_nabla(cat, x));
  state.SetLabel(s.name);
}
BENCHMARK(BM_TrNablaRandomChains)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_RetractCycle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(retract_check(3, 4));
}
BENCHMARK(BM_RetractCycle)->Unit(benchmark::kMillisecond);

static void BM_PrimitiveSearch(benchmark::State& state) {
  SchemePtr X = projective_line();
  BundlePtr E = line_bundle_p1(X, 1);
  MFPtr P = make_mf(E, {frac_zero(X->ring({0}), 1, 1), frac_zero(X->ring({1}), 1, 1)});
  CechCochain a = chern_hn(*P, default_connection(E), 3), b = chern_hn(*P, p1_alt_connection(E, 1), 3);
  int bound = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cohomologous(a, b, bound));
}
BENCHMARK(BM_PrimitiveSearch)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_EquivariantHN(benchmark::State& state) {
  Poly x = Poly::variable(1, 0);
  SchemePtr X = affine_space({"x"}, x * x);
  MFPtr P = koszul_mf_global(X, {x}, {x});
  auto G = std::make_shared<GroupAction>();
  G->names = {"e", "s"};
  G->table = {{0, 1}, {1, 0}};
  G->matrices = {{{{Rational(1)}}}, {{{Rational(-1)}}}};
  const RingPtr& r = X->ring({0});
  FracMatrix s = frac_identity(r, 2);
  s(1, 1) = LocalFrac::constant(r, -1);
  EquivariantMF E{P, G, {{frac_identity(r, 2)}, {s}}};
  Connection c = default_connection(P->bundle);
  int u = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chern_equivariant_hn(E, c, u));
}
BENCHMARK(BM_EquivariantHN)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
