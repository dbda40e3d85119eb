#include <benchmark/benchmark.h>

#include <random>

#include "brep/classify.hpp"
#include "brep/fundamental.hpp"
#include "brep/oracle.hpp"

using namespace brep;

namespace {

FMat random_regular(const Field* f, std::mt19937& rng) {
  FMat P;
  do {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) P(i, j) = f->element(rng() % f->q());
    }
  } while (det3(P).is_zero());
  return P;
}

void BM_FieldMulInv(benchmark::State& state) {
  const Field* f = Field::of_order(static_cast<std::uint32_t>(state.range(0)));
  std::uint32_t a = 1;
  for (auto _ : state) {
    for (std::uint32_t x = 1; x < f->q(); ++x) a = f->mul(f->inv(x), a == 0 ? 1 : a);
    benchmark::DoNotOptimize(a);
  }
  state.SetItemsProcessed(state.iterations() * (f->q() - 1));
}
BENCHMARK(BM_FieldMulInv)->Arg(9)->Arg(256)->Arg(3125);

void BM_VerifyBorel(benchmark::State& state) {
  const Field* f = Field::get(3, 2);
  std::mt19937 rng(1);
  BorelRep phi = conjugate(instantiate(CanonicalForm::make_I(3, static_cast<int>(state.range(0))), f), random_regular(f, rng));
  for (auto _ : state) benchmark::DoNotOptimize(verify_borel_homomorphism(phi).ok);
}
BENCHMARK(BM_VerifyBorel)->DenseRange(0, 2);

void BM_Classify(benchmark::State& state) {
  const Field* f = Field::get(2, 2);
  std::mt19937 rng(2);
  BorelRep phi = conjugate(instantiate(CanonicalForm::make_VII(2, 0, 1), f), random_regular(f, rng));
  for (auto _ : state) benchmark::DoNotOptimize(normalize_to_canonical(phi).form);
}
BENCHMARK(BM_Classify);

void BM_PointwiseCheck(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const Field* f = Field::of_order(q);
  BorelRep phi = instantiate(CanonicalForm::make_VI(f->p(), {2, 0, -2}, 0), f);
  for (auto _ : state) benchmark::DoNotOptimize(pointwise_hom_check(phi, q).passed);
}
BENCHMARK(BM_PointwiseCheck)->Arg(4)->Arg(9)->Arg(25);

void BM_Sl2Exhaustive(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const Field* f = Field::of_order(q);
  Sl2Formula psi = build_psi(CanonicalForm::make_IV(f->p(), {1, 0, -1}, 0), f);
  for (auto _ : state) benchmark::DoNotOptimize(verify_sl2_hom(psi, q).ok);
}
BENCHMARK(BM_Sl2Exhaustive)->Arg(3)->Arg(5)->Arg(7);

void BM_SolveUMinus(benchmark::State& state) {
  const Field* f = Field::get(3, 1);
  BorelRep phi = instantiate(CanonicalForm::make_I(3, 1), f);
  for (auto _ : state) benchmark::DoNotOptimize(solve_uminus(phi, static_cast<int>(state.range(0))).solution.has_value());
}
BENCHMARK(BM_SolveUMinus)->Arg(6)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
