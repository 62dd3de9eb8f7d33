// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "spectwist/gauge.hpp"
#include "spectwist/models.hpp"

using namespace spectwist;

namespace {

const TwistedTriple& u1u2() {
  static const TwistedTriple t = build_u1u2({1.0, 0.5}, {0.7, -0.2}).triple;
  return t;
}

void BM_Fluctuate(benchmark::State& state) {
  const TwistedTriple& t = u1u2();
  Rng rng(1);
  const Perturbation p = Perturbation::random_normalized(t.shape(), t.sigma(), static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(fluctuate(t, p).d_omega);
}
BENCHMARK(BM_Fluctuate)->Arg(1)->Arg(4)->Arg(16);

void BM_ActMu(benchmark::State& state) {
  const TwistedTriple& t = u1u2();
  Rng rng(2);
  const Perturbation p = Perturbation::random_normalized(t.shape(), t.sigma(), static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(act_mu(t, p, t.dirac()));
}
BENCHMARK(BM_ActMu)->Arg(1)->Arg(4)->Arg(16);

void BM_CheckAxioms(benchmark::State& state) {
  const TwistedTriple& t = u1u2();
  for (auto _ : state) {
    Rng rng(3);
    benchmark::DoNotOptimize(check_axioms(t, 2, rng));
  }
}
BENCHMARK(BM_CheckAxioms);

void BM_GaugeDirac(benchmark::State& state) {
  const TwistedTriple& t = u1u2();
  Rng rng(4);
  const Perturbation p = Perturbation::random_normalized(t.shape(), t.sigma(), 2, rng);
  const Unitary u(AlgebraElement::random_unitary(t.shape(), rng));
  for (auto _ : state) benchmark::DoNotOptimize(gauge_dirac(t, p, u).defect);
}
BENCHMARK(BM_GaugeDirac);

void BM_RealMorita(benchmark::State& state) {
  const TwistedTriple t = twisted_toy();
  const IdempotentData e = make_idempotent(t, 2, AlgebraElement::unit(t.shape().amplified(2)));
  const HermitianConnection c = grassmann(t, e, Side::right);
  for (auto _ : state) benchmark::DoNotOptimize(build_real_triple(t, e, c).route_defect);
}
BENCHMARK(BM_RealMorita);

}  // namespace

BENCHMARK_MAIN();
