// Copyright 2026 The z2lpg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "z2lpg/circuit.hpp"
#include "z2lpg/evolution.hpp"
#include "z2lpg/initial_state.hpp"
#include "z2lpg/model.hpp"
#include "z2lpg/sequence.hpp"

using namespace z2lpg;

namespace {

ModelParams faulty(ErrorModel m) {
  ModelParams p;
  p.lambda = m == ErrorModel::analog ? 1.0 : 0.1;
  p.V = 16.0;
  p.error_model = m;
  return p;
}

void BM_BuildHamiltonian(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const HilbertSpace space(LatticeSpec::uniform(L, Boundary::periodic), L / 2);
  const auto seq = make_sequence(SequencePreset::seventeenths);
  for (auto _ : state) {
    auto H = build_hamiltonian(space, faulty(ErrorModel::analog), seq, HamiltonianVariant::faulty);
    benchmark::DoNotOptimize(H);
  }
  state.counters["dim"] = static_cast<double>(space.dimension());
}
BENCHMARK(BM_BuildHamiltonian)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_TrotterStep(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const LatticeSpec spec = LatticeSpec::uniform(L, Boundary::open);
  const HilbertSpace space(spec, L / 2);
  const auto step = compile_step(spec, faulty(ErrorModel::circuit), make_sequence(SequencePreset::elevenths), 0.2);
  StateVector psi = build_initial_state(space, StatePattern::staggered);
  for (auto _ : state) {
    apply_step(space, psi, step);
    benchmark::ClobberMemory();
  }
  state.counters["gates"] = static_cast<double>(step.gates().size());
}
BENCHMARK(BM_TrotterStep)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_KrylovStep(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const HilbertSpace space(LatticeSpec::uniform(L, Boundary::periodic), L / 2);
  const auto H = build_hamiltonian(space, faulty(ErrorModel::analog), make_sequence(SequencePreset::seventeenths),
                                   HamiltonianVariant::faulty);
  StateVector psi = build_initial_state(space, StatePattern::staggered);
  for (auto _ : state) {
    psi = evolve_krylov(H, psi, 0.05);
    benchmark::DoNotOptimize(psi.data());
  }
}
BENCHMARK(BM_KrylovStep)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_DenseDiagonalization(benchmark::State& state) {
  const HilbertSpace space(LatticeSpec::uniform(6, Boundary::open), 3);
  const auto H = build_hamiltonian(space, faulty(ErrorModel::circuit), make_sequence(SequencePreset::elevenths),
                                   HamiltonianVariant::faulty);
  for (auto _ : state) {
    SpectralPropagator prop(H);
    benchmark::DoNotOptimize(prop.energies().data());
  }
}
BENCHMARK(BM_DenseDiagonalization)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_Compliance(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const auto seq = make_sequence(SequencePreset::seventeenths);
  for (auto _ : state) {
    auto r = is_compliant(seq, L);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Compliance)->DenseRange(8, 24, 8)->Unit(benchmark::kMillisecond);

void BM_ResonanceCount(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const auto seq = make_sequence(SequencePreset::seventeenths);
  for (auto _ : state) benchmark::DoNotOptimize(count_resonant_configs(seq, L));
}
BENCHMARK(BM_ResonanceCount)->DenseRange(8, 24, 8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
