// Copyright 2026 The nvdd Authors
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

#include "nvdd/floquet.hpp"
#include "nvdd/propagator.hpp"
#include "nvdd/pulses.hpp"

namespace {

const nvdd::SpinTarget& target() {
  static const nvdd::SpinTarget t = nvdd::target_from_average(nvdd::hz_to_rad(2e6), nvdd::hz_to_rad(200e3));
  return t;
}

const nvdd::SequenceFamily& xy8() {
  static const nvdd::SequenceFamily f = nvdd::SequenceFamily::builtin("xy8", nvdd::hz_to_rad(20e6));
  return f;
}

void BM_FloquetEigensolve(benchmark::State& state) {
  const int truncation = static_cast<int>(state.range(0));
  const auto seq = xy8().at_period(2.1e-6);
  for (auto _ : state) {
    const auto fm = nvdd::build_floquet(target(), seq, truncation);
    benchmark::DoNotOptimize(nvdd::folded_quasienergies(fm));
  }
  state.counters["dim"] = 4.0 * (2 * truncation + 1);
}
BENCHMARK(BM_FloquetEigensolve)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_OnePeriodUnitary(benchmark::State& state) {
  const auto seq = xy8().at_period(2.1e-6);
  for (auto _ : state) benchmark::DoNotOptimize(nvdd::one_period_unitary(target(), seq));
}
BENCHMARK(BM_OnePeriodUnitary)->Unit(benchmark::kMicrosecond);

void BM_UnitaryPower(benchmark::State& state) {
  const auto u = nvdd::one_period_unitary(target(), xy8().at_period(2.1e-6));
  for (auto _ : state) benchmark::DoNotOptimize(nvdd::unitary_power(u, state.range(0)));
}
BENCHMARK(BM_UnitaryPower)->Arg(60)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_CoherenceTrace(benchmark::State& state) {
  nvdd::TraceRequest req;
  for (int i = 0; i < 1000; ++i) req.grid.push_back(1.5e-6 + 1e-9 * i);
  req.family = xy8();
  req.pulse_count = 60;
  req.threads = 1;
  const nvdd::SpinTarget targets[] = {target()};
  for (auto _ : state) benchmark::DoNotOptimize(nvdd::coherence_trace(targets, req));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_CoherenceTrace)->Unit(benchmark::kMillisecond);

void BM_CrossingGap(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(nvdd::crossing_gap(target(), xy8(), 2));
}
BENCHMARK(BM_CrossingGap)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
