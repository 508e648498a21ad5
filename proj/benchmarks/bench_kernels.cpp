/*
 * Copyright 2026 The rddce Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <benchmark/benchmark.h>

#include <numeric>

#include "rddce/channel.hpp"
#include "rddce/estimators.hpp"
#include "rddce/numkernels.hpp"
#include "rddce/phy.hpp"

namespace {

using namespace rddce;

ComplexVec random_vector(std::size_t n, std::uint64_t key) {
  RandomStream rng(key, 0, 0, StreamPurpose::channel);
  ComplexVec v(n);
  for (auto& x : v) x = rng.cscg(1.0);
  return v;
}

IndexSet random_group(std::size_t n2, std::uint64_t key) {
  std::vector<std::size_t> all(128);
  std::iota(all.begin(), all.end(), 0);
  RandomStream rng(key, 0, 0, StreamPurpose::partition);
  return estimators::draw_group(IndexSet(all, 128), n2, 128, rng);
}

void BM_Dft(benchmark::State& state) {
  const auto x = random_vector(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(numkernels::dft(x));
}
BENCHMARK(BM_Dft)->Arg(20)->Arg(128);

void BM_VandermondeInverse(benchmark::State& state) {
  const auto nodes = numkernels::fourier_nodes(random_group(static_cast<std::size_t>(state.range(0)), 2), 128);
  for (auto _ : state) benchmark::DoNotOptimize(numkernels::vandermonde_inverse(nodes));
}
BENCHMARK(BM_VandermondeInverse)->Arg(10)->Arg(20)->Arg(40);

void BM_MinNormSolve(benchmark::State& state) {
  const ComplexMatrix a(9, 20, random_vector(180, 3));
  const auto b = random_vector(9, 4);
  for (auto _ : state) benchmark::DoNotOptimize(numkernels::min_norm_solve(a, b));
}
BENCHMARK(BM_MinNormSolve);

void BM_GroupObservation(benchmark::State& state) {
  const Cfr h{random_vector(128, 5)};
  const auto idx = random_group(20, 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimators::denoise_group(estimators::group_cir(h, idx, 128), 11));
  }
}
BENCHMARK(BM_GroupObservation);

void BM_RddceStep(benchmark::State& state) {
  const auto q = channel::quantize_profile(channel::eva_profile(), 11);
  RandomStream ch(1, 0, 0, StreamPurpose::channel);
  const Cfr h = channel::cir_to_cfr(channel::draw_cir(q, ch), 128);
  RandomStream pl(1, 0, 0, StreamPurpose::payload);
  std::vector<std::uint8_t> bits(256);
  for (auto& b : bits) b = pl.bit();
  RandomStream nz(1, 0, 0, StreamPurpose::noise);
  const auto y = channel::apply_channel(phy::qpsk_modulate(bits), h, 0.1, nz);
  const estimators::RddceConfig cfg;
  std::uint64_t symbol = 0;
  for (auto _ : state) {
    estimators::EstimatorState est{h};
    RandomStream rng(1, 0, ++symbol, StreamPurpose::partition);
    benchmark::DoNotOptimize(estimators::rddce_step(y, est, cfg, rng));
  }
}
BENCHMARK(BM_RddceStep);

void BM_BaselineSteps(benchmark::State& state) {
  const Cfr h{random_vector(128, 7)};
  const auto y = random_vector(128, 8);
  const auto pilots = estimators::make_interpolation_pilots(128, 20, 11);
  for (auto _ : state) {
    estimators::EstimatorState a{h}, b{h}, c{h};
    benchmark::DoNotOptimize(estimators::basic_step(y, a));
    benchmark::DoNotOptimize(estimators::filtering_step(y, b, 0.5));
    benchmark::DoNotOptimize(estimators::interpolation_step(y, c, pilots));
  }
}
BENCHMARK(BM_BaselineSteps);

}  // namespace

BENCHMARK_MAIN();
