// Copyright 2026 The jm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial versus OpenMP timings for the parallel kernels.
// Arg 0 selects the executor: 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include <random>

#include "jm/bloch.hpp"
#include "jm/feasibility.hpp"
#include "jm/kernels.hpp"
#include "jm/order.hpp"
#include "jm/partitioning.hpp"

namespace {

using jm::kernels::Exec;

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void BM_ClipBatch(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(1));
  std::mt19937_64 rng(1);
  std::vector<jm::Matrix> base;
  for (int k = 0; k < 64; ++k) base.push_back(jm::random_hermitian(dim, rng).matrix());
  for (auto _ : state) {
    auto cells = base;
    benchmark::DoNotOptimize(jm::kernels::clip_psd_batch(cells, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(base.size()));
}
BENCHMARK(BM_ClipBatch)->ArgsProduct({{0, 1}, {2, 8, 32}});

void BM_RefuteTrials(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const int dim = static_cast<int>(state.range(1));
  const jm::Matrix u = jm::random_unitary(dim, rng);
  jm::Matrix pa = jm::Matrix::Zero(dim, dim), pb = jm::Matrix::Zero(dim, dim);
  for (int k = 0; k < dim / 2; ++k) pa += u.col(k) * u.col(k).adjoint();
  for (int k = dim / 4; k < dim; ++k) pb += u.col(k) * u.col(k).adjoint();
  const jm::HermitianOperator a(pa), b(pb), c(jm::Matrix(pa * pb));
  jm::OrderOptions o;
  o.trials = 200;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(jm::refute_greatest(c, a, b, o));
}
BENCHMARK(BM_RefuteTrials)->ArgsProduct({{0, 1}, {4, 8}})->Unit(benchmark::kMillisecond);

void BM_NumericRestarts(benchmark::State& state) {
  const jm::Observable parents[2] = {jm::qubit_observable(0.75 * jm::Vec3::UnitX()),
                                     jm::qubit_observable(0.75 * jm::Vec3::UnitY())};
  jm::FeasibilityOptions o;
  o.exec = exec_of(state);
  o.max_iter = 2000;
  for (auto _ : state) benchmark::DoNotOptimize(jm::decide_numeric(parents, o));
}
BENCHMARK(BM_NumericRestarts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PartitionMatrix(benchmark::State& state) {
  const double l = 1 / std::sqrt(2.0);
  const auto g = jm::symmetric_pair_joint(l * jm::Vec3::UnitX(), l * jm::Vec3::UnitY());
  const auto f = jm::symmetric_pair_joint(l * jm::Vec3::UnitY(), l * jm::Vec3::UnitZ());
  jm::FeasibilityOptions o;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(jm::partition_compatibility_matrix(g.observable(), f.observable(), o));
}
BENCHMARK(BM_PartitionMatrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
