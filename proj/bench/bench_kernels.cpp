// Copyright 2026 The opalg Authors
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


// Serial reference against OpenMP kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "opalg/cones.hpp"
#include "opalg/composites.hpp"
#include "opalg/dynamics.hpp"
#include "opalg/kernels.hpp"

using namespace opalg;

namespace {

// Truncated chain 0..n-1 with x + y defined below n: every triple is scanned.
PartialTable chain(std::size_t n) {
  PartialTable t(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; x + y < n; ++y) t.set(x, y, static_cast<std::int32_t>(x + y));
  return t;
}

std::vector<QVec> hypercube(std::size_t dim) {
  std::vector<QVec> v;
  for (std::size_t m = 0; m < (1u << dim); ++m) {
    QVec p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = (m >> i) & 1u;
    v.push_back(p);
  }
  return v;
}

HermOp bell_projector() {
  CVec v = CVec::Zero(9);
  v(0) = v(4) = v(8) = 1 / std::sqrt(3.0);
  return HermOp::projector(v);
}

struct DistinguishInput {
  DensityState a, b;
  std::vector<QuantumMeasurement> family;
};

DistinguishInput distinguish_input() {
  Rng rng(3);
  DistinguishInput in{random_density(3, rng), random_density(3, rng), {}};
  for (int i = 0; i < 2000; ++i) in.family.push_back(random_projective_measurement(3, rng));
  return in;
}

void BM_TripleScanSerial(benchmark::State& st) {
  const auto t = chain(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::strong_assoc_scan_serial(t));
}
void BM_TripleScanParallel(benchmark::State& st) {
  const auto t = chain(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::strong_assoc_scan_parallel(t));
}

void BM_FaceLatticeSerial(benchmark::State& st) {
  const auto v = hypercube(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(face_lattice_serial(v));
}
void BM_FaceLatticeParallel(benchmark::State& st) {
  const auto v = hypercube(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(face_lattice(v));
}

void BM_ProductOverlapSerial(benchmark::State& st) {
  const auto x = bell_projector();
  for (auto _ : st) benchmark::DoNotOptimize(max_product_overlap_serial(x, 3, 3, 256));
}
void BM_ProductOverlapParallel(benchmark::State& st) {
  const auto x = bell_projector();
  for (auto _ : st) benchmark::DoNotOptimize(max_product_overlap(x, 3, 3, 256));
}

void BM_DistinguishabilitySerial(benchmark::State& st) {
  const auto in = distinguish_input();
  for (auto _ : st) benchmark::DoNotOptimize(distinguishability_serial(in.a, in.b, in.family));
}
void BM_DistinguishabilityParallel(benchmark::State& st) {
  const auto in = distinguish_input();
  for (auto _ : st) benchmark::DoNotOptimize(distinguishability(in.a, in.b, in.family));
}

}  // namespace

BENCHMARK(BM_TripleScanSerial)->Arg(64)->Arg(128);
BENCHMARK(BM_TripleScanParallel)->Arg(64)->Arg(128);
BENCHMARK(BM_FaceLatticeSerial)->Arg(2)->Arg(3);
BENCHMARK(BM_FaceLatticeParallel)->Arg(2)->Arg(3);
BENCHMARK(BM_ProductOverlapSerial);
BENCHMARK(BM_ProductOverlapParallel);
BENCHMARK(BM_DistinguishabilitySerial);
BENCHMARK(BM_DistinguishabilityParallel);

BENCHMARK_MAIN();
