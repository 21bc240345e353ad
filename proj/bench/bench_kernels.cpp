// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gclink/greatlink.hpp"
#include "gclink/kernels.hpp"
#include "gclink/linking_integral.hpp"

namespace {

using namespace gclink;

kernels::CurveSamples circle_samples(const GreatCircle& c, int n) {
  const auto chart = StereographicChart::from_pole(default_pole(c, c));
  return sample_in_chart(c, chart, n, 0.0, 1.0);
}

std::pair<kernels::CurveSamples, kernels::CurveSamples> linked_pair(int n) {
  const auto a = GreatCircle::from_axes({0, 1}, {0, 1});
  const auto b = GreatCircle::from_axes({1, 2}, {1, 3});
  const auto chart = StereographicChart::from_pole(default_pole(a, b));
  return {sample_in_chart(a, chart, n, 0.0, 1.0), sample_in_chart(b, chart, n, 0.0, 1.0)};
}

void BM_GaussSumSerial(benchmark::State& state) {
  const auto [a, b] = linked_pair(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::gauss_sum_serial(a, b));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_GaussSumOmp(benchmark::State& state) {
  const auto [a, b] = linked_pair(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::gauss_sum_omp(a, b));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

std::vector<double> dpq_frames(int q) { return construct_dpq(1, q).frame_array(); }

void BM_PairwiseSerial(benchmark::State& state) {
  const auto frames = dpq_frames(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::pairwise_geometry_serial(frames));
}

void BM_PairwiseOmp(benchmark::State& state) {
  const auto frames = dpq_frames(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::pairwise_geometry_omp(frames));
}

std::vector<kernels::WindingInput> winding_inputs(int count) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<kernels::WindingInput> out(count);
  for (auto& w : out) w = {g(rng), g(rng), g(rng), g(rng)};
  return out;
}

void BM_WindingSerial(benchmark::State& state) {
  const auto inputs = winding_inputs(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    for (const auto& in : inputs) benchmark::DoNotOptimize(kernels::sampled_winding_serial(in, 1000));
  }
}

void BM_WindingOmp(benchmark::State& state) {
  const auto inputs = winding_inputs(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sampled_winding_omp(inputs, 1000));
}

std::vector<double> ellipse(int n, double rx, double ry, double phase) {
  std::vector<double> xy(2 * n);
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * k / n + phase;
    xy[2 * k] = rx * std::cos(t);
    xy[2 * k + 1] = ry * std::sin(t);
  }
  return xy;
}

void BM_CrossingsSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = ellipse(n, 2.0, 1.0, 0.0), b = ellipse(n, 1.0, 2.0, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::polyline_crossings_serial(a, b));
}

void BM_CrossingsOmp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = ellipse(n, 2.0, 1.0, 0.0), b = ellipse(n, 1.0, 2.0, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::polyline_crossings_omp(a, b));
}

}  // namespace

BENCHMARK(BM_GaussSumSerial)->Arg(512)->Arg(4096);
BENCHMARK(BM_GaussSumOmp)->Arg(512)->Arg(4096);
BENCHMARK(BM_PairwiseSerial)->Arg(50)->Arg(200);
BENCHMARK(BM_PairwiseOmp)->Arg(50)->Arg(200);
BENCHMARK(BM_WindingSerial)->Arg(64);
BENCHMARK(BM_WindingOmp)->Arg(64);
BENCHMARK(BM_CrossingsSerial)->Arg(400)->Arg(1600);
BENCHMARK(BM_CrossingsOmp)->Arg(400)->Arg(1600);

BENCHMARK_MAIN();
