// Microbenchmarks for the hot paths: raw stream output, catalog samplers,
// ratio-density quadrature, and the test statistics. Each case re-creates its
// stream per iteration batch so timings are not skewed by counter position.

#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "selfinv/catalog.hpp"
#include "selfinv/ratio.hpp"
#include "selfinv/rng.hpp"
#include "selfinv/stats.hpp"

namespace {

using namespace selfinv;

void bm_next_word(benchmark::State& state) {
  auto s = new_stream({1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(s.next_word());
}
BENCHMARK(bm_next_word);

void bm_uniform01(benchmark::State& state) {
  auto s = new_stream({1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(s.uniform01());
}
BENCHMARK(bm_uniform01);

void bm_normal01(benchmark::State& state) {
  auto s = new_stream({1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(s.normal01());
}
BENCHMARK(bm_normal01);

void bm_sample_cauchy(benchmark::State& state) {
  const DistSpec d = DistSpec::standard_cauchy();
  auto s = new_stream({1, 3});
  const std::size_t n = std::size_t(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample(d, s, n));
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(n));
}
BENCHMARK(bm_sample_cauchy)->Arg(1024)->Arg(16384);

void bm_sample_region_joint(benchmark::State& state) {
  const JointSpec j = JointSpec::region_uniform(RegionList::builtin());
  auto s = new_stream({1, 4});
  const std::size_t n = std::size_t(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_joint(j, s, n));
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(n));
}
BENCHMARK(bm_sample_region_joint)->Arg(1024)->Arg(16384);

void bm_ratio_density_region(benchmark::State& state) {
  const JointSpec j = JointSpec::region_uniform(RegionList::builtin());
  for (auto _ : state) benchmark::DoNotOptimize(ratio_density(j, 0.5, 1e-8));
}
BENCHMARK(bm_ratio_density_region);

void bm_ratio_density_bivariate(benchmark::State& state) {
  const JointSpec j = JointSpec::bivariate_normal(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(ratio_density(j, 0.5, 1e-8));
}
BENCHMARK(bm_ratio_density_bivariate);

void bm_ks_two_sample(benchmark::State& state) {
  const DistSpec d = DistSpec::log_uniform();
  auto sa = new_stream({1, 5});
  auto sb = new_stream({1, 6});
  const Sample a = sample(d, sa, 4096);
  const Sample b = sample(d, sb, 4096);
  for (auto _ : state) benchmark::DoNotOptimize(ks_two_sample(a, b, 0.01));
}
BENCHMARK(bm_ks_two_sample);

void bm_empirical_cf(benchmark::State& state) {
  const DistSpec d = DistSpec::log_uniform();
  auto s = new_stream({1, 7});
  Sample logs = sample(d, s, 8192);
  for (double& v : logs.values) v = std::log(v);
  const std::vector<double> grid = default_cf_grid();
  for (auto _ : state) benchmark::DoNotOptimize(empirical_cf(logs, grid));
}
BENCHMARK(bm_empirical_cf);

void bm_parse_spec(benchmark::State& state) {
  const std::string text = "constructed(z=log-uniform, w=constant(1))";
  for (auto _ : state) benchmark::DoNotOptimize(parse_spec(text));
}
BENCHMARK(bm_parse_spec);

}  // namespace

BENCHMARK_MAIN();
