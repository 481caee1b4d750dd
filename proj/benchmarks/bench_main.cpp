#include <benchmark/benchmark.h>

#include "varspc/charts.hpp"
#include "varspc/distributions.hpp"
#include "varspc/performance.hpp"
#include "varspc/rng.hpp"
#include "varspc/var_model.hpp"

namespace {

varspc::VarModel bench_model(int v, int p) {
  varspc::VarModel m;
  m.v = v;
  m.p = p;
  m.mu = varspc::Vector::Zero(v);
  for (int k = 0; k < p; ++k) {
    varspc::Matrix phi = varspc::Matrix::Constant(v, v, 0.02);
    phi.diagonal().setConstant(0.5 / (k + 1));
    m.phis.push_back(phi);
  }
  m.sigma_eps = varspc::Matrix::Constant(v, v, 0.3);
  m.sigma_eps.diagonal().setConstant(1.0);
  while (varspc::is_stationary(m).margin < 0.1) {
    for (auto& phi : m.phis) phi *= 0.8;
  }
  return m;
}

void BM_SigmaXbarClosed(benchmark::State& state) {
  const auto m = bench_model(static_cast<int>(state.range(0)),
                             static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(varspc::sigma_xbar(m, 15));
  }
}
BENCHMARK(BM_SigmaXbarClosed)->Args({2, 1})->Args({3, 1})->Args({4, 3});

void BM_SigmaXbarDirect(benchmark::State& state) {
  const auto m = bench_model(static_cast<int>(state.range(0)),
                             static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(varspc::sigma_xbar_direct(m, 15));
  }
}
BENCHMARK(BM_SigmaXbarDirect)->Args({2, 1})->Args({3, 1})->Args({4, 3});

void BM_NoncentralChi2Cdf(benchmark::State& state) {
  const double d = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(varspc::dist::noncentral_chi2_cdf(11.827, 2, d));
  }
}
BENCHMARK(BM_NoncentralChi2Cdf)->Arg(1)->Arg(25)->Arg(200);

void BM_SimulateSegment(benchmark::State& state) {
  const auto m = bench_model(2, 1);
  std::uint64_t rep = 0;
  const int length = static_cast<int>(state.range(0));
  for (auto _ : state) {
    varspc::rng::RngStream stream{7, rep++};
    benchmark::DoNotOptimize(varspc::simulate_segment(m, length, 0, stream));
  }
  state.SetItemsProcessed(state.iterations() * length);
}
BENCHMARK(BM_SimulateSegment)->Arg(512)->Arg(4096);

void BM_T2Statistic(benchmark::State& state) {
  const auto m = bench_model(2, 1);
  const auto design = varspc::build_design(
      m, 5, 1.0 / 370.0, varspc::ChartMode::observations,
      varspc::Phase::two());
  const varspc::Vector x = varspc::Vector::Constant(2, 0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(varspc::t2_statistic(design, x));
  }
}
BENCHMARK(BM_T2Statistic);

}  // namespace

BENCHMARK_MAIN();
