#include <benchmark/benchmark.h>

#include <nlohmann/json.hpp>

#include "kmlab/engines.hpp"
#include "kmlab/monotone_catalog.hpp"
#include "kmlab/monotone_ops.hpp"
#include "kmlab/schedule.hpp"

namespace {

using nlohmann::json;

kmlab::Schedule plain_schedule(Eigen::Index dim) {
  return kmlab::make_schedule(json{{"lambda", 1.0}, {"c", 1.0}}, dim, 7);
}

void BM_SoftThresholdResolvent(benchmark::State& state) {
  const auto A = kmlab::catalog_monotone(json{{"name", "l1"}, {"weight", 1.0}, {"dim", 64}});
  kmlab::Point x = kmlab::Point::LinSpaced(64, -3.0, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kmlab::resolvent(A, 1.0, x));
  }
}
BENCHMARK(BM_SoftThresholdResolvent);

void BM_AffineQuadraticResolvent(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  Eigen::MatrixXd M = Eigen::MatrixXd::Random(n, n);
  Eigen::MatrixXd Q = M.transpose() * M;
  json qj = json::array();
  for (Eigen::Index i = 0; i < n; ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < n; ++j) row.push_back(Q(i, j));
    qj.push_back(row);
  }
  json bj = json::array();
  for (Eigen::Index i = 0; i < n; ++i) bj.push_back(0.5);
  const auto A = kmlab::catalog_monotone(json{{"name", "affine-quadratic"}, {"Q", qj}, {"b", bj}});
  kmlab::Point x = kmlab::Point::Ones(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kmlab::resolvent(A, 2.0, x));
  }
}
BENCHMARK(BM_AffineQuadraticResolvent)->Arg(4)->Arg(16)->Arg(64);

void BM_GppaRun(benchmark::State& state) {
  const auto A = kmlab::catalog_monotone(json{{"name", "l1"}, {"weight", 1.0}, {"dim", 8}});
  const auto s = plain_schedule(8);
  kmlab::Point x0 = kmlab::Point::Constant(8, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kmlab::run_gppa(A, s, x0, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_GppaRun)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
