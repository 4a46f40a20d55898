// Serial reference against OpenMP kernels on irreducible fiber-product data,
// where the rank equals the number of curves.

#include <benchmark/benchmark.h>

#include <vector>

#include "ellfactors/kernels.hpp"

namespace {

using ellfactors::gf2::MonodromyVector;
using ellfactors::gf2::Subspace;
namespace kernels = ellfactors::kernels;

// l_j -> e_j and three copies of the all-ones vector.
std::vector<MonodromyVector> irreducible_branch(int r) {
  const MonodromyVector ones{(std::uint64_t{1} << r) - 1};
  std::vector<MonodromyVector> v{ones, ones, ones};
  for (int j = 0; j < r; ++j) v.push_back(MonodromyVector::unit(j));
  return v;
}

std::vector<Subspace> index_two_kernels(int r) {
  std::vector<Subspace> out;
  for (std::uint64_t f = 1; f < (std::uint64_t{1} << r); ++f) out.push_back(Subspace::kernel(r, {f}));
  return out;
}

void BM_EnumerateSerial(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto branch = irreducible_branch(r);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::positive_genus_functionals_serial(r, branch));
}

void BM_EnumerateParallel(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto branch = irreducible_branch(r);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::positive_genus_functionals(r, branch));
}

void BM_AuditSerial(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto branch = irreducible_branch(r);
  const auto subgroups = index_two_kernels(r);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::audit_pairwise_joins_serial(r, branch, subgroups));
}

void BM_AuditParallel(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto branch = irreducible_branch(r);
  const auto subgroups = index_two_kernels(r);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::audit_pairwise_joins(r, branch, subgroups));
}

}  // namespace

BENCHMARK(BM_EnumerateSerial)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AuditSerial)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AuditParallel)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
