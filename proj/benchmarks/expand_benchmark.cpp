#include <benchmark/benchmark.h>

#include "csrpoly/csr.hpp"
#include "csrpoly/expansion.hpp"
#include "csrpoly/index_maps.hpp"

namespace {

using csrpoly::ExpansionSpec;
using csrpoly::MappingKind;
using csrpoly::Mode;

// Args: density in percent, n_cols, degree.
void BM_SparseExpand(benchmark::State& state) {
  const double density = static_cast<double>(state.range(0)) / 100.0;
  const auto m = csrpoly::random_csr(100, state.range(1), density, 7);
  const ExpansionSpec spec{MappingKind(static_cast<int>(state.range(2)), Mode::Polynomial)};
  std::int64_t entries = 0;
  for (auto _ : state) {
    auto out = csrpoly::expand(m, spec);
    entries += out.nnz();
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(entries);
}

void BM_DenseExpand(benchmark::State& state) {
  const double density = static_cast<double>(state.range(0)) / 100.0;
  const auto m = csrpoly::to_dense(csrpoly::random_csr(100, state.range(1), density, 7));
  const ExpansionSpec spec{MappingKind(static_cast<int>(state.range(2)), Mode::Polynomial)};
  for (auto _ : state) {
    auto out = csrpoly::expand_dense(m, spec);
    benchmark::DoNotOptimize(out);
  }
}

void BM_Map3Polynomial(benchmark::State& state) {
  const csrpoly::index_t dim = state.range(0);
  for (auto _ : state) {
    csrpoly::index_t acc = 0;
    for (csrpoly::index_t k = 2; k < dim; ++k) {
      acc += csrpoly::map3_polynomial(0, 1, k, dim);
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * (dim - 2));
}

}  // namespace

BENCHMARK(BM_SparseExpand)
    ->ArgsProduct({{1, 5, 10, 20}, {500}, {2, 3}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DenseExpand)->ArgsProduct({{1, 10}, {200}, {2}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Map3Polynomial)->Arg(1000);

BENCHMARK_MAIN();
