// Parallel vs serial window products on T and Q windows of a fixed sequence.

#include <benchmark/benchmark.h>

#include "readop/basis.hpp"
#include "readop/operators.hpp"
#include "readop/window.hpp"

namespace {

const readop::BasisChange& shared_basis() {
  static const readop::BasisChange basis(readop::GrowthSequence({2, 8, 40}, {4, 10, 90}));
  return basis;
}

template <readop::Window (*Product)(const readop::Window&, const readop::Window&)>
void BM_QTimesT(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto q = shared_basis().q_window(n);
  const auto t = readop::t_window(shared_basis(), n);
  for (auto _ : state) {
    auto c = Product(q, t);
    benchmark::DoNotOptimize(c);
  }
  state.SetComplexityN(state.range(0));
}

void BM_Parallel(benchmark::State& state) { BM_QTimesT<readop::window_product>(state); }
void BM_Serial(benchmark::State& state) { BM_QTimesT<readop::window_product_serial>(state); }

}  // namespace

BENCHMARK(BM_Parallel)->Arg(36)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Serial)->Arg(36)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
