#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "chebias/kernels.hpp"
#include "chebias/multfun.hpp"
#include "chebias/sieve.hpp"

using namespace chebias;
using kernels::Exec;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::parallel : Exec::serial; }

void BM_SpfFill(benchmark::State& st) {
  const auto n = static_cast<std::uint64_t>(st.range(0));
  std::vector<std::uint32_t> spf(n + 1);
  for (auto _ : st) {
    kernels::spf_fill(n, 1 << 20, spf.data(), exec_of(st));
    benchmark::DoNotOptimize(spf.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}

void BM_Squarefree(benchmark::State& st) {
  const auto n = static_cast<std::uint64_t>(st.range(0));
  std::vector<std::uint32_t> spf(n + 1);
  kernels::spf_fill(n, 0, spf.data(), Exec::serial);
  std::vector<std::uint8_t> flags(n + 1);
  for (auto _ : st) {
    kernels::squarefree_from_spf(spf.data(), n, flags.data(), exec_of(st));
    benchmark::DoNotOptimize(flags.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}

void BM_Race(benchmark::State& st) {
  const auto n = static_cast<std::uint64_t>(st.range(0));
  static auto tables = SieveTables::build(4'000'000);
  static SummatorySeries a(tables, SemigroupSpec::residue_class(4, 3));
  static SummatorySeries b(tables, SemigroupSpec::residue_class(4, 1));
  a.lambda_approx(1);
  b.lambda_approx(1);
  for (auto _ : st) {
    auto hit = kernels::first_true(7, n + 1, [&](std::uint64_t i) { return a.lambda_approx(i) < b.lambda_approx(i); },
                                   exec_of(st));
    benchmark::DoNotOptimize(hit);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}

void BM_Extremum(benchmark::State& st) {
  const auto n = static_cast<std::uint64_t>(st.range(0));
  std::vector<double> f(n);
  for (std::uint64_t i = 0; i < n; ++i) f[i] = std::sin(0.001 * static_cast<double>(i)) - 1e-7 * i;
  for (auto _ : st) {
    auto e = kernels::extremum(0, n, [&](std::uint64_t i) { return f[i]; }, [&](std::uint64_t i) { return f[i]; },
                               exec_of(st));
    benchmark::DoNotOptimize(e);
  }
}

}  // namespace

BENCHMARK(BM_SpfFill)->ArgsProduct({{1 << 22, 1 << 24}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Squarefree)->ArgsProduct({{1 << 22}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Race)->ArgsProduct({{4'000'000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Extremum)->ArgsProduct({{1 << 22}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
