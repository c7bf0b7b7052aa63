// Microbenchmarks for the hot primitives plus whole-scan throughput for the
// two partition strategies. The last two are the interesting comparison:
// blocks advances by a doubling per exponent, stride by a full modular
// multiply, and the gap between them decides the default.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "evenpow/exact.hpp"
#include "evenpow/measure.hpp"
#include "evenpow/orbit.hpp"
#include "evenpow/residue.hpp"
#include "evenpow/sieve.hpp"

using evenpow::Residue;

namespace {

Residue random_residue(std::mt19937_64& rng, int digits) {
  std::string s(digits, '0');
  std::uniform_int_distribution<int> dig(0, 9);
  for (char& c : s) c = static_cast<char>('0' + dig(rng));
  return Residue::from_decimal_string(s, digits);
}

void BM_double_mod(benchmark::State& state) {
  int digits = static_cast<int>(state.range(0));
  Residue r = evenpow::pow2_mod(1000, digits);
  for (auto _ : state) {
    r = evenpow::double_mod(r);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_double_mod)->Arg(18)->Arg(54)->Arg(72);

void BM_mul_mod(benchmark::State& state) {
  int digits = static_cast<int>(state.range(0));
  Residue r = evenpow::pow2_mod(1000, digits);
  Residue step = evenpow::pow2_mod(8, digits);
  for (auto _ : state) {
    r = evenpow::mul_mod(r, step);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_mul_mod)->Arg(18)->Arg(54)->Arg(72);

void BM_pow2_mod_1e9(benchmark::State& state) {
  for (auto _ : state) {
    Residue r = evenpow::pow2_mod(1000000000ull, 54);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_pow2_mod_1e9);

void BM_digits_all_le4_random(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::vector<Residue> batch;
  for (int i = 0; i < 1024; ++i) batch.push_back(random_residue(rng, 54));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evenpow::digits_all_le4(batch[i]));
    i = (i + 1) & 1023;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_digits_all_le4_random);

void BM_digits_all_le4_full_scan(benchmark::State& state) {
  // every digit passes, so the check walks all 54 digits
  Residue r = Residue::from_decimal_string(std::string(54, '4'), 54);
  for (auto _ : state) benchmark::DoNotOptimize(evenpow::digits_all_le4(r));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_digits_all_le4_full_scan);

void BM_sieve_step_blocks(benchmark::State& state) {
  // the real inner loop of the blocks strategy: double, then digit-check
  Residue r = evenpow::pow2_mod(12345, 54);
  for (auto _ : state) {
    r = evenpow::double_mod(r);
    benchmark::DoNotOptimize(evenpow::digits_all_le4(r));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_sieve_step_blocks);

void BM_sieve_step_stride(benchmark::State& state) {
  // the stride strategy at 8 workers: one modular multiply per step
  Residue r = evenpow::pow2_mod(12345, 54);
  Residue step = evenpow::pow2_mod(8, 54);
  for (auto _ : state) {
    r = evenpow::mul_mod(r, step);
    benchmark::DoNotOptimize(evenpow::digits_all_le4(r));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_sieve_step_stride);

void BM_scan_range(benchmark::State& state) {
  evenpow::ScanConfig cfg;
  cfg.p_start = 0;
  cfg.p_end = 1u << 20;
  cfg.workers = static_cast<unsigned>(state.range(1));
  cfg.partition = state.range(0) == 0 ? evenpow::ScanConfig::Partition::blocks
                                      : evenpow::ScanConfig::Partition::stride;
  for (auto _ : state) {
    evenpow::ScanReport rep = evenpow::scan_range(cfg);
    benchmark::DoNotOptimize(rep);
  }
  state.SetItemsProcessed(state.iterations() * (cfg.p_end + 1));
  state.SetLabel(state.range(0) == 0 ? "blocks" : "stride");
}
BENCHMARK(BM_scan_range)
    ->Args({0, 1})
    ->Args({1, 1})
    ->Args({0, 4})
    ->Args({1, 4})
    ->Unit(benchmark::kMillisecond);

void BM_exact_doubling_30k_digits(benchmark::State& state) {
  evenpow::BigDecimalNat v = evenpow::pow2_exact(100000);  // ~30103 digits
  for (auto _ : state) {
    v.double_in_place();
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_exact_doubling_30k_digits);

void BM_exact_measure_depth8(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(evenpow::exact_measure(8));
}
BENCHMARK(BM_exact_measure_depth8)->Unit(benchmark::kMillisecond);

void BM_orbit_100k(benchmark::State& state) {
  evenpow::OrbitConfig cfg;
  cfg.x0 = "0.1234567890123456789";
  cfg.k_max = 100000;
  cfg.d_cap = 10;
  for (auto _ : state)
    benchmark::DoNotOptimize(evenpow::orbit_hits(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.k_max);
}
BENCHMARK(BM_orbit_100k)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
