// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>

#include "prw/codec.hpp"
#include "prw/cover.hpp"
#include "prw/kit.hpp"
#include "prw/machine.hpp"
#include "prw/model.hpp"

using namespace prw;

static void BM_CantorPair(benchmark::State& state) {
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    Int k = codec::pair(Int(rng() % 100000), Int(rng() % 100000));
    benchmark::DoNotOptimize(codec::unpair(k));
  }
}
BENCHMARK(BM_CantorPair);

static void BM_MachineSKK(benchmark::State& state) {
  Oracle o({}, {0});
  machine::OracleView ov;
  ov.full = &o;
  machine::Nat skk = machine::encode(machine::t_stpl2(machine::k_code(), machine::k_code()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(machine::run_code(skk, 7, ov, 100000));
  }
}
BENCHMARK(BM_MachineSKK);

static void BM_TermModelNumeral(benchmark::State& state) {
  auto m = term_model();
  kit::KitTable table(*m);
  unsigned n = unsigned(state.range(0));
  for (auto _ : state) {
    kit::KitTable fresh(*m);
    benchmark::DoNotOptimize(fresh.numeral_value(n));
  }
}
BENCHMARK(BM_TermModelNumeral)->Arg(8)->Arg(32);

static void BM_UncoveredPoint(benchmark::State& state) {
  std::mt19937 rng(5);
  std::vector<cover::RatInterval> closed;
  for (int i = 0; i < 8; ++i) {
    Rational lo(int(rng() % 100), 101);
    closed.push_back(cover::closed_iv(lo, lo + Rational(1, 50)));
  }
  auto window = cover::open_iv(Rational(0), Rational(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cover::uncovered_point(closed, window));
  }
}
BENCHMARK(BM_UncoveredPoint);

BENCHMARK_MAIN();
