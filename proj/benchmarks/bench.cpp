#include <benchmark/benchmark.h>

#include <random>

#include "msou/eval.hpp"
#include "msou/minsky.hpp"
#include "msou/reduction.hpp"
#include "msou/tree.hpp"
#include "msou/vecseq.hpp"

namespace {

msou::WordPrefix random_word(std::size_t len, int n, std::mt19937& rng) {
  msou::WordPrefix w;
  w.alphabet.size = n;
  std::uniform_int_distribution<int> letter(1, n);
  w.letters.push_back(1);
  for (std::size_t i = 1; i + 1 < len; ++i) w.letters.push_back(letter(rng));
  w.letters.push_back(n);
  return w;
}

void BM_DecodeEncode(benchmark::State& state) {
  std::mt19937 rng(7);
  msou::WordPrefix w = random_word(static_cast<std::size_t>(state.range(0)), 4, rng);
  for (auto _ : state) {
    msou::TreeSeq t = msou::decode_tree_sequence(w);
    benchmark::DoNotOptimize(msou::encode_tree_sequence(t));
  }
}
BENCHMARK(BM_DecodeEncode)->Arg(64)->Arg(1024)->Arg(16384);

void BM_CompiledEval(benchmark::State& state) {
  msou::FormulaPtr f = msou::blocks::same_block(3, 2, "x", "y");
  msou::EvalBudget b;
  msou::CompiledFormula cf(*f, b);
  msou::WordPrefix w;
  w.alphabet.size = 3;
  w.letters = {1, 3, 3, 2, 3, 1, 3, 2, 3, 3};
  msou::Assignment a;
  a.positions["x"] = 1;
  a.positions["y"] = 4;
  for (auto _ : state) benchmark::DoNotOptimize(cf.evaluate(w, a));
}
BENCHMARK(BM_CompiledEval);

void BM_WindowMix(benchmark::State& state) {
  msou::VectorWindow f = msou::identity_grid_window(2, static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    msou::MixResult r = msou::is_window_mix(f, f, {3, 8});
    benchmark::DoNotOptimize(r.is_mix);
  }
}
BENCHMARK(BM_WindowMix)->Arg(2)->Arg(3);

void BM_MachineCompile(benchmark::State& state) {
  msou::MinskyMachine m = msou::parse_machine(
      "states: q0 q1 q2 qf\ninit: q0\nfinal: qf\n"
      "trans: q0 inc1 q1\ntrans: q1 inc1 q2\ntrans: q2 zero2 qf\n");
  for (auto _ : state) benchmark::DoNotOptimize(msou::machine_to_formula(m));
}
BENCHMARK(BM_MachineCompile);

}  // namespace

BENCHMARK_MAIN();
