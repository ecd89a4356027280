// Serial reference against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include <vector>

#include "qldpc/codes.h"
#include "qldpc/sim.h"
#include "qldpc/speculative.h"

using namespace qldpc;

namespace {

struct HardSyndromes {
  CssCode code = build_code(builtin_code_spec("cbb154"));
  MinSumDecoder decoder{sector_problem(code, Sector::Z, 0.05)};
  std::vector<BinVector> syndromes;

  HardSyndromes() {
    Rng rng(31);
    while (syndromes.size() < 32) {
      BinVector s = decoder.syndrome_of(sample_error(code.n, 0.05, rng));
      if (!decoder.decode(s, BpConfig{}, false).converged) syndromes.push_back(s);
    }
  }
};

const HardSyndromes& hard() {
  static const HardSyndromes h;
  return h;
}

SpeculativeConfig bench_config(std::size_t threads) {
  SpeculativeConfig cfg;
  cfg.phi_size = 8;
  cfg.w_max = 2;
  cfg.parallelism = threads;
  return cfg;
}

void BM_SpeculativeSerial(benchmark::State& state) {
  const HardSyndromes& h = hard();
  SpeculativeConfig cfg = bench_config(1);
  std::size_t i = 0;
  for (auto _ : state) {
    Rng rng(i);
    auto r = speculative_decode_serial(h.decoder, h.syndromes[i++ % h.syndromes.size()], cfg, rng);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_SpeculativeSerial)->Unit(benchmark::kMicrosecond);

void BM_SpeculativeParallel(benchmark::State& state) {
  const HardSyndromes& h = hard();
  SpeculativeConfig cfg = bench_config(static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    Rng rng(i);
    auto r = speculative_decode(h.decoder, h.syndromes[i++ % h.syndromes.size()], cfg, rng);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_SpeculativeParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_RunSim(benchmark::State& state) {
  SimTarget target = SimTarget::from_code(build_code(builtin_code_spec("bb72")));
  SimOptions opt;
  opt.threads = static_cast<std::size_t>(state.range(0));
  DecoderConfig dec = DecoderConfig::speculative(bench_config(1));
  for (auto _ : state) {
    auto r = run_sim(target, dec, NoiseSpec::code_capacity(0.05), StopRule::shots(2000), 5, opt);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_RunSim)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
