#include <benchmark/benchmark.h>

#include "irsce/channel.hpp"
#include "irsce/estimation.hpp"
#include "irsce/pilot.hpp"

namespace {

using namespace irsce;

struct Fixture {
  PilotDesign design;
  ChannelRealization channel;
  std::vector<ComplexVector> y;

  explicit Fixture(std::size_t N, double snr_db = 20.0) : design(make_design(4, 4, N, 4 * N)) {
    Rng rng(7);
    channel = draw_realization(rng, 4, 4, N, 2, 2, {0.75, 5});
    for (std::size_t k = 0; k < channel.blocks(); ++k)
      y.push_back(simulate_block(channel.G, channel.H[k], design, snr_db, rng, k).y);
  }
};

void BM_OmegaPinv(benchmark::State& state) {
  const Fixture fx(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pinv(fx.design.Omega));
}
BENCHMARK(BM_OmegaPinv)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_LsEstimate(benchmark::State& state) {
  const Fixture fx(static_cast<std::size_t>(state.range(0)));
  const LsEstimator ls(fx.design);
  for (auto _ : state) benchmark::DoNotOptimize(ls.estimate(fx.y[0]));
}
BENCHMARK(BM_LsEstimate)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_Krf(benchmark::State& state) {
  const Fixture fx(static_cast<std::size_t>(state.range(0)));
  const ComplexMatrix R = LsEstimator(fx.design).estimate(fx.y[0]).R;
  for (auto _ : state) benchmark::DoNotOptimize(krf_baseline(R, 4, 4, fx.design.N));
}
BENCHMARK(BM_Krf)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_AlsFit(benchmark::State& state) {
  const Fixture fx(static_cast<std::size_t>(state.range(0)));
  const LsEstimator ls(fx.design);
  std::vector<ComplexMatrix> blocks;
  for (const auto& y : fx.y) blocks.push_back(ls.estimate(y).R);
  const ComplexTensor3 R = stack_blocks(blocks);
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(als_fit_normalized(R, {}, rng));
}
BENCHMARK(BM_AlsFit)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
