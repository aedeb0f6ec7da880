#include <benchmark/benchmark.h>

#include "mono/optimizer.hpp"
#include "mono/random_models.hpp"
#include "mono/surrogate.hpp"

namespace {

void BM_UField(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto field = mono::GaussianField::sample(n, 4, mono::Seed{1, 0});
  const mono::SupportWeights w(field);
  mono::Engine eng = mono::make_engine(mono::Seed{2, 0});
  const auto sigma = mono::SpinConfig::from_mask(n, eng());
  for (auto _ : state) benchmark::DoNotOptimize(mono::u_field(w, sigma));
}
BENCHMARK(BM_UField)->Arg(16)->Arg(24)->Arg(32);

void BM_SupportWeights(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto field = mono::GaussianField::sample(n, 4, mono::Seed{1, 0});
  for (auto _ : state) {
    mono::SupportWeights w(field);
    benchmark::DoNotOptimize(w.total());
  }
}
BENCHMARK(BM_SupportWeights)->Arg(16)->Arg(24)->Arg(32);

void BM_SliceMaxExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto field = mono::GaussianField::sample(n, 4, mono::Seed{3, 0});
  for (auto _ : state) benchmark::DoNotOptimize(mono::max_w_by_bucket(field, 0.0));
  state.SetLabel("balanced slice, r = 4");
}
BENCHMARK(BM_SliceMaxExact)->Arg(16)->Arg(20)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_SliceMaxAnneal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto field = mono::GaussianField::sample(n, 4, mono::Seed{3, 0});
  mono::SliceSearchConfig cfg;
  cfg.mode = mono::SearchMode::anneal;
  for (auto _ : state) benchmark::DoNotOptimize(mono::max_w_by_bucket(field, 0.0, cfg));
}
BENCHMARK(BM_SliceMaxAnneal)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_SampleFGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto copies = std::make_shared<const mono::LabeledCopySet>(mono::Pattern::complete(3));
  const double q = 8.0 / (static_cast<double>(n) * n);  // c = 2
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(mono::sample_fgraph(copies, n, q, mono::Seed{4, i++}).size());
}
BENCHMARK(BM_SampleFGraph)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Anneal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double q = 27.0 / (static_cast<double>(n) * n);  // c = 3
  const mono::HyperInstance h(mono::sample_fgraph(mono::Pattern::complete(3), n, q, mono::Seed{5, 0}));
  mono::AnnealConfig cfg;
  cfg.restarts = 1;
  for (auto _ : state) benchmark::DoNotOptimize(mono::minimize_anneal(h, cfg).best_value);
  state.counters["edges"] = static_cast<double>(h.size());
}
BENCHMARK(BM_Anneal)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_MinimizeExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mono::HyperInstance h(mono::sample_fgraph(mono::Pattern::complete(3), n, 0.05, mono::Seed{6, 0}));
  for (auto _ : state) benchmark::DoNotOptimize(mono::minimize_exact(h).best_value);
}
BENCHMARK(BM_MinimizeExact)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
