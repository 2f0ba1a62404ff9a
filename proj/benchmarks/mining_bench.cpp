#include <benchmark/benchmark.h>

#include <random>

#include <procframe/miner.hpp>

namespace {

using namespace procframe;

// Traces walk a fixed activity order with random skips, so most relations survive.
EventLog skeleton_log(std::size_t activities, std::size_t traces, std::size_t max_len) {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> coin(0, 3);
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    std::vector<Trace> out;
    out.reserve(traces);
    for (std::size_t i = 0; i < traces; ++i) {
        Trace t;
        const std::size_t n = len(rng);
        for (std::size_t k = 0; t.size() < n; ++k) {
            const std::size_t a = k % activities;
            if (a == 0 || coin(rng) != 0) t.push_back("T" + std::to_string(a));
        }
        out.push_back(std::move(t));
    }
    return EventLog(std::move(out));
}

void BM_MineBinaryAndTernary(benchmark::State& state) {
    const EventLog log = skeleton_log(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 20);
    for (auto _ : state) benchmark::DoNotOptimize(mine(log));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(log.size()));
}
BENCHMARK(BM_MineBinaryAndTernary)->Args({5, 1000})->Args({10, 1000})->Args({10, 10000})->Unit(benchmark::kMillisecond);

void BM_MineBinaryOnly(benchmark::State& state) {
    const EventLog log = skeleton_log(10, static_cast<std::size_t>(state.range(0)), 20);
    MinerConfig cfg;
    cfg.ternary_enabled = false;
    for (auto _ : state) benchmark::DoNotOptimize(mine(log, cfg));
}
BENCHMARK(BM_MineBinaryOnly)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_MinedDfa(benchmark::State& state) {
    const MinedModel m = mine(skeleton_log(static_cast<std::size_t>(state.range(0)), 2000, 20));
    for (auto _ : state) benchmark::DoNotOptimize(mined_dfa(m));
    state.counters["constraints"] = static_cast<double>(m.constraints.size());
}
BENCHMARK(BM_MinedDfa)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
