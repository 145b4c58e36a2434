#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "philos/engine.hpp"
#include "philos/sweep.hpp"

using namespace philos;

namespace {

const TrustParams params = TrustParams::reference();

void BM_IncentiveSerial(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(sweep::incentive_reports_serial(st.range(0), 7, params, 10));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
void BM_IncentiveParallel(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(sweep::incentive_reports_parallel(st.range(0), 7, params, 10));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_IncentiveSerial)->Arg(1000)->Arg(100000)->UseRealTime();
BENCHMARK(BM_IncentiveParallel)->Arg(1000)->Arg(100000)->UseRealTime();

void BM_ListBoundSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(sweep::list_bound_serial(st.range(0), 99, params));
}
void BM_ListBoundParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(sweep::list_bound_parallel(st.range(0), 99, params));
}
BENCHMARK(BM_ListBoundSerial)->Arg(100)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ListBoundParallel)->Arg(100)->UseRealTime()->Unit(benchmark::kMillisecond);

struct Batch {
    std::vector<double> prev, out;
    std::vector<BridgeObservation> obs;
    explicit Batch(std::size_t n) : prev(n), out(n), obs(n) {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> t(0.0, equilibrium_trust(params));
        std::uniform_int_distribution<std::int64_t> gap(1, 500);
        for (std::size_t i = 0; i < n; ++i) {
            prev[i] = t(rng);
            const auto g = gap(rng);
            obs[i] = {100 + g, 100, std::min<std::int64_t>(g, params.delta)};
        }
    }
};

void BM_BatchUpdateSerial(benchmark::State& st) {
    Batch b(st.range(0));
    for (auto _ : st) {
        sweep::update_trust_batch_serial(b.prev, b.obs, params, b.out);
        benchmark::ClobberMemory();
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
void BM_BatchUpdateParallel(benchmark::State& st) {
    Batch b(st.range(0));
    for (auto _ : st) {
        sweep::update_trust_batch_parallel(b.prev, b.obs, params, b.out);
        benchmark::ClobberMemory();
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_BatchUpdateSerial)->Arg(1 << 14)->Arg(1 << 20)->UseRealTime();
BENCHMARK(BM_BatchUpdateParallel)->Arg(1 << 14)->Arg(1 << 20)->UseRealTime();

ScenarioConfig year_config() {
    return load_scenario(std::string(PHILOS_CONFIG_DIR) + "/fig6.cfg");
}

void BM_SimulateSerial(benchmark::State& st) {
    const auto cfg = year_config();
    for (auto _ : st) benchmark::DoNotOptimize(simulate_serial(cfg));
}
void BM_SimulateParallel(benchmark::State& st) {
    const auto cfg = year_config();
    for (auto _ : st) benchmark::DoNotOptimize(simulate_parallel(cfg));
}
BENCHMARK(BM_SimulateSerial)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateParallel)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
