#include "p2pmarket/engine.hpp"
#include "p2pmarket/local_market.hpp"

#include "support/generators.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace p2pmarket;

struct Book {
    std::vector<Order> sells;
    std::vector<Order> buys;
};

Book random_book(std::int64_t n)
{
    gen::Rng rng(static_cast<std::uint64_t>(n));
    Book b;
    for (std::int64_t i = 0; i < n; ++i) {
        const auto id = ProsumerId{static_cast<std::uint32_t>(i + 1)};
        const auto tier = gen::coin(rng) ? SupplyTier::SolarSurplus : SupplyTier::BatteryCharge;
        b.sells.push_back({id, Side::Sell, tier, EnergyWh{gen::uniform(rng, 1, 9000)},
                           PriceMc{gen::uniform(rng, 2000, 12000)}});
        b.buys.push_back({id, Side::Buy, std::nullopt, EnergyWh{gen::uniform(rng, 1, 9000)},
                          PriceMc{gen::uniform(rng, 2000, 12000)}});
    }
    return b;
}

void BM_DoubleAuction(benchmark::State& state)
{
    const auto book = random_book(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(clear_double_auction(book.sells, book.buys));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DoubleAuction)->RangeMultiplier(4)->Range(4, 4096)->Complexity();

void BM_MidMarket(benchmark::State& state)
{
    const auto book = random_book(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(clear_mid_market(book.sells, book.buys, PriceMc{9000}, PriceMc{3000}));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MidMarket)->RangeMultiplier(4)->Range(4, 4096)->Complexity();

void BM_Table2(benchmark::State& state)
{
    const auto config = table2_scenario();
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_simulation(config));
    }
}
BENCHMARK(BM_Table2);

void BM_RandomCommunity(benchmark::State& state)
{
    gen::Rng rng(7);
    gen::ScenarioShape shape;
    shape.max_prosumers = static_cast<int>(state.range(0));
    shape.max_intervals = 24;
    const auto config = gen::random_scenario(rng, shape);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_simulation(config));
    }
}
BENCHMARK(BM_RandomCommunity)->Arg(10)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
