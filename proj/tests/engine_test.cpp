#include "p2pmarket/engine.hpp"

#include "support/balance.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

namespace p2pmarket {
namespace {

ScenarioConfig two_prosumer_config()
{
    ScenarioConfig c;
    c.name = "pair";
    c.clearing.retail_price = PriceMc{7000};
    c.clearing.feed_in = PriceMc{3000};
    c.prosumers = {{ProsumerId{1}, EnergyWh{5000}, EnergyWh{0}, {PriceMc{5000}, PriceMc{7000}}, {PriceMc{5000}, PriceMc{7000}}},
                   {ProsumerId{2}, EnergyWh{5000}, EnergyWh{0}, {PriceMc{5000}, PriceMc{7000}}, {PriceMc{5000}, PriceMc{7000}}}};
    return c;
}

SlotInput slot(std::size_t t, std::vector<std::pair<std::int64_t, std::int64_t>> loads, std::int64_t forecast,
               std::int64_t actual)
{
    SlotInput s;
    s.interval = t;
    std::uint32_t id = 1;
    for (auto [g, d] : loads) {
        s.loads.push_back({ProsumerId{id++}, EnergyWh{g}, EnergyWh{d}});
    }
    s.quote = {t, PriceMc{forecast}, PriceMc{actual}};
    return s;
}

TEST(Table2, CaseOneAccurateSpotForecast)
{
    const auto config = table2_scenario();
    const auto r = run_interval(initial_states(config), config.slots[0], config);
    ASSERT_EQ(r.record.settlements.size(), 1u);
    const auto& s = r.record.settlements[0];
    EXPECT_TRUE(r.record.local.trades.empty());
    EXPECT_EQ(s.market, MarketChoice::Spot);
    EXPECT_EQ(s.quantity, EnergyWh{15000});
    EXPECT_EQ(s.gross, MoneyMc{12'000'000});
    EXPECT_EQ(s.retailer_commission, MoneyMc{6'000'000});
    ASSERT_EQ(s.prosumer_payouts.size(), 5u);
    for (const auto& [id, p] : s.prosumer_payouts) {
        EXPECT_LE(to_int(id), 5u);
        EXPECT_EQ(p, MoneyMc{1'200'000});
        EXPECT_EQ(s.baseline_payouts.at(id), MoneyMc{21'000});
    }
    EXPECT_EQ(s.improvement.label(), "57");
}

TEST(Table2, CaseTwoPaysLikeCaseOne)
{
    const auto config = table2_scenario();
    const auto one = run_interval(initial_states(config), config.slots[0], config);
    const auto two = run_interval(initial_states(config), config.slots[1], config);
    EXPECT_EQ(two.record.settlements[0].gross, one.record.settlements[0].gross);
    EXPECT_EQ(two.record.settlements[0].prosumer_payouts, one.record.settlements[0].prosumer_payouts);
    EXPECT_EQ(two.record.settlements[0].retailer_commission, one.record.settlements[0].retailer_commission);
}

TEST(Table2, FullRunSummary)
{
    const auto report = run_simulation(table2_scenario());
    ASSERT_EQ(report.summary.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& row = report.summary[i];
        const bool spot = i < 2;
        EXPECT_EQ(row.interval, i + 1);
        EXPECT_EQ(row.total_surplus, EnergyWh{15000});
        EXPECT_EQ(row.market, spot ? MarketChoice::Spot : MarketChoice::Retail);
        EXPECT_EQ(row.total_revenue, MoneyMc{spot ? 12'000'000 : 105'000});
        EXPECT_EQ(row.retailer_revenue, MoneyMc{spot ? 6'000'000 : 0});
        EXPECT_EQ(row.per_prosumer, MoneyMc{spot ? 1'200'000 : 21'000});
        EXPECT_EQ(row.per_prosumer_baseline, MoneyMc{21'000});
        EXPECT_EQ(row.improvement.label(), spot ? "57" : "same");
    }
    EXPECT_EQ(balance::check(table2_scenario(), report), "");
    EXPECT_EQ(report.retailer_ledgers.at(RetailerId{0}), MoneyMc{12'000'000});
    EXPECT_EQ(report.prosumer_ledgers.at(ProsumerId{1}), MoneyMc{2 * 1'200'000 + 2 * 21'000});
    EXPECT_EQ(report.prosumer_ledgers.at(ProsumerId{6}), MoneyMc{0});
}

TEST(RunInterval, IdleCommunity)
{
    const auto config = two_prosumer_config();
    const auto r = run_interval(initial_states(config), slot(1, {{0, 0}, {0, 0}}, 800000, 800000), config);
    EXPECT_TRUE(r.record.local.trades.empty());
    EXPECT_TRUE(r.record.grid_purchases.empty());
    EXPECT_EQ(r.record.settlements[0].quantity, EnergyWh{0});
    EXPECT_EQ(r.record.settlements[0].gross, MoneyMc{0});
    for (const auto& f : r.record.prosumers) {
        EXPECT_EQ(f.ledger_delta, MoneyMc{0});
    }
}

TEST(RunInterval, LocalTradesBeforeFpp)
{
    auto config = two_prosumer_config();
    // 1 has 4000 Wh spare, 2 needs 1500 Wh; 2500 Wh left for the plant.
    const auto r = run_interval(initial_states(config), slot(1, {{5000, 1000}, {500, 2000}}, 800000, 600000), config);
    ASSERT_EQ(r.record.local.trades.size(), 1u);
    const auto& tr = r.record.local.trades[0];
    EXPECT_EQ(tr.quantity, EnergyWh{1500});
    EXPECT_EQ(tr.price, PriceMc{6000});
    const auto& s = r.record.settlements[0];
    EXPECT_EQ(s.quantity, EnergyWh{2500});
    EXPECT_EQ(s.gross, MoneyMc{1'500'000});
    const auto& seller = r.record.prosumers[0];
    const auto& buyer = r.record.prosumers[1];
    EXPECT_EQ(seller.p2p_revenue, MoneyMc{9000});
    EXPECT_EQ(buyer.p2p_cost, MoneyMc{9000});
    EXPECT_EQ(seller.fpp_payout, MoneyMc{750'000});
    EXPECT_EQ(seller.ledger_delta, MoneyMc{759'000});
    EXPECT_EQ(buyer.ledger_delta, MoneyMc{-9000});
    EXPECT_EQ(r.states[0].ledger, MoneyMc{759'000});
}

TEST(RunInterval, ResidualDemandBoughtAtRetail)
{
    auto config = two_prosumer_config();
    const auto r = run_interval(initial_states(config), slot(1, {{0, 1000}, {0, 2000}}, 0, 0), config);
    ASSERT_EQ(r.record.grid_purchases.size(), 2u);
    EXPECT_EQ(r.record.grid_purchases[1], (GridPurchase{ProsumerId{2}, EnergyWh{2000}, MoneyMc{14000}}));
    EXPECT_EQ(r.record.retailer_delta.at(RetailerId{0}), MoneyMc{21000});
    EXPECT_EQ(r.record.prosumers[0].ledger_delta, MoneyMc{-7000});
}

TEST(RunInterval, UnsoldSolarChargesThenCurtails)
{
    auto config = two_prosumer_config();
    config.bid_fraction = Ratio{1, 2};
    config.prosumers[0].battery_capacity = EnergyWh{1000};
    const auto r = run_interval(initial_states(config), slot(1, {{4000, 0}, {0, 0}}, 0, 0), config);
    const auto& f = r.record.prosumers[0];
    EXPECT_EQ(f.fpp_export, EnergyWh{2000});
    EXPECT_EQ(f.charge, EnergyWh{1000});
    EXPECT_EQ(f.curtailed, EnergyWh{1000});
    EXPECT_EQ(r.states[0].battery_level, EnergyWh{1000});
}

TEST(RunInterval, BatteryOnlyPlant)
{
    auto config = two_prosumer_config();
    config.fpp_battery_only = true;
    config.prosumers[0].battery_level = EnergyWh{2000};
    const auto r = run_interval(initial_states(config), slot(1, {{1000, 0}, {0, 0}}, 9000, 9000), config);
    const auto& f = r.record.prosumers[0];
    EXPECT_EQ(f.fpp_export, EnergyWh{2000});
    EXPECT_EQ(f.discharge, EnergyWh{2000});
    EXPECT_EQ(f.charge, EnergyWh{1000});
    EXPECT_EQ(f.battery_end, EnergyWh{1000});
}

TEST(RunInterval, SubscriptionsOnRetailerOwnedPlatforms)
{
    auto config = two_prosumer_config();
    config.ownership_mode = OwnershipMode::RetailerOwnedPlatform;
    config.subscription = {MoneyMc{500'001}, 100};
    const auto r = run_interval(initial_states(config), slot(1, {{0, 0}, {0, 0}}, 0, 0), config);
    EXPECT_EQ(r.record.settlements[0].subscription_income, MoneyMc{10'000});
    EXPECT_EQ(r.record.prosumers[0].fees, MoneyMc{5000});
    EXPECT_EQ(r.record.prosumers[1].fees, MoneyMc{5000});
    EXPECT_EQ(r.record.retailer_delta.at(RetailerId{0}), MoneyMc{10'000});

    config.ownership_mode = OwnershipMode::ThirdPartyPlatform;
    const auto free = run_interval(initial_states(config), slot(1, {{0, 0}, {0, 0}}, 0, 0), config);
    EXPECT_EQ(free.record.settlements[0].subscription_income, MoneyMc{0});
}

TEST(RunInterval, MismatchedLoadsAreAFault)
{
    const auto config = two_prosumer_config();
    try {
        run_interval(initial_states(config), slot(7, {{0, 0}}, 0, 0), config);
        FAIL();
    } catch (const SimulationFault& e) {
        EXPECT_NE(std::string(e.what()).find("interval 7"), std::string::npos);
    }
}

TEST(RunSimulation, NoIntervals)
{
    const auto config = two_prosumer_config();
    const auto report = run_simulation(config);
    EXPECT_TRUE(report.intervals.empty());
    EXPECT_TRUE(report.summary.empty());
    for (const auto& [id, v] : report.prosumer_ledgers) {
        EXPECT_EQ(v, MoneyMc{0});
    }
    EXPECT_EQ(report.prosumer_ledgers.size(), 2u);
}

TEST(RunSimulation, Deterministic)
{
    const auto config = table2_scenario();
    EXPECT_EQ(run_simulation(config), run_simulation(config));
}

TEST(RunSimulation, RetailersCompeteEveryInterval)
{
    auto config = two_prosumer_config();
    config.retailers = {{RetailerId{1}, MoneyMc{0}, Ratio{1, 2}, PriceMc{7000}},
                        {RetailerId{2}, MoneyMc{0}, Ratio{3, 5}, PriceMc{7000}}};
    config.slots = {slot(1, {{4000, 1000}, {3000, 0}}, 800000, 800000)};
    const auto report = run_simulation(config);
    const auto& rec = report.intervals[0];
    EXPECT_EQ(rec.assignment.retailer_of.at(ProsumerId{1}), RetailerId{2});
    EXPECT_EQ(rec.assignment.retailer_of.at(ProsumerId{2}), RetailerId{2});
    ASSERT_EQ(rec.settlements.size(), 2u);
    EXPECT_EQ(rec.settlements[0].quantity, EnergyWh{0});
    EXPECT_EQ(rec.settlements[1].quantity, EnergyWh{6000});
    EXPECT_EQ(rec.settlements[1].retailer_commission, MoneyMc{1'920'000});
    EXPECT_EQ(report.summary.size(), 2u);
    EXPECT_EQ(balance::check(config, report), "");
}

TEST(RunSimulation, RandomScenariosConserveEnergyAndMoney)
{
    gen::Rng rng(71);
    for (int i = 0; i < 300; ++i) {
        const auto config = gen::random_scenario(rng);
        ASSERT_NO_THROW(validate(config));
        const auto report = run_simulation(config);
        ASSERT_EQ(balance::check(config, report), "") << "scenario " << i;
    }
}

TEST(ExpectedContributions, SurplusAfterOwnUse)
{
    auto config = two_prosumer_config();
    config.prosumers[1].battery_level = EnergyWh{700};
    const auto c = expected_contributions(initial_states(config), slot(1, {{4000, 1000}, {0, 300}}, 0, 0));
    EXPECT_EQ(c.at(ProsumerId{1}), EnergyWh{3000});
    EXPECT_EQ(c.at(ProsumerId{2}), EnergyWh{400});
}

}  // namespace
}  // namespace p2pmarket
