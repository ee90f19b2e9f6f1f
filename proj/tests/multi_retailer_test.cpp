#include "p2pmarket/multi_retailer.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

namespace p2pmarket {
namespace {

RetailerOffer offer(std::uint32_t id, Ratio share, std::int64_t charge = 0, std::int64_t retail = 7000)
{
    return {RetailerId{id}, MoneyMc{charge}, share, PriceMc{retail}};
}

const SpotQuote kSpot{1, PriceMc{800000}, PriceMc{800000}};
const SpotQuote kLow{3, PriceMc{6000}, PriceMc{800000}};

Contributions equal_contributors(int n)
{
    Contributions c;
    for (int i = 1; i <= n; ++i) {
        c[ProsumerId{static_cast<std::uint32_t>(i)}] = EnergyWh{3000};
    }
    return c;
}

TEST(EvaluateOffer, HalfShareOfSpotRevenue)
{
    EXPECT_EQ(evaluate_offer(EnergyWh{3000}, offer(1, Ratio{1, 2}), kSpot), MoneyMc{1'200'000});
}

TEST(EvaluateOffer, RetailPathIsCommissionFree)
{
    EXPECT_EQ(evaluate_offer(EnergyWh{3000}, offer(1, Ratio{1}), kLow), MoneyMc{21'000});
    EXPECT_EQ(evaluate_offer(EnergyWh{3000}, offer(1, Ratio{1, 2}), kLow), MoneyMc{21'000});
}

TEST(EvaluateOffer, NothingToContribute)
{
    EXPECT_EQ(evaluate_offer(EnergyWh{0}, offer(1, Ratio{1, 2}, 750), kSpot), MoneyMc{-750});
}

TEST(SelectRetailer, HigherShareWins)
{
    const std::vector<RetailerOffer> offers{offer(1, Ratio{1, 2}), offer(2, Ratio{3, 5})};
    EXPECT_EQ(select_retailer(EnergyWh{3000}, offers, kSpot), RetailerId{2});
}

TEST(SelectRetailer, SingleOffer)
{
    const std::vector<RetailerOffer> offers{offer(4, Ratio{0})};
    EXPECT_EQ(select_retailer(EnergyWh{3000}, offers, kSpot), RetailerId{4});
}

TEST(SelectRetailer, TiesGoToTheLowestId)
{
    const std::vector<RetailerOffer> offers{offer(2, Ratio{1, 2}), offer(1, Ratio{1, 2})};
    EXPECT_EQ(select_retailer(EnergyWh{3000}, offers, kSpot), RetailerId{1});
    EXPECT_THROW(select_retailer(EnergyWh{3000}, {}, kSpot), ValidationError);
}

TEST(SelectRetailer, ServiceChargeCounts)
{
    const std::vector<RetailerOffer> offers{offer(1, Ratio{1, 2}, 0), offer(2, Ratio{1, 2}, 10)};
    EXPECT_EQ(select_retailer(EnergyWh{3000}, offers, kLow), RetailerId{1});
}

TEST(Negotiate, SingleRetailerConvergesAtOnce)
{
    const auto r = negotiate({offer(1, Ratio{1, 2})}, equal_contributors(4), kSpot, NegotiationConfig{});
    EXPECT_EQ(r.assignment.rounds_used, 1);
    ASSERT_EQ(r.assignment.retailer_of.size(), 4u);
    for (const auto& [p, ret] : r.assignment.retailer_of) {
        EXPECT_EQ(ret, RetailerId{1});
    }
}

TEST(Negotiate, IdenticalRetailersOscillateUntilTheLimit)
{
    const NegotiationConfig config;
    const auto r = negotiate({offer(1, Ratio{1, 2}), offer(2, Ratio{1, 2})}, equal_contributors(3), kSpot, config);

    // Replay: everyone follows the better offer, the idle one adds 1/20.
    Ratio s1{1, 2};
    Ratio s2{1, 2};
    std::uint32_t pick = 0;
    for (int round = 1; round <= config.max_rounds; ++round) {
        pick = s2 > s1 ? 2 : 1;
        if (round == config.max_rounds) {
            break;
        }
        (pick == 1 ? s2 : s1) = std::min((pick == 1 ? s2 : s1) + config.share_step, config.share_ceiling);
    }
    EXPECT_EQ(r.assignment.rounds_used, config.max_rounds);
    for (const auto& [p, ret] : r.assignment.retailer_of) {
        EXPECT_EQ(ret, RetailerId{pick});
    }
    EXPECT_EQ(r.offers[0].profit_share, s1);
    EXPECT_EQ(r.offers[1].profit_share, s2);
}

TEST(Negotiate, CappedIdleRetailerStopsTheLoop)
{
    NegotiationConfig config;
    config.max_rounds = 50;
    const auto r = negotiate({offer(1, Ratio{19, 20}), offer(2, Ratio{9, 10})}, equal_contributors(2), kSpot, config);
    EXPECT_EQ(r.assignment.rounds_used, 1);
    EXPECT_EQ(r.offers[1].profit_share, Ratio(9, 10));
    for (const auto& [p, ret] : r.assignment.retailer_of) {
        EXPECT_EQ(ret, RetailerId{1});
    }
}

TEST(Negotiate, IdleRetailerCutsItsCharge)
{
    NegotiationConfig config;
    config.charge_step = MoneyMc{400};
    config.share_step = Ratio{0};
    const auto r = negotiate({offer(1, Ratio{1}, 100), offer(2, Ratio{1}, 1000)}, equal_contributors(1), kLow, config);
    // Round 1 picks 1 and retailer 2 cuts to 600; round 2 repeats the pick and ends it.
    EXPECT_EQ(r.assignment.retailer_of.at(ProsumerId{1}), RetailerId{1});
    EXPECT_EQ(r.assignment.rounds_used, 2);
    EXPECT_EQ(r.offers[1].service_charge, MoneyMc{600});

    // One cut that undercuts the leader flips the selection.
    config.max_rounds = 2;
    const auto flip = negotiate({offer(1, Ratio{1}, 500), offer(2, Ratio{1}, 800)}, equal_contributors(1), kLow,
                                config);
    EXPECT_EQ(flip.assignment.retailer_of.at(ProsumerId{1}), RetailerId{2});
    EXPECT_EQ(flip.assignment.rounds_used, 2);
    EXPECT_EQ(flip.offers[0].service_charge, MoneyMc{500});
    EXPECT_EQ(flip.offers[1].service_charge, MoneyMc{400});
}

TEST(Negotiate, OffersOnlySweetenAndSelectionIsOptimal)
{
    gen::Rng rng(61);
    for (int i = 0; i < 500; ++i) {
        std::vector<RetailerOffer> seeds;
        for (std::uint32_t k = 1, n = static_cast<std::uint32_t>(gen::uniform(rng, 1, 5)); k <= n; ++k) {
            seeds.push_back(offer(k, Ratio{gen::uniform(rng, 0, 10), 10}, gen::uniform(rng, 0, 3000),
                                  gen::uniform(rng, 5000, 9000)));
        }
        Contributions c;
        for (std::uint32_t k = 1, n = static_cast<std::uint32_t>(gen::uniform(rng, 0, 8)); k <= n; ++k) {
            c[ProsumerId{k}] = EnergyWh{gen::uniform(rng, 0, 6000)};
        }
        NegotiationConfig config;
        config.max_rounds = static_cast<int>(gen::uniform(rng, 1, 12));
        config.charge_step = MoneyMc{gen::uniform(rng, 0, 500)};
        const SpotQuote q{1, PriceMc{gen::uniform(rng, 0, 20000)}, PriceMc{0}};
        const auto r = negotiate(seeds, c, q, config);

        EXPECT_LE(r.assignment.rounds_used, config.max_rounds);
        EXPECT_GE(r.assignment.rounds_used, 1);
        ASSERT_EQ(r.offers.size(), seeds.size());
        for (std::size_t k = 0; k < seeds.size(); ++k) {
            EXPECT_GE(r.offers[k].profit_share, seeds[k].profit_share);
            EXPECT_LE(r.offers[k].service_charge, seeds[k].service_charge);
        }
        EXPECT_EQ(r.assignment.retailer_of.size(), c.size());
        for (const auto& [p, ret] : r.assignment.retailer_of) {
            const auto& mine = *std::find_if(r.offers.begin(), r.offers.end(),
                                             [&](const auto& o) { return o.retailer == ret; });
            const auto v = evaluate_offer(c.at(p), mine, q);
            for (const auto& other : r.offers) {
                const auto w = evaluate_offer(c.at(p), other, q);
                EXPECT_TRUE(w < v || (w == v && other.retailer >= ret));
            }
        }
    }
}

TEST(Negotiate, NeedsAtLeastOneRound)
{
    NegotiationConfig config;
    config.max_rounds = 0;
    EXPECT_THROW(negotiate({offer(1, Ratio{1, 2})}, equal_contributors(1), kSpot, config), ValidationError);
    EXPECT_THROW(negotiate({}, equal_contributors(1), kSpot, NegotiationConfig{}), ValidationError);
}

}  // namespace
}  // namespace p2pmarket
