#pragma once

// Seeded random inputs shared by the property tests and the acceptance run.

#include "p2pmarket/scenario.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace p2pmarket::gen {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi)
{
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

inline PriceRange price_range(Rng& rng, std::int64_t lo, std::int64_t hi)
{
    const auto a = uniform(rng, lo, hi);
    const auto b = uniform(rng, lo, hi);
    return {PriceMc{std::min(a, b)}, PriceMc{std::max(a, b)}};
}

struct ScenarioShape {
    int max_prosumers = 8;
    int max_intervals = 6;
    int max_retailers = 3;
    std::int64_t max_energy = 8000;
};

/// A random but valid multi-interval scenario, every knob exercised.
inline ScenarioConfig random_scenario(Rng& rng, const ScenarioShape& shape = {})
{
    ScenarioConfig c;
    c.name = "random";
    const auto retail = uniform(rng, 3000, 12000);
    c.clearing.retail_price = PriceMc{retail};
    c.clearing.feed_in = PriceMc{uniform(rng, 0, retail)};
    c.clearing.mechanism = coin(rng) ? ClearingMechanism::DoubleAuction : ClearingMechanism::MidMarketRate;
    c.clearing.quote_policy = coin(rng) ? QuotePolicy::Aggressive : QuotePolicy::Conservative;
    c.clearing.rebid_step = Ratio{uniform(rng, 0, 4), 4};
    c.clearing.rebid_max_rounds = static_cast<int>(uniform(rng, 0, 4));
    c.split.commission_rate = Ratio{uniform(rng, 0, 10), 10};
    if (coin(rng)) {
        c.split.applies_to.insert(MarketChoice::Retail);
    }
    c.bid_fraction = Ratio{uniform(rng, 0, 6), 6};
    c.fpp_battery_only = uniform(rng, 0, 3) == 0;
    c.ownership_mode = coin(rng) ? OwnershipMode::ThirdPartyPlatform : OwnershipMode::RetailerOwnedPlatform;
    c.subscription.monthly_fee = MoneyMc{uniform(rng, 0, 500000)};
    c.subscription.intervals_per_month = uniform(rng, 1, 720);
    c.negotiation.max_rounds = static_cast<int>(uniform(rng, 1, 6));
    c.negotiation.charge_step = MoneyMc{uniform(rng, 0, 2000)};

    const auto n = uniform(rng, 1, shape.max_prosumers);
    for (std::int64_t i = 0; i < n; ++i) {
        ProsumerSpec p;
        p.id = ProsumerId{static_cast<std::uint32_t>(i * 3 + 1)};
        p.battery_capacity = EnergyWh{uniform(rng, 0, 13500)};
        p.battery_level = EnergyWh{uniform(rng, 0, p.battery_capacity.value())};
        p.sell_range = price_range(rng, 2000, 14000);
        p.buy_range = price_range(rng, 2000, 14000);
        c.prosumers.push_back(p);
    }

    const auto nr = uniform(rng, 0, shape.max_retailers);
    for (std::int64_t r = 0; r < nr; ++r) {
        RetailerOffer o;
        o.retailer = RetailerId{static_cast<std::uint32_t>(r + 1)};
        o.service_charge = MoneyMc{uniform(rng, 0, 5000)};
        o.profit_share = Ratio{uniform(rng, 0, 20), 20};
        o.retail_price = PriceMc{uniform(rng, c.clearing.feed_in.value(), retail + 2000)};
        c.retailers.push_back(o);
    }

    const auto intervals = uniform(rng, 0, shape.max_intervals);
    for (std::int64_t t = 1; t <= intervals; ++t) {
        SlotInput slot;
        slot.interval = static_cast<std::size_t>(t);
        for (const auto& p : c.prosumers) {
            slot.loads.push_back({p.id, EnergyWh{uniform(rng, 0, shape.max_energy)},
                                  EnergyWh{uniform(rng, 0, shape.max_energy)}});
        }
        slot.quote = {slot.interval, PriceMc{uniform(rng, 0, 3 * retail)}, PriceMc{uniform(rng, 0, 3 * retail)}};
        c.slots.push_back(slot);
    }
    return c;
}

}  // namespace p2pmarket::gen
