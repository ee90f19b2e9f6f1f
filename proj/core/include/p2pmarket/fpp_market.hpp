#pragma once

#include "p2pmarket/domain.hpp"

#include <cstddef>
#include <map>
#include <span>

namespace p2pmarket {

struct SpotQuote {
    std::size_t interval = 0;
    PriceMc forecast;
    PriceMc actual;

    bool operator==(const SpotQuote&) const = default;
};

using Contributions = std::map<ProsumerId, EnergyWh>;

/// Quantity-only bid of the federated power plant for one dispatch interval.
struct FppBid {
    MarketChoice market = MarketChoice::Retail;
    EnergyWh quantity;
    Contributions contributions;
    Ratio bid_fraction{1};

    bool operator==(const FppBid&) const = default;
};

/// Surplus left with a prosumer once local trading is over.
struct FppSurplus {
    ProsumerId id{};
    EnergyWh unsold_solar;
    EnergyWh battery_charge;
};

/// Every prosumer's leftover surplus; zero entries are dropped.
/// With `battery_only`, unsold solar stays out of the plant.
Contributions form_fpp(std::span<const FppSurplus> surplus, bool battery_only = false);

/// Spot when the forecast strictly exceeds the retail price, Retail otherwise.
MarketChoice select_market(const SpotQuote& quote, PriceMc retail_price);

/// Bids floor(total * bid_fraction); contributions are scaled with
/// largest-remainder rounding so they sum exactly to the bid quantity.
/// The returned bid's market is left for the caller to set.
FppBid compute_bid(const Contributions& contributions, const Ratio& bid_fraction);

/// Gross revenue at the realised price: the actual spot price for Spot,
/// the retail price for Retail. The forecast never enters.
MoneyMc settle_gross(const FppBid& bid, const SpotQuote& quote, PriceMc retail_price);

}  // namespace p2pmarket
