#include "p2pmarket/fpp_market.hpp"

#include "p2pmarket/apportion.hpp"

#include <vector>

namespace p2pmarket {

Contributions form_fpp(std::span<const FppSurplus> surplus, bool battery_only)
{
    Contributions out;
    for (const auto& s : surplus) {
        const EnergyWh amount = battery_only ? s.battery_charge : s.battery_charge + s.unsold_solar;
        if (amount.value() < 0) {
            throw SimulationFault("negative surplus for prosumer " + std::to_string(to_int(s.id)));
        }
        if (amount.value() > 0) {
            out[s.id] += amount;
        }
    }
    return out;
}

MarketChoice select_market(const SpotQuote& quote, PriceMc retail_price)
{
    return quote.forecast > retail_price ? MarketChoice::Spot : MarketChoice::Retail;
}

FppBid compute_bid(const Contributions& contributions, const Ratio& bid_fraction)
{
    if (bid_fraction < Ratio{0} || bid_fraction > Ratio{1}) {
        throw ValidationError("bid fraction must lie in [0, 1]");
    }
    FppBid bid;
    bid.bid_fraction = bid_fraction;

    std::int64_t total = 0;
    std::vector<std::int64_t> weights;
    for (const auto& [id, amount] : contributions) {
        total += amount.value();
        weights.push_back(amount.value());
    }
    const Int128 scaled = static_cast<Int128>(total) * bid_fraction.numerator();
    bid.quantity = EnergyWh{static_cast<std::int64_t>(scaled / bid_fraction.denominator())};

    const auto shares = apportion(bid.quantity.value(), weights);
    std::size_t k = 0;
    for (const auto& [id, amount] : contributions) {
        if (shares[k] > 0) {
            bid.contributions[id] = EnergyWh{shares[k]};
        }
        ++k;
    }
    return bid;
}

MoneyMc settle_gross(const FppBid& bid, const SpotQuote& quote, PriceMc retail_price)
{
    const PriceMc realised = bid.market == MarketChoice::Spot ? quote.actual : retail_price;
    return trade_revenue(bid.quantity, realised);
}

}  // namespace p2pmarket
