#pragma once

#include "p2pmarket/domain.hpp"

#include <optional>
#include <span>
#include <vector>

namespace p2pmarket {

enum class Side : std::uint8_t { Sell, Buy };

struct Order {
    ProsumerId owner{};
    Side side = Side::Sell;
    std::optional<SupplyTier> tier;  // set for sells only
    EnergyWh quantity;
    PriceMc limit_price;

    bool operator==(const Order&) const = default;
};

struct Trade {
    ProsumerId seller{};
    ProsumerId buyer{};
    SupplyTier tier = SupplyTier::SolarSurplus;
    EnergyWh quantity;
    PriceMc price;

    bool operator==(const Trade&) const = default;
};

struct MarketOutcome {
    std::vector<Trade> trades;
    std::optional<PriceMc> clearing_price;
    std::vector<Order> unmatched_sells;
    std::vector<Order> unmatched_buys;
    int rebid_rounds_used = 0;

    [[nodiscard]] EnergyWh traded_volume() const;

    bool operator==(const MarketOutcome&) const = default;
};

enum class ClearingMechanism : std::uint8_t { DoubleAuction, MidMarketRate };

// Where in its preferred range a prosumer posts its first quote.
// Aggressive: sellers at sell_range.min, buyers at buy_range.max.
// Conservative: sellers at sell_range.max, buyers at buy_range.min.
enum class QuotePolicy : std::uint8_t { Aggressive, Conservative };

const char* to_string(ClearingMechanism m) noexcept;
const char* to_string(QuotePolicy p) noexcept;

/// Energy position of a prosumer after it has served its own demand.
/// A prosumer is never both: either surplus components or a deficit are non-zero.
struct Residual {
    EnergyWh solar_surplus;
    EnergyWh battery_surplus;  // stored charge offered to peers
    EnergyWh deficit;
    EnergyWh self_discharge;   // battery energy used for own demand

    [[nodiscard]] EnergyWh surplus() const { return solar_surplus + battery_surplus; }
    /// Signed net position: positive = surplus, negative = deficit.
    [[nodiscard]] EnergyWh net() const { return surplus() - deficit; }

    bool operator==(const Residual&) const = default;
};

struct SelfConsumption {
    ProsumerState state;  // battery_level after own-use discharge
    Residual residual;
};

/// Meets demand from generation first, then from the battery.
SelfConsumption self_consume(const ProsumerState& state);

struct OrderBook {
    std::vector<Order> sells;
    std::vector<Order> buys;

    bool operator==(const OrderBook&) const = default;
};

/// One sell order per non-zero surplus tier and one buy order per deficit,
/// priced from each prosumer's preferred range according to `policy`.
/// `states` and `residuals` are parallel.
OrderBook collect_orders(std::span<const ProsumerState> states, std::span<const Residual> residuals,
                         QuotePolicy policy = QuotePolicy::Aggressive);

/// Uniform-price double auction.
///
/// The breakeven volume and the marginal pair come from walking asks
/// (ascending price, solar before battery, then id) against bids (descending
/// price, then id). The price is the midpoint of the marginal ask and bid.
/// Matched volume is then filled from every ask whose limit is at or below
/// that price, solar surplus first, so battery charge is only sold once the
/// eligible solar surplus is exhausted.
MarketOutcome clear_double_auction(std::span<const Order> sells, std::span<const Order> buys);

/// Mid-market rate: every eligible order trades at (retail + feed_in) / 2.
/// Sells priced above the rate and buys priced below it do not participate.
/// Matched volume is split pro-rata (largest remainder, ties by id), filling
/// the solar tier before the battery tier. Throws ValidationError if
/// feed_in > retail_price.
MarketOutcome clear_mid_market(std::span<const Order> sells, std::span<const Order> buys, PriceMc retail_price,
                               PriceMc feed_in);

PriceMc mid_market_price(PriceMc retail_price, PriceMc feed_in);

struct AdequacyReport {
    EnergyWh supply_at_price;
    EnergyWh demand_at_price;
    bool adequate = true;

    [[nodiscard]] EnergyWh shortfall() const
    {
        return adequate ? EnergyWh{0} : demand_at_price - supply_at_price;
    }
};

/// Does supply offered at or below `price` cover demand bid at or above it?
AdequacyReport assess_adequacy(std::span<const Order> sells, std::span<const Order> buys, PriceMc price);

struct ClearingConfig {
    ClearingMechanism mechanism = ClearingMechanism::DoubleAuction;
    PriceMc retail_price{7000};
    PriceMc feed_in{0};
    QuotePolicy quote_policy = QuotePolicy::Aggressive;
    Ratio rebid_step{1, 4};  // fraction of the preferred range moved per round
    int rebid_max_rounds = 3;

    bool operator==(const ClearingConfig&) const = default;
};

/// Clears once with the configured mechanism.
MarketOutcome clear(const OrderBook& book, const ClearingConfig& config);

/// Clears, checks adequacy and lets unmatched participants re-bid.
///
/// Each round, every seller left with unmatched volume lowers its ask by one
/// step toward sell_range.min and every such buyer raises its bid toward
/// buy_range.max; then the book is cleared again from scratch. Stops when
/// the market is adequate, when one side has nothing left, when no quote can
/// move, or after rebid_max_rounds re-bids. `states` supplies the ranges.
MarketOutcome rebid_loop(OrderBook book, std::span<const ProsumerState> states, const ClearingConfig& config);

/// Convenience: collect_orders followed by rebid_loop.
MarketOutcome rebid_loop(std::span<const ProsumerState> states, std::span<const Residual> residuals,
                         const ClearingConfig& config);

struct GridPurchase {
    ProsumerId buyer{};
    EnergyWh quantity;
    MoneyMc cost;

    bool operator==(const GridPurchase&) const = default;
};

/// Residual demand bought from the retailer at a flat retail price, one
/// purchase per buyer (orders of the same buyer are merged), ordered by id.
std::vector<GridPurchase> buy_residual_from_retailer(std::span<const Order> unmatched_buys, PriceMc retail_price);

}  // namespace p2pmarket
