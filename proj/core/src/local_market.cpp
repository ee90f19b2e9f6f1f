#include "p2pmarket/local_market.hpp"

#include "p2pmarket/apportion.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace p2pmarket {

namespace {

struct Fill {
    const Order* order;
    EnergyWh filled;
};

bool ask_merit_less(const Order& a, const Order& b)
{
    if (a.limit_price != b.limit_price) {
        return a.limit_price < b.limit_price;
    }
    if (a.tier != b.tier) {
        return a.tier < b.tier;
    }
    return a.owner < b.owner;
}

bool bid_merit_less(const Order& a, const Order& b)
{
    if (a.limit_price != b.limit_price) {
        return a.limit_price > b.limit_price;
    }
    return a.owner < b.owner;
}

bool ask_tier_less(const Order& a, const Order& b)
{
    if (a.tier != b.tier) {
        return a.tier < b.tier;
    }
    return ask_merit_less(a, b);
}

void check_orders(std::span<const Order> sells, std::span<const Order> buys)
{
    for (const auto& o : sells) {
        if (o.side != Side::Sell || !o.tier || o.quantity.value() <= 0 || o.limit_price.value() < 0) {
            throw SimulationFault("malformed sell order from prosumer " + std::to_string(to_int(o.owner)));
        }
    }
    for (const auto& o : buys) {
        if (o.side != Side::Buy || o.tier || o.quantity.value() <= 0 || o.limit_price.value() < 0) {
            throw SimulationFault("malformed buy order from prosumer " + std::to_string(to_int(o.owner)));
        }
    }
}

std::vector<const Order*> sorted_view(std::span<const Order> orders, bool (*less)(const Order&, const Order&))
{
    std::vector<const Order*> view;
    view.reserve(orders.size());
    for (const auto& o : orders) {
        view.push_back(&o);
    }
    std::stable_sort(view.begin(), view.end(), [less](const Order* a, const Order* b) { return less(*a, *b); });
    return view;
}

// Takes `volume` from the orders in the given priority order.
std::vector<Fill> fill_in_order(const std::vector<const Order*>& orders, EnergyWh volume)
{
    std::vector<Fill> fills;
    for (const Order* o : orders) {
        const EnergyWh take = min(o->quantity, volume);
        fills.push_back({o, take});
        volume -= take;
    }
    return fills;
}

// Pro-rata split of `volume` across `orders`, weights = quantities, ties by id.
std::vector<Fill> fill_pro_rata(std::vector<const Order*> orders, EnergyWh volume)
{
    std::stable_sort(orders.begin(), orders.end(), [](const Order* a, const Order* b) { return a->owner < b->owner; });
    std::vector<std::int64_t> weights;
    weights.reserve(orders.size());
    for (const Order* o : orders) {
        weights.push_back(o->quantity.value());
    }
    const auto shares = apportion(volume.value(), weights);
    std::vector<Fill> fills;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        fills.push_back({orders[i], EnergyWh{shares[i]}});
    }
    return fills;
}

// Pairs filled sell volume with filled buy volume in sequence.
std::vector<Trade> zip_fills(const std::vector<Fill>& sells, const std::vector<Fill>& buys, PriceMc price)
{
    std::vector<Trade> trades;
    std::size_t i = 0;
    std::size_t j = 0;
    EnergyWh sell_left = sells.empty() ? EnergyWh{} : sells[0].filled;
    EnergyWh buy_left = buys.empty() ? EnergyWh{} : buys[0].filled;
    while (i < sells.size() && j < buys.size()) {
        if (sell_left.is_zero()) {
            if (++i < sells.size()) {
                sell_left = sells[i].filled;
            }
            continue;
        }
        if (buy_left.is_zero()) {
            if (++j < buys.size()) {
                buy_left = buys[j].filled;
            }
            continue;
        }
        const EnergyWh q = min(sell_left, buy_left);
        trades.push_back({sells[i].order->owner, buys[j].order->owner, *sells[i].order->tier, q, price});
        sell_left -= q;
        buy_left -= q;
    }
    return trades;
}

// Remaining volume of every order, in the caller's original order.
std::vector<Order> leftovers(std::span<const Order> orders, const std::vector<Fill>& fills)
{
    std::map<const Order*, EnergyWh> filled;
    for (const auto& f : fills) {
        filled[f.order] += f.filled;
    }
    std::vector<Order> out;
    for (const auto& o : orders) {
        Order rest = o;
        rest.quantity = o.quantity - filled[&o];
        if (rest.quantity.value() > 0) {
            out.push_back(rest);
        }
    }
    return out;
}

PriceMc step_size(const PriceRange& range, const Ratio& step)
{
    const std::int64_t width = range.max.value() - range.min.value();
    if (width == 0) {
        return PriceMc{0};
    }
    const std::int64_t raw = round_half_even(step * Ratio{width});
    return PriceMc{std::max<std::int64_t>(raw, 1)};
}

}  // namespace

EnergyWh MarketOutcome::traded_volume() const
{
    EnergyWh total;
    for (const auto& t : trades) {
        total += t.quantity;
    }
    return total;
}

const char* to_string(ClearingMechanism m) noexcept
{
    return m == ClearingMechanism::DoubleAuction ? "double_auction" : "mid_market_rate";
}

const char* to_string(QuotePolicy p) noexcept
{
    return p == QuotePolicy::Aggressive ? "aggressive" : "conservative";
}

SelfConsumption self_consume(const ProsumerState& state)
{
    SelfConsumption out{state, {}};
    const EnergyWh own_use = min(state.generation, state.demand);
    const EnergyWh unmet = state.demand - own_use;
    const EnergyWh discharge = min(state.battery_level, unmet);

    out.state.battery_level = state.battery_level - discharge;
    out.residual.self_discharge = discharge;
    out.residual.solar_surplus = state.generation - own_use;
    out.residual.deficit = unmet - discharge;
    out.residual.battery_surplus = out.residual.deficit.is_zero() ? out.state.battery_level : EnergyWh{0};
    return out;
}

OrderBook collect_orders(std::span<const ProsumerState> states, std::span<const Residual> residuals,
                         QuotePolicy policy)
{
    if (states.size() != residuals.size()) {
        throw SimulationFault("collect_orders: states and residuals differ in length");
    }
    const bool aggressive = policy == QuotePolicy::Aggressive;
    OrderBook book;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& s = states[i];
        const auto& r = residuals[i];
        const PriceMc ask = aggressive ? s.sell_range.min : s.sell_range.max;
        const PriceMc bid = aggressive ? s.buy_range.max : s.buy_range.min;
        if (r.solar_surplus.value() > 0) {
            book.sells.push_back({s.id, Side::Sell, SupplyTier::SolarSurplus, r.solar_surplus, ask});
        }
        if (r.battery_surplus.value() > 0) {
            book.sells.push_back({s.id, Side::Sell, SupplyTier::BatteryCharge, r.battery_surplus, ask});
        }
        if (r.deficit.value() > 0) {
            book.buys.push_back({s.id, Side::Buy, std::nullopt, r.deficit, bid});
        }
    }
    return book;
}

MarketOutcome clear_double_auction(std::span<const Order> sells, std::span<const Order> buys)
{
    check_orders(sells, buys);
    MarketOutcome out;
    const auto asks = sorted_view(sells, ask_merit_less);
    const auto bids = sorted_view(buys, bid_merit_less);

    // Breakeven volume and marginal pair along the merit-order curves.
    EnergyWh volume;
    const Order* marginal_ask = nullptr;
    const Order* marginal_bid = nullptr;
    std::size_t i = 0;
    std::size_t j = 0;
    EnergyWh ask_left = asks.empty() ? EnergyWh{} : asks[0]->quantity;
    EnergyWh bid_left = bids.empty() ? EnergyWh{} : bids[0]->quantity;
    while (i < asks.size() && j < bids.size() && bids[j]->limit_price >= asks[i]->limit_price) {
        const EnergyWh q = min(ask_left, bid_left);
        volume += q;
        marginal_ask = asks[i];
        marginal_bid = bids[j];
        ask_left -= q;
        bid_left -= q;
        if (ask_left.is_zero() && ++i < asks.size()) {
            ask_left = asks[i]->quantity;
        }
        if (bid_left.is_zero() && ++j < bids.size()) {
            bid_left = bids[j]->quantity;
        }
    }

    if (volume.is_zero()) {
        out.unmatched_sells.assign(sells.begin(), sells.end());
        out.unmatched_buys.assign(buys.begin(), buys.end());
        return out;
    }

    const PriceMc price{div_round_half_even(
        static_cast<Int128>(marginal_ask->limit_price.value()) + marginal_bid->limit_price.value(), 2)};
    out.clearing_price = price;

    std::vector<const Order*> eligible;
    for (const Order* a : sorted_view(sells, ask_tier_less)) {
        if (a->limit_price <= price) {
            eligible.push_back(a);
        }
    }
    const auto sell_fills = fill_in_order(eligible, volume);
    const auto buy_fills = fill_in_order(bids, volume);

    out.trades = zip_fills(sell_fills, buy_fills, price);
    out.unmatched_sells = leftovers(sells, sell_fills);
    out.unmatched_buys = leftovers(buys, buy_fills);
    return out;
}

PriceMc mid_market_price(PriceMc retail_price, PriceMc feed_in)
{
    if (feed_in > retail_price) {
        throw ValidationError("feed-in tariff " + std::to_string(feed_in.value()) + " exceeds retail price " +
                              std::to_string(retail_price.value()));
    }
    return PriceMc{div_round_half_even(static_cast<Int128>(retail_price.value()) + feed_in.value(), 2)};
}

MarketOutcome clear_mid_market(std::span<const Order> sells, std::span<const Order> buys, PriceMc retail_price,
                               PriceMc feed_in)
{
    const PriceMc price = mid_market_price(retail_price, feed_in);
    check_orders(sells, buys);
    MarketOutcome out;

    std::vector<const Order*> solar;
    std::vector<const Order*> battery;
    std::vector<const Order*> eligible_buys;
    EnergyWh solar_supply;
    EnergyWh battery_supply;
    EnergyWh demand;
    for (const auto& o : sells) {
        if (o.limit_price > price) {
            continue;
        }
        if (*o.tier == SupplyTier::SolarSurplus) {
            solar.push_back(&o);
            solar_supply += o.quantity;
        } else {
            battery.push_back(&o);
            battery_supply += o.quantity;
        }
    }
    for (const auto& o : buys) {
        if (o.limit_price >= price) {
            eligible_buys.push_back(&o);
            demand += o.quantity;
        }
    }

    const EnergyWh volume = min(solar_supply + battery_supply, demand);
    if (volume.is_zero()) {
        out.unmatched_sells.assign(sells.begin(), sells.end());
        out.unmatched_buys.assign(buys.begin(), buys.end());
        return out;
    }
    out.clearing_price = price;

    const EnergyWh from_solar = min(volume, solar_supply);
    auto sell_fills = fill_pro_rata(solar, from_solar);
    const auto battery_fills = fill_pro_rata(battery, volume - from_solar);
    sell_fills.insert(sell_fills.end(), battery_fills.begin(), battery_fills.end());
    const auto buy_fills = fill_pro_rata(eligible_buys, volume);

    out.trades = zip_fills(sell_fills, buy_fills, price);
    out.unmatched_sells = leftovers(sells, sell_fills);
    out.unmatched_buys = leftovers(buys, buy_fills);
    return out;
}

AdequacyReport assess_adequacy(std::span<const Order> sells, std::span<const Order> buys, PriceMc price)
{
    AdequacyReport report;
    for (const auto& o : sells) {
        if (o.limit_price <= price) {
            report.supply_at_price += o.quantity;
        }
    }
    for (const auto& o : buys) {
        if (o.limit_price >= price) {
            report.demand_at_price += o.quantity;
        }
    }
    report.adequate = report.supply_at_price >= report.demand_at_price;
    return report;
}

MarketOutcome clear(const OrderBook& book, const ClearingConfig& config)
{
    if (config.mechanism == ClearingMechanism::DoubleAuction) {
        return clear_double_auction(book.sells, book.buys);
    }
    return clear_mid_market(book.sells, book.buys, config.retail_price, config.feed_in);
}

MarketOutcome rebid_loop(OrderBook book, std::span<const ProsumerState> states, const ClearingConfig& config)
{
    if (config.rebid_max_rounds < 0) {
        throw ValidationError("rebid max_rounds must be >= 0");
    }
    std::map<ProsumerId, const ProsumerState*> by_id;
    for (const auto& s : states) {
        by_id[s.id] = &s;
    }
    auto owner_state = [&](ProsumerId id) -> const ProsumerState& {
        auto it = by_id.find(id);
        if (it == by_id.end()) {
            throw SimulationFault("order from unknown prosumer " + std::to_string(to_int(id)));
        }
        return *it->second;
    };

    for (int round = 0;; ++round) {
        MarketOutcome outcome = clear(book, config);
        outcome.rebid_rounds_used = round;
        if (round >= config.rebid_max_rounds || outcome.unmatched_sells.empty() || outcome.unmatched_buys.empty()) {
            return outcome;
        }

        PriceMc reference;
        if (config.mechanism == ClearingMechanism::MidMarketRate) {
            reference = mid_market_price(config.retail_price, config.feed_in);
        } else if (outcome.clearing_price) {
            reference = *outcome.clearing_price;
        } else {
            reference = std::max_element(book.buys.begin(), book.buys.end(), [](const Order& a, const Order& b) {
                            return a.limit_price < b.limit_price;
                        })->limit_price;
        }
        if (assess_adequacy(book.sells, book.buys, reference).adequate) {
            return outcome;
        }

        bool moved = false;
        auto unmatched = [](const std::vector<Order>& rest, const Order& o) {
            return std::any_of(rest.begin(), rest.end(),
                               [&](const Order& r) { return r.owner == o.owner && r.tier == o.tier; });
        };
        for (auto& o : book.sells) {
            if (!unmatched(outcome.unmatched_sells, o)) {
                continue;
            }
            const auto& range = owner_state(o.owner).sell_range;
            const PriceMc next = max(o.limit_price - step_size(range, config.rebid_step), range.min);
            moved = moved || next != o.limit_price;
            o.limit_price = next;
        }
        for (auto& o : book.buys) {
            if (!unmatched(outcome.unmatched_buys, o)) {
                continue;
            }
            const auto& range = owner_state(o.owner).buy_range;
            const PriceMc next = min(o.limit_price + step_size(range, config.rebid_step), range.max);
            moved = moved || next != o.limit_price;
            o.limit_price = next;
        }
        if (!moved) {
            return outcome;
        }
    }
}

MarketOutcome rebid_loop(std::span<const ProsumerState> states, std::span<const Residual> residuals,
                         const ClearingConfig& config)
{
    return rebid_loop(collect_orders(states, residuals, config.quote_policy), states, config);
}

std::vector<GridPurchase> buy_residual_from_retailer(std::span<const Order> unmatched_buys, PriceMc retail_price)
{
    std::map<ProsumerId, EnergyWh> need;
    for (const auto& o : unmatched_buys) {
        need[o.owner] += o.quantity;
    }
    std::vector<GridPurchase> out;
    for (const auto& [buyer, quantity] : need) {
        if (quantity.value() > 0) {
            out.push_back({buyer, quantity, trade_revenue(quantity, retail_price)});
        }
    }
    return out;
}

}  // namespace p2pmarket
