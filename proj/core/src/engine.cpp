#include "p2pmarket/engine.hpp"

#include "p2pmarket/apportion.hpp"
#include "p2pmarket/fpp_market.hpp"

#include <algorithm>
#include <string>

namespace p2pmarket {

namespace {

[[noreturn]] void fault(std::size_t interval, const std::string& what)
{
    throw SimulationFault("interval " + std::to_string(interval) + ": " + what);
}

MoneyMc mean(MoneyMc total, std::size_t count)
{
    return count == 0 ? MoneyMc{0} : MoneyMc{div_round_half_even(total.value(), static_cast<Int128>(count))};
}

ProsumerState with_loads(const ProsumerState& s, const LoadPoint& load)
{
    ProsumerState out = s;
    out.generation = load.generation;
    out.demand = load.demand;
    return out;
}

}  // namespace

std::vector<ProsumerState> initial_states(const ScenarioConfig& config)
{
    std::vector<ProsumerState> states;
    states.reserve(config.prosumers.size());
    for (const auto& p : config.prosumers) {
        states.push_back({p.id, {}, {}, p.battery_level, p.battery_capacity, p.sell_range, p.buy_range, {}});
    }
    return states;
}

Contributions expected_contributions(std::span<const ProsumerState> states, const SlotInput& slot)
{
    Contributions out;
    for (std::size_t i = 0; i < states.size(); ++i) {
        out[states[i].id] = self_consume(with_loads(states[i], slot.loads.at(i))).residual.surplus();
    }
    return out;
}

IntervalResult run_interval(std::span<const ProsumerState> states, const SlotInput& slot,
                            const ScenarioConfig& config, const NegotiationResult* negotiated)
{
    const std::size_t t = slot.interval;
    if (slot.loads.size() != states.size()) {
        fault(t, "load series does not match the prosumer set");
    }

    IntervalResult result;
    auto& rec = result.record;
    auto& next = result.states;
    rec.interval = t;
    rec.quote = slot.quote;
    rec.offers = negotiated ? negotiated->offers : config.effective_retailers();
    if (rec.offers.empty()) {
        fault(t, "no retailer available");
    }
    std::map<RetailerId, const RetailerOffer*> offer_of;
    for (const auto& o : rec.offers) {
        offer_of[o.retailer] = &o;
    }
    if (negotiated) {
        rec.assignment = negotiated->assignment;
    } else {
        rec.assignment.rounds_used = 0;
        for (const auto& s : states) {
            rec.assignment.retailer_of[s.id] = rec.offers.front().retailer;
        }
    }

    // Self-consumption.
    std::map<ProsumerId, std::size_t> index;
    std::vector<Residual> residuals;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (slot.loads[i].prosumer != states[i].id) {
            fault(t, "load series out of prosumer order");
        }
        auto sc = self_consume(with_loads(states[i], slot.loads[i]));
        index[states[i].id] = i;
        next.push_back(sc.state);
        residuals.push_back(sc.residual);

        ProsumerFlows f;
        f.id = states[i].id;
        auto a = rec.assignment.retailer_of.find(f.id);
        if (a == rec.assignment.retailer_of.end() || !offer_of.contains(a->second)) {
            fault(t, "prosumer " + std::to_string(to_int(f.id)) + " has no retailer");
        }
        f.retailer = a->second;
        f.generation = slot.loads[i].generation;
        f.demand = slot.loads[i].demand;
        f.battery_start = states[i].battery_level;
        f.discharge = sc.residual.self_discharge;
        rec.prosumers.push_back(f);
    }

    // Local P2P market.
    rec.local = rebid_loop(next, residuals, config.clearing);
    std::vector<EnergyWh> sold_solar(states.size());
    for (const auto& tr : rec.local.trades) {
        const auto s = index.at(tr.seller);
        const auto b = index.at(tr.buyer);
        const MoneyMc value = trade_revenue(tr.quantity, tr.price);
        rec.prosumers[s].p2p_sold += tr.quantity;
        rec.prosumers[s].p2p_revenue += value;
        rec.prosumers[b].p2p_bought += tr.quantity;
        rec.prosumers[b].p2p_cost += value;
        if (tr.tier == SupplyTier::BatteryCharge) {
            next[s].battery_level -= tr.quantity;
            rec.prosumers[s].discharge += tr.quantity;
        } else {
            sold_solar[s] += tr.quantity;
        }
    }

    // Residual demand goes to each buyer's own retailer.
    for (const auto& offer : rec.offers) {
        std::vector<Order> mine;
        for (const auto& o : rec.local.unmatched_buys) {
            if (rec.prosumers[index.at(o.owner)].retailer == offer.retailer) {
                mine.push_back(o);
            }
        }
        for (const auto& gp : buy_residual_from_retailer(mine, offer.retail_price)) {
            auto& f = rec.prosumers[index.at(gp.buyer)];
            f.grid_import += gp.quantity;
            f.grid_cost += gp.cost;
            rec.retailer_delta[offer.retailer] += gp.cost;
            rec.grid_purchases.push_back(gp);
        }
    }
    std::sort(rec.grid_purchases.begin(), rec.grid_purchases.end(),
              [](const auto& a, const auto& b) { return a.buyer < b.buyer; });

    std::vector<EnergyWh> unsold_solar(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        unsold_solar[i] = residuals[i].solar_surplus - sold_solar[i];
        if (rec.prosumers[i].p2p_bought + rec.prosumers[i].grid_import != residuals[i].deficit) {
            fault(t, "deficit of prosumer " + std::to_string(to_int(states[i].id)) + " not covered");
        }
    }

    // Federated power plant, one per retailer.
    MoneyMc injected;
    for (const auto& offer : rec.offers) {
        std::vector<FppSurplus> surplus;
        std::vector<std::int64_t> members;
        for (std::size_t i = 0; i < states.size(); ++i) {
            if (rec.prosumers[i].retailer == offer.retailer) {
                surplus.push_back({states[i].id, unsold_solar[i], next[i].battery_level});
                members.push_back(1);
            }
        }

        const Contributions contributions = form_fpp(surplus, config.fpp_battery_only);
        FppBid bid = compute_bid(contributions, config.bid_fraction);
        bid.market = select_market(slot.quote, offer.retail_price);
        const MoneyMc gross = settle_gross(bid, slot.quote, offer.retail_price);
        const SplitPolicy policy{Ratio{1} - offer.profit_share, config.split.applies_to};
        const RevenueSplit split = split_revenue(gross, policy, bid.market, bid.contributions);
        injected += gross;

        SettlementReport rep;
        rep.interval = t;
        rep.retailer = offer.retailer;
        rep.market = bid.market;
        rep.quantity = bid.quantity;
        rep.gross = gross;
        rep.retailer_commission = split.retailer;
        rep.prosumer_payouts = split.payouts;
        MoneyMc paid;
        MoneyMc base;
        for (const auto& [id, amount] : bid.contributions) {
            const MoneyMc b = baseline_traditional(amount, offer.retail_price);
            rep.baseline_payouts[id] = b;
            base += b;
            paid += split.payouts.at(id);

            const auto i = index.at(id);
            auto& f = rec.prosumers[i];
            const EnergyWh from_solar = config.fpp_battery_only ? EnergyWh{0} : min(amount, unsold_solar[i]);
            const EnergyWh from_battery = amount - from_solar;
            if (from_battery > next[i].battery_level) {
                fault(t, "FPP bid exceeds stored energy of prosumer " + std::to_string(to_int(id)));
            }
            unsold_solar[i] -= from_solar;
            next[i].battery_level -= from_battery;
            f.discharge += from_battery;
            f.fpp_export += amount;
            f.fpp_payout += split.payouts.at(id);
            f.baseline += b;
        }
        rep.improvement = improvement_factor(paid, base);

        rep.subscription_income =
            accrue_subscriptions(members.size(), config.subscription.monthly_fee,
                                 config.subscription.intervals_per_month, config.ownership_mode);
        const auto shares = apportion(rep.subscription_income.value(), members);
        std::size_t k = 0;
        for (std::size_t i = 0; i < states.size(); ++i) {
            if (rec.prosumers[i].retailer == offer.retailer) {
                rec.prosumers[i].fees += MoneyMc{shares[k++]} + offer.service_charge;
                rep.service_charge_income += offer.service_charge;
            }
        }
        rec.retailer_delta[offer.retailer] +=
            rep.retailer_commission + rep.subscription_income + rep.service_charge_income;
        rec.settlements.push_back(rep);
    }

    // Leftover solar charges the battery; what does not fit is curtailed.
    MoneyMc ledger_sum;
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto& f = rec.prosumers[i];
        const EnergyWh room = next[i].battery_capacity - next[i].battery_level;
        f.charge = min(room, unsold_solar[i]);
        f.curtailed = unsold_solar[i] - f.charge;
        next[i].battery_level += f.charge;
        f.battery_end = next[i].battery_level;

        f.ledger_delta = f.p2p_revenue - f.p2p_cost - f.grid_cost + f.fpp_payout - f.fees;
        next[i].ledger += f.ledger_delta;
        ledger_sum += f.ledger_delta;

        const EnergyWh in = f.generation + f.discharge + f.grid_import + f.p2p_bought;
        const EnergyWh out = f.demand + f.charge + f.p2p_sold + f.fpp_export + f.curtailed;
        if (in != out) {
            fault(t, "energy balance broken for prosumer " + std::to_string(to_int(f.id)));
        }
        if (f.battery_end != f.battery_start - f.discharge + f.charge || f.battery_end.value() < 0 ||
            f.battery_end > next[i].battery_capacity) {
            fault(t, "battery continuity broken for prosumer " + std::to_string(to_int(f.id)));
        }
    }
    for (const auto& offer : rec.offers) {
        rec.retailer_delta.try_emplace(offer.retailer, MoneyMc{0});
    }
    for (const auto& [r, delta] : rec.retailer_delta) {
        ledger_sum += delta;
    }
    if (ledger_sum != injected) {
        fault(t, "money balance broken");
    }
    return result;
}

SimulationReport run_simulation(const ScenarioConfig& config)
{
    SimulationReport report;
    report.scenario = config.name;
    auto states = initial_states(config);
    const auto seeds = config.effective_retailers();
    for (const auto& s : states) {
        report.prosumer_ledgers[s.id] = MoneyMc{0};
        report.baseline_ledgers[s.id] = MoneyMc{0};
    }
    for (const auto& r : seeds) {
        report.retailer_ledgers[r.retailer] = MoneyMc{0};
    }

    for (const auto& slot : config.slots) {
        std::optional<NegotiationResult> negotiated;
        if (seeds.size() > 1) {
            negotiated = negotiate(seeds, expected_contributions(states, slot), slot.quote, config.negotiation);
        }
        auto result = run_interval(states, slot, config, negotiated ? &*negotiated : nullptr);
        states = std::move(result.states);
        auto& rec = result.record;

        for (const auto& f : rec.prosumers) {
            report.prosumer_ledgers[f.id] += f.ledger_delta;
            report.baseline_ledgers[f.id] += f.baseline;
        }
        for (const auto& [r, delta] : rec.retailer_delta) {
            report.retailer_ledgers[r] += delta;
        }

        for (const auto& rep : rec.settlements) {
            const RetailerOffer& offer =
                *std::find_if(rec.offers.begin(), rec.offers.end(), [&](const auto& o) { return o.retailer == rep.retailer; });
            SummaryRow row;
            row.interval = rec.interval;
            row.retailer = rep.retailer;
            row.total_surplus = rep.quantity;
            row.retail_price = offer.retail_price;
            row.spot_price = rec.quote.actual;
            row.forecast = rec.quote.forecast;
            row.market = rep.market;
            row.total_revenue = rep.gross;
            row.retailer_revenue = rep.retailer_commission;
            MoneyMc paid;
            MoneyMc base;
            for (const auto& [id, v] : rep.prosumer_payouts) {
                paid += v;
            }
            for (const auto& [id, v] : rep.baseline_payouts) {
                base += v;
            }
            row.per_prosumer = mean(paid, rep.prosumer_payouts.size());
            row.per_prosumer_baseline = mean(base, rep.baseline_payouts.size());
            row.improvement = rep.improvement;
            report.summary.push_back(row);
        }
        report.intervals.push_back(std::move(rec));
    }
    return report;
}

}  // namespace p2pmarket
