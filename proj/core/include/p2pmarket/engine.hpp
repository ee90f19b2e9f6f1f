#pragma once

#include "p2pmarket/local_market.hpp"
#include "p2pmarket/multi_retailer.hpp"
#include "p2pmarket/scenario.hpp"
#include "p2pmarket/settlement.hpp"

#include <map>
#include <optional>
#include <vector>

namespace p2pmarket {

/// Everything that happened to one prosumer in one interval.
struct ProsumerFlows {
    ProsumerId id{};
    RetailerId retailer{};
    EnergyWh generation;
    EnergyWh demand;
    EnergyWh battery_start;
    EnergyWh battery_end;
    EnergyWh discharge;   // own use + battery sales to peers + battery share of the FPP bid
    EnergyWh charge;      // unsold solar stored after the FPP bid
    EnergyWh p2p_sold;
    EnergyWh p2p_bought;
    EnergyWh grid_import;
    EnergyWh fpp_export;
    EnergyWh curtailed;   // unsold solar that fit neither the bid nor the battery
    MoneyMc p2p_revenue;
    MoneyMc p2p_cost;
    MoneyMc grid_cost;
    MoneyMc fpp_payout;
    MoneyMc baseline;
    MoneyMc fees;         // subscription share + service charge
    MoneyMc ledger_delta;

    bool operator==(const ProsumerFlows&) const = default;
};

struct IntervalRecord {
    std::size_t interval = 0;
    SpotQuote quote;
    Assignment assignment;
    std::vector<RetailerOffer> offers;      // offers in force for this interval
    MarketOutcome local;
    std::vector<GridPurchase> grid_purchases;
    std::vector<SettlementReport> settlements;  // one per retailer, by id
    std::vector<ProsumerFlows> prosumers;       // by id
    std::map<RetailerId, MoneyMc> retailer_delta;

    bool operator==(const IntervalRecord&) const = default;
};

/// One row per (interval, retailer), mirroring the toy-example table columns.
struct SummaryRow {
    std::size_t interval = 0;
    RetailerId retailer{};
    EnergyWh total_surplus;
    PriceMc retail_price;
    PriceMc spot_price;
    PriceMc forecast;
    MarketChoice market = MarketChoice::Retail;
    MoneyMc total_revenue;
    MoneyMc retailer_revenue;
    MoneyMc per_prosumer;           // mean payout over contributors
    MoneyMc per_prosumer_baseline;  // mean traditional revenue over contributors
    Improvement improvement;

    bool operator==(const SummaryRow&) const = default;
};

struct SimulationReport {
    std::string scenario;
    std::vector<IntervalRecord> intervals;
    std::map<ProsumerId, MoneyMc> prosumer_ledgers;
    std::map<RetailerId, MoneyMc> retailer_ledgers;
    std::map<ProsumerId, MoneyMc> baseline_ledgers;
    std::vector<SummaryRow> summary;

    bool operator==(const SimulationReport&) const = default;
};

/// Initial prosumer states (battery at its configured level, empty ledgers).
std::vector<ProsumerState> initial_states(const ScenarioConfig& config);

struct IntervalResult {
    std::vector<ProsumerState> states;
    IntervalRecord record;
};

/// Runs the fixed pipeline for one interval:
/// self-consumption, order collection, clearing with re-bids, residual
/// retail purchases, FPP formation, market selection, bid, gross settlement,
/// revenue split, baseline and ledger update.
///
/// `negotiated` carries the retailer assignment made before the interval;
/// without it every prosumer goes to the first effective retailer.
/// Energy and money balances are checked on the way out; a violation throws
/// SimulationFault naming the interval.
IntervalResult run_interval(std::span<const ProsumerState> states, const SlotInput& slot,
                            const ScenarioConfig& config, const NegotiationResult* negotiated = nullptr);

/// Surplus each prosumer will have after serving its own demand in `slot`;
/// the basis on which prosumers judge retailer offers.
Contributions expected_contributions(std::span<const ProsumerState> states, const SlotInput& slot);

/// Folds run_interval over every slot. With more than one retailer,
/// negotiation runs from the seed offers before each interval.
SimulationReport run_simulation(const ScenarioConfig& config);

}  // namespace p2pmarket
