#pragma once

#include "p2pmarket/domain.hpp"
#include "p2pmarket/fpp_market.hpp"

#include <map>
#include <span>
#include <vector>

namespace p2pmarket {

struct RetailerOffer {
    RetailerId retailer{};
    MoneyMc service_charge;        // per interval
    Ratio profit_share{1, 2};      // fraction of spot gross passed on to prosumers
    PriceMc retail_price{7000};

    bool operator==(const RetailerOffer&) const = default;
};

struct Assignment {
    std::map<ProsumerId, RetailerId> retailer_of;
    int rounds_used = 0;

    bool operator==(const Assignment&) const = default;
};

struct NegotiationConfig {
    Ratio share_step{1, 20};
    Ratio share_ceiling{9, 10};
    MoneyMc charge_step{0};
    int max_rounds = 10;

    bool operator==(const NegotiationConfig&) const = default;
};

/// Net revenue a prosumer expects from an offer, judged on the forecast.
/// The profit share only applies when the forecast points to the spot market.
MoneyMc evaluate_offer(EnergyWh contribution, const RetailerOffer& offer, const SpotQuote& quote);

/// Best offer for this contribution; ties go to the lowest retailer id.
/// Throws ValidationError on an empty offer list.
RetailerId select_retailer(EnergyWh contribution, std::span<const RetailerOffer> offers, const SpotQuote& quote);

struct NegotiationResult {
    Assignment assignment;
    std::vector<RetailerOffer> offers;  // as they stood when the assignment was made
};

/// Iterated offers and selections.
///
/// Each round every prosumer picks its best offer. Stops when the selections
/// repeat the previous round or max_rounds is reached; otherwise every
/// retailer that attracted nobody raises its profit share by share_step (up
/// to share_ceiling) and lowers its service charge by charge_step (down to
/// zero). If no offer can move, the current selections are final.
NegotiationResult negotiate(std::vector<RetailerOffer> offers, const Contributions& prosumers,
                            const SpotQuote& quote, const NegotiationConfig& config);

}  // namespace p2pmarket
