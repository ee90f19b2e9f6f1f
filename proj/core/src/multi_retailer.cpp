#include "p2pmarket/multi_retailer.hpp"

#include <algorithm>
#include <set>

namespace p2pmarket {

MoneyMc evaluate_offer(EnergyWh contribution, const RetailerOffer& offer, const SpotQuote& quote)
{
    const bool spot_expected = quote.forecast > offer.retail_price;
    const MoneyMc gross = trade_revenue(contribution, spot_expected ? quote.forecast : offer.retail_price);
    MoneyMc net = gross;
    if (spot_expected) {
        net = MoneyMc{round_half_even(offer.profit_share * Ratio{gross.value()})};
    }
    return net - offer.service_charge;
}

RetailerId select_retailer(EnergyWh contribution, std::span<const RetailerOffer> offers, const SpotQuote& quote)
{
    if (offers.empty()) {
        throw ValidationError("select_retailer: no retailer offers");
    }
    const RetailerOffer* best = nullptr;
    MoneyMc best_value;
    for (const auto& offer : offers) {
        const MoneyMc value = evaluate_offer(contribution, offer, quote);
        if (best == nullptr || value > best_value || (value == best_value && offer.retailer < best->retailer)) {
            best = &offer;
            best_value = value;
        }
    }
    return best->retailer;
}

NegotiationResult negotiate(std::vector<RetailerOffer> offers, const Contributions& prosumers,
                            const SpotQuote& quote, const NegotiationConfig& config)
{
    if (config.max_rounds < 1) {
        throw ValidationError("negotiation max_rounds must be >= 1");
    }
    if (offers.empty()) {
        throw ValidationError("negotiate: no retailer offers");
    }

    NegotiationResult result;
    for (int round = 1;; ++round) {
        Assignment current;
        current.rounds_used = round;
        std::set<RetailerId> chosen;
        for (const auto& [id, contribution] : prosumers) {
            const RetailerId r = select_retailer(contribution, offers, quote);
            current.retailer_of[id] = r;
            chosen.insert(r);
        }

        const bool repeated = round > 1 && current.retailer_of == result.assignment.retailer_of;
        result.assignment = std::move(current);
        if (repeated || round >= config.max_rounds) {
            break;
        }

        bool moved = false;
        for (auto& offer : offers) {
            if (chosen.contains(offer.retailer)) {
                continue;
            }
            const Ratio cap = std::max(config.share_ceiling, offer.profit_share);
            const Ratio share = std::min(offer.profit_share + config.share_step, cap);
            const MoneyMc charge = max(offer.service_charge - config.charge_step, MoneyMc{0});
            moved = moved || share != offer.profit_share || charge != offer.service_charge;
            offer.profit_share = share;
            offer.service_charge = charge;
        }
        if (!moved) {
            break;
        }
    }
    result.offers = std::move(offers);
    return result;
}

}  // namespace p2pmarket
