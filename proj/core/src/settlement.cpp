#include "p2pmarket/settlement.hpp"

#include "p2pmarket/apportion.hpp"

#include <vector>

namespace p2pmarket {

RevenueSplit split_revenue(MoneyMc gross, const SplitPolicy& policy, MarketChoice market,
                           const Contributions& contributions)
{
    if (gross.value() < 0) {
        throw SimulationFault("split_revenue: negative gross");
    }
    if (gross.value() > 0 && contributions.empty()) {
        throw SimulationFault("split_revenue: revenue without contributors");
    }
    if (policy.commission_rate < Ratio{0} || policy.commission_rate > Ratio{1}) {
        throw ValidationError("commission rate must lie in [0, 1]");
    }

    RevenueSplit out;
    if (policy.applies_to.contains(market)) {
        out.retailer = MoneyMc{div_round_half_even(static_cast<Int128>(gross.value()) *
                                                       policy.commission_rate.numerator(),
                                                   policy.commission_rate.denominator())};
    }
    const MoneyMc pool = gross - out.retailer;

    std::vector<std::int64_t> weights;
    for (const auto& [id, amount] : contributions) {
        weights.push_back(amount.value());
    }
    const auto shares = apportion(pool.value(), weights);
    std::size_t k = 0;
    for (const auto& [id, amount] : contributions) {
        out.payouts[id] = MoneyMc{shares[k++]};
    }
    return out;
}

MoneyMc baseline_traditional(EnergyWh contribution, PriceMc retail_price)
{
    return trade_revenue(contribution, retail_price);
}

std::string Improvement::label() const
{
    switch (kind) {
    case Kind::Same:
        return "same";
    case Kind::Undefined:
        return "n/a";
    case Kind::Factor:
        break;
    }
    return std::to_string(round_half_even(factor));
}

Improvement improvement_factor(MoneyMc proposed, MoneyMc baseline)
{
    if (baseline.value() < 0) {
        throw SimulationFault("improvement_factor: negative baseline");
    }
    if (baseline.is_zero()) {
        return {Improvement::Kind::Undefined, Ratio{0}};
    }
    if (proposed == baseline) {
        return {Improvement::Kind::Same, Ratio{1}};
    }
    return {Improvement::Kind::Factor, Ratio{proposed.value(), baseline.value()}};
}

const char* to_string(OwnershipMode mode) noexcept
{
    return mode == OwnershipMode::ThirdPartyPlatform ? "third_party_platform" : "retailer_owned_platform";
}

MoneyMc accrue_subscriptions(std::size_t prosumer_count, MoneyMc monthly_fee, std::int64_t intervals_per_month,
                             OwnershipMode mode)
{
    if (intervals_per_month <= 0) {
        throw ValidationError("intervals_per_month must be positive");
    }
    if (mode != OwnershipMode::RetailerOwnedPlatform) {
        return MoneyMc{0};
    }
    return MoneyMc{div_round_half_even(static_cast<Int128>(prosumer_count) * monthly_fee.value(),
                                       intervals_per_month)};
}

}  // namespace p2pmarket
