#pragma once

#include "p2pmarket/domain.hpp"
#include "p2pmarket/fpp_market.hpp"

#include <map>
#include <set>
#include <string>

namespace p2pmarket {

struct SplitPolicy {
    Ratio commission_rate{1, 2};
    std::set<MarketChoice> applies_to{MarketChoice::Spot};

    bool operator==(const SplitPolicy&) const = default;
};

using Payouts = std::map<ProsumerId, MoneyMc>;

struct RevenueSplit {
    MoneyMc retailer;
    Payouts payouts;
};

/// Retailer keeps round(gross * rate) when the market is in applies_to; the
/// rest is shared in proportion to contributions (largest remainder, ties by
/// id). retailer + sum(payouts) == gross exactly.
RevenueSplit split_revenue(MoneyMc gross, const SplitPolicy& policy, MarketChoice market,
                           const Contributions& contributions);

/// What the contribution would have earned selling at the retail price.
MoneyMc baseline_traditional(EnergyWh contribution, PriceMc retail_price);

/// proposed / baseline, kept exact.
struct Improvement {
    enum class Kind : std::uint8_t { Factor, Same, Undefined };
    Kind kind = Kind::Undefined;
    Ratio factor{0};

    /// "57" style integer factor, "same", or "n/a".
    [[nodiscard]] std::string label() const;

    bool operator==(const Improvement&) const = default;
};

Improvement improvement_factor(MoneyMc proposed, MoneyMc baseline);

enum class OwnershipMode : std::uint8_t { ThirdPartyPlatform, RetailerOwnedPlatform };

const char* to_string(OwnershipMode mode) noexcept;

/// Per-interval subscription income: round(count * monthly_fee / intervals_per_month),
/// zero unless the retailer owns the platform.
MoneyMc accrue_subscriptions(std::size_t prosumer_count, MoneyMc monthly_fee, std::int64_t intervals_per_month,
                             OwnershipMode mode);

/// Settlement of one retailer's FPP for one interval.
struct SettlementReport {
    std::size_t interval = 0;
    RetailerId retailer{};
    MarketChoice market = MarketChoice::Retail;
    EnergyWh quantity;
    MoneyMc gross;
    MoneyMc retailer_commission;
    Payouts prosumer_payouts;
    MoneyMc subscription_income;
    MoneyMc service_charge_income;
    Payouts baseline_payouts;
    Improvement improvement;

    bool operator==(const SettlementReport&) const = default;
};

}  // namespace p2pmarket
