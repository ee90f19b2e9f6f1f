#pragma once

#include "p2pmarket/domain.hpp"
#include "p2pmarket/fpp_market.hpp"
#include "p2pmarket/local_market.hpp"
#include "p2pmarket/multi_retailer.hpp"
#include "p2pmarket/settlement.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace p2pmarket {

struct ProsumerSpec {
    ProsumerId id{};
    EnergyWh battery_capacity;
    EnergyWh battery_level;  // at the start of the first interval
    PriceRange sell_range;
    PriceRange buy_range;

    bool operator==(const ProsumerSpec&) const = default;
};

struct LoadPoint {
    ProsumerId prosumer{};
    EnergyWh generation;
    EnergyWh demand;

    bool operator==(const LoadPoint&) const = default;
};

/// Exogenous inputs of one dispatch interval; `loads` is sorted by prosumer id.
struct SlotInput {
    std::size_t interval = 0;
    std::vector<LoadPoint> loads;
    SpotQuote quote;

    bool operator==(const SlotInput&) const = default;
};

struct SubscriptionTerms {
    MoneyMc monthly_fee{0};
    std::int64_t intervals_per_month = 1;

    bool operator==(const SubscriptionTerms&) const = default;
};

struct ScenarioConfig {
    std::string name;
    std::vector<ProsumerSpec> prosumers;   // sorted by id
    std::vector<RetailerOffer> retailers;  // seeds; empty = one implicit retailer
    OwnershipMode ownership_mode = OwnershipMode::ThirdPartyPlatform;
    ClearingConfig clearing;               // carries retail price and feed-in
    SplitPolicy split;
    Ratio bid_fraction{1};
    bool fpp_battery_only = false;
    SubscriptionTerms subscription;
    NegotiationConfig negotiation;
    std::string load_series;
    std::string spot_series;
    std::vector<SlotInput> slots;          // sorted by interval

    [[nodiscard]] PriceMc retail_price() const { return clearing.retail_price; }

    /// Retailer offers in force: the configured seeds, or a single retailer 0
    /// built from the top-level retail price and commission rate.
    [[nodiscard]] std::vector<RetailerOffer> effective_retailers() const;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Maps a series reference from the scenario file to its text.
using SeriesReader = std::function<std::string(const std::string& ref)>;

/// Parses and validates scenario text. `origin` prefixes diagnostics
/// ("table2.scenario:12: ..."). Throws ValidationError.
ScenarioConfig parse_scenario(std::string_view text, const std::string& origin, const SeriesReader& read_series);

/// Loads a scenario file; series paths resolve relative to the file.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Checks every cross-field invariant of an assembled config.
void validate(const ScenarioConfig& config);

struct LoadRow {
    std::size_t interval = 0;
    LoadPoint point;
};

/// Parses the load table: interval,prosumer_id,generation_wh,demand_wh
/// (header mandatory, columns matched by name).
std::vector<LoadRow> parse_load_series(std::string_view text, const std::string& origin);

/// Parses the quote table: interval,forecast_mc,actual_mc.
std::vector<SpotQuote> parse_spot_series(std::string_view text, const std::string& origin);

/// One slot per quoted interval; every prosumer must have exactly one load
/// row in every quoted interval and no row may reference anything else.
std::vector<SlotInput> assemble_slots(std::span<const ProsumerSpec> prosumers, std::span<const LoadRow> loads,
                                      std::span<const SpotQuote> quotes, const std::string& origin);

/// The bundled four-case toy community (10 prosumers, 5 with 3 kWh surplus).
ScenarioConfig table2_scenario();

/// Raw text of the bundled scenario and its series, as shipped in scenarios/.
std::string_view table2_scenario_text();
std::string_view table2_load_text();
std::string_view table2_spot_text();

}  // namespace p2pmarket
