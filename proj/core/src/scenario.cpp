#include "p2pmarket/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace p2pmarket {

namespace {

class FieldReader {
public:
    explicit FieldReader(std::string origin) : origin_(std::move(origin)) {}

    [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& msg) const
    {
        std::ostringstream os;
        os << origin_;
        if (node.IsDefined() && node.Mark().line >= 0) {
            os << ':' << node.Mark().line + 1;
        }
        os << ": field '" << field << "': " << msg;
        throw ValidationError(os.str());
    }

    std::int64_t integer(const YAML::Node& node, const std::string& field) const
    {
        if (!node.IsScalar()) {
            fail(node, field, "expected an integer");
        }
        const auto& text = node.Scalar();
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            fail(node, field, "expected an integer, got '" + text + "'");
        }
        return v;
    }

    std::int64_t non_negative(const YAML::Node& node, const std::string& field) const
    {
        const auto v = integer(node, field);
        if (v < 0) {
            fail(node, field, "must be non-negative");
        }
        return v;
    }

    // Accepts "p/q", decimals such as "0.05", or plain integers.
    Ratio ratio(const YAML::Node& node, const std::string& field) const
    {
        if (!node.IsScalar()) {
            fail(node, field, "expected a fraction such as 1/2 or 0.5");
        }
        const std::string text = node.Scalar();
        try {
            if (auto slash = text.find('/'); slash != std::string::npos) {
                return Ratio{parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1))};
            }
            auto dot = text.find('.');
            if (dot == std::string::npos) {
                return Ratio{parse_int(text)};
            }
            const std::string whole = text.substr(0, dot);
            const std::string frac = text.substr(dot + 1);
            if (frac.empty() || frac.size() > 12 || frac.find_first_not_of("0123456789") != std::string::npos) {
                throw std::invalid_argument("bad decimal");
            }
            std::int64_t scale = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) {
                scale *= 10;
            }
            const bool negative = !whole.empty() && whole[0] == '-';
            const std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
            const std::int64_t f = parse_int(frac);
            return Ratio{(negative ? -1 : 1) * (std::abs(w) * scale + f), scale};
        } catch (const std::exception&) {
            fail(node, field, "expected a fraction such as 1/2 or 0.5, got '" + text + "'");
        }
    }

    Ratio unit_ratio(const YAML::Node& node, const std::string& field) const
    {
        const Ratio r = ratio(node, field);
        if (r < Ratio{0} || r > Ratio{1}) {
            fail(node, field, "must lie in [0, 1]");
        }
        return r;
    }

    bool boolean(const YAML::Node& node, const std::string& field) const
    {
        bool v = false;
        if (!node.IsScalar() || !YAML::convert<bool>::decode(node, v)) {
            fail(node, field, "expected true or false");
        }
        return v;
    }

    std::string text(const YAML::Node& node, const std::string& field) const
    {
        if (!node.IsScalar()) {
            fail(node, field, "expected a string");
        }
        return node.Scalar();
    }

    PriceRange range(const YAML::Node& node, const std::string& field) const
    {
        if (!node.IsSequence() || node.size() != 2) {
            fail(node, field, "expected [min, max]");
        }
        PriceRange r{PriceMc{non_negative(node[0], field)}, PriceMc{non_negative(node[1], field)}};
        if (r.min > r.max) {
            fail(node, field, "min exceeds max");
        }
        return r;
    }

    void only_keys(const YAML::Node& map, const std::string& where, std::initializer_list<const char*> keys) const
    {
        if (!map.IsMap()) {
            fail(map, where, "expected a mapping");
        }
        for (const auto& kv : map) {
            const auto key = kv.first.Scalar();
            if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
                fail(kv.first, where.empty() ? key : where + "." + key, "unknown key");
            }
        }
    }

    const std::string& origin() const { return origin_; }

private:
    static std::int64_t parse_int(const std::string& s)
    {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw std::invalid_argument("bad integer");
        }
        return v;
    }

    std::string origin_;
};

template <typename Enum>
Enum keyword(const FieldReader& in, const YAML::Node& node, const std::string& field,
             std::initializer_list<std::pair<const char*, Enum>> choices)
{
    const auto value = in.text(node, field);
    for (const auto& [name, e] : choices) {
        if (value == name) {
            return e;
        }
    }
    std::string allowed;
    for (const auto& [name, e] : choices) {
        allowed += allowed.empty() ? name : std::string(", ") + name;
    }
    in.fail(node, field, "'" + value + "' is not one of: " + allowed);
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

// Comma-separated table with a mandatory header row; columns located by name.
class Table {
public:
    Table(std::string_view text, std::string origin, std::initializer_list<const char*> required)
        : origin_(std::move(origin))
    {
        if (text.starts_with("\xEF\xBB\xBF")) {
            text.remove_prefix(3);
        }
        std::size_t line_no = 0;
        bool header_seen = false;
        while (!text.empty()) {
            const auto nl = text.find('\n');
            std::string_view line = trim(text.substr(0, nl));
            text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
            ++line_no;
            if (line.empty()) {
                continue;
            }
            std::vector<std::string> cells;
            for (std::size_t start = 0;;) {
                const auto comma = line.find(',', start);
                cells.emplace_back(trim(line.substr(start, comma - start)));
                if (comma == std::string_view::npos) {
                    break;
                }
                start = comma + 1;
            }
            if (!header_seen) {
                header_seen = true;
                for (std::size_t i = 0; i < cells.size(); ++i) {
                    columns_[cells[i]] = i;
                }
                for (const char* name : required) {
                    if (!columns_.contains(name)) {
                        throw ValidationError(origin_ + ":" + std::to_string(line_no) + ": missing column '" +
                                              name + "'");
                    }
                }
                width_ = cells.size();
                continue;
            }
            if (cells.size() != width_) {
                throw ValidationError(origin_ + ":" + std::to_string(line_no) + ": expected " +
                                      std::to_string(width_) + " columns, found " + std::to_string(cells.size()));
            }
            rows_.push_back({line_no, std::move(cells)});
        }
        if (!header_seen) {
            throw ValidationError(origin_ + ": missing header row");
        }
    }

    std::size_t size() const { return rows_.size(); }
    std::size_t line(std::size_t row) const { return rows_[row].line; }

    std::int64_t value(std::size_t row, const char* column) const
    {
        const auto& cell = rows_[row].cells[columns_.at(column)];
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc{} || ptr != cell.data() + cell.size() || v < 0) {
            throw ValidationError(origin_ + ":" + std::to_string(rows_[row].line) + ": column '" + column +
                                  "': expected a non-negative integer, got '" + cell + "'");
        }
        return v;
    }

private:
    struct Row {
        std::size_t line;
        std::vector<std::string> cells;
    };
    std::string origin_;
    std::map<std::string, std::size_t, std::less<>> columns_;
    std::size_t width_ = 0;
    std::vector<Row> rows_;
};

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError(path.string() + ": cannot open file");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

std::vector<RetailerOffer> ScenarioConfig::effective_retailers() const
{
    if (!retailers.empty()) {
        return retailers;
    }
    return {RetailerOffer{RetailerId{0}, MoneyMc{0}, Ratio{1} - split.commission_rate, clearing.retail_price}};
}

std::vector<LoadRow> parse_load_series(std::string_view text, const std::string& origin)
{
    Table table(text, origin, {"interval", "prosumer_id", "generation_wh", "demand_wh"});
    std::vector<LoadRow> rows;
    rows.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        LoadRow row;
        row.interval = static_cast<std::size_t>(table.value(i, "interval"));
        row.point.prosumer = static_cast<ProsumerId>(table.value(i, "prosumer_id"));
        row.point.generation = EnergyWh{table.value(i, "generation_wh")};
        row.point.demand = EnergyWh{table.value(i, "demand_wh")};
        rows.push_back(row);
    }
    return rows;
}

std::vector<SpotQuote> parse_spot_series(std::string_view text, const std::string& origin)
{
    Table table(text, origin, {"interval", "forecast_mc", "actual_mc"});
    std::vector<SpotQuote> quotes;
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < table.size(); ++i) {
        SpotQuote q;
        q.interval = static_cast<std::size_t>(table.value(i, "interval"));
        q.forecast = PriceMc{table.value(i, "forecast_mc")};
        q.actual = PriceMc{table.value(i, "actual_mc")};
        if (!seen.insert(q.interval).second) {
            throw ValidationError(origin + ":" + std::to_string(table.line(i)) + ": interval " +
                                  std::to_string(q.interval) + " quoted twice");
        }
        quotes.push_back(q);
    }
    std::sort(quotes.begin(), quotes.end(), [](const auto& a, const auto& b) { return a.interval < b.interval; });
    return quotes;
}

std::vector<SlotInput> assemble_slots(std::span<const ProsumerSpec> prosumers, std::span<const LoadRow> loads,
                                      std::span<const SpotQuote> quotes, const std::string& origin)
{
    std::set<ProsumerId> known;
    for (const auto& p : prosumers) {
        known.insert(p.id);
    }
    std::map<std::size_t, std::map<ProsumerId, LoadPoint>> by_interval;
    for (const auto& q : quotes) {
        by_interval[q.interval];
    }
    for (const auto& row : loads) {
        const auto where = "interval " + std::to_string(row.interval) + ", prosumer " +
                           std::to_string(to_int(row.point.prosumer));
        auto slot = by_interval.find(row.interval);
        if (slot == by_interval.end()) {
            throw ValidationError(origin + ": load row for " + where + " has no spot quote");
        }
        if (!known.contains(row.point.prosumer)) {
            throw ValidationError(origin + ": load row for " + where + " names an unknown prosumer");
        }
        if (!slot->second.emplace(row.point.prosumer, row.point).second) {
            throw ValidationError(origin + ": duplicate load row for " + where);
        }
    }

    std::vector<SlotInput> slots;
    for (const auto& q : quotes) {
        SlotInput slot{q.interval, {}, q};
        const auto& points = by_interval[q.interval];
        for (const auto& p : prosumers) {
            auto it = points.find(p.id);
            if (it == points.end()) {
                throw ValidationError(origin + ": missing series: no load row for interval " +
                                      std::to_string(q.interval) + ", prosumer " + std::to_string(to_int(p.id)));
            }
            slot.loads.push_back(it->second);
        }
        slots.push_back(std::move(slot));
    }
    return slots;
}

void validate(const ScenarioConfig& c)
{
    if (c.prosumers.empty()) {
        throw ValidationError("scenario '" + c.name + "': no prosumers");
    }
    std::set<ProsumerId> ids;
    for (const auto& p : c.prosumers) {
        if (!ids.insert(p.id).second) {
            throw ValidationError("duplicate prosumer id " + std::to_string(to_int(p.id)));
        }
        ProsumerState s{p.id, {}, {}, p.battery_level, p.battery_capacity, p.sell_range, p.buy_range, {}};
        p2pmarket::validate(s);
    }
    std::set<RetailerId> rids;
    for (const auto& r : c.retailers) {
        const auto who = "retailer " + std::to_string(to_int(r.retailer));
        if (!rids.insert(r.retailer).second) {
            throw ValidationError("duplicate " + who);
        }
        if (r.profit_share < Ratio{0} || r.profit_share > Ratio{1} || r.service_charge.value() < 0 ||
            r.retail_price.value() < 0) {
            throw ValidationError(who + ": profit share must lie in [0, 1], charge and price non-negative");
        }
    }
    if (c.clearing.retail_price.value() < 0 || c.clearing.feed_in.value() < 0) {
        throw ValidationError("prices must be non-negative");
    }
    if (c.clearing.feed_in > c.clearing.retail_price) {
        throw ValidationError("feed_in_mc " + std::to_string(c.clearing.feed_in.value()) + " exceeds retail_price_mc " +
                              std::to_string(c.clearing.retail_price.value()));
    }
    if (c.clearing.rebid_max_rounds < 0 || c.clearing.rebid_step < Ratio{0} || c.clearing.rebid_step > Ratio{1}) {
        throw ValidationError("rebid: step must lie in [0, 1] and max_rounds be >= 0");
    }
    if (c.split.commission_rate < Ratio{0} || c.split.commission_rate > Ratio{1}) {
        throw ValidationError("commission_rate must lie in [0, 1]");
    }
    if (c.bid_fraction < Ratio{0} || c.bid_fraction > Ratio{1}) {
        throw ValidationError("bid_fraction must lie in [0, 1]");
    }
    if (c.subscription.intervals_per_month <= 0 || c.subscription.monthly_fee.value() < 0) {
        throw ValidationError("subscription: intervals_per_month must be positive and the fee non-negative");
    }
    const auto& n = c.negotiation;
    if (n.max_rounds < 1 || n.share_step < Ratio{0} || n.share_ceiling < Ratio{0} || n.share_ceiling > Ratio{1} ||
        n.charge_step.value() < 0) {
        throw ValidationError("negotiation: max_rounds >= 1, steps non-negative, ceiling in [0, 1]");
    }
    for (std::size_t i = 0; i < c.slots.size(); ++i) {
        const auto& slot = c.slots[i];
        if (i > 0 && c.slots[i - 1].interval >= slot.interval) {
            throw ValidationError("slots must be in increasing interval order");
        }
        if (slot.loads.size() != c.prosumers.size()) {
            throw ValidationError("missing series for interval " + std::to_string(slot.interval));
        }
        for (std::size_t k = 0; k < slot.loads.size(); ++k) {
            const auto& lp = slot.loads[k];
            if (lp.prosumer != c.prosumers[k].id || lp.generation.value() < 0 || lp.demand.value() < 0) {
                throw ValidationError("bad load series entry for interval " + std::to_string(slot.interval));
            }
        }
        if (slot.quote.forecast.value() < 0 || slot.quote.actual.value() < 0) {
            throw ValidationError("negative spot quote in interval " + std::to_string(slot.interval));
        }
    }
}

ScenarioConfig parse_scenario(std::string_view text, const std::string& origin, const SeriesReader& read_series)
{
    const FieldReader in(origin);
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ValidationError(origin + ":" + std::to_string(e.mark.line + 1) + ": parse error: " + e.msg);
    }
    if (!root.IsMap()) {
        throw ValidationError(origin + ": expected a mapping at top level");
    }
    in.only_keys(root, "",
                 {"name", "ownership_mode", "mechanism", "quote_policy", "retail_price_mc", "feed_in_mc",
                  "commission_rate", "commission_applies_to", "bid_fraction", "fpp_battery_only", "subscription",
                  "rebid", "negotiation", "series", "prosumers", "retailers"});

    ScenarioConfig c;
    c.name = root["name"] ? in.text(root["name"], "name") : std::string("scenario");

    if (auto n = root["ownership_mode"]) {
        c.ownership_mode = keyword<OwnershipMode>(in, n, "ownership_mode",
                                                  {{"third_party_platform", OwnershipMode::ThirdPartyPlatform},
                                                   {"retailer_owned_platform", OwnershipMode::RetailerOwnedPlatform}});
    }
    if (auto n = root["mechanism"]) {
        c.clearing.mechanism = keyword<ClearingMechanism>(
            in, n, "mechanism",
            {{"double_auction", ClearingMechanism::DoubleAuction}, {"mid_market_rate", ClearingMechanism::MidMarketRate}});
    }
    if (auto n = root["quote_policy"]) {
        c.clearing.quote_policy = keyword<QuotePolicy>(
            in, n, "quote_policy", {{"aggressive", QuotePolicy::Aggressive}, {"conservative", QuotePolicy::Conservative}});
    }
    if (!root["retail_price_mc"]) {
        in.fail(root, "retail_price_mc", "required");
    }
    c.clearing.retail_price = PriceMc{in.non_negative(root["retail_price_mc"], "retail_price_mc")};
    if (auto n = root["feed_in_mc"]) {
        c.clearing.feed_in = PriceMc{in.non_negative(n, "feed_in_mc")};
        if (c.clearing.feed_in > c.clearing.retail_price) {
            in.fail(n, "feed_in_mc", "exceeds retail_price_mc");
        }
    }
    if (auto n = root["commission_rate"]) {
        c.split.commission_rate = in.unit_ratio(n, "commission_rate");
    }
    if (auto n = root["commission_applies_to"]) {
        if (!n.IsSequence()) {
            in.fail(n, "commission_applies_to", "expected a list of markets");
        }
        c.split.applies_to.clear();
        for (const auto& m : n) {
            c.split.applies_to.insert(keyword<MarketChoice>(in, m, "commission_applies_to",
                                                            {{"spot", MarketChoice::Spot}, {"retail", MarketChoice::Retail}}));
        }
    }
    if (auto n = root["bid_fraction"]) {
        c.bid_fraction = in.unit_ratio(n, "bid_fraction");
    }
    if (auto n = root["fpp_battery_only"]) {
        c.fpp_battery_only = in.boolean(n, "fpp_battery_only");
    }
    if (auto n = root["subscription"]) {
        in.only_keys(n, "subscription", {"monthly_fee_mc", "intervals_per_month"});
        if (auto f = n["monthly_fee_mc"]) {
            c.subscription.monthly_fee = MoneyMc{in.non_negative(f, "subscription.monthly_fee_mc")};
        }
        if (auto f = n["intervals_per_month"]) {
            c.subscription.intervals_per_month = in.integer(f, "subscription.intervals_per_month");
            if (c.subscription.intervals_per_month <= 0) {
                in.fail(f, "subscription.intervals_per_month", "must be positive");
            }
        }
    }
    if (auto n = root["rebid"]) {
        in.only_keys(n, "rebid", {"step", "max_rounds"});
        if (auto f = n["step"]) {
            c.clearing.rebid_step = in.unit_ratio(f, "rebid.step");
        }
        if (auto f = n["max_rounds"]) {
            c.clearing.rebid_max_rounds = static_cast<int>(in.non_negative(f, "rebid.max_rounds"));
        }
    }
    if (auto n = root["negotiation"]) {
        in.only_keys(n, "negotiation", {"share_step", "share_ceiling", "charge_step_mc", "max_rounds"});
        if (auto f = n["share_step"]) {
            c.negotiation.share_step = in.unit_ratio(f, "negotiation.share_step");
        }
        if (auto f = n["share_ceiling"]) {
            c.negotiation.share_ceiling = in.unit_ratio(f, "negotiation.share_ceiling");
        }
        if (auto f = n["charge_step_mc"]) {
            c.negotiation.charge_step = MoneyMc{in.non_negative(f, "negotiation.charge_step_mc")};
        }
        if (auto f = n["max_rounds"]) {
            c.negotiation.max_rounds = static_cast<int>(in.integer(f, "negotiation.max_rounds"));
            if (c.negotiation.max_rounds < 1) {
                in.fail(f, "negotiation.max_rounds", "must be >= 1");
            }
        }
    }

    const auto prosumers = root["prosumers"];
    if (!prosumers || !prosumers.IsSequence() || prosumers.size() == 0) {
        in.fail(prosumers ? prosumers : root, "prosumers", "at least one prosumer is required");
    }
    std::set<ProsumerId> ids;
    for (const auto& p : prosumers) {
        in.only_keys(p, "prosumers", {"id", "battery_capacity_wh", "battery_level_wh", "sell_range_mc", "buy_range_mc"});
        ProsumerSpec spec;
        if (!p["id"]) {
            in.fail(p, "prosumers.id", "required");
        }
        spec.id = static_cast<ProsumerId>(in.non_negative(p["id"], "prosumers.id"));
        if (!ids.insert(spec.id).second) {
            in.fail(p["id"], "prosumers.id", "duplicate id");
        }
        if (auto f = p["battery_capacity_wh"]) {
            spec.battery_capacity = EnergyWh{in.non_negative(f, "prosumers.battery_capacity_wh")};
        }
        if (auto f = p["battery_level_wh"]) {
            spec.battery_level = EnergyWh{in.non_negative(f, "prosumers.battery_level_wh")};
            if (spec.battery_level > spec.battery_capacity) {
                in.fail(f, "prosumers.battery_level_wh", "exceeds battery_capacity_wh");
            }
        }
        for (auto [key, range] : {std::pair{"sell_range_mc", &spec.sell_range}, std::pair{"buy_range_mc", &spec.buy_range}}) {
            if (!p[key]) {
                in.fail(p, std::string("prosumers.") + key, "required");
            }
            *range = in.range(p[key], std::string("prosumers.") + key);
        }
        c.prosumers.push_back(spec);
    }
    std::sort(c.prosumers.begin(), c.prosumers.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

    if (auto rs = root["retailers"]) {
        if (!rs.IsSequence()) {
            in.fail(rs, "retailers", "expected a list");
        }
        std::set<RetailerId> rids;
        for (const auto& r : rs) {
            in.only_keys(r, "retailers", {"id", "service_charge_mc", "profit_share", "retail_price_mc"});
            RetailerOffer offer;
            if (!r["id"]) {
                in.fail(r, "retailers.id", "required");
            }
            offer.retailer = static_cast<RetailerId>(in.non_negative(r["id"], "retailers.id"));
            if (!rids.insert(offer.retailer).second) {
                in.fail(r["id"], "retailers.id", "duplicate id");
            }
            offer.service_charge = r["service_charge_mc"]
                                       ? MoneyMc{in.non_negative(r["service_charge_mc"], "retailers.service_charge_mc")}
                                       : MoneyMc{0};
            offer.profit_share = r["profit_share"] ? in.unit_ratio(r["profit_share"], "retailers.profit_share")
                                                   : Ratio{1} - c.split.commission_rate;
            offer.retail_price = r["retail_price_mc"]
                                     ? PriceMc{in.non_negative(r["retail_price_mc"], "retailers.retail_price_mc")}
                                     : c.clearing.retail_price;
            c.retailers.push_back(offer);
        }
        std::sort(c.retailers.begin(), c.retailers.end(),
                  [](const auto& a, const auto& b) { return a.retailer < b.retailer; });
    }

    const auto series = root["series"];
    if (!series) {
        in.fail(root, "series", "required (load and spot tables)");
    }
    in.only_keys(series, "series", {"load", "spot"});
    if (!series["load"] || !series["spot"]) {
        in.fail(series, "series", "both 'load' and 'spot' are required");
    }
    c.load_series = in.text(series["load"], "series.load");
    c.spot_series = in.text(series["spot"], "series.spot");

    const auto loads = parse_load_series(read_series(c.load_series), c.load_series);
    const auto quotes = parse_spot_series(read_series(c.spot_series), c.spot_series);
    c.slots = assemble_slots(c.prosumers, loads, quotes, c.load_series);

    validate(c);
    return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path)
{
    const std::string text = read_file(path);
    const auto base = path.parent_path();
    return parse_scenario(text, path.string(), [&](const std::string& ref) {
        const std::filesystem::path p = std::filesystem::path(ref).is_absolute() ? std::filesystem::path(ref) : base / ref;
        if (!std::filesystem::exists(p)) {
            throw ValidationError(path.string() + ": missing series file " + p.string());
        }
        return read_file(p);
    });
}

ScenarioConfig table2_scenario()
{
    return parse_scenario(table2_scenario_text(), "table2.scenario", [](const std::string& ref) -> std::string {
        if (ref == "table2_load.csv") {
            return std::string(table2_load_text());
        }
        if (ref == "table2_spot.csv") {
            return std::string(table2_spot_text());
        }
        throw ValidationError("table2.scenario: missing series file " + ref);
    });
}

}  // namespace p2pmarket
