#include "p2pmarket/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace p2pmarket {

using nlohmann::json;

namespace {

// ---- scalar helpers -------------------------------------------------------

std::string ratio_text(const Ratio& r)
{
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Ratio parse_ratio(const json& j)
{
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        throw ValidationError("report: bad fraction '" + s + "'");
    }
    return Ratio{std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
}

template <typename Q>
Q qty(const json& j, const char* key)
{
    return Q{j.at(key).get<std::int64_t>()};
}

template <typename Id>
Id id_of(const json& j, const char* key)
{
    return static_cast<Id>(j.at(key).get<std::uint32_t>());
}

template <typename Id, typename Q>
json id_map(const std::map<Id, Q>& m)
{
    json out = json::object();
    for (const auto& [id, v] : m) {
        out[std::to_string(to_int(id))] = v.value();
    }
    return out;
}

template <typename Id, typename Q>
std::map<Id, Q> parse_id_map(const json& j)
{
    std::map<Id, Q> out;
    for (const auto& [key, v] : j.items()) {
        out[static_cast<Id>(std::stoul(key))] = Q{v.template get<std::int64_t>()};
    }
    return out;
}

MarketChoice market_of(const json& j)
{
    const auto s = j.get<std::string>();
    if (s == "spot") {
        return MarketChoice::Spot;
    }
    if (s == "retail") {
        return MarketChoice::Retail;
    }
    throw ValidationError("report: unknown market '" + s + "'");
}

SupplyTier tier_of(const json& j)
{
    const auto s = j.get<std::string>();
    if (s == to_string(SupplyTier::SolarSurplus)) {
        return SupplyTier::SolarSurplus;
    }
    if (s == to_string(SupplyTier::BatteryCharge)) {
        return SupplyTier::BatteryCharge;
    }
    throw ValidationError("report: unknown tier '" + s + "'");
}

// ---- structures -----------------------------------------------------------

json to_json(const Order& o)
{
    json j{{"owner", to_int(o.owner)},
           {"side", o.side == Side::Sell ? "sell" : "buy"},
           {"quantity_wh", o.quantity.value()},
           {"limit_price_mc", o.limit_price.value()}};
    j["tier"] = o.tier ? json(to_string(*o.tier)) : json(nullptr);
    return j;
}

Order order_from(const json& j)
{
    Order o;
    o.owner = id_of<ProsumerId>(j, "owner");
    o.side = j.at("side").get<std::string>() == "sell" ? Side::Sell : Side::Buy;
    if (!j.at("tier").is_null()) {
        o.tier = tier_of(j.at("tier"));
    }
    o.quantity = qty<EnergyWh>(j, "quantity_wh");
    o.limit_price = qty<PriceMc>(j, "limit_price_mc");
    return o;
}

json to_json(const MarketOutcome& m)
{
    json trades = json::array();
    for (const auto& t : m.trades) {
        trades.push_back({{"seller", to_int(t.seller)},
                          {"buyer", to_int(t.buyer)},
                          {"tier", to_string(t.tier)},
                          {"quantity_wh", t.quantity.value()},
                          {"price_mc", t.price.value()}});
    }
    json sells = json::array();
    for (const auto& o : m.unmatched_sells) {
        sells.push_back(to_json(o));
    }
    json buys = json::array();
    for (const auto& o : m.unmatched_buys) {
        buys.push_back(to_json(o));
    }
    return {{"trades", trades},
            {"clearing_price_mc", m.clearing_price ? json(m.clearing_price->value()) : json(nullptr)},
            {"unmatched_sells", sells},
            {"unmatched_buys", buys},
            {"rebid_rounds_used", m.rebid_rounds_used}};
}

MarketOutcome outcome_from(const json& j)
{
    MarketOutcome m;
    for (const auto& t : j.at("trades")) {
        m.trades.push_back({id_of<ProsumerId>(t, "seller"), id_of<ProsumerId>(t, "buyer"), tier_of(t.at("tier")),
                            qty<EnergyWh>(t, "quantity_wh"), qty<PriceMc>(t, "price_mc")});
    }
    if (!j.at("clearing_price_mc").is_null()) {
        m.clearing_price = qty<PriceMc>(j, "clearing_price_mc");
    }
    for (const auto& o : j.at("unmatched_sells")) {
        m.unmatched_sells.push_back(order_from(o));
    }
    for (const auto& o : j.at("unmatched_buys")) {
        m.unmatched_buys.push_back(order_from(o));
    }
    m.rebid_rounds_used = j.at("rebid_rounds_used").get<int>();
    return m;
}

json to_json(const Improvement& imp)
{
    const char* kind = imp.kind == Improvement::Kind::Factor ? "factor"
                       : imp.kind == Improvement::Kind::Same ? "same"
                                                             : "undefined";
    return {{"kind", kind}, {"factor", ratio_text(imp.factor)}, {"label", imp.label()}};
}

Improvement improvement_from(const json& j)
{
    Improvement imp;
    const auto kind = j.at("kind").get<std::string>();
    imp.kind = kind == "factor" ? Improvement::Kind::Factor
               : kind == "same" ? Improvement::Kind::Same
                                : Improvement::Kind::Undefined;
    imp.factor = parse_ratio(j.at("factor"));
    return imp;
}

json to_json(const SettlementReport& s)
{
    return {{"interval", s.interval},
            {"retailer", to_int(s.retailer)},
            {"market", to_string(s.market)},
            {"quantity_wh", s.quantity.value()},
            {"gross_mc", s.gross.value()},
            {"retailer_commission_mc", s.retailer_commission.value()},
            {"prosumer_payouts_mc", id_map(s.prosumer_payouts)},
            {"subscription_income_mc", s.subscription_income.value()},
            {"service_charge_income_mc", s.service_charge_income.value()},
            {"baseline_payouts_mc", id_map(s.baseline_payouts)},
            {"improvement", to_json(s.improvement)}};
}

SettlementReport settlement_from(const json& j)
{
    SettlementReport s;
    s.interval = j.at("interval").get<std::size_t>();
    s.retailer = id_of<RetailerId>(j, "retailer");
    s.market = market_of(j.at("market"));
    s.quantity = qty<EnergyWh>(j, "quantity_wh");
    s.gross = qty<MoneyMc>(j, "gross_mc");
    s.retailer_commission = qty<MoneyMc>(j, "retailer_commission_mc");
    s.prosumer_payouts = parse_id_map<ProsumerId, MoneyMc>(j.at("prosumer_payouts_mc"));
    s.subscription_income = qty<MoneyMc>(j, "subscription_income_mc");
    s.service_charge_income = qty<MoneyMc>(j, "service_charge_income_mc");
    s.baseline_payouts = parse_id_map<ProsumerId, MoneyMc>(j.at("baseline_payouts_mc"));
    s.improvement = improvement_from(j.at("improvement"));
    return s;
}

#define P2P_FLOW_FIELDS(X)                                                                                   \
    X(generation, "generation_wh", EnergyWh)                                                                 \
    X(demand, "demand_wh", EnergyWh)                                                                         \
    X(battery_start, "battery_start_wh", EnergyWh)                                                           \
    X(battery_end, "battery_end_wh", EnergyWh)                                                               \
    X(discharge, "discharge_wh", EnergyWh)                                                                   \
    X(charge, "charge_wh", EnergyWh)                                                                         \
    X(p2p_sold, "p2p_sold_wh", EnergyWh)                                                                     \
    X(p2p_bought, "p2p_bought_wh", EnergyWh)                                                                 \
    X(grid_import, "grid_import_wh", EnergyWh)                                                               \
    X(fpp_export, "fpp_export_wh", EnergyWh)                                                                 \
    X(curtailed, "curtailed_wh", EnergyWh)                                                                   \
    X(p2p_revenue, "p2p_revenue_mc", MoneyMc)                                                                \
    X(p2p_cost, "p2p_cost_mc", MoneyMc)                                                                      \
    X(grid_cost, "grid_cost_mc", MoneyMc)                                                                    \
    X(fpp_payout, "fpp_payout_mc", MoneyMc)                                                                  \
    X(baseline, "baseline_mc", MoneyMc)                                                                      \
    X(fees, "fees_mc", MoneyMc)                                                                              \
    X(ledger_delta, "ledger_delta_mc", MoneyMc)

json to_json(const ProsumerFlows& f)
{
    json j{{"id", to_int(f.id)}, {"retailer", to_int(f.retailer)}};
#define X(member, key, type) j[key] = f.member.value();
    P2P_FLOW_FIELDS(X)
#undef X
    return j;
}

ProsumerFlows flows_from(const json& j)
{
    ProsumerFlows f;
    f.id = id_of<ProsumerId>(j, "id");
    f.retailer = id_of<RetailerId>(j, "retailer");
#define X(member, key, type) f.member = qty<type>(j, key);
    P2P_FLOW_FIELDS(X)
#undef X
    return f;
}

#undef P2P_FLOW_FIELDS

json to_json(const RetailerOffer& o)
{
    return {{"retailer", to_int(o.retailer)},
            {"service_charge_mc", o.service_charge.value()},
            {"profit_share", ratio_text(o.profit_share)},
            {"retail_price_mc", o.retail_price.value()}};
}

RetailerOffer offer_from(const json& j)
{
    return {id_of<RetailerId>(j, "retailer"), qty<MoneyMc>(j, "service_charge_mc"), parse_ratio(j.at("profit_share")),
            qty<PriceMc>(j, "retail_price_mc")};
}

json to_json(const IntervalRecord& r)
{
    json assignment = json::object();
    for (const auto& [p, ret] : r.assignment.retailer_of) {
        assignment[std::to_string(to_int(p))] = to_int(ret);
    }
    json offers = json::array();
    for (const auto& o : r.offers) {
        offers.push_back(to_json(o));
    }
    json grid = json::array();
    for (const auto& g : r.grid_purchases) {
        grid.push_back({{"buyer", to_int(g.buyer)}, {"quantity_wh", g.quantity.value()}, {"cost_mc", g.cost.value()}});
    }
    json settlements = json::array();
    for (const auto& s : r.settlements) {
        settlements.push_back(to_json(s));
    }
    json prosumers = json::array();
    for (const auto& f : r.prosumers) {
        prosumers.push_back(to_json(f));
    }
    return {{"interval", r.interval},
            {"quote", {{"forecast_mc", r.quote.forecast.value()}, {"actual_mc", r.quote.actual.value()}}},
            {"assignment", {{"retailer_of", assignment}, {"rounds_used", r.assignment.rounds_used}}},
            {"offers", offers},
            {"local_market", to_json(r.local)},
            {"grid_purchases", grid},
            {"settlements", settlements},
            {"prosumers", prosumers},
            {"retailer_delta_mc", id_map(r.retailer_delta)}};
}

IntervalRecord record_from(const json& j)
{
    IntervalRecord r;
    r.interval = j.at("interval").get<std::size_t>();
    r.quote = {r.interval, qty<PriceMc>(j.at("quote"), "forecast_mc"), qty<PriceMc>(j.at("quote"), "actual_mc")};
    for (const auto& [p, ret] : j.at("assignment").at("retailer_of").items()) {
        r.assignment.retailer_of[static_cast<ProsumerId>(std::stoul(p))] = static_cast<RetailerId>(ret.get<std::uint32_t>());
    }
    r.assignment.rounds_used = j.at("assignment").at("rounds_used").get<int>();
    for (const auto& o : j.at("offers")) {
        r.offers.push_back(offer_from(o));
    }
    r.local = outcome_from(j.at("local_market"));
    for (const auto& g : j.at("grid_purchases")) {
        r.grid_purchases.push_back({id_of<ProsumerId>(g, "buyer"), qty<EnergyWh>(g, "quantity_wh"), qty<MoneyMc>(g, "cost_mc")});
    }
    for (const auto& s : j.at("settlements")) {
        r.settlements.push_back(settlement_from(s));
    }
    for (const auto& f : j.at("prosumers")) {
        r.prosumers.push_back(flows_from(f));
    }
    r.retailer_delta = parse_id_map<RetailerId, MoneyMc>(j.at("retailer_delta_mc"));
    return r;
}

json to_json(const SummaryRow& s)
{
    return {{"interval", s.interval},
            {"retailer", to_int(s.retailer)},
            {"total_surplus_wh", s.total_surplus.value()},
            {"retail_price_mc", s.retail_price.value()},
            {"spot_price_mc", s.spot_price.value()},
            {"forecast_mc", s.forecast.value()},
            {"market", to_string(s.market)},
            {"total_revenue_mc", s.total_revenue.value()},
            {"retailer_revenue_mc", s.retailer_revenue.value()},
            {"per_prosumer_mc", s.per_prosumer.value()},
            {"per_prosumer_baseline_mc", s.per_prosumer_baseline.value()},
            {"improvement", to_json(s.improvement)}};
}

SummaryRow summary_from(const json& j)
{
    SummaryRow s;
    s.interval = j.at("interval").get<std::size_t>();
    s.retailer = id_of<RetailerId>(j, "retailer");
    s.total_surplus = qty<EnergyWh>(j, "total_surplus_wh");
    s.retail_price = qty<PriceMc>(j, "retail_price_mc");
    s.spot_price = qty<PriceMc>(j, "spot_price_mc");
    s.forecast = qty<PriceMc>(j, "forecast_mc");
    s.market = market_of(j.at("market"));
    s.total_revenue = qty<MoneyMc>(j, "total_revenue_mc");
    s.retailer_revenue = qty<MoneyMc>(j, "retailer_revenue_mc");
    s.per_prosumer = qty<MoneyMc>(j, "per_prosumer_mc");
    s.per_prosumer_baseline = qty<MoneyMc>(j, "per_prosumer_baseline_mc");
    s.improvement = improvement_from(j.at("improvement"));
    return s;
}

std::string summary_line(const SummaryRow& s)
{
    std::ostringstream os;
    os << s.interval << ',' << format_kwh(s.total_surplus) << ',' << format_cents(s.retail_price) << ','
       << format_cents(s.spot_price) << ',' << format_cents(s.forecast) << ','
       << (s.market == MarketChoice::Retail ? "retail" : "") << ',' << (s.market == MarketChoice::Spot ? "spot" : "")
       << ',' << format_dollars(s.total_revenue) << ',' << format_dollars(s.retailer_revenue) << ','
       << format_dollars(s.per_prosumer) << ',' << format_dollars(s.per_prosumer_baseline) << ','
       << s.improvement.label();
    return os.str();
}

std::string fixed_point(std::int64_t value, int decimals)
{
    std::int64_t scale = 1;
    for (int i = 0; i < decimals; ++i) {
        scale *= 10;
    }
    const bool negative = value < 0;
    const auto magnitude = static_cast<std::uint64_t>(negative ? -(value + 1) : value) + (negative ? 1 : 0);
    std::ostringstream os;
    if (negative) {
        os << '-';
    }
    os << magnitude / static_cast<std::uint64_t>(scale);
    if (decimals > 0) {
        os << '.' << std::setw(decimals) << std::setfill('0') << magnitude % static_cast<std::uint64_t>(scale);
    }
    return os.str();
}

}  // namespace

std::string format_dollars(MoneyMc amount)
{
    // 1 cent = 1000 mc
    return fixed_point(div_round_half_even(amount.value(), 1000), 2);
}

std::string format_kwh(EnergyWh energy)
{
    return fixed_point(energy.value(), 3);
}

std::string format_cents(PriceMc price)
{
    std::string s = fixed_point(price.value(), 3);
    while (s.back() == '0') {
        s.pop_back();
    }
    if (s.back() == '.') {
        s.pop_back();
    }
    return s;
}

std::string render_json(const SimulationReport& report)
{
    json intervals = json::array();
    for (const auto& r : report.intervals) {
        intervals.push_back(to_json(r));
    }
    json summary = json::array();
    for (const auto& s : report.summary) {
        summary.push_back(to_json(s));
    }
    const json j{{"scenario", report.scenario},
                 {"intervals", intervals},
                 {"prosumer_ledgers_mc", id_map(report.prosumer_ledgers)},
                 {"retailer_ledgers_mc", id_map(report.retailer_ledgers)},
                 {"baseline_ledgers_mc", id_map(report.baseline_ledgers)},
                 {"summary", summary}};
    return j.dump(2) + "\n";
}

SimulationReport parse_report_json(std::string_view text)
{
    try {
        const json j = json::parse(text);
        SimulationReport r;
        r.scenario = j.at("scenario").get<std::string>();
        for (const auto& i : j.at("intervals")) {
            r.intervals.push_back(record_from(i));
        }
        r.prosumer_ledgers = parse_id_map<ProsumerId, MoneyMc>(j.at("prosumer_ledgers_mc"));
        r.retailer_ledgers = parse_id_map<RetailerId, MoneyMc>(j.at("retailer_ledgers_mc"));
        r.baseline_ledgers = parse_id_map<ProsumerId, MoneyMc>(j.at("baseline_ledgers_mc"));
        for (const auto& s : j.at("summary")) {
            r.summary.push_back(summary_from(s));
        }
        return r;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("report: ") + e.what());
    }
}

std::string render_csv(const SimulationReport& report)
{
    std::ostringstream os;
    os << "interval,prosumer_id,retailer_id,generation_kwh,demand_kwh,battery_start_kwh,battery_end_kwh,"
          "discharge_kwh,charge_kwh,p2p_sold_kwh,p2p_bought_kwh,grid_import_kwh,fpp_export_kwh,curtailed_kwh,"
          "p2p_revenue_usd,p2p_cost_usd,grid_cost_usd,fpp_payout_usd,baseline_usd,fees_usd,ledger_delta_usd\n";
    for (const auto& r : report.intervals) {
        for (const auto& f : r.prosumers) {
            os << r.interval << ',' << to_int(f.id) << ',' << to_int(f.retailer);
            for (EnergyWh e : {f.generation, f.demand, f.battery_start, f.battery_end, f.discharge, f.charge,
                               f.p2p_sold, f.p2p_bought, f.grid_import, f.fpp_export, f.curtailed}) {
                os << ',' << format_kwh(e);
            }
            for (MoneyMc m : {f.p2p_revenue, f.p2p_cost, f.grid_cost, f.fpp_payout, f.baseline, f.fees, f.ledger_delta}) {
                os << ',' << format_dollars(m);
            }
            os << '\n';
        }
    }
    os << "\ninterval,total_surplus_kwh,retail_cents,spot_cents,forecast_cents,retail_market,spot_market,"
          "total_revenue_usd,retailer_revenue_usd,prosumer_revenue_usd,traditional_revenue_usd,improvement\n";
    for (const auto& s : report.summary) {
        os << summary_line(s) << '\n';
    }
    return os.str();
}

std::string render_summary_table(const SimulationReport& report)
{
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-8s %-8s %9s %7s %7s %8s %-6s %10s %10s %10s %11s %11s\n", "interval",
                  "retailer", "surplus", "retail", "spot", "forecast", "market", "total $", "retailer $", "prosumer $",
                  "traditional", "improvement");
    os << line;
    for (const auto& s : report.summary) {
        std::snprintf(line, sizeof line, "%-8zu %-8u %9s %7s %7s %8s %-6s %10s %10s %10s %11s %11s\n", s.interval,
                      to_int(s.retailer), format_kwh(s.total_surplus).c_str(), format_cents(s.retail_price).c_str(),
                      format_cents(s.spot_price).c_str(), format_cents(s.forecast).c_str(), to_string(s.market),
                      format_dollars(s.total_revenue).c_str(), format_dollars(s.retailer_revenue).c_str(),
                      format_dollars(s.per_prosumer).c_str(), format_dollars(s.per_prosumer_baseline).c_str(),
                      s.improvement.label().c_str());
        os << line;
    }
    return os.str();
}

std::string render(const SimulationReport& report, ReportFormat format)
{
    return format == ReportFormat::Json ? render_json(report) : render_csv(report);
}

void export_report(const SimulationReport& report, ReportFormat format, const std::filesystem::path& path)
{
    const std::string text = render(report, format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error(path.string() + ": cannot open for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw std::runtime_error(path.string() + ": write failed");
    }
}

}  // namespace p2pmarket
