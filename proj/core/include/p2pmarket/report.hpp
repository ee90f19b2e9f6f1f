#pragma once

#include "p2pmarket/engine.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace p2pmarket {

enum class ReportFormat : std::uint8_t { Json, Csv };

/// Dollars with two decimals, from milli-cents rounded half-even ("120.00").
std::string format_dollars(MoneyMc amount);
/// Kilowatt-hours with three decimals ("15.000").
std::string format_kwh(EnergyWh energy);
/// Cents per kWh without trailing zeros ("7", "7.5").
std::string format_cents(PriceMc price);

/// Full nested report; amounts stay in exact integer units, keys sorted.
std::string render_json(const SimulationReport& report);
/// Inverse of render_json. Throws ValidationError on malformed input.
SimulationReport parse_report_json(std::string_view text);

/// One row per (interval, prosumer), a blank line, then the summary block.
///
/// Prosumer columns:
///   interval,prosumer_id,retailer_id,generation_kwh,demand_kwh,
///   battery_start_kwh,battery_end_kwh,discharge_kwh,charge_kwh,
///   p2p_sold_kwh,p2p_bought_kwh,grid_import_kwh,fpp_export_kwh,curtailed_kwh,
///   p2p_revenue_usd,p2p_cost_usd,grid_cost_usd,fpp_payout_usd,baseline_usd,
///   fees_usd,ledger_delta_usd
/// Summary columns:
///   interval,total_surplus_kwh,retail_cents,spot_cents,forecast_cents,
///   retail_market,spot_market,total_revenue_usd,retailer_revenue_usd,
///   prosumer_revenue_usd,traditional_revenue_usd,improvement
std::string render_csv(const SimulationReport& report);

/// The summary rows as an aligned text table for terminals.
std::string render_summary_table(const SimulationReport& report);

std::string render(const SimulationReport& report, ReportFormat format);

/// Writes the rendered report to `path`; throws std::runtime_error naming
/// the path on I/O failure.
void export_report(const SimulationReport& report, ReportFormat format, const std::filesystem::path& path);

}  // namespace p2pmarket
