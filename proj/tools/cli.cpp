#include "cli.hpp"

#include "p2pmarket/engine.hpp"
#include "p2pmarket/report.hpp"
#include "p2pmarket/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <map>
#include <optional>

namespace p2pmarket::cli {

namespace {

const std::map<std::string, ReportFormat> kFormats{{"json", ReportFormat::Json}, {"csv", ReportFormat::Csv}};

int run_scenario(const std::string& scenario, const std::string& out_path, ReportFormat format)
{
    const auto config = load_scenario(scenario);
    const auto report = run_simulation(config);
    export_report(report, format, out_path);
    return kExitOk;
}

int validate_scenario(const std::string& scenario, std::ostream& out)
{
    const auto config = load_scenario(scenario);
    out << scenario << ": ok (" << config.prosumers.size() << " prosumers, " << config.effective_retailers().size()
        << " retailer(s), " << config.slots.size() << " intervals)\n";
    return kExitOk;
}

int table2(const std::optional<std::string>& out_path, ReportFormat format, std::ostream& out)
{
    const auto report = run_simulation(table2_scenario());
    out << render_summary_table(report);
    if (out_path) {
        export_report(report, format, *out_path);
    } else {
        out << '\n' << render(report, format);
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Retailer-facilitated P2P electricity market simulator", "p2pmarket"};
    app.require_subcommand(1);

    std::string scenario;
    std::string out_path;
    std::optional<std::string> table2_out;
    ReportFormat format = ReportFormat::Json;

    auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and write the report");
    run_cmd->add_option("scenario", scenario, "Scenario file")->required();
    run_cmd->add_option("--out", out_path, "Report path")->required();
    run_cmd->add_option("--format", format, "Report format: json or csv")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

    auto* validate_cmd = app.add_subcommand("validate", "Load and check a scenario without running it");
    validate_cmd->add_option("scenario", scenario, "Scenario file")->required();

    auto* table2_cmd = app.add_subcommand("table2", "Run the bundled four-case toy community");
    table2_cmd->add_option("--out", table2_out, "Report path (default: standard output)");
    table2_cmd->add_option("--format", format, "Report format: json or csv")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "p2pmarket: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*run_cmd) {
            return run_scenario(scenario, out_path, format);
        }
        if (*validate_cmd) {
            return validate_scenario(scenario, out);
        }
        return table2(table2_out, format, out);
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const SimulationFault& e) {
        err << "simulation fault: " << e.what() << '\n';
        return kExitSimulation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

}  // namespace p2pmarket::cli
