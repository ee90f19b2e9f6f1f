#include "cli.hpp"

#include "p2pmarket/report.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace p2pmarket::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("p2pmarket_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path dir_;
    const std::string scenario_ = std::string(P2P_SCENARIO_DIR) + "/table2.scenario";
};

TEST_F(CliTest, RunWritesCsv)
{
    const auto before = slurp(scenario_);
    const auto r = invoke({"run", scenario_, "--format", "csv", "--out", (dir_ / "r.csv").string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(slurp(dir_ / "r.csv"), render_csv(run_simulation(table2_scenario())));
    EXPECT_EQ(slurp(scenario_), before);
}

TEST_F(CliTest, RunDefaultsToJson)
{
    const auto r = invoke({"run", scenario_, "--out", (dir_ / "r.json").string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(parse_report_json(slurp(dir_ / "r.json")), run_simulation(table2_scenario()));
}

TEST_F(CliTest, ValidateBrokenScenario)
{
    std::ofstream(dir_ / "broken.scenario") << "retail_price_mc: 7000\nfeed_in_mc: 8000\n";
    const auto r = invoke({"validate", (dir_ / "broken.scenario").string()});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_NE(r.err.find("field 'feed_in_mc'"), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, ValidateGoodScenario)
{
    const auto r = invoke({"validate", scenario_});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("10 prosumers"), std::string::npos);
}

TEST_F(CliTest, Table2PrintsHeadlineRow)
{
    const auto r = invoke({"table2", "--format", "csv"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    for (const char* cell : {"120.00", "60.00", "12.00", "0.21", "57"}) {
        EXPECT_NE(r.out.find(cell), std::string::npos) << cell;
    }
    EXPECT_NE(r.out.find("1,15.000,7,800,800,,spot,120.00,60.00,12.00,0.21,57"), std::string::npos);
}

TEST_F(CliTest, Table2ToFile)
{
    const auto r = invoke({"table2", "--out", (dir_ / "t.json").string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("120.00"), std::string::npos);
    EXPECT_EQ(r.out.find("{"), std::string::npos);
    EXPECT_EQ(slurp(dir_ / "t.json"), render_json(run_simulation(table2_scenario())));
}

TEST_F(CliTest, IdenticalInvocationsIdenticalOutput)
{
    const auto a = invoke({"table2", "--format", "json"});
    const auto b = invoke({"table2", "--format", "json"});
    EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, UsageErrors)
{
    EXPECT_EQ(invoke({}).code, kExitUsage);
    EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(invoke({"run", scenario_}).code, kExitUsage);
    EXPECT_EQ(invoke({"table2", "--format", "xml"}).code, kExitUsage);
    EXPECT_EQ(invoke({"validate"}).code, kExitUsage);
    EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST_F(CliTest, MissingScenarioIsAValidationError)
{
    const auto r = invoke({"validate", (dir_ / "absent.scenario").string()});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_NE(r.err.find("absent.scenario"), std::string::npos);
}

TEST_F(CliTest, UnwritableOutputNamesThePath)
{
    const auto target = (dir_ / "missing" / "r.csv").string();
    const auto r = invoke({"run", scenario_, "--out", target});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_NE(r.err.find(target), std::string::npos);
}

}  // namespace
}  // namespace p2pmarket::cli
