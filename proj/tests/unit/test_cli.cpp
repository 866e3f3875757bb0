#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tcr/cli.hpp"
#include "tcr/config.hpp"
#include "tcr/errors.hpp"
#include "tcr/report.hpp"

using namespace tcr;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("tcr_cli_test_" + std::to_string(::getpid())) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void put(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string l; std::getline(ss, l);) out.push_back(l);
    return out;
}

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

int run_binary(const std::string& args) {
    const std::string cmd = std::string(TCRSIM_BINARY) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("simulate with defaults writes the trace schema") {
    const auto dir = scratch("defaults");
    std::ostringstream err;
    cli::SimulateOptions opts;
    opts.seed = 42;
    opts.out_dir = dir;
    REQUIRE(cli::command_simulate(opts, err) == cli::kExitOk);
    const auto rows = lines(slurp(dir / "trace.csv"));
    REQUIRE(rows.size() == 51);
    CHECK(rows[0] ==
          "round,item_good,decision,decision_correct,stake,participants,forced_abstentions,add_votes,reject_votes,"
          "lurp_raw,lurp_clamped,t_total,tokens_IE,tokens_ID,tokens_UE,tokens_UD,wealth_IE,wealth_ID,wealth_UE,"
          "wealth_UD");
    CHECK(rows[1].rfind("1,", 0) == 0);

    const auto summary = read_json_file(dir / "summary.json");
    CHECK(summary["seed"] == 42);
    CHECK(summary["rounds"] == 50);
    CHECK(summary["params"]["sim_params"]["num_voters"] == 100);
    CHECK(summary["params"]["sim_params"]["initial_stake"] == 5.0);
}

TEST_CASE("zero inflation keeps t_total constant in the trace") {
    const auto dir = scratch("flat");
    put(dir / "cfg.json", R"({"inflation_rate": 0.0, "p_informed": 0.9})");
    std::ostringstream err;
    cli::SimulateOptions opts{dir / "cfg.json", 3, dir};
    REQUIRE(cli::command_simulate(opts, err) == cli::kExitOk);
    const auto rows = lines(slurp(dir / "trace.csv"));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::stringstream ss(rows[i]);
        std::string cell;
        for (int c = 0; c <= 11; ++c) std::getline(ss, cell, ',');
        CHECK(cell == "10000");
    }
}

TEST_CASE("summary params echo reproduces the trace") {
    const auto dir = scratch("echo");
    put(dir / "cfg.json", R"({"sim_params": {"p_informed": 0.7, "inflation_rate": 0.031}, "base_seed": 17})");
    std::ostringstream err;
    REQUIRE(cli::command_simulate({dir / "cfg.json", std::nullopt, dir / "a"}, err) == 0);
    const auto summary = read_json_file(dir / "a" / "summary.json");
    put(dir / "echo.json", summary["params"].dump());
    REQUIRE(cli::command_simulate({dir / "echo.json", std::nullopt, dir / "b"}, err) == 0);
    CHECK(slurp(dir / "a" / "trace.csv") == slurp(dir / "b" / "trace.csv"));
    CHECK(slurp(dir / "a" / "summary.json") == slurp(dir / "b" / "summary.json"));
}

TEST_CASE("config parsing") {
    auto cfg = run_config_from_json(Json::parse(R"({"stake_policy": {"analysis_sigma": 0.1},
        "behavior_mode": "degenerate_ideal", "clamp_value": false})"));
    CHECK(std::get<AnalysisSigmaStake>(cfg.sim_params.stake_policy).sigma == 0.1);
    CHECK(cfg.behavior_mode == BehaviorMode::DegenerateIdeal);
    CHECK_FALSE(cfg.sim_params.clamp_value);
    CHECK(run_config_from_json(to_json(cfg)).sim_params == cfg.sim_params);

    CHECK(run_config_from_json(Json::object()).sim_params == SimParams{});
    CHECK_THROWS_AS(run_config_from_json(Json::parse(R"({"bogus": 1})")), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(Json::parse(R"({"sim_params": {"bogus": 1}})")), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(Json::parse(R"({"num_voters": "many"})")), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(Json::parse(R"({"num_voters": 2.5})")), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(Json::parse(R"({"tie_rule": "coin_flip"})")), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(Json::parse(R"({"base_seed": -1})")), ConfigError);

    auto spec = sweep_spec_from_json(Json::parse(
        R"({"grid": [{"name": "p_informed", "values": [0.1, 0.9]}], "replications": 3, "base_seed": 1})"));
    CHECK(spec.replications == 3);
    CHECK(spec.grid.size() == 1);
    CHECK_THROWS_AS(sweep_spec_from_json(Json::parse(R"({"grid": []})")), ConfigError);
    CHECK_THROWS_AS(sweep_spec_from_json(Json::parse(R"({"grid": [{"name": "nope", "values": [1]}]})")),
                    ConfigError);
}

TEST_CASE("simulate error exit codes") {
    const auto dir = scratch("errors");
    std::ostringstream err;
    put(dir / "bad.json", R"({"p_informed": 1.5})");
    CHECK(cli::command_simulate({dir / "bad.json", 1, dir}, err) == cli::kExitConfig);
    put(dir / "broken.json", "{not json");
    CHECK(cli::command_simulate({dir / "broken.json", 1, dir}, err) == cli::kExitConfig);
    CHECK(cli::command_simulate({dir / "missing.json", 1, dir}, err) == cli::kExitIo);
    put(dir / "blocker", "x");
    CHECK(cli::command_simulate({std::nullopt, 1, dir / "blocker"}, err) == cli::kExitIo);
}

TEST_CASE("sweep output is independent of --jobs") {
    const auto dir = scratch("sweep");
    put(dir / "spec.json", R"({"grid": [{"name": "p_informed", "values": [0.1, 0.5, 0.9]},
                                        {"name": "inflation_rate", "values": [0, 0.02]}],
                               "replications": 30, "base_seed": 11})");
    std::ostringstream err;
    REQUIRE(cli::command_sweep({dir / "spec.json", 1, dir / "j1"}, err) == 0);
    REQUIRE(cli::command_sweep({dir / "spec.json", 8, dir / "j8"}, err) == 0);
    CHECK(slurp(dir / "j1" / "aggregate.csv") == slurp(dir / "j8" / "aggregate.csv"));
    CHECK(slurp(dir / "j1" / "aggregate.json") == slurp(dir / "j8" / "aggregate.json"));
    const auto rows = lines(slurp(dir / "j1" / "aggregate.csv"));
    CHECK(rows[0] == "cell,p_informed,inflation_rate,round,metric,count,mean,stddev,min,max,p05,p95");
    CHECK(rows.size() == 1 + 6 * 50 * kMetricCount);
    const auto agg = read_json_file(dir / "j1" / "aggregate.json");
    CHECK(agg["cells"].size() == 6);

    put(dir / "empty.json", R"({"grid": []})");
    CHECK(cli::command_sweep({dir / "empty.json", 1, dir / "e"}, err) == cli::kExitConfig);
}

TEST_CASE("validate command") {
    const auto dir = scratch("validate");
    std::ostringstream err;
    cli::ValidateOptions opts;
    opts.out_dir = dir;
    CHECK(cli::command_validate(opts, err) == cli::kExitOk);
    const auto report = read_json_file(dir / "validation.json");
    CHECK(report["passed"] == true);
    CHECK(report["max_relative_error"].get<double>() <= 1e-9);
    CHECK(report["series"].size() == 6);
    CHECK(report["trends"]["wealth_IE"] == "linear_growth");

    opts.k = 0;
    CHECK(cli::command_validate(opts, err) == cli::kExitOk);
    CHECK(read_json_file(dir / "validation.json")["max_relative_error"] == 0.0);

    opts.k = 50;
    opts.classes = "20,30,30,20";
    CHECK(cli::command_validate(opts, err) == cli::kExitConfig);
    opts.classes = "30,20,30";
    CHECK(cli::command_validate(opts, err) == cli::kExitConfig);
}

TEST_CASE("plot renders one polyline per series") {
    const auto dir = scratch("plot");
    std::ostringstream err;
    REQUIRE(cli::command_simulate({std::nullopt, 42, dir}, err) == 0);

    REQUIRE(cli::command_plot({dir / "trace.csv", "wealth", dir / "wealth.svg"}, err) == 0);
    const auto wealth = slurp(dir / "wealth.svg");
    CHECK(count_of(wealth, "<polyline") == 4);
    for (auto c : kAllClasses) CHECK(wealth.find(std::string(long_name(c))) != std::string::npos);
    CHECK(wealth.find(">round<") != std::string::npos);

    REQUIRE(cli::command_plot({dir / "trace.csv", "value", dir / "value.svg"}, err) == 0);
    CHECK(count_of(slurp(dir / "value.svg"), "<polyline") == 2);

    REQUIRE(cli::command_plot({dir / "trace.csv", "tokens", dir / "again.svg"}, err) == 0);
    REQUIRE(cli::command_plot({dir / "trace.csv", "tokens", dir / "tokens.svg"}, err) == 0);
    CHECK(slurp(dir / "again.svg") == slurp(dir / "tokens.svg"));

    CHECK(cli::command_plot({dir / "trace.csv", "price", dir / "x.svg"}, err) == cli::kExitConfig);
    put(dir / "other.csv", "a,b\n1,2\n");
    CHECK(cli::command_plot({dir / "other.csv", "wealth", dir / "x.svg"}, err) == cli::kExitConfig);
    CHECK(cli::command_plot({dir / "nothing.csv", "wealth", dir / "x.svg"}, err) == cli::kExitIo);

    put(dir / "spec.json", R"({"grid": [{"name": "p_informed", "values": [0.9]}], "replications": 5})");
    REQUIRE(cli::command_sweep({dir / "spec.json", 1, dir / "agg"}, err) == 0);
    REQUIRE(cli::command_plot({dir / "agg" / "aggregate.csv", "wealth", dir / "agg.svg"}, err) == 0);
    CHECK(count_of(slurp(dir / "agg.svg"), "<polyline") == 4);
    CHECK(cli::command_plot({dir / "agg" / "aggregate.csv", "wealth", dir / "agg.svg", 3}, err) ==
          cli::kExitConfig);
}

TEST_CASE("binary exit codes") {
    const auto dir = scratch("binary");
    CHECK(run_binary("simulate --seed 1 --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "trace.csv"));
    CHECK(run_binary("validate --classes 30,20,30,20 --k 50 --out " + dir.string()) == 0);
    CHECK(run_binary("validate --classes 20,30,30,20 --out " + dir.string()) == 2);
    CHECK(run_binary("frobnicate") == 2);
    CHECK(run_binary("plot " + (dir / "trace.csv").string() + " --metric nope --out " +
                     (dir / "x.svg").string()) == 2);
}

TEST_CASE("number formatting uses 12 significant digits") {
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(10000.0) == "10000");
    CHECK(format_number(std::nan("")) == "nan");
}
