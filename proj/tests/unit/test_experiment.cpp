#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gmwb/errors.hpp"
#include "gmwb/experiment.hpp"

using namespace gmwb;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("gmwb_unit_" + name);
    fs::remove_all(dir);
    return dir;
}

ExperimentConfig small_config() {
    ExperimentConfig c = paper_config();
    c.scenarios = {{0.01, 0.10, 0.10, 5.0}};
    c.alpha_m = {0.0};
    c.grid = GridConfig::preset("fast");
    return c;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("default study configuration covers every scenario") {
    const auto c = paper_config();
    CHECK(c.scenarios.size() == 24);
    REQUIRE(c.alpha_m.size() == 11);
    CHECK(c.alpha_m.front() == 0.0);
    CHECK(c.alpha_m.back() == doctest::Approx(0.02));
    CHECK(c.scenarios.front().maturity == 5.0);
    CHECK(c.scenarios.back().r == 0.05);
    CHECK(c.scenarios.back().sigma == 0.30);
    CHECK(c.scenarios.back().penalty == 0.20);
    CHECK(c.scenarios.back().maturity == 20.0);
    CHECK(c.grid.num_wealth_nodes == 401);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("json round trip and overrides") {
    const auto j = nlohmann::json::parse(R"({
        "scenarios": [{"r": 0.05, "sigma": 0.3, "penalty": 0.2, "maturity": 10}],
        "alpha_m": [0.0, 0.01],
        "strategies": ["value_max"],
        "grid": {"preset": "fast", "steps_per_year": 40},
        "workers": 3
    })");
    const auto c = config_from_json(j);
    REQUIRE(c.scenarios.size() == 1);
    CHECK(c.scenarios[0].maturity == 10.0);
    CHECK(c.strategies == std::vector<Strategy>{Strategy::value_max});
    CHECK(c.grid.num_wealth_nodes == 201);
    CHECK(c.grid.steps_per_year == 40);
    CHECK(c.workers == 3);
    CHECK(c.calibration.tolerance == 1e-6);

    const auto again = config_from_json(to_json(c));
    CHECK(to_json(again) == to_json(c));
}

TEST_CASE("bad configurations") {
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"colour": 1})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"workers": "many"})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"scenarios": [{"r": 0.01}]})")), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);

    auto c = small_config();
    c.alpha_m = {0.06};
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = small_config();
    c.scenarios.clear();
    CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("parallel_for visits every index once and rethrows") {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                        if (i == 7) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
}

TEST_CASE("single-scenario tables") {
    auto c = small_config();
    c.output_dir = scratch_dir("tables").string();
    std::ostringstream log;
    const auto files = run_tables(c, log);
    CHECK(files.written.size() == 5);
    const auto fees_l = slurp(fs::path(c.output_dir) / "fair_fees_liability.csv");
    const auto fees_v = slurp(fs::path(c.output_dir) / "fair_fees_value.csv");
    CHECK(count_lines(fees_l) == 2);
    CHECK(fees_l.rfind("r,sigma,beta,T,alpha_m_0.0000\n", 0) == 0);
    // strategies agree without a management fee
    CHECK(fees_l == fees_v);
    CHECK(fs::exists(fs::path(c.output_dir) / "tables_metadata.json"));
    CHECK(log.str().empty());
}

TEST_CASE("failed calibrations become NaN cells with a warning") {
    auto c = small_config();
    c.strategies = {Strategy::liability_max};
    c.calibration.bracket_low = c.calibration.expand_low = 0.10;
    c.calibration.bracket_high = c.calibration.expand_high = 0.20;
    c.output_dir = scratch_dir("nan").string();
    std::ostringstream log;
    run_tables(c, log);
    const auto body = slurp(fs::path(c.output_dir) / "fair_fees_liability.csv");
    CHECK(body.find(",NaN\n") != std::string::npos);
    CHECK(log.str().find("warning") != std::string::npos);
    CHECK_FALSE(fs::exists(fs::path(c.output_dir) / "fair_fees_value.csv"));
}

TEST_CASE("reruns are byte-identical regardless of worker count") {
    auto c = small_config();
    c.alpha_m = {0.0, 0.01};
    c.scenarios.push_back({0.05, 0.30, 0.20, 5.0});
    std::ostringstream log;
    c.output_dir = scratch_dir("det1").string();
    c.workers = 1;
    run_tables(c, log);
    const auto first = fs::path(c.output_dir);
    c.output_dir = scratch_dir("det2").string();
    c.workers = 3;
    run_tables(c, log);
    for (const char* f : {"fair_fees_liability.csv", "fair_fees_value.csv", "policy_values_liability.csv",
                          "policy_values_value.csv"})
        CHECK(slurp(first / f) == slurp(fs::path(c.output_dir) / f));
}

TEST_CASE("figure data layout") {
    auto c = paper_config();
    c.alpha_m.clear();
    c.output_dir = scratch_dir("figures").string();
    std::ostringstream log;
    const auto files = emit_figure_data(c, log);
    CHECK(files.written.size() == 12);
    const auto one = slurp(fs::path(c.output_dir) / "figure_r1_sigma30_beta10_T5.csv");
    CHECK(one == "alpha_m,fee_liability_pct,fee_value_pct,V0_liability,V0_value\n");
    std::size_t low_return = 0;
    for (const auto& p : files.written) low_return += p.filename().string().rfind("figure_r1_sigma30", 0) == 0;
    CHECK(low_return == 6);
}

TEST_CASE("figure series keep the liability fee on top") {
    auto c = small_config();
    c.scenarios = {{0.05, 0.10, 0.10, 5.0}};
    c.alpha_m = {0.0, 0.02};
    c.output_dir = scratch_dir("series").string();
    std::ostringstream log;
    const auto files = emit_figure_data(c, log);
    REQUIRE(files.written.size() == 1);
    std::istringstream in(slurp(files.written[0]));
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        double am, fl, fv, vl, vv;
        char comma;
        std::istringstream row(line);
        row >> am >> comma >> fl >> comma >> fv >> comma >> vl >> comma >> vv;
        CHECK(fl >= fv - 1e-4);
        ++rows;
    }
    CHECK(rows == 2);
}

TEST_CASE("fixed formatting") {
    CHECK(format_fixed(3.08, 4) == "3.0800");
    CHECK(format_fixed(-0.00001, 4) == "0.0000");
    CHECK(format_fixed(-0.93, 2) == "-0.93");
    CHECK(format_fixed(std::nan(""), 4) == "NaN");
}

}
