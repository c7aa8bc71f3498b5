#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gmwb/fair_fee.hpp"
#include "gmwb/monte_carlo.hpp"
#include "gmwb/pricer.hpp"

namespace gmwb {

struct Scenario {
    double r = 0.0;
    double sigma = 0.0;
    double penalty = 0.0;
    double maturity = 0.0;
};

struct ExperimentConfig {
    std::vector<Scenario> scenarios;
    std::vector<double> alpha_m;
    std::vector<Strategy> strategies{Strategy::liability_max, Strategy::value_max};
    GridConfig grid = GridConfig::preset("paper");
    CalibrationSettings calibration;
    bool mc_validation = false;
    MCSettings mc;
    std::string output_dir = "results";
    int workers = 1;
    int events_per_year = 1;
    double initial_wealth = 1.0;
    double initial_guarantee = 1.0;

    void validate() const;
};

// The full numerical study: r in {1%, 5%}, sigma in {10%, 30%}, penalty in
// {10%, 20%}, T in {5, 10, 20}; alpha_m from 0% to 2% in 0.2% steps.
ExperimentConfig paper_config();

// Reads a JSON configuration; absent keys keep their paper_config() value.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);

// Runs fn(0..count-1) on `workers` threads pulling from a shared counter.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

struct CellResult {
    bool ok = false;
    double alpha_ins = 0.0;
    double v0 = 0.0;
    double l0 = 0.0;
    double m0 = 0.0;
    double m0_direct = 0.0;
    int evaluations = 0;
    double seconds = 0.0;
    std::string error;
};

// Calibrated cells indexed by (strategy, scenario, alpha_m).
struct SweepResults {
    ExperimentConfig config;
    std::vector<CellResult> cells;
    double wall_seconds = 0.0;

    std::size_t index(std::size_t strategy, std::size_t scenario, std::size_t alpha) const {
        return (strategy * config.scenarios.size() + scenario) * config.alpha_m.size() + alpha;
    }
    const CellResult& at(std::size_t strategy, std::size_t scenario, std::size_t alpha) const {
        return cells.at(index(strategy, scenario, alpha));
    }
    // position of `s` in config.strategies, or npos
    std::size_t strategy_slot(Strategy s) const;
};

ContractSpec scenario_contract(const ExperimentConfig& config, const Scenario& scenario);

// Calibrates every cell. Failed calibrations are kept as !ok cells with a
// warning written to `log`.
SweepResults run_sweep(const ExperimentConfig& config, std::ostream& log);

struct TableFiles {
    std::vector<std::filesystem::path> written;
};

// fair_fees_liability.csv, fair_fees_value.csv, policy_values_liability.csv,
// policy_values_value.csv and tables_metadata.json under `dir`.
TableFiles write_tables(const SweepResults& results, const std::filesystem::path& dir);

TableFiles run_tables(const ExperimentConfig& config, std::ostream& log);

// Figure series for the (r, sigma) pairs (1%, 30%) and (5%, 10%); one file
// per (r, sigma, penalty, T) scenario of the config.
TableFiles write_figure_data(const SweepResults& results, const std::filesystem::path& dir);

TableFiles emit_figure_data(const ExperimentConfig& config, std::ostream& log);

// Restricts the scenario list to the figure (r, sigma) pairs.
ExperimentConfig figure_config(const ExperimentConfig& config);

struct CheckOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckOutcome> checks;
    bool passed() const;
};

// Identity, dominance, analytic Black-Scholes, Monte Carlo and convergence checks.
ValidationReport validate(const ExperimentConfig& config, std::ostream& out);

std::string format_fixed(double value, int decimals);

}  // namespace gmwb
