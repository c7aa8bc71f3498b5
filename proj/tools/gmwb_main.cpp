#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gmwb/errors.hpp"
#include "gmwb/experiment.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_config = 2;

struct CommonFlags {
    std::string config;
    std::string out;
    std::optional<int> workers;
    std::optional<std::uint64_t> seed;
    std::string grid_preset;
};

struct SingleContract {
    double r = 0.01;
    double sigma = 0.10;
    double beta = 0.10;
    double maturity = 5.0;
    double alpha_m = 0.0;
    double alpha_ins = 0.0;
    std::string strategy = "liability_max";
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config, "JSON experiment configuration")->check(CLI::ExistingFile);
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--workers", f.workers, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "Monte Carlo seed");
    cmd->add_option("--grid-preset", f.grid_preset, "grid resolution")
        ->check(CLI::IsMember({"fast", "paper", "fine"}));
}

void add_contract(CLI::App* cmd, SingleContract& c, bool with_fee) {
    cmd->add_option("--r", c.r, "risk-free rate (decimal)")->capture_default_str();
    cmd->add_option("--sigma", c.sigma, "volatility (decimal)")->capture_default_str();
    cmd->add_option("--beta", c.beta, "penalty rate (decimal)")->capture_default_str();
    cmd->add_option("--maturity", c.maturity, "maturity in years")->capture_default_str();
    cmd->add_option("--alpha-m", c.alpha_m, "management fee rate (decimal)")->capture_default_str();
    if (with_fee)
        cmd->add_option("--alpha-ins", c.alpha_ins, "insurance fee rate (decimal)")->capture_default_str();
    cmd->add_option("--strategy", c.strategy, "liability_max, value_max or static_contractual")
        ->capture_default_str();
}

gmwb::ExperimentConfig resolve(const CommonFlags& f) {
    gmwb::ExperimentConfig c = f.config.empty() ? gmwb::paper_config() : gmwb::load_config(f.config);
    if (!f.out.empty()) c.output_dir = f.out;
    if (f.workers) c.workers = *f.workers;
    if (f.seed) c.mc.seed = *f.seed;
    if (!f.grid_preset.empty()) c.grid = gmwb::GridConfig::preset(f.grid_preset);
    c.mc.workers = c.workers;
    c.validate();
    return c;
}

void print_files(const gmwb::TableFiles& files) {
    for (const auto& p : files.written) std::cout << "wrote " << p.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pricing of guaranteed minimum withdrawal benefits under optimal withdrawals"};
    app.require_subcommand(1);

    CommonFlags flags;
    SingleContract contract;
    auto* tables = app.add_subcommand("tables", "calibrate the scenario sweep and write fee/value tables");
    auto* figures = app.add_subcommand("figures", "write fee and value series against alpha_m");
    auto* check = app.add_subcommand("validate", "run the invariant and oracle checks");
    auto* price = app.add_subcommand("price", "price one contract, printing V0, L0 and M0");
    auto* fee = app.add_subcommand("fair-fee", "calibrate the fair insurance fee of one contract");
    for (auto* cmd : {tables, figures, check, price, fee}) add_common(cmd, flags);
    add_contract(price, contract, true);
    add_contract(fee, contract, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        const gmwb::ExperimentConfig config = resolve(flags);

        if (tables->parsed()) {
            print_files(gmwb::run_tables(config, std::cerr));
            return exit_ok;
        }
        if (figures->parsed()) {
            print_files(gmwb::emit_figure_data(config, std::cerr));
            return exit_ok;
        }
        if (check->parsed()) {
            const auto report = gmwb::validate(config, std::cout);
            std::cout << (report.passed() ? "all checks passed" : "some checks failed") << '\n';
            return report.passed() ? exit_ok : exit_failed;
        }

        const gmwb::Scenario scenario{contract.r, contract.sigma, contract.beta, contract.maturity};
        const auto spec = gmwb::scenario_contract(config, scenario);
        const gmwb::MarketParams market{contract.r, contract.sigma};
        const auto strategy = gmwb::parse_strategy(contract.strategy);
        gmwb::PricingOptions options;
        options.grid = config.grid;
        options.track_management_fees = true;
        std::cout << std::setprecision(10);

        if (price->parsed()) {
            const gmwb::FeeSchedule fees{contract.alpha_m, contract.alpha_ins};
            fees.validate();
            const auto res = gmwb::price(spec, market, fees, strategy, options);
            std::cout << "V0 " << res.v0 << "\nL0 " << res.l0 << "\nM0 " << res.m0 << "\nM0_direct "
                      << res.m0_direct.value_or(0.0) << '\n';
            return exit_ok;
        }
        const auto fit = gmwb::solve_fair_fee(spec, market, contract.alpha_m, strategy,
                                              config.calibration, options);
        std::cout << "alpha_ins " << fit.alpha_ins << "\nalpha_ins_pct "
                  << gmwb::format_fixed(100.0 * fit.alpha_ins, 4) << "\nV0 " << fit.pricing.v0
                  << "\nL0 " << fit.pricing.l0 << "\nevaluations " << fit.evaluations << '\n';
        return exit_ok;
    } catch (const gmwb::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const gmwb::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failed;
    }
}
