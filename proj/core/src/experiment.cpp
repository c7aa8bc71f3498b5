#include "gmwb/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "gmwb/errors.hpp"
#include "gmwb/pde.hpp"

#ifndef GMWB_VERSION
#define GMWB_VERSION "unknown"
#endif

namespace gmwb {

using json = nlohmann::json;

void ExperimentConfig::validate() const {
    if (scenarios.empty()) throw ValidationError("scenarios", "need at least one scenario");
    for (double a : alpha_m)
        if (!(a >= 0.0 && a <= 0.05)) throw ValidationError("alpha_m", "values must lie in [0, 0.05]");
    if (strategies.empty()) throw ValidationError("strategies", "need at least one strategy");
    if (workers < 1) throw ValidationError("workers", "must be at least 1");
    if (events_per_year < 1) throw ValidationError("events_per_year", "must be at least 1");
    if (output_dir.empty()) throw ValidationError("output_dir", "must not be empty");
    grid.validate();
    calibration.validate();
    mc.validate();
    for (const auto& s : scenarios) {
        MarketParams{s.r, s.sigma}.validate();
        build_contract(s.maturity, events_per_year, s.penalty, initial_wealth, initial_guarantee)
            .validate();
    }
}

ExperimentConfig paper_config() {
    ExperimentConfig c;
    for (double r : {0.01, 0.05})
        for (double sigma : {0.10, 0.30})
            for (double beta : {0.10, 0.20})
                for (double T : {5.0, 10.0, 20.0}) c.scenarios.push_back({r, sigma, beta, T});
    for (int k = 0; k <= 10; ++k) c.alpha_m.push_back(0.002 * k);
    c.mc_validation = true;
    return c;
}

namespace {

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!known.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& target) {
    if (!j.contains(key)) return;
    try {
        target = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

const char* bound_name(WealthBound b) { return b == WealthBound::diffusion ? "diffusion" : "growth"; }

}  // namespace

ExperimentConfig config_from_json(const json& j) {
    reject_unknown(j,
                   {"scenarios", "alpha_m", "strategies", "grid", "calibration", "mc_validation",
                    "mc", "output_dir", "workers", "events_per_year", "initial_wealth",
                    "initial_guarantee"},
                   "config");
    ExperimentConfig c = paper_config();

    if (j.contains("scenarios")) {
        if (!j["scenarios"].is_array()) throw ConfigError("'scenarios' must be an array");
        c.scenarios.clear();
        for (const auto& s : j["scenarios"]) {
            reject_unknown(s, {"r", "sigma", "penalty", "maturity"}, "scenario");
            for (const char* key : {"r", "sigma", "penalty", "maturity"})
                if (!s.contains(key)) throw ConfigError(std::string("scenario is missing '") + key + "'");
            Scenario sc;
            read(s, "r", sc.r);
            read(s, "sigma", sc.sigma);
            read(s, "penalty", sc.penalty);
            read(s, "maturity", sc.maturity);
            c.scenarios.push_back(sc);
        }
    }
    read(j, "alpha_m", c.alpha_m);
    if (j.contains("strategies")) {
        std::vector<std::string> names;
        read(j, "strategies", names);
        c.strategies.clear();
        for (const auto& n : names) c.strategies.push_back(parse_strategy(n));
    }
    if (j.contains("grid")) {
        const json& g = j["grid"];
        reject_unknown(g,
                       {"preset", "num_wealth_nodes", "nodes_per_contract_amount", "steps_per_year",
                        "align_wealth_to_guarantee", "wealth_max_scale", "wealth_bound"},
                       "grid");
        if (g.contains("preset")) c.grid = GridConfig::preset(g["preset"].get<std::string>());
        read(g, "num_wealth_nodes", c.grid.num_wealth_nodes);
        read(g, "nodes_per_contract_amount", c.grid.nodes_per_contract_amount);
        read(g, "steps_per_year", c.grid.steps_per_year);
        read(g, "align_wealth_to_guarantee", c.grid.align_wealth_to_guarantee);
        read(g, "wealth_max_scale", c.grid.wealth_max_scale);
        if (g.contains("wealth_bound")) {
            const auto name = g["wealth_bound"].get<std::string>();
            if (name == "diffusion") c.grid.wealth_bound = WealthBound::diffusion;
            else if (name == "growth") c.grid.wealth_bound = WealthBound::growth;
            else throw ConfigError("wealth_bound must be 'diffusion' or 'growth'");
        }
    }
    if (j.contains("calibration")) {
        const json& k = j["calibration"];
        reject_unknown(k,
                       {"bracket_low", "bracket_high", "expand_low", "expand_high", "tolerance",
                        "max_iterations"},
                       "calibration");
        read(k, "bracket_low", c.calibration.bracket_low);
        read(k, "bracket_high", c.calibration.bracket_high);
        read(k, "expand_low", c.calibration.expand_low);
        read(k, "expand_high", c.calibration.expand_high);
        read(k, "tolerance", c.calibration.tolerance);
        read(k, "max_iterations", c.calibration.max_iterations);
    }
    read(j, "mc_validation", c.mc_validation);
    if (j.contains("mc")) {
        const json& m = j["mc"];
        reject_unknown(m, {"num_paths", "seed", "sub_steps_per_year", "antithetic"}, "mc");
        read(m, "num_paths", c.mc.num_paths);
        read(m, "seed", c.mc.seed);
        read(m, "sub_steps_per_year", c.mc.sub_steps_per_year);
        read(m, "antithetic", c.mc.antithetic);
    }
    read(j, "output_dir", c.output_dir);
    read(j, "workers", c.workers);
    read(j, "events_per_year", c.events_per_year);
    read(j, "initial_wealth", c.initial_wealth);
    read(j, "initial_guarantee", c.initial_guarantee);
    c.mc.workers = c.workers;
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("cannot parse '" + path.string() + "': " + e.what());
    }
    return config_from_json(j);
}

json to_json(const ExperimentConfig& c) {
    json scenarios = json::array();
    for (const auto& s : c.scenarios)
        scenarios.push_back({{"r", s.r}, {"sigma", s.sigma}, {"penalty", s.penalty}, {"maturity", s.maturity}});
    json strategies = json::array();
    for (auto s : c.strategies) strategies.push_back(to_string(s));
    return {
        {"scenarios", scenarios},
        {"alpha_m", c.alpha_m},
        {"strategies", strategies},
        {"grid",
         {{"num_wealth_nodes", c.grid.num_wealth_nodes},
          {"nodes_per_contract_amount", c.grid.nodes_per_contract_amount},
          {"steps_per_year", c.grid.steps_per_year},
          {"align_wealth_to_guarantee", c.grid.align_wealth_to_guarantee},
          {"wealth_max_scale", c.grid.wealth_max_scale},
          {"wealth_bound", bound_name(c.grid.wealth_bound)}}},
        {"calibration",
         {{"bracket_low", c.calibration.bracket_low},
          {"bracket_high", c.calibration.bracket_high},
          {"expand_low", c.calibration.expand_low},
          {"expand_high", c.calibration.expand_high},
          {"tolerance", c.calibration.tolerance},
          {"max_iterations", c.calibration.max_iterations}}},
        {"mc_validation", c.mc_validation},
        {"mc",
         {{"num_paths", c.mc.num_paths},
          {"seed", c.mc.seed},
          {"sub_steps_per_year", c.mc.sub_steps_per_year},
          {"antithetic", c.mc.antithetic}}},
        {"output_dir", c.output_dir},
        {"workers", c.workers},
        {"events_per_year", c.events_per_year},
        {"initial_wealth", c.initial_wealth},
        {"initial_guarantee", c.initial_guarantee},
    };
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    std::vector<std::thread> threads;
    threads.reserve(n);
    for (std::size_t t = 0; t < n; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::size_t SweepResults::strategy_slot(Strategy s) const {
    for (std::size_t k = 0; k < config.strategies.size(); ++k)
        if (config.strategies[k] == s) return k;
    return static_cast<std::size_t>(-1);
}

ContractSpec scenario_contract(const ExperimentConfig& config, const Scenario& scenario) {
    return build_contract(scenario.maturity, config.events_per_year, scenario.penalty,
                          config.initial_wealth, config.initial_guarantee);
}

std::string format_fixed(double value, int decimals) {
    if (std::isnan(value)) return "NaN";
    std::ostringstream s;
    s << std::fixed << std::setprecision(decimals) << value;
    std::string out = s.str();
    // avoid "-0.0000"
    if (out.find_first_not_of("-0.") == std::string::npos && out.front() == '-') out.erase(0, 1);
    return out;
}

namespace {

std::string scenario_label(const Scenario& s) {
    std::ostringstream o;
    o << "r=" << s.r << " sigma=" << s.sigma << " beta=" << s.penalty << " T=" << s.maturity;
    return o.str();
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

SweepResults run_sweep(const ExperimentConfig& config, std::ostream& log) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    SweepResults results;
    results.config = config;
    const std::size_t n_alpha = config.alpha_m.size();
    const std::size_t n_scen = config.scenarios.size();
    results.cells.resize(config.strategies.size() * n_scen * n_alpha);

    PricingOptions options;
    options.grid = config.grid;
    options.track_management_fees = true;

    std::mutex log_mutex;
    parallel_for(results.cells.size(), config.workers, [&](std::size_t idx) {
        const std::size_t a = idx % n_alpha;
        const std::size_t sc = (idx / n_alpha) % n_scen;
        const std::size_t st = idx / (n_alpha * n_scen);
        const Scenario& scen = config.scenarios[sc];
        const Strategy strategy = config.strategies[st];
        const auto cell_start = std::chrono::steady_clock::now();
        CellResult cell;
        try {
            const auto fit = solve_fair_fee(scenario_contract(config, scen), {scen.r, scen.sigma},
                                            config.alpha_m[a], strategy, config.calibration, options);
            cell.ok = true;
            cell.alpha_ins = fit.alpha_ins;
            cell.v0 = fit.pricing.v0;
            cell.l0 = fit.pricing.l0;
            cell.m0 = fit.pricing.m0;
            cell.m0_direct = fit.pricing.m0_direct.value_or(std::numeric_limits<double>::quiet_NaN());
            cell.evaluations = fit.evaluations;
        } catch (const std::exception& e) {
            cell.ok = false;
            cell.alpha_ins = cell.v0 = cell.l0 = cell.m0 = cell.m0_direct =
                std::numeric_limits<double>::quiet_NaN();
            cell.error = e.what();
            std::lock_guard lock(log_mutex);
            log << "warning: " << to_string(strategy) << ' ' << scenario_label(scen)
                << " alpha_m=" << config.alpha_m[a] << ": " << e.what() << '\n';
        }
        cell.seconds = elapsed_since(cell_start);
        results.cells[idx] = std::move(cell);
    });
    results.wall_seconds = elapsed_since(start);
    return results;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << body;
    if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

std::string table_header(const std::vector<double>& alpha_m) {
    std::string h = "r,sigma,beta,T";
    for (double a : alpha_m) h += ",alpha_m_" + format_fixed(a, 4);
    return h + "\n";
}

std::string scenario_columns(const Scenario& s) {
    return format_fixed(s.r, 4) + "," + format_fixed(s.sigma, 4) + "," + format_fixed(s.penalty, 4) +
           "," + format_fixed(s.maturity, 2);
}

std::string table_body(const SweepResults& res, std::size_t slot, bool fees) {
    std::string body = table_header(res.config.alpha_m);
    for (std::size_t sc = 0; sc < res.config.scenarios.size(); ++sc) {
        body += scenario_columns(res.config.scenarios[sc]);
        for (std::size_t a = 0; a < res.config.alpha_m.size(); ++a) {
            const CellResult& c = res.at(slot, sc, a);
            const double v = !c.ok ? std::numeric_limits<double>::quiet_NaN()
                                   : (fees ? 100.0 * c.alpha_ins : c.v0);
            body += "," + format_fixed(v, 4);
        }
        body += "\n";
    }
    return body;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::filesystem::path prepare_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

}  // namespace

TableFiles write_tables(const SweepResults& results, const std::filesystem::path& dir) {
    prepare_dir(dir);
    TableFiles files;
    const std::pair<Strategy, const char*> tables[] = {{Strategy::liability_max, "liability"},
                                                       {Strategy::value_max, "value"}};
    for (const auto& [strategy, suffix] : tables) {
        const std::size_t slot = results.strategy_slot(strategy);
        if (slot == static_cast<std::size_t>(-1)) continue;
        for (bool fees : {true, false}) {
            const auto path = dir / ((fees ? "fair_fees_" : "policy_values_") + std::string(suffix) + ".csv");
            write_text(path, table_body(results, slot, fees));
            files.written.push_back(path);
        }
    }

    std::size_t failed = 0;
    for (const auto& c : results.cells) failed += c.ok ? 0 : 1;
    const json meta = {
        {"code_version", GMWB_VERSION},
        {"generated_at", utc_timestamp()},
        {"wall_seconds", results.wall_seconds},
        {"cells", results.cells.size()},
        {"failed_cells", failed},
        {"config", to_json(results.config)},
    };
    const auto meta_path = dir / "tables_metadata.json";
    write_text(meta_path, meta.dump(2) + "\n");
    files.written.push_back(meta_path);
    return files;
}

TableFiles run_tables(const ExperimentConfig& config, std::ostream& log) {
    return write_tables(run_sweep(config, log), config.output_dir);
}

namespace {

bool is_figure_pair(const Scenario& s) {
    auto near = [](double a, double b) { return std::abs(a - b) < 1e-12; };
    return (near(s.r, 0.01) && near(s.sigma, 0.30)) || (near(s.r, 0.05) && near(s.sigma, 0.10));
}

std::string pct_label(double x) {
    // 0.01 -> "1", 0.125 -> "12.5"
    std::ostringstream o;
    o << std::defaultfloat << std::setprecision(6) << 100.0 * x;
    return o.str();
}

}  // namespace

ExperimentConfig figure_config(const ExperimentConfig& config) {
    ExperimentConfig out = config;
    out.scenarios.clear();
    for (const auto& s : config.scenarios)
        if (is_figure_pair(s)) out.scenarios.push_back(s);
    for (Strategy s : {Strategy::liability_max, Strategy::value_max})
        if (std::find(out.strategies.begin(), out.strategies.end(), s) == out.strategies.end())
            out.strategies.push_back(s);
    return out;
}

TableFiles write_figure_data(const SweepResults& results, const std::filesystem::path& dir) {
    prepare_dir(dir);
    TableFiles files;
    const std::size_t lia = results.strategy_slot(Strategy::liability_max);
    const std::size_t val = results.strategy_slot(Strategy::value_max);
    const auto nan = std::numeric_limits<double>::quiet_NaN();
    auto pick = [&](std::size_t slot, std::size_t sc, std::size_t a, bool fee) {
        if (slot == static_cast<std::size_t>(-1)) return nan;
        const CellResult& c = results.at(slot, sc, a);
        if (!c.ok) return nan;
        return fee ? 100.0 * c.alpha_ins : c.v0;
    };
    for (std::size_t sc = 0; sc < results.config.scenarios.size(); ++sc) {
        const Scenario& s = results.config.scenarios[sc];
        if (!is_figure_pair(s)) continue;
        std::string body = "alpha_m,fee_liability_pct,fee_value_pct,V0_liability,V0_value\n";
        for (std::size_t a = 0; a < results.config.alpha_m.size(); ++a) {
            body += format_fixed(results.config.alpha_m[a], 4) + "," +
                    format_fixed(pick(lia, sc, a, true), 4) + "," +
                    format_fixed(pick(val, sc, a, true), 4) + "," +
                    format_fixed(pick(lia, sc, a, false), 4) + "," +
                    format_fixed(pick(val, sc, a, false), 4) + "\n";
        }
        const auto path = dir / ("figure_r" + pct_label(s.r) + "_sigma" + pct_label(s.sigma) + "_beta" +
                                 pct_label(s.penalty) + "_T" + format_fixed(s.maturity, 0) + ".csv");
        write_text(path, body);
        files.written.push_back(path);
    }
    return files;
}

TableFiles emit_figure_data(const ExperimentConfig& config, std::ostream& log) {
    const ExperimentConfig fig = figure_config(config);
    if (fig.scenarios.empty()) return {};
    return write_figure_data(run_sweep(fig, log), config.output_dir);
}

bool ValidationReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

namespace {

double black_scholes_call(double s, double k, double r, double q, double sigma, double t) {
    const boost::math::normal_distribution<> n;
    const double sd = sigma * std::sqrt(t);
    const double d1 = (std::log(s / k) + (r - q + 0.5 * sigma * sigma) * t) / sd;
    const double d2 = d1 - sd;
    return s * std::exp(-q * t) * boost::math::cdf(n, d1) - k * std::exp(-r * t) * boost::math::cdf(n, d2);
}

struct CallErrors {
    double max_relative = 0.0;
    double max_absolute = 0.0;
};

// European call max(W - K, 0), K = 1, r = 5%, sigma = 20%, yield 3%, T = 1,
// solved on `intervals` uniform wealth steps up to 10 K.
CallErrors european_call_errors(std::size_t intervals, int steps_per_year) {
    const double strike = 1.0, r = 0.05, sigma = 0.20, q = 0.03, maturity = 1.0;
    const WealthGrid grid(10.0 * strike / static_cast<double>(intervals), intervals);
    ValueSurface v(1, grid.size()), l(1, grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v(0, i) = std::max(grid[i] - strike, 0.0);
    solve_between_events(v, l, nullptr, grid, 0.0, maturity, {r, sigma}, {q, 0.0}, steps_per_year);
    CallErrors e;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0.5 * strike - 1e-12 || grid[i] > 2.0 * strike + 1e-12) continue;
        const double exact = black_scholes_call(grid[i], strike, r, q, sigma, maturity);
        const double err = std::abs(v(0, i) - exact);
        e.max_absolute = std::max(e.max_absolute, err);
        e.max_relative = std::max(e.max_relative, err / exact);
    }
    return e;
}

std::string sci(double x) {
    std::ostringstream o;
    o << std::scientific << std::setprecision(3) << x;
    return o.str();
}

}  // namespace

ValidationReport validate(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    ValidationReport report;
    auto record = [&](std::string name, bool ok, std::string detail) {
        out << (ok ? "PASS  " : "FAIL  ") << name << "  " << detail << '\n' << std::flush;
        report.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    const Scenario& scen = config.scenarios.front();
    const ContractSpec contract = scenario_contract(config, scen);
    const MarketParams market{scen.r, scen.sigma};
    const double alpha_m = config.alpha_m.empty() ? 0.0 : config.alpha_m.back();
    PricingOptions options;
    options.grid = config.grid;
    options.track_management_fees = true;

    // Fair fees under both strategies for the first scenario.
    const auto fit_l = solve_fair_fee(contract, market, alpha_m, Strategy::liability_max,
                                      config.calibration, options);
    const auto fit_v = solve_fair_fee(contract, market, alpha_m, Strategy::value_max,
                                      config.calibration, options);

    for (const auto* fit : {&fit_l, &fit_v}) {
        const auto& p = fit->pricing;
        const double construction = std::abs(p.v0 + p.m0 - contract.initial_wealth - p.l0);
        const double direct = std::abs(p.m0 - p.m0_direct.value_or(std::numeric_limits<double>::infinity()));
        const std::string tag = fit == &fit_l ? "liability_max" : "value_max";
        record("identity " + tag, construction <= 1e-10 && direct <= 1e-4,
               "|V0+M0-W0-L0|=" + sci(construction) + " |M0-M0_direct|=" + sci(direct));
    }

    record("dominance", fit_l.alpha_ins >= fit_v.alpha_ins - 1e-6,
           "fee_L=" + format_fixed(100.0 * fit_l.alpha_ins, 4) + "% fee_V=" +
               format_fixed(100.0 * fit_v.alpha_ins, 4) + "%");

    const auto intervals = static_cast<std::size_t>(config.grid.num_wealth_nodes - 1);
    const auto coarse = european_call_errors(intervals, config.grid.steps_per_year);
    const auto fine = european_call_errors(2 * intervals, config.grid.steps_per_year);
    record("black_scholes", coarse.max_relative < 1e-4,
           "max relative error " + sci(coarse.max_relative) + " (limit 1e-4) on 0.5K..2K");
    const double ratio = coarse.max_absolute / fine.max_absolute;
    record("black_scholes_order", ratio >= 3.5,
           "error ratio " + format_fixed(ratio, 3) + " when halving the wealth step (limit 3.5)");

    if (config.mc_validation) {
        const FeeSchedule fees{alpha_m, fit_l.alpha_ins};
        PricingOptions mc_options = options;
        mc_options.keep_policy = true;
        const auto pde = price(contract, market, fees, Strategy::static_contractual, mc_options);
        MCSettings mc = config.mc;
        mc.workers = config.workers;
        const auto sim = simulate(extract_policy(pde), contract, market, fees, mc);
        const double z = std::abs(sim.value.mean - pde.v0) / sim.value.std_error;
        record("monte_carlo", z <= 3.0,
               "PDE V0=" + format_fixed(pde.v0, 6) + " MC V0=" + format_fixed(sim.value.mean, 6) +
                   " +/- " + sci(sim.value.std_error) + " (" + format_fixed(z, 2) + " s.e., limit 3)");
    }

    PricingOptions dense = options;
    dense.grid.nodes_per_contract_amount *= 2;
    const auto fit_dense = solve_fair_fee(contract, market, alpha_m, Strategy::liability_max,
                                          config.calibration, dense);
    const double shift = 100.0 * std::abs(fit_dense.alpha_ins - fit_l.alpha_ins);
    record("guarantee_grid_convergence", shift < 0.02,
           "fee change " + format_fixed(shift, 4) + " pp when doubling guarantee nodes (limit 0.02)");
    return report;
}

}  // namespace gmwb
