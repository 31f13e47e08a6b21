// Command line front end: synthesize or ingest the input datasets, generate
// PEV demand, schedule the battery, run the aging model, evaluate an
// investment, or run the whole scenario table.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "txlife/aging.hpp"
#include "txlife/bess.hpp"
#include "txlife/econ.hpp"
#include "txlife/ingest.hpp"
#include "txlife/pev.hpp"
#include "txlife/scenario.hpp"
#include "txlife/timeseries.hpp"

namespace {

using namespace txlife;
using ordered_json = nlohmann::ordered_json;

struct CsvInputs {
    std::string load, temperature, pv, prices;
};

// Flat key=value config file; '#' starts a comment. Unknown keys are an
// error so typos do not silently fall back to defaults.
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void apply_config(const std::map<std::string, std::string>& kv,
                  SimulationConfig& cfg, SyntheticParams& synth) {
    auto as_double = [](const std::string& v) { return std::stod(v); };
    auto as_int = [](const std::string& v) { return std::stoi(v); };
    auto as_u64 = [](const std::string& v) { return std::stoull(v); };

    for (const auto& [key, value] : kv) {
        if (key == "seed") cfg.seed = as_u64(value);
        else if (key == "days") cfg.days = as_int(value);
        else if (key == "pev.fleet_size") cfg.pev.fleet_size = as_int(value);
        else if (key == "pev.slots") cfg.pev.slots = as_int(value);
        else if (key == "pev.battery_kwh") cfg.pev.battery_kwh = as_double(value);
        else if (key == "pev.consumption_kwh_per_mile")
            cfg.pev.consumption_kwh_per_mile = as_double(value);
        else if (key == "pev.soc_required") cfg.pev.soc_required = as_double(value);
        else if (key == "pev.charger_kw") cfg.pev.charger_kw = as_double(value);
        else if (key == "pev.charger_efficiency")
            cfg.pev.charger_efficiency = as_double(value);
        else if (key == "pev.arrival_mean_hour")
            cfg.pev.arrival_mean_hour = as_double(value);
        else if (key == "pev.arrival_std_hours")
            cfg.pev.arrival_std_hours = as_double(value);
        else if (key == "pev.distance_log_mean")
            cfg.pev.distance_log_mean = as_double(value);
        else if (key == "pev.distance_log_std")
            cfg.pev.distance_log_std = as_double(value);
        else if (key == "bess.efficiency") cfg.bess_efficiency = as_double(value);
        else if (key == "bess.soc_min") cfg.bess_soc_min = as_double(value);
        else if (key == "bess.soc_initial") cfg.bess_soc_initial = as_double(value);
        else if (key == "bess.hours_rating") cfg.bess_hours_rating = as_double(value);
        else if (key == "ga.population") cfg.ga.population = as_int(value);
        else if (key == "ga.generations") cfg.ga.generations = as_int(value);
        else if (key == "ga.tournament") cfg.ga.tournament = as_int(value);
        else if (key == "ga.crossover_p") cfg.ga.crossover_p = as_double(value);
        else if (key == "ga.mutation_p") cfg.ga.mutation_p = as_double(value);
        else if (key == "ga.elites") cfg.ga.elites = as_int(value);
        else if (key == "transformer.rated_kva")
            cfg.transformer.rated_kva = as_double(value);
        else if (key == "transformer.top_oil_rise_rated_c")
            cfg.transformer.top_oil_rise_rated_c = as_double(value);
        else if (key == "transformer.hot_spot_rise_rated_c")
            cfg.transformer.hot_spot_rise_rated_c = as_double(value);
        else if (key == "transformer.loss_ratio")
            cfg.transformer.loss_ratio = as_double(value);
        else if (key == "transformer.exponent_m")
            cfg.transformer.exponent_m = as_double(value);
        else if (key == "transformer.exponent_n")
            cfg.transformer.exponent_n = as_double(value);
        else if (key == "transformer.tau_top_oil_hours")
            cfg.transformer.tau_top_oil_hours = as_double(value);
        else if (key == "transformer.tau_winding_hours")
            cfg.transformer.tau_winding_hours = as_double(value);
        else if (key == "transformer.normal_life_hours")
            cfg.transformer.normal_life_hours = as_double(value);
        else if (key == "transformer.remaining_life_hours")
            cfg.transformer.remaining_life_hours = as_double(value);
        else if (key == "financial.pv_cost_per_w")
            cfg.financial.pv_cost_per_w = as_double(value);
        else if (key == "financial.bess_cost_per_w")
            cfg.financial.bess_cost_per_w = as_double(value);
        else if (key == "financial.bess_cost_per_kwh")
            cfg.financial.bess_cost_per_kwh = as_double(value);
        else if (key == "financial.transformer_npv")
            cfg.financial.transformer_npv = as_double(value);
        else if (key == "financial.price_growth")
            cfg.financial.price_growth = as_double(value);
        else if (key == "financial.discount_rate")
            cfg.financial.discount_rate = as_double(value);
        else if (key == "financial.life_cap_years")
            cfg.financial.life_cap_years = as_double(value);
        else if (key == "financial.analysis_years")
            cfg.financial.analysis_years = as_int(value);
        else if (key == "tariff.summer_rate") cfg.tariff.summer_rate = as_double(value);
        else if (key == "tariff.winter_rate") cfg.tariff.winter_rate = as_double(value);
        else if (key == "tariff.monthly_fee") cfg.tariff.monthly_fee = as_double(value);
        else if (key == "synth.evening_peak_kw") synth.evening_peak_kw = as_double(value);
        else if (key == "synth.peak_trough_ratio")
            synth.peak_trough_ratio = as_double(value);
        else if (key == "synth.summer_load_boost")
            synth.summer_load_boost = as_double(value);
        else if (key == "synth.load_noise_frac")
            synth.load_noise_frac = as_double(value);
        else if (key == "synth.pv_system_kw") synth.pv_system_kw = as_double(value);
        else if (key == "synth.temp_mean_c") synth.temp_mean_c = as_double(value);
        else if (key == "synth.temp_daily_amplitude_c")
            synth.temp_daily_amplitude_c = as_double(value);
        else if (key == "synth.temp_seasonal_amplitude_c")
            synth.temp_seasonal_amplitude_c = as_double(value);
        else if (key == "synth.start") synth.start = parse_date(value);
        else
            throw std::runtime_error("unknown config key '" + key + "'");
    }
}

DatasetBundle load_bundle(const CsvInputs& files, const RetailTariff& tariff) {
    DatasetBundle bundle{load_csv(files.load, Unit::kilowatt),
                         load_csv(files.temperature, Unit::celsius),
                         load_csv(files.pv, Unit::kilowatt),
                         tariff,
                         std::nullopt};
    if (!files.prices.empty())
        bundle.wholesale_price = load_csv(files.prices, Unit::dollars_per_kwh);
    validate_bundle(bundle);
    return bundle;
}

int cmd_synth(std::uint64_t seed, int days, const std::string& out_dir,
              const SyntheticParams& params) {
    const DatasetBundle bundle = synthesize_bundle(seed, days, params);
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    write_csv(bundle.load_kw, dir / "load.csv");
    write_csv(bundle.temperature_c, dir / "temperature.csv");
    write_csv(bundle.pv_kw, dir / "pv.csv");
    std::cout << "wrote " << (dir / "load.csv").string() << ", temperature.csv, pv.csv ("
              << days << " days, seed " << seed << ")\n";
    return 0;
}

int cmd_ingest(const CsvInputs& files, const RetailTariff& tariff) {
    const DatasetBundle bundle = load_bundle(files, tariff);
    std::cout << "ok: " << bundle.load_kw.days() << " days starting "
              << format_date(bundle.load_kw.start_date()) << "\n";
    return 0;
}

int cmd_pev_gen(const SimulationConfig& cfg, int days, const std::string& out,
                const Date& start) {
    const auto result = simulate_fleet(cfg.pev, cfg.seed, days, start);
    write_csv(result.pev_kw, out);
    std::cout << "wrote " << out << " (" << days << " days, fleet "
              << cfg.pev.fleet_size << ", slots " << cfg.pev.slots << ")\n";
    return 0;
}

int cmd_schedule(const SimulationConfig& cfg, const CsvInputs& files,
                 const std::string& pev_csv, double capacity_kwh,
                 std::optional<double> rated_kw, const std::string& out_csv,
                 const std::string& report_path) {
    const DatasetBundle bundle = load_bundle(files, cfg.tariff);
    HourlySeries net = bundle.load_kw - bundle.pv_kw;
    if (!pev_csv.empty()) net = net + load_csv(pev_csv, Unit::kilowatt);

    BessParams bess = bess_params_for(capacity_kwh, cfg);
    if (rated_kw) bess.rated_kw = *rated_kw;

    const HorizonPlan plan = plan_horizon(net, bess, cfg.ga, cfg.seed);
    write_csv(plan.battery_kw, out_csv);

    ordered_json days = ordered_json::array();
    for (const auto& dp : plan.days) {
        ordered_json j;
        j["day"] = dp.day;
        j["cost"] = dp.cost;
        j["zero_cost"] = dp.zero_cost;
        j["charge_window"] = {dp.schedule.charge_window.begin,
                              dp.schedule.charge_window.end};
        j["discharge_window"] = {dp.schedule.discharge_window.begin,
                                 dp.schedule.discharge_window.end};
        j["soc_start"] = dp.soc_start;
        j["soc_end"] = dp.soc_end;
        days.push_back(std::move(j));
    }
    ordered_json report;
    report["capacity_kwh"] = bess.capacity_kwh;
    report["rated_kw"] = bess.rated_kw;
    report["days"] = std::move(days);
    std::ofstream rep(report_path, std::ios::binary);
    rep << report.dump(2) << "\n";

    std::cout << "wrote " << out_csv << " and " << report_path << "\n";
    return 0;
}

int cmd_age(const SimulationConfig& cfg, const std::string& load_csv_path,
            const std::string& temperature_csv, const std::string& theta_csv,
            const std::string& faa_csv, const std::string& summary_path) {
    const HourlySeries load = load_csv(load_csv_path, Unit::kilowatt);
    const HourlySeries ambient = load_csv(temperature_csv, Unit::celsius);
    const AgingResult aging = simulate_aging(load, ambient, cfg.transformer);

    if (!theta_csv.empty())
        write_csv(HourlySeries(load.start_date(), aging.hot_spot_c, Unit::celsius),
                  theta_csv);
    if (!faa_csv.empty())
        write_csv(HourlySeries(load.start_date(), aging.faa, Unit::dimensionless),
                  faa_csv);

    ordered_json summary;
    summary["f_eqa"] = aging.f_eqa;
    summary["loss_of_life_percent"] = aging.loss_of_life_percent;
    summary["max_theta_h"] = aging.max_hot_spot_c;
    if (summary_path.empty()) {
        std::cout << summary.dump(2) << "\n";
    } else {
        std::ofstream out(summary_path, std::ios::binary);
        out << summary.dump(2) << "\n";
        std::cout << "wrote " << summary_path << "\n";
    }
    return 0;
}

int cmd_econ(const SimulationConfig& cfg, const InvestmentInputs& inputs,
             const std::string& out_path) {
    const ScenarioReport report =
        evaluate_investment(inputs, cfg.financial, cfg.transformer);
    ordered_json j;
    j["scenario_id"] = report.scenario_id;
    j["lol_percent"] = report.lol_percent;
    j["inv0"] = report.inv0;
    j["annual_saving"] = report.annual_saving;
    j["eac_delta"] = report.eac_delta;
    j["payback_with_lol"] =
        report.payback_with_lol ? ordered_json(*report.payback_with_lol)
                                : ordered_json(nullptr);
    j["payback_without_lol"] =
        report.payback_without_lol ? ordered_json(*report.payback_without_lol)
                                   : ordered_json(nullptr);
    j["npv_series"] = report.npv_series;
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << j.dump(2) << "\n";
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

int cmd_run_all(SimulationConfig cfg, bool synthetic, const CsvInputs& files,
                const SyntheticParams& synth, const std::string& out_dir) {
    DatasetBundle bundle = synthetic ? synthesize_bundle(cfg.seed, cfg.days, synth)
                                     : load_bundle(files, cfg.tariff);
    bundle.tariff = cfg.tariff;
    cfg.days = int(bundle.load_kw.days());
    const RunAllResult result = run_all(bundle, cfg);
    write_outputs(result, out_dir);

    std::cout << "scenario  lol_percent  annual_saving  payback(LOL)  payback(no LOL)\n";
    for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
        const auto& o = result.outcomes[i];
        const auto& r = result.reports[i];
        const bool invest = o.setup.pv_kw > 0 || o.setup.bess_kwh > 0;
        std::printf("%-9s %11.4f", scenario_name(o.id),
                    o.aging.loss_of_life_percent);
        if (invest) {
            std::printf("  %13.2f  %12s  %15s\n", r.annual_saving,
                        r.payback_with_lol ? std::to_string(*r.payback_with_lol).c_str()
                                           : "never",
                        r.payback_without_lol
                            ? std::to_string(*r.payback_without_lol).c_str()
                            : "never");
        } else {
            std::printf("  %13s  %12s  %15s\n", "-", "-", "-");
        }
    }
    std::cout << "outputs in " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distribution transformer aging and storage economics simulator"};
    app.require_subcommand(1);

    SimulationConfig cfg;
    SyntheticParams synth;
    std::string config_path;
    app.add_option("--config", config_path, "flat key=value config file")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", cfg.seed, "master RNG seed");

    CsvInputs files;
    std::string out_dir = "out";
    std::string pev_out, pev_csv, start_date = "2018-01-01";
    std::string sched_out = "schedule.csv", sched_report = "schedule_report.json";
    std::string age_theta, age_faa, age_summary, econ_out;
    int days = 365;
    double capacity_kwh = 40.0;
    std::optional<double> rated_kw;

    auto* synth_cmd = app.add_subcommand("synth", "write a synthetic dataset bundle");
    synth_cmd->fallthrough();
    synth_cmd->add_option("--days", days);
    synth_cmd->add_option("--out-dir", out_dir);

    auto* ingest_cmd = app.add_subcommand("ingest", "validate a CSV bundle");
    ingest_cmd->fallthrough();
    ingest_cmd->add_option("--load", files.load)->required();
    ingest_cmd->add_option("--temperature", files.temperature)->required();
    ingest_cmd->add_option("--pv", files.pv)->required();
    ingest_cmd->add_option("--prices", files.prices,
                           "optional wholesale hourly price CSV");

    auto* pev_cmd = app.add_subcommand("pev-gen", "generate PEV charging demand");
    pev_cmd->fallthrough();
    pev_cmd->add_option("--days", days);
    pev_cmd->add_option("--fleet", cfg.pev.fleet_size);
    pev_cmd->add_option("--slots", cfg.pev.slots);
    pev_cmd->add_option("--start", start_date);
    pev_cmd->add_option("--out", pev_out)->required();

    auto* sched_cmd = app.add_subcommand("schedule", "optimize the daily battery schedule");
    sched_cmd->fallthrough();
    sched_cmd->add_option("--load", files.load)->required();
    sched_cmd->add_option("--temperature", files.temperature)->required();
    sched_cmd->add_option("--pv", files.pv)->required();
    sched_cmd->add_option("--pev", pev_csv);
    sched_cmd->add_option("--capacity-kwh", capacity_kwh);
    sched_cmd->add_option("--rated-kw", rated_kw);
    sched_cmd->add_option("--out", sched_out);
    sched_cmd->add_option("--report", sched_report);

    auto* age_cmd = app.add_subcommand("age", "hot spot and loss-of-life simulation");
    age_cmd->fallthrough();
    age_cmd->add_option("--load", files.load)->required();
    age_cmd->add_option("--temperature", files.temperature)->required();
    age_cmd->add_option("--out-theta", age_theta, "hot spot series CSV");
    age_cmd->add_option("--out-faa", age_faa, "aging factor series CSV");
    age_cmd->add_option("--summary", age_summary);

    InvestmentInputs econ_inputs;
    auto* econ_cmd = app.add_subcommand("econ", "investment evaluation");
    econ_cmd->fallthrough();
    econ_cmd->add_option("--id", econ_inputs.scenario_id)->default_val("custom");
    econ_cmd->add_option("--pv-kw", econ_inputs.pv_kw);
    econ_cmd->add_option("--bess-kwh", econ_inputs.bess_kwh);
    econ_cmd->add_option("--bess-rated-kw", econ_inputs.bess_rated_kw);
    econ_cmd->add_option("--lol-before", econ_inputs.lol_baseline_pct)->required();
    econ_cmd->add_option("--lol-after", econ_inputs.lol_scenario_pct)->required();
    econ_cmd->add_option("--annual-saving", econ_inputs.year1_energy_saving);
    econ_cmd->add_option("--out", econ_out);

    auto* run_cmd = app.add_subcommand("run-all", "run the full scenario table");
    run_cmd->fallthrough();
    bool synthetic = false;
    run_cmd->add_flag("--synthetic", synthetic, "synthesize inputs instead of reading CSVs");
    run_cmd->add_option("--days", cfg.days);
    run_cmd->add_option("--load", files.load);
    run_cmd->add_option("--temperature", files.temperature);
    run_cmd->add_option("--pv", files.pv);
    run_cmd->add_option("--prices", files.prices,
                        "optional wholesale hourly price CSV");
    run_cmd->add_option("--out-dir", out_dir);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty())
            apply_config(read_config_file(config_path), cfg, synth);

        if (synth_cmd->parsed()) return cmd_synth(cfg.seed, days, out_dir, synth);
        if (ingest_cmd->parsed()) return cmd_ingest(files, cfg.tariff);
        if (pev_cmd->parsed())
            return cmd_pev_gen(cfg, days, pev_out, parse_date(start_date));
        if (sched_cmd->parsed())
            return cmd_schedule(cfg, files, pev_csv, capacity_kwh, rated_kw,
                                sched_out, sched_report);
        if (age_cmd->parsed())
            return cmd_age(cfg, files.load, files.temperature, age_theta, age_faa,
                           age_summary);
        if (econ_cmd->parsed()) return cmd_econ(cfg, econ_inputs, econ_out);
        if (run_cmd->parsed()) {
            if (!synthetic &&
                (files.load.empty() || files.temperature.empty() || files.pv.empty()))
                throw std::runtime_error(
                    "run-all needs --synthetic or --load/--temperature/--pv");
            return cmd_run_all(cfg, synthetic, files, synth, out_dir);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
