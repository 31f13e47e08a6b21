#include "txlife/scenario.hpp"

#include <fstream>
#include <future>
#include <stdexcept>

#include "json.hpp"

namespace txlife {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kPevStream = 1;
constexpr std::uint64_t kGaStream = 2;

}  // namespace

const char* scenario_name(ScenarioId id) {
    switch (id) {
        case ScenarioId::a: return "a";
        case ScenarioId::b: return "b";
        case ScenarioId::c: return "c";
        case ScenarioId::d_a: return "d.a";
        case ScenarioId::d_b: return "d.b";
        case ScenarioId::e_a: return "e.a";
        case ScenarioId::e_b: return "e.b";
    }
    return "?";
}

ScenarioSetup setup_for(ScenarioId id) {
    switch (id) {
        case ScenarioId::a: return {0.0, false, 0.0};
        case ScenarioId::b: return {0.0, true, 0.0};
        case ScenarioId::c: return {10.0, true, 0.0};
        case ScenarioId::d_a: return {0.0, true, 20.0};
        case ScenarioId::d_b: return {0.0, true, 40.0};
        case ScenarioId::e_a: return {10.0, true, 20.0};
        case ScenarioId::e_b: return {10.0, true, 40.0};
    }
    throw std::invalid_argument("unknown scenario");
}

BessParams bess_params_for(double bess_kwh, const SimulationConfig& config) {
    BessParams p;
    p.capacity_kwh = bess_kwh;
    p.rated_kw = bess_kwh / config.bess_hours_rating;
    p.efficiency = config.bess_efficiency;
    p.soc_min = config.bess_soc_min;
    p.soc_initial = config.bess_soc_initial;
    return p;
}

HourlySeries shared_pev_series(const DatasetBundle& bundle,
                               const SimulationConfig& config) {
    return simulate_fleet(config.pev, mix_seed(config.seed, kPevStream),
                          int(bundle.load_kw.days()),
                          bundle.load_kw.start_date())
        .pev_kw;
}

ScenarioOutcome run_scenario(ScenarioId id, const DatasetBundle& bundle,
                             const HourlySeries* pev_kw,
                             const SimulationConfig& config) {
    if (int(bundle.load_kw.days()) < 11)
        throw std::invalid_argument("bundle must cover at least 11 days");

    const ScenarioSetup setup = setup_for(id);

    HourlySeries demand = bundle.load_kw;
    if (setup.pev_enabled) {
        if (pev_kw == nullptr)
            throw std::invalid_argument("scenario needs a PEV series");
        demand = demand + *pev_kw;
    }

    // The studied system has one PV size; scenarios either include it or
    // not. A differently sized array scales the bundled profile.
    HourlySeries net = demand;
    if (setup.pv_kw > 0) {
        const double pv_scale = setup.pv_kw / config.pv_system_kw;
        net = net - (pv_scale == 1.0 ? bundle.pv_kw : scale(bundle.pv_kw, pv_scale));
    }

    std::optional<HorizonPlan> plan;
    HourlySeries flow = net;
    if (setup.bess_kwh > 0) {
        const BessParams bess = bess_params_for(setup.bess_kwh, config);
        plan = plan_horizon(net, bess, config.ga, mix_seed(config.seed, kGaStream));
        flow = net + plan->battery_kw;
    }

    AgingResult aging =
        simulate_aging(flow, bundle.temperature_c, config.transformer);
    const double hours = double(flow.size());
    const double purchase_cost_year =
        annual_purchase_cost(flow, bundle.tariff) * (8760.0 / hours);

    return ScenarioOutcome{id, setup, std::move(flow), std::move(aging),
                           std::move(plan), purchase_cost_year};
}

RunAllResult run_all(const DatasetBundle& bundle, const SimulationConfig& config) {
    validate_bundle(bundle);
    const HourlySeries pev = shared_pev_series(bundle, config);

    std::vector<std::future<ScenarioOutcome>> futures;
    futures.reserve(kAllScenarios.size());
    for (ScenarioId id : kAllScenarios)
        futures.push_back(std::async(std::launch::async, [&, id] {
            return run_scenario(id, bundle, &pev, config);
        }));

    RunAllResult result;
    for (auto& f : futures) result.outcomes.push_back(f.get());

    const ScenarioOutcome& baseline =
        result.outcomes[std::size_t(ScenarioId::b)];

    for (const ScenarioOutcome& outcome : result.outcomes) {
        const bool investment =
            outcome.setup.pv_kw > 0 || outcome.setup.bess_kwh > 0;
        InvestmentInputs inputs;
        inputs.scenario_id = scenario_name(outcome.id);
        inputs.lol_scenario_pct = outcome.aging.loss_of_life_percent;
        if (investment) {
            inputs.pv_kw = outcome.setup.pv_kw;
            inputs.bess_kwh = outcome.setup.bess_kwh;
            inputs.bess_rated_kw =
                outcome.setup.bess_kwh / config.bess_hours_rating;
            inputs.lol_baseline_pct = baseline.aging.loss_of_life_percent;
            inputs.year1_energy_saving =
                baseline.purchase_cost_year - outcome.purchase_cost_year;
        } else {
            // Not an investment: report aging only, economics stay zero.
            inputs.lol_baseline_pct = outcome.aging.loss_of_life_percent;
        }
        result.reports.push_back(
            evaluate_investment(inputs, config.financial, config.transformer));
    }
    return result;
}

namespace {

using ordered_json = nlohmann::ordered_json;

std::string payback_text(const std::optional<int>& payback) {
    return payback ? std::to_string(*payback) : "never";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string json_number(double v) {
    ordered_json j = v;
    return j.dump();
}

}  // namespace

void write_outputs(const RunAllResult& result,
                   const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    std::string table2 = "scenario,loss_of_life_percent\n";
    for (const auto& outcome : result.outcomes)
        table2 += std::string(scenario_name(outcome.id)) + "," +
                  json_number(outcome.aging.loss_of_life_percent) + "\n";
    write_text(out_dir / "table2.csv", table2);

    std::string table3 = "scenario,annual_saving_usd\n";
    std::string payback =
        "scenario,payback_years_with_lol,payback_years_without_lol\n";
    for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
        const auto& outcome = result.outcomes[i];
        const auto& report = result.reports[i];
        if (outcome.setup.pv_kw <= 0 && outcome.setup.bess_kwh <= 0) continue;
        table3 += std::string(scenario_name(outcome.id)) + "," +
                  json_number(report.annual_saving) + "\n";
        payback += std::string(scenario_name(outcome.id)) + "," +
                   payback_text(report.payback_with_lol) + "," +
                   payback_text(report.payback_without_lol) + "\n";
    }
    write_text(out_dir / "table3.csv", table3);
    write_text(out_dir / "payback.csv", payback);

    for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
        const auto& outcome = result.outcomes[i];
        const auto& report = result.reports[i];
        ordered_json j;
        j["scenario_id"] = report.scenario_id;
        j["lol_percent"] = report.lol_percent;
        j["f_eqa"] = outcome.aging.f_eqa;
        j["max_theta_h_c"] = outcome.aging.max_hot_spot_c;
        j["inv0"] = report.inv0;
        j["annual_saving"] = report.annual_saving;
        j["eac_delta"] = report.eac_delta;
        if (report.payback_with_lol)
            j["payback_with_lol"] = *report.payback_with_lol;
        else
            j["payback_with_lol"] = nullptr;
        if (report.payback_without_lol)
            j["payback_without_lol"] = *report.payback_without_lol;
        else
            j["payback_without_lol"] = nullptr;
        j["npv_series"] = report.npv_series;
        const std::string name =
            std::string("scenario_") + scenario_name(outcome.id) + ".json";
        write_text(out_dir / name, j.dump(2) + "\n");
    }
}

}  // namespace txlife
