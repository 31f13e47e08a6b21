#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "txlife/aging.hpp"
#include "txlife/bess.hpp"
#include "txlife/econ.hpp"
#include "txlife/ingest.hpp"
#include "txlife/pev.hpp"
#include "txlife/timeseries.hpp"

namespace txlife {

// The seven studied cases: a = bare building, b = PEVs arrive, c = PEVs
// plus PV, d = PEVs plus battery (two sizes), e = PEVs plus PV plus
// battery (two sizes).
enum class ScenarioId { a, b, c, d_a, d_b, e_a, e_b };

constexpr std::array<ScenarioId, 7> kAllScenarios = {
    ScenarioId::a,   ScenarioId::b,   ScenarioId::c, ScenarioId::d_a,
    ScenarioId::d_b, ScenarioId::e_a, ScenarioId::e_b};

const char* scenario_name(ScenarioId id);

struct ScenarioSetup {
    double pv_kw = 0;
    bool pev_enabled = false;
    double bess_kwh = 0;
};

ScenarioSetup setup_for(ScenarioId id);

struct SimulationConfig {
    std::uint64_t seed = 42;
    int days = 365;
    PevParams pev;
    RetailTariff tariff;
    double pv_system_kw = 10.0;
    double bess_efficiency = 0.90;
    double bess_soc_min = 0.20;
    double bess_soc_initial = 0.50;
    double bess_hours_rating = 4.0;  // rated_kw = capacity_kwh / this
    GaConfig ga;
    TransformerParams transformer;
    FinancialParams financial;
};

BessParams bess_params_for(double bess_kwh, const SimulationConfig& config);

// PEV demand shared by every scenario of one run (one fleet realization,
// compared across mitigation options).
HourlySeries shared_pev_series(const DatasetBundle& bundle,
                               const SimulationConfig& config);

struct ScenarioOutcome {
    ScenarioId id{};
    ScenarioSetup setup;
    HourlySeries flow_kw;  // load + pev - pv + battery at the transformer
    AgingResult aging;
    std::optional<HorizonPlan> plan;
    double purchase_cost_year = 0;  // annualized retail cost of imports
};

// Composes demand, optional PV and battery, thermal aging and the retail
// cost of imports for one scenario. pev_kw may be null when the scenario
// disables PEVs or the caller has none.
ScenarioOutcome run_scenario(ScenarioId id, const DatasetBundle& bundle,
                             const HourlySeries* pev_kw,
                             const SimulationConfig& config);

struct RunAllResult {
    std::vector<ScenarioOutcome> outcomes;  // fixed order a..e.b
    std::vector<ScenarioReport> reports;    // same order
};

// All seven scenarios against one bundle and one PEV realization;
// economics are evaluated against the scenario-b baseline.
RunAllResult run_all(const DatasetBundle& bundle, const SimulationConfig& config);

// table2.csv (loss of life), table3.csv (annual savings), payback.csv and
// one JSON report per scenario, all byte-reproducible for a fixed seed.
void write_outputs(const RunAllResult& result,
                   const std::filesystem::path& out_dir);

}  // namespace txlife
