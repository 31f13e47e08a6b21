#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "txlife/aging.hpp"
#include "txlife/ingest.hpp"
#include "txlife/timeseries.hpp"

namespace txlife {

struct FinancialParams {
    double pv_cost_per_w = 2.13;
    double bess_cost_per_w = 0.40;             // applied to rated power
    std::optional<double> bess_cost_per_kwh;   // per-energy override
    double transformer_npv = 5000.0;
    double price_growth = 0.026;   // per year, compounds retail rates
    double discount_rate = 0.030;  // per year
    double life_cap_years = 40.0;  // transformer life cap when LOL ~ 0
    int analysis_years = 20;
};

// -inv0 + sum of profits[t-1]/(1+r)^t, t = 1..N.
double npv(double inv0, std::span<const double> profits, double r);

// Smallest whole year T such that cumulative NPV (with extra_per_year added
// undiscounted each year) is nonnegative at T and every later year in the
// ledger. nullopt when the investment never recovers within the ledger.
std::optional<int> payback_period(double inv0, std::span<const double> profits,
                                  double r, double extra_per_year = 0.0);

// Annuitized cost of owning an asset worth asset_npv over life_years.
// Throws for r <= 0: the annuity denominator vanishes and no limit is
// substituted.
double eac(double asset_npv, double r, double life_years);

// Years until remaining insulation life is consumed at the given annual
// loss-of-life rate, capped so the annuity stays finite as LOL -> 0.
double transformer_life_years(double lol_pct_per_year,
                              const TransformerParams& transformer,
                              double cap_years);

// Annual transformer cost relief: EAC over the shorter pre-investment life
// minus EAC over the longer post-investment life. Positive when the
// investment slows aging.
double eac_delta(double lol_before_pct_per_yr, double lol_after_pct_per_yr,
                 const FinancialParams& fin, const TransformerParams& transformer);

// Retail cost of the energy imported through the transformer over the
// series: positive hourly flow valued at the seasonal rate. Export is not
// credited. The monthly service fee is identical with and without the
// investment and is left out.
double annual_purchase_cost(const HourlySeries& flow_kw, const RetailTariff& tariff);

// Year-1 saving grown at the price growth rate: element t-1 holds year t.
std::vector<double> grown_profit_series(double year1_saving, double growth,
                                        int years);

struct InvestmentInputs {
    std::string scenario_id;
    double pv_kw = 0;
    double bess_rated_kw = 0;
    double bess_kwh = 0;
    double lol_baseline_pct = 0;   // annual LOL of the no-investment case
    double lol_scenario_pct = 0;   // annual LOL with the investment
    double year1_energy_saving = 0;  // retail-valued purchase delta vs baseline
};

struct ScenarioReport {
    std::string scenario_id;
    double lol_percent = 0;
    double inv0 = 0;
    double annual_saving = 0;  // year-1 energy saving + EAC relief
    double eac_delta = 0;
    std::optional<int> payback_with_lol;
    std::optional<int> payback_without_lol;
    std::vector<double> npv_series;  // cumulative, LOL relief included
};

ScenarioReport evaluate_investment(const InvestmentInputs& inputs,
                                   const FinancialParams& fin,
                                   const TransformerParams& transformer);

}  // namespace txlife
