#include "txlife/econ.hpp"

#include <cmath>
#include <stdexcept>

namespace txlife {

double npv(double inv0, std::span<const double> profits, double r) {
    if (r <= -1.0) throw std::invalid_argument("discount rate must exceed -1");
    double value = -inv0;
    double factor = 1.0;
    for (double p : profits) {
        factor /= 1.0 + r;
        value += p * factor;
    }
    return value;
}

std::optional<int> payback_period(double inv0, std::span<const double> profits,
                                  double r, double extra_per_year) {
    if (r <= -1.0) throw std::invalid_argument("discount rate must exceed -1");
    // cumulative[T] for T = 0..N; the yearly extra enters undiscounted.
    std::vector<double> cumulative(profits.size() + 1);
    cumulative[0] = -inv0;
    double factor = 1.0;
    for (std::size_t t = 1; t <= profits.size(); ++t) {
        factor /= 1.0 + r;
        cumulative[t] = cumulative[t - 1] + profits[t - 1] * factor + extra_per_year;
    }

    int last_negative = -1;
    for (int t = 0; t < int(cumulative.size()); ++t)
        if (cumulative[t] < 0) last_negative = t;

    if (last_negative < 0) return 0;
    if (last_negative >= int(profits.size())) return std::nullopt;
    return last_negative + 1;
}

double eac(double asset_npv, double r, double life_years) {
    if (r <= 0)
        throw std::invalid_argument("EAC requires a positive discount rate");
    if (life_years <= 0)
        throw std::invalid_argument("EAC requires a positive life");
    return asset_npv * r / (1.0 - std::pow(1.0 + r, -life_years));
}

double transformer_life_years(double lol_pct_per_year,
                              const TransformerParams& transformer,
                              double cap_years) {
    if (lol_pct_per_year < 0)
        throw std::invalid_argument("loss of life cannot be negative");
    if (lol_pct_per_year == 0) return cap_years;
    const double consumed_hours_per_year =
        lol_pct_per_year / 100.0 * transformer.normal_life_hours;
    return std::min(cap_years,
                    transformer.remaining_life_hours / consumed_hours_per_year);
}

double eac_delta(double lol_before_pct_per_yr, double lol_after_pct_per_yr,
                 const FinancialParams& fin, const TransformerParams& transformer) {
    const double life_before = transformer_life_years(
        lol_before_pct_per_yr, transformer, fin.life_cap_years);
    const double life_after = transformer_life_years(
        lol_after_pct_per_yr, transformer, fin.life_cap_years);
    return eac(fin.transformer_npv, fin.discount_rate, life_before) -
           eac(fin.transformer_npv, fin.discount_rate, life_after);
}

double annual_purchase_cost(const HourlySeries& flow_kw,
                            const RetailTariff& tariff) {
    if (flow_kw.unit() != Unit::kilowatt)
        throw std::invalid_argument("flow series must be in kW");
    double cost = 0;
    for (std::size_t day = 0; day < flow_kw.days(); ++day) {
        const double rate = retail_rate_at(tariff, flow_kw.date_of_day(day));
        for (int h = 0; h < 24; ++h) {
            const double kw = flow_kw[day * 24 + h];
            if (kw > 0) cost += kw * rate;  // 1 h bins: kW == kWh
        }
    }
    return cost;
}

std::vector<double> grown_profit_series(double year1_saving, double growth,
                                        int years) {
    if (years < 0) throw std::invalid_argument("years must be >= 0");
    std::vector<double> out(static_cast<std::size_t>(years));
    double v = year1_saving;
    for (int t = 0; t < years; ++t) {
        out[std::size_t(t)] = v;
        v *= 1.0 + growth;
    }
    return out;
}

ScenarioReport evaluate_investment(const InvestmentInputs& in,
                                   const FinancialParams& fin,
                                   const TransformerParams& transformer) {
    ScenarioReport report;
    report.scenario_id = in.scenario_id;
    report.lol_percent = in.lol_scenario_pct;

    const double bess_cost =
        fin.bess_cost_per_kwh ? *fin.bess_cost_per_kwh * in.bess_kwh
                              : fin.bess_cost_per_w * in.bess_rated_kw * 1000.0;
    report.inv0 = fin.pv_cost_per_w * in.pv_kw * 1000.0 + bess_cost;

    report.eac_delta =
        eac_delta(in.lol_baseline_pct, in.lol_scenario_pct, fin, transformer);
    report.annual_saving = in.year1_energy_saving + report.eac_delta;

    const auto profits = grown_profit_series(in.year1_energy_saving,
                                             fin.price_growth, fin.analysis_years);

    report.payback_with_lol =
        payback_period(report.inv0, profits, fin.discount_rate, report.eac_delta);
    report.payback_without_lol =
        payback_period(report.inv0, profits, fin.discount_rate, 0.0);

    report.npv_series.resize(profits.size());
    double cumulative = -report.inv0;
    double factor = 1.0;
    for (std::size_t t = 0; t < profits.size(); ++t) {
        factor /= 1.0 + fin.discount_rate;
        cumulative += profits[t] * factor + report.eac_delta;
        report.npv_series[t] = cumulative;
    }
    return report;
}

}  // namespace txlife
