#pragma once

#include <span>
#include <vector>

#include "txlife/timeseries.hpp"

namespace txlife {

// Thermal and life constants of the distribution transformer. Defaults are
// typical ONAN values; the rated rises put the hot spot at the 110 degC
// reference when carrying rated load at 30 degC ambient.
struct TransformerParams {
    double rated_kva = 63.0;
    double top_oil_rise_rated_c = 55.0;
    double hot_spot_rise_rated_c = 25.0;
    double loss_ratio = 5.0;        // rated-load to no-load loss
    double exponent_m = 0.8;
    double exponent_n = 0.8;
    double tau_top_oil_hours = 3.5;
    double tau_winding_hours = 5.0 / 60.0;
    double normal_life_hours = 180000.0;
    double remaining_life_hours = 112000.0;
};

struct ThermalState {
    double top_oil_rise_c = 0;
    double hot_spot_rise_c = 0;
    double hot_spot_c = 0;  // ambient + both rises
};

struct Rises {
    double top_oil_c = 0;
    double hot_spot_c = 0;
};

// Steady-state rises at per-unit load K: hot-spot rise scales as K^(2m),
// top-oil rise as ((K^2 R + 1)/(R + 1))^n.
Rises ultimate_rises(double load_pu, const TransformerParams& params);

ThermalState steady_state(double ambient_c, double load_pu,
                          const TransformerParams& params);

// First-order relaxation of both rises toward their ultimate values over
// dt hours, each with its own time constant.
ThermalState step_thermal(const ThermalState& state, double ambient_c,
                          double load_pu, double dt_hours,
                          const TransformerParams& params);

// Insulation aging acceleration relative to the 110 degC reference
// (65 degC-rise insulation): exp(15000/383 - 15000/(theta + 273)).
double aging_factor(double hot_spot_c);

// Time-weighted mean of the per-interval aging factors.
double equivalent_aging(std::span<const double> faa,
                        std::span<const double> dt_hours);

struct AgingResult {
    std::vector<double> faa;
    std::vector<double> hot_spot_c;
    double f_eqa = 0;
    double loss_of_life_percent = 0;
    double max_hot_spot_c = 0;
    ThermalState final_state;
};

double loss_of_life_percent(double f_eqa, double period_hours,
                            const TransformerParams& params);

// Hourly thermal simulation of the whole series. The initial state is the
// steady state of the first sample, so an annual run carries no artificial
// cold-start transient. The overload with an explicit initial state exists
// for chaining split series.
AgingResult simulate_aging(const HourlySeries& load_kw,
                           const HourlySeries& ambient_c,
                           const TransformerParams& params);
AgingResult simulate_aging(const HourlySeries& load_kw,
                           const HourlySeries& ambient_c,
                           const TransformerParams& params,
                           const ThermalState& initial);

}  // namespace txlife
