#include "txlife/aging.hpp"

#include <cmath>
#include <stdexcept>

namespace txlife {

namespace {

constexpr double kReferenceHotSpotC = 110.0;
constexpr double kKelvinOffset = 273.0;
constexpr double kAgingConstant = 15000.0;

}  // namespace

Rises ultimate_rises(double load_pu, const TransformerParams& p) {
    if (load_pu < 0) throw std::invalid_argument("load_pu must be >= 0");
    Rises r;
    r.hot_spot_c = p.hot_spot_rise_rated_c * std::pow(load_pu, 2.0 * p.exponent_m);
    r.top_oil_c = p.top_oil_rise_rated_c *
                  std::pow((load_pu * load_pu * p.loss_ratio + 1.0) /
                               (p.loss_ratio + 1.0),
                           p.exponent_n);
    return r;
}

ThermalState steady_state(double ambient_c, double load_pu,
                          const TransformerParams& p) {
    const Rises ult = ultimate_rises(load_pu, p);
    return {ult.top_oil_c, ult.hot_spot_c, ambient_c + ult.top_oil_c + ult.hot_spot_c};
}

ThermalState step_thermal(const ThermalState& state, double ambient_c,
                          double load_pu, double dt_hours,
                          const TransformerParams& p) {
    if (dt_hours <= 0) throw std::invalid_argument("dt_hours must be > 0");
    const Rises ult = ultimate_rises(load_pu, p);
    ThermalState next;
    next.top_oil_rise_c =
        (ult.top_oil_c - state.top_oil_rise_c) *
            (1.0 - std::exp(-dt_hours / p.tau_top_oil_hours)) +
        state.top_oil_rise_c;
    next.hot_spot_rise_c =
        (ult.hot_spot_c - state.hot_spot_rise_c) *
            (1.0 - std::exp(-dt_hours / p.tau_winding_hours)) +
        state.hot_spot_rise_c;
    next.hot_spot_c = ambient_c + next.top_oil_rise_c + next.hot_spot_rise_c;
    return next;
}

double aging_factor(double hot_spot_c) {
    return std::exp(kAgingConstant / (kReferenceHotSpotC + kKelvinOffset) -
                    kAgingConstant / (hot_spot_c + kKelvinOffset));
}

double equivalent_aging(std::span<const double> faa,
                        std::span<const double> dt_hours) {
    if (faa.empty() || faa.size() != dt_hours.size())
        throw std::invalid_argument("faa and dt spans must be non-empty and equal");
    double weighted = 0, total = 0;
    for (std::size_t i = 0; i < faa.size(); ++i) {
        if (dt_hours[i] <= 0) throw std::invalid_argument("dt must be > 0");
        weighted += faa[i] * dt_hours[i];
        total += dt_hours[i];
    }
    return weighted / total;
}

double loss_of_life_percent(double f_eqa, double period_hours,
                            const TransformerParams& p) {
    if (period_hours <= 0) throw std::invalid_argument("period_hours must be > 0");
    return f_eqa * period_hours / p.normal_life_hours * 100.0;
}

AgingResult simulate_aging(const HourlySeries& load_kw,
                           const HourlySeries& ambient_c,
                           const TransformerParams& p) {
    const ThermalState initial =
        steady_state(ambient_c[0], load_kw[0] / p.rated_kva, p);
    return simulate_aging(load_kw, ambient_c, p, initial);
}

AgingResult simulate_aging(const HourlySeries& load_kw,
                           const HourlySeries& ambient_c,
                           const TransformerParams& p,
                           const ThermalState& initial) {
    if (load_kw.size() != ambient_c.size())
        throw std::invalid_argument("load and ambient series lengths differ");
    if (load_kw.unit() != Unit::kilowatt || ambient_c.unit() != Unit::celsius)
        throw std::invalid_argument("expected kW load and degC ambient");

    const std::size_t n = load_kw.size();
    AgingResult result;
    result.faa.reserve(n);
    result.hot_spot_c.reserve(n);

    ThermalState state = initial;
    double max_theta = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
        // Unity power factor: per-unit load is kW over rated kVA.
        const double k_u = load_kw[i] / p.rated_kva;
        state = step_thermal(state, ambient_c[i], k_u, 1.0, p);
        result.hot_spot_c.push_back(state.hot_spot_c);
        result.faa.push_back(aging_factor(state.hot_spot_c));
        max_theta = std::max(max_theta, state.hot_spot_c);
    }
    const std::vector<double> dt(n, 1.0);
    result.f_eqa = equivalent_aging(result.faa, dt);
    result.loss_of_life_percent =
        loss_of_life_percent(result.f_eqa, double(n), p);
    result.max_hot_spot_c = max_theta;
    result.final_state = state;
    return result;
}

}  // namespace txlife
