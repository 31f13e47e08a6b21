#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "txlife/timeseries.hpp"

namespace txlife {

// Stationary battery parameters. `efficiency` is the round-trip value; the
// energy model applies sqrt(efficiency) per direction so that charge and
// discharge losses are symmetric while the daily energy caps keep the
// round-trip figure.
struct BessParams {
    double capacity_kwh = 40.0;
    double rated_kw = 10.0;
    double efficiency = 0.90;
    double soc_min = 0.20;
    double soc_initial = 0.50;
};

// Half-open block of whole hours [begin, end), 0 <= begin <= end <= 24.
struct HourWindow {
    int begin = 0;
    int end = 0;
    int length() const { return end - begin; }
    bool empty() const { return begin >= end; }
    bool contains(int hour) const { return hour >= begin && hour < end; }
};

// One day of battery operation: 24 signed grid-side setpoints (charge
// positive, discharge negative), at most one contiguous block of each, and
// the hour-boundary SOC trajectory they produce.
struct BatterySchedule {
    std::array<double, 24> power_kw{};
    HourWindow charge_window;
    HourWindow discharge_window;
    std::array<double, 25> soc{};
};

// Builds a schedule with uniform power per window and the SOC trajectory
// implied by params and the starting SOC. Performs no feasibility
// clamping; pair with validate().
BatterySchedule make_schedule(HourWindow charge, double charge_kw,
                              HourWindow discharge, double discharge_kw,
                              const BessParams& params, double soc_start);

BatterySchedule zero_schedule(double soc_start);

struct Violation {
    std::string rule;    // e.g. "charge-energy-cap", "power-cap"
    std::string detail;
};

// Checks the power cap, window ordering and non-overlap, per-window energy
// caps against the SOC entering each window, and the SOC corridor
// [soc_min, 1]. Empty result means the schedule is feasible.
std::vector<Violation> validate(const BatterySchedule& schedule,
                                const BessParams& params);

// Flattening cost: sum over the day of |net + battery - mean(net)|.
// Throws std::invalid_argument when the schedule fails validate().
double objective(const DayProfile& net_day, const BatterySchedule& schedule,
                 const BessParams& params);

// Cost without feasibility screening, for callers that already hold a
// validated schedule.
double objective_cost(const DayProfile& net_day,
                      const std::array<double, 24>& power_kw);

struct GaConfig {
    int population = 60;
    int generations = 200;
    int tournament = 3;
    double crossover_p = 0.9;
    double mutation_p = 0.15;
    int elites = 2;
};

// Genetic search over (charge window, discharge window, two power levels).
// The zero schedule seeds the population, so the result never costs more
// than doing nothing. Deterministic for a fixed seed.
BatterySchedule optimize_day(const DayProfile& net_day, const BessParams& params,
                             const GaConfig& config, std::uint64_t seed,
                             double soc_start);

// Exhaustive search over the discretized schedule family: every pair of
// non-overlapping hour windows with each window power on a grid of
// `grid_steps` levels up to rated_kw. Verification oracle for small
// instances; throws when the search space exceeds max_evals.
BatterySchedule optimize_exact(const DayProfile& net_day, const BessParams& params,
                               int grid_steps, double soc_start,
                               std::uint64_t max_evals = 80'000'000);

struct DayPlan {
    int day = 0;
    double cost = 0;
    double zero_cost = 0;
    double soc_start = 0;
    double soc_end = 0;
    BatterySchedule schedule;
};

struct HorizonPlan {
    HourlySeries battery_kw;
    std::vector<DayPlan> days;  // one entry per scheduled day (day >= warm-up)
};

// Day-ahead planning over the horizon: each day from `warmup_days` on is
// optimized against the trailing mean profile of the net series, with the
// battery SOC chained across days. The first `warmup_days` days get the
// zero schedule.
HorizonPlan plan_horizon(const HourlySeries& net_kw, const BessParams& params,
                         const GaConfig& config, std::uint64_t seed,
                         int warmup_days = 10);

}  // namespace txlife
