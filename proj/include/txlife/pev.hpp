#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "txlife/timeseries.hpp"

namespace txlife {

// Fleet and charger parameters. Defaults model a Nissan Leaf fleet of 12
// vehicles sharing 10 level-2 slots: 24 kWh pack, 340 Wh/mile, charged to
// SOC 0.95 at 6.6 kW with 90 % charger efficiency.
struct PevParams {
    int fleet_size = 12;
    int slots = 10;
    double battery_kwh = 24.0;
    double consumption_kwh_per_mile = 0.340;
    double soc_required = 0.95;
    double charger_kw = 6.6;
    double charger_efficiency = 0.90;
    double arrival_mean_hour = 17.0;
    double arrival_std_hours = 2.28;
    double distance_log_mean = 3.37;
    double distance_log_std = 0.5;
};

// One sampled vehicle-day.
struct PevArrival {
    int vehicle_id = 0;
    double arrival_hour = 0;    // hour of day, [0, 24)
    double distance_miles = 0;
    double soc_initial = 0;
    double charge_hours = 0;
};

using Rng = std::mt19937_64;

// Normal(mean, std) arrival hour; draws outside [0, 24) are clamped to the
// boundary rather than redrawn so each vehicle consumes a fixed number of
// draws.
double sample_arrival_hour(Rng& rng, const PevParams& params);

// exp(Normal(log_mean, log_std)), strictly positive.
double sample_distance_miles(Rng& rng, const PevParams& params);

// SOC on arrival after driving the given distance, floored at 0.
double initial_soc(double distance_miles, const PevParams& params);

// Hours of constant-power charging needed to reach soc_required; zero when
// already there.
double charge_duration_hours(double soc_initial, const PevParams& params);

PevArrival sample_vehicle_day(Rng& rng, int vehicle_id,
                              const PevParams& params);

// A charging session placed on the continuous timeline. start_hour may be
// later than arrival_hour when the vehicle had to queue for a slot.
struct ChargeSession {
    int vehicle_id = 0;
    int day = 0;
    double arrival_hour = 0;  // absolute hours since start of horizon
    double start_hour = 0;
    double duration_hours = 0;
};

// Job waiting to be placed by the queue.
struct ChargeRequest {
    int vehicle_id = 0;
    int day = 0;
    double arrival_hour = 0;  // absolute
    double duration_hours = 0;
};

// FIFO multi-server queue: requests must be sorted by arrival (ties by day
// then vehicle_id); at most `slots` sessions run concurrently and each
// vehicle starts the moment a slot frees up.
std::vector<ChargeSession> fifo_schedule(const std::vector<ChargeRequest>& requests,
                                         int slots);

// Hourly kW profile of the sessions, prorated exactly over partial hours.
// Power past `hours` is dropped.
std::vector<double> bin_hourly_power(const std::vector<ChargeSession>& sessions,
                                     double charger_kw, std::size_t hours);

struct FleetLoadResult {
    HourlySeries pev_kw;
    std::vector<PevArrival> arrivals;  // day-major, vehicle-minor
    std::vector<ChargeSession> sessions;
};

// Monte Carlo fleet load over `days` days. Bit-identical for a fixed seed.
FleetLoadResult simulate_fleet(const PevParams& params, std::uint64_t seed,
                               int days, Date start);

}  // namespace txlife
