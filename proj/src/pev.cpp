#include "txlife/pev.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace txlife {

namespace {

// Local distribution object per draw keeps engine consumption independent
// of call history (normal_distribution caches a spare deviate otherwise).
double gaussian(Rng& rng, double mean, double std) {
    std::normal_distribution<double> d(mean, std);
    return d(rng);
}

}  // namespace

double sample_arrival_hour(Rng& rng, const PevParams& params) {
    const double at = gaussian(rng, params.arrival_mean_hour, params.arrival_std_hours);
    return std::clamp(at, 0.0, std::nextafter(24.0, 0.0));
}

double sample_distance_miles(Rng& rng, const PevParams& params) {
    return std::exp(gaussian(rng, params.distance_log_mean, params.distance_log_std));
}

double initial_soc(double distance_miles, const PevParams& params) {
    const double used = params.consumption_kwh_per_mile * distance_miles /
                        params.battery_kwh;
    return std::max(0.0, 1.0 - used);
}

double charge_duration_hours(double soc_initial, const PevParams& params) {
    if (soc_initial >= params.soc_required) return 0.0;
    return (params.soc_required - soc_initial) * params.battery_kwh /
           (params.charger_efficiency * params.charger_kw);
}

PevArrival sample_vehicle_day(Rng& rng, int vehicle_id, const PevParams& params) {
    PevArrival a;
    a.vehicle_id = vehicle_id;
    a.arrival_hour = sample_arrival_hour(rng, params);
    a.distance_miles = sample_distance_miles(rng, params);
    a.soc_initial = initial_soc(a.distance_miles, params);
    a.charge_hours = charge_duration_hours(a.soc_initial, params);
    return a;
}

std::vector<ChargeSession> fifo_schedule(const std::vector<ChargeRequest>& requests,
                                         int slots) {
    if (slots < 0) throw std::invalid_argument("slots must be >= 0");
    std::vector<ChargeSession> sessions;
    sessions.reserve(requests.size());
    if (slots == 0) return sessions;

    for (std::size_t i = 1; i < requests.size(); ++i) {
        const auto& a = requests[i - 1];
        const auto& b = requests[i];
        if (std::tie(a.arrival_hour, a.day, a.vehicle_id) >
            std::tie(b.arrival_hour, b.day, b.vehicle_id))
            throw std::invalid_argument("requests must be sorted by arrival");
    }

    // Min-heap of busy-until times for the occupied slots.
    std::priority_queue<double, std::vector<double>, std::greater<>> busy;
    for (const auto& req : requests) {
        double start = req.arrival_hour;
        if (int(busy.size()) == slots) {
            start = std::max(start, busy.top());
            busy.pop();
        }
        busy.push(start + req.duration_hours);
        sessions.push_back({req.vehicle_id, req.day, req.arrival_hour, start,
                            req.duration_hours});
    }
    return sessions;
}

std::vector<double> bin_hourly_power(const std::vector<ChargeSession>& sessions,
                                     double charger_kw, std::size_t hours) {
    std::vector<double> power(hours, 0.0);
    for (const auto& s : sessions) {
        const double end = s.start_hour + s.duration_hours;
        const std::size_t first = std::size_t(std::max(0.0, std::floor(s.start_hour)));
        for (std::size_t h = first; h < hours && double(h) < end; ++h) {
            const double overlap = std::min(end, double(h) + 1.0) -
                                   std::max(s.start_hour, double(h));
            if (overlap > 0) power[h] += charger_kw * overlap;
        }
    }
    return power;
}

FleetLoadResult simulate_fleet(const PevParams& params, std::uint64_t seed,
                               int days, Date start) {
    if (days < 1) throw std::invalid_argument("days must be >= 1");
    if (params.fleet_size < 0) throw std::invalid_argument("fleet_size must be >= 0");

    Rng rng(seed);
    std::vector<PevArrival> arrivals;
    std::vector<ChargeRequest> requests;
    arrivals.reserve(std::size_t(days) * std::size_t(params.fleet_size));

    for (int day = 0; day < days; ++day) {
        for (int v = 0; v < params.fleet_size; ++v) {
            PevArrival a = sample_vehicle_day(rng, v, params);
            arrivals.push_back(a);
            requests.push_back({v, day, double(day) * 24.0 + a.arrival_hour,
                                a.charge_hours});
        }
    }

    std::stable_sort(requests.begin(), requests.end(),
                     [](const ChargeRequest& a, const ChargeRequest& b) {
                         return std::tie(a.arrival_hour, a.day, a.vehicle_id) <
                                std::tie(b.arrival_hour, b.day, b.vehicle_id);
                     });

    auto sessions = fifo_schedule(requests, params.slots);
    auto power = bin_hourly_power(sessions, params.charger_kw,
                                  std::size_t(days) * 24);

    return FleetLoadResult{HourlySeries(start, std::move(power), Unit::kilowatt),
                           std::move(arrivals), std::move(sessions)};
}

}  // namespace txlife
