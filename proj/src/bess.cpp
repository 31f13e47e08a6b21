#include "txlife/bess.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace txlife {

namespace {

constexpr double kEps = 1e-9;

double charge_step_efficiency(const BessParams& p) {
    return std::sqrt(p.efficiency);
}

struct WindowEnergy {
    double charged_kwh = 0;     // grid-side energy into the charger
    double discharged_kwh = 0;  // grid-side energy out of the inverter
};

}  // namespace

BatterySchedule make_schedule(HourWindow charge, double charge_kw,
                              HourWindow discharge, double discharge_kw,
                              const BessParams& params, double soc_start) {
    BatterySchedule s;
    s.charge_window = charge;
    s.discharge_window = discharge;
    for (int h = 0; h < 24; ++h) {
        if (charge.contains(h))
            s.power_kw[h] = charge_kw;
        else if (discharge.contains(h))
            s.power_kw[h] = -discharge_kw;
    }
    const double eta_dir = charge_step_efficiency(params);
    s.soc[0] = soc_start;
    for (int h = 0; h < 24; ++h) {
        const double p = s.power_kw[h];
        double delta;
        if (p >= 0)
            delta = eta_dir * p / params.capacity_kwh;
        else
            delta = p / (eta_dir * params.capacity_kwh);
        s.soc[h + 1] = s.soc[h] + delta;
    }
    return s;
}

BatterySchedule zero_schedule(double soc_start) {
    BatterySchedule s;
    s.soc.fill(soc_start);
    return s;
}

std::vector<Violation> validate(const BatterySchedule& s, const BessParams& p) {
    std::vector<Violation> out;
    auto add = [&out](const std::string& rule, const std::string& detail) {
        out.push_back({rule, detail});
    };

    auto check_window = [&](const HourWindow& w, const char* name) {
        if (w.begin < 0 || w.end < 0)
            add("window-order", std::string(name) + " window bound below 0");
        if (w.begin > w.end)
            add("window-order", std::string(name) + " window begins after it ends");
        if (w.end > 24)
            add("window-order", std::string(name) + " window extends past hour 24");
    };
    check_window(s.charge_window, "charge");
    check_window(s.discharge_window, "discharge");

    if (!s.charge_window.empty() && !s.discharge_window.empty() &&
        s.charge_window.begin < s.discharge_window.end &&
        s.discharge_window.begin < s.charge_window.end)
        add("window-overlap", "charge and discharge windows overlap");

    for (int h = 0; h < 24; ++h) {
        const double pw = s.power_kw[h];
        if (std::fabs(pw) > p.rated_kw + kEps) {
            add("power-cap", "hour " + std::to_string(h) + " power " +
                                 std::to_string(pw) + " exceeds rated " +
                                 std::to_string(p.rated_kw));
            break;
        }
    }
    for (int h = 0; h < 24; ++h) {
        const double pw = s.power_kw[h];
        const bool in_c = s.charge_window.contains(h);
        const bool in_d = s.discharge_window.contains(h);
        if (pw > kEps && !in_c) {
            add("single-cycle", "charging power outside the charge window at hour " +
                                    std::to_string(h));
            break;
        }
        if (pw < -kEps && !in_d) {
            add("single-cycle",
                "discharging power outside the discharge window at hour " +
                    std::to_string(h));
            break;
        }
    }

    // Energy caps, applied with the SOC entering each window (the earlier
    // window fixes the SOC seen by the later one).
    WindowEnergy e;
    for (int h = 0; h < 24; ++h) {
        if (s.power_kw[h] > 0) e.charged_kwh += s.power_kw[h];
        if (s.power_kw[h] < 0) e.discharged_kwh -= s.power_kw[h];
    }
    const double soc_at_charge_start =
        s.charge_window.empty() ? s.soc[0]
                                : s.soc[std::clamp(s.charge_window.begin, 0, 24)];
    const double soc_at_discharge_start =
        s.discharge_window.empty()
            ? s.soc[0]
            : s.soc[std::clamp(s.discharge_window.begin, 0, 24)];

    const double charge_cap = p.efficiency * p.capacity_kwh * (1.0 - soc_at_charge_start);
    if (e.charged_kwh > charge_cap + kEps)
        add("charge-energy-cap", "charged " + std::to_string(e.charged_kwh) +
                                     " kWh, cap " + std::to_string(charge_cap));
    const double discharge_cap =
        p.efficiency * p.capacity_kwh * (soc_at_discharge_start - p.soc_min);
    if (e.discharged_kwh > discharge_cap + kEps)
        add("discharge-energy-cap",
            "discharged " + std::to_string(e.discharged_kwh) + " kWh, cap " +
                std::to_string(std::max(0.0, discharge_cap)));

    for (int h = 0; h <= 24; ++h) {
        if (s.soc[h] < p.soc_min - kEps || s.soc[h] > 1.0 + kEps) {
            add("soc-bounds", "SOC " + std::to_string(s.soc[h]) + " at hour " +
                                  std::to_string(h) + " outside [" +
                                  std::to_string(p.soc_min) + ", 1]");
            break;
        }
    }

    // Trajectory must match the power vector it ships with.
    const double eta_dir = charge_step_efficiency(p);
    double soc = s.soc[0];
    for (int h = 0; h < 24; ++h) {
        const double pw = s.power_kw[h];
        soc += pw >= 0 ? eta_dir * pw / p.capacity_kwh
                       : pw / (eta_dir * p.capacity_kwh);
        if (std::fabs(soc - s.soc[h + 1]) > 1e-6) {
            add("soc-consistency", "stored trajectory diverges at hour " +
                                       std::to_string(h + 1));
            break;
        }
    }
    return out;
}

double objective_cost(const DayProfile& net_day,
                      const std::array<double, 24>& power_kw) {
    const double avg = day_mean(net_day);
    double cost = 0;
    for (int h = 0; h < 24; ++h)
        cost += std::fabs(net_day[h] + power_kw[h] - avg);
    return cost;
}

double objective(const DayProfile& net_day, const BatterySchedule& schedule,
                 const BessParams& params) {
    auto violations = validate(schedule, params);
    if (!violations.empty())
        throw std::invalid_argument("infeasible schedule: " + violations[0].rule +
                                    " (" + violations[0].detail + ")");
    return objective_cost(net_day, schedule.power_kw);
}

namespace {

struct Chromosome {
    int cb = 0, ce = 0;       // charge window [cb, ce)
    int db = 0, de = 0;       // discharge window [db, de)
    double charge_kw = 0;
    double discharge_kw = 0;
};

// Clamp a raw chromosome into the feasible family: ordered windows inside
// [0, 24], no overlap, powers within [0, rated] and within the per-window
// energy caps given the SOC entering each window (in chronological order).
Chromosome repair(Chromosome c, const BessParams& p, double soc_start) {
    auto fix_window = [](int& a, int& b) {
        a = std::clamp(a, 0, 24);
        b = std::clamp(b, 0, 24);
        if (a > b) std::swap(a, b);
    };
    fix_window(c.cb, c.ce);
    fix_window(c.db, c.de);

    // Overlap: the later-starting window yields.
    if (c.cb < c.ce && c.db < c.de && c.cb < c.de && c.db < c.ce) {
        if (c.cb <= c.db)
            c.db = std::min(std::max(c.db, c.ce), c.de);
        else
            c.cb = std::min(std::max(c.cb, c.de), c.ce);
    }

    c.charge_kw = std::clamp(c.charge_kw, 0.0, p.rated_kw);
    c.discharge_kw = std::clamp(c.discharge_kw, 0.0, p.rated_kw);

    if (c.cb >= c.ce) { c.cb = c.ce = 0; c.charge_kw = 0; }
    if (c.db >= c.de) { c.db = c.de = 0; c.discharge_kw = 0; }

    const double eta_dir = std::sqrt(p.efficiency);
    const bool charge_first = c.cb >= c.ce ? false
                              : c.db >= c.de ? true
                                             : c.cb < c.db;
    double soc = soc_start;
    auto cap_charge = [&] {
        const int len = c.ce - c.cb;
        if (len <= 0) return;
        const double cap_kwh = p.efficiency * p.capacity_kwh * (1.0 - soc);
        c.charge_kw = std::clamp(c.charge_kw, 0.0, std::max(0.0, cap_kwh / len));
        soc += eta_dir * c.charge_kw * len / p.capacity_kwh;
    };
    auto cap_discharge = [&] {
        const int len = c.de - c.db;
        if (len <= 0) return;
        const double cap_kwh = p.efficiency * p.capacity_kwh * (soc - p.soc_min);
        c.discharge_kw =
            std::clamp(c.discharge_kw, 0.0, std::max(0.0, cap_kwh / len));
        soc -= c.discharge_kw * len / (eta_dir * p.capacity_kwh);
    };
    if (charge_first) {
        cap_charge();
        cap_discharge();
    } else {
        cap_discharge();
        cap_charge();
    }
    return c;
}

BatterySchedule decode(const Chromosome& c, const BessParams& p, double soc_start) {
    return make_schedule({c.cb, c.ce}, c.charge_kw, {c.db, c.de}, c.discharge_kw,
                         p, soc_start);
}

double eval_cost(const Chromosome& c, const DayProfile& net, const BessParams& p,
                 double soc_start) {
    return objective_cost(net, decode(c, p, soc_start).power_kw);
}

// Greedy cap-saturated candidates: charge over the most negative deviation
// block, discharge over the most positive one, at rated power (the repair
// then clamps each to its energy cap). Both window orders are constructed
// explicitly because the SOC linkage makes them score very differently;
// random-initialized populations reach these saturated corner schedules too
// rarely on their own. Returns the best few by actual cost.
std::vector<Chromosome> seeded_candidates(const DayProfile& net_day,
                                          const BessParams& params,
                                          double soc_start, int count) {
    const double avg = day_mean(net_day);
    // Most negative (charge) or most positive (discharge) deviation block
    // of the given length fully inside [from, to).
    auto best_block = [&](int len, bool most_negative, int from, int to) {
        int best_begin = -1;
        double best_sum = most_negative ? 1e300 : -1e300;
        for (int b = from; b + len <= to; ++b) {
            double sum = 0;
            for (int h = b; h < b + len; ++h) sum += net_day[h] - avg;
            if (most_negative ? sum < best_sum : sum > best_sum) {
                best_sum = sum;
                best_begin = b;
            }
        }
        return best_begin;
    };

    std::vector<Chromosome> pool;
    auto add = [&](int cb, int len_c, int db, int len_d) {
        if (cb < 0 || db < 0) return;
        pool.push_back({cb, cb + len_c, db, db + len_d, params.rated_kw,
                        params.rated_kw});
    };
    for (int len_c = 1; len_c <= 8; ++len_c) {
        for (int len_d = 1; len_d <= 8; ++len_d) {
            // Each order twice: anchor either window globally, fit the
            // other around it.
            const int cb = best_block(len_c, true, 0, 24);
            if (cb >= 0) {
                add(cb, len_c, best_block(len_d, false, cb + len_c, 24), len_d);
                add(cb, len_c, best_block(len_d, false, 0, cb), len_d);
            }
            const int db = best_block(len_d, false, 0, 24);
            if (db >= 0) {
                add(best_block(len_c, true, db + len_d, 24), len_c, db, len_d);
                add(best_block(len_c, true, 0, db), len_c, db, len_d);
            }
        }
    }
    for (auto& c : pool) c = repair(c, params, soc_start);
    std::vector<std::pair<double, std::size_t>> ranked(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i)
        ranked[i] = {eval_cost(pool[i], net_day, params, soc_start), i};
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<Chromosome> out;
    for (std::size_t i = 0; i < ranked.size() && int(out.size()) < count; ++i)
        out.push_back(pool[ranked[i].second]);
    return out;
}

}  // namespace

BatterySchedule optimize_day(const DayProfile& net_day, const BessParams& params,
                             const GaConfig& cfg, std::uint64_t seed,
                             double soc_start) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> hour_gene(0, 24);
    std::uniform_real_distribution<double> power_gene(0.0, params.rated_kw);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    const int pop_size = std::max(2, cfg.population);
    std::vector<Chromosome> pop(pop_size);
    std::vector<double> cost(pop_size);

    // Individual 0 is always the zero schedule, so doing nothing stays
    // reachable through elitism. The next slots hold the greedy seeds.
    pop[0] = Chromosome{};
    const int seed_quota = std::min(12, pop_size / 4);
    const auto seeds = seeded_candidates(net_day, params, soc_start, seed_quota);
    int filled = 1;
    for (const auto& s : seeds) {
        if (filled >= pop_size - 1) break;
        pop[filled++] = s;
    }
    for (int i = filled; i < pop_size; ++i) {
        Chromosome c;
        c.cb = hour_gene(rng); c.ce = hour_gene(rng);
        c.db = hour_gene(rng); c.de = hour_gene(rng);
        c.charge_kw = power_gene(rng);
        c.discharge_kw = power_gene(rng);
        pop[i] = repair(c, params, soc_start);
    }
    for (int i = 0; i < pop_size; ++i)
        cost[i] = eval_cost(pop[i], net_day, params, soc_start);

    Chromosome best = pop[0];
    double best_cost = cost[0];
    auto consider = [&](const Chromosome& c, double f) {
        if (f < best_cost) { best = c; best_cost = f; }
    };
    for (int i = 1; i < pop_size; ++i) consider(pop[i], cost[i]);

    std::uniform_int_distribution<int> pick(0, pop_size - 1);
    auto tournament = [&]() -> int {
        int winner = pick(rng);
        for (int k = 1; k < cfg.tournament; ++k) {
            const int challenger = pick(rng);
            if (cost[challenger] < cost[winner]) winner = challenger;
        }
        return winner;
    };

    std::normal_distribution<double> hour_step(0.0, 8.0);
    std::normal_distribution<double> power_step(0.0, 0.4 * params.rated_kw);

    std::vector<Chromosome> next(pop_size);
    std::vector<double> next_cost(pop_size);

    for (int gen = 0; gen < cfg.generations; ++gen) {
        // Elites pass through unchanged.
        std::vector<int> order(pop_size);
        for (int i = 0; i < pop_size; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return cost[a] < cost[b]; });
        const int elites = std::clamp(cfg.elites, 0, pop_size);
        for (int i = 0; i < elites; ++i) {
            next[i] = pop[order[i]];
            next_cost[i] = cost[order[i]];
        }

        for (int i = elites; i < pop_size; ++i) {
            const Chromosome& a = pop[tournament()];
            const Chromosome& b = pop[tournament()];
            Chromosome child = a;
            if (coin(rng) < cfg.crossover_p) {
                if (coin(rng) < 0.5) child.cb = b.cb;
                if (coin(rng) < 0.5) child.ce = b.ce;
                if (coin(rng) < 0.5) child.db = b.db;
                if (coin(rng) < 0.5) child.de = b.de;
                if (coin(rng) < 0.5) child.charge_kw = b.charge_kw;
                if (coin(rng) < 0.5) child.discharge_kw = b.discharge_kw;
            }
            if (coin(rng) < cfg.mutation_p)
                child.cb += int(std::lround(hour_step(rng)));
            if (coin(rng) < cfg.mutation_p)
                child.ce += int(std::lround(hour_step(rng)));
            if (coin(rng) < cfg.mutation_p)
                child.db += int(std::lround(hour_step(rng)));
            if (coin(rng) < cfg.mutation_p)
                child.de += int(std::lround(hour_step(rng)));
            if (coin(rng) < cfg.mutation_p) child.charge_kw += power_step(rng);
            if (coin(rng) < cfg.mutation_p) child.discharge_kw += power_step(rng);

            child = repair(child, params, soc_start);
            next[i] = child;
            next_cost[i] = eval_cost(child, net_day, params, soc_start);
            consider(child, next_cost[i]);
        }
        pop.swap(next);
        cost.swap(next_cost);
    }

    return decode(best, params, soc_start);
}

BatterySchedule optimize_exact(const DayProfile& net_day, const BessParams& params,
                               int grid_steps, double soc_start,
                               std::uint64_t max_evals) {
    if (grid_steps < 1) throw std::invalid_argument("grid_steps must be >= 1");

    // Window candidates: every half-open [b, e) within the day plus the
    // empty window.
    std::vector<HourWindow> windows;
    windows.push_back({0, 0});
    for (int b = 0; b < 24; ++b)
        for (int e = b + 1; e <= 24; ++e) windows.push_back({b, e});

    std::uint64_t pair_count = 0;
    for (const auto& cw : windows)
        for (const auto& dw : windows) {
            if (!cw.empty() && !dw.empty() && cw.begin < dw.end && dw.begin < cw.end)
                continue;
            ++pair_count;
        }
    const std::uint64_t levels = std::uint64_t(grid_steps) + 1;
    if (pair_count * levels * levels > max_evals)
        throw std::invalid_argument("exhaustive search space too large");

    Chromosome best{};
    double best_cost = eval_cost(best, net_day, params, soc_start);

    for (const auto& cw : windows) {
        for (const auto& dw : windows) {
            if (!cw.empty() && !dw.empty() && cw.begin < dw.end && dw.begin < cw.end)
                continue;
            const int c_levels = cw.empty() ? 1 : grid_steps + 1;
            const int d_levels = dw.empty() ? 1 : grid_steps + 1;
            for (int kc = 0; kc < c_levels; ++kc) {
                for (int kd = 0; kd < d_levels; ++kd) {
                    Chromosome c;
                    c.cb = cw.begin; c.ce = cw.end;
                    c.db = dw.begin; c.de = dw.end;
                    c.charge_kw = params.rated_kw * kc / grid_steps;
                    c.discharge_kw = params.rated_kw * kd / grid_steps;
                    c = repair(c, params, soc_start);
                    const double f = eval_cost(c, net_day, params, soc_start);
                    if (f < best_cost - kEps) {
                        best = c;
                        best_cost = f;
                    }
                }
            }
        }
    }
    return decode(best, params, soc_start);
}

HorizonPlan plan_horizon(const HourlySeries& net_kw, const BessParams& params,
                         const GaConfig& config, std::uint64_t seed,
                         int warmup_days) {
    const int days = int(net_kw.days());
    if (days < warmup_days + 1)
        throw std::invalid_argument("horizon must exceed the warm-up of " +
                                    std::to_string(warmup_days) + " days");

    // Same derived seed every day: identical day profiles at identical SOC
    // reproduce identical schedules.
    std::uint64_t day_seed = seed;
    day_seed ^= day_seed >> 33;
    day_seed *= 0xff51afd7ed558ccdULL;
    day_seed ^= day_seed >> 33;

    std::vector<double> battery(std::size_t(days) * 24, 0.0);
    std::vector<DayPlan> day_plans;

    double soc = params.soc_initial;
    for (int j = warmup_days; j < days; ++j) {
        const DayProfile profile =
            trailing_mean_profile(net_kw, std::size_t(j), std::size_t(warmup_days));
        BatterySchedule sched = optimize_day(profile, params, config, day_seed, soc);
        for (int h = 0; h < 24; ++h)
            battery[std::size_t(j) * 24 + h] = sched.power_kw[h];
        DayPlan dp;
        dp.day = j;
        dp.cost = objective_cost(profile, sched.power_kw);
        dp.zero_cost = objective_cost(profile, std::array<double, 24>{});
        dp.soc_start = soc;
        dp.soc_end = sched.soc[24];
        dp.schedule = sched;
        soc = dp.soc_end;
        day_plans.push_back(std::move(dp));
    }
    return HorizonPlan{
        HourlySeries(net_kw.start_date(), std::move(battery), Unit::kilowatt),
        std::move(day_plans)};
}

}  // namespace txlife
