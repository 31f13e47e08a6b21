#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "txlife/timeseries.hpp"

namespace txlife {

// CSV schema for every series file: UTF-8, header row "timestamp,value",
// one row per hour with an ISO-8601 date+hour timestamp ("2018-01-01T00")
// strictly increasing in one-hour steps.
class CsvError : public std::runtime_error {
public:
    CsvError(const std::filesystem::path& path, std::size_t line,
             const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

HourlySeries load_csv(const std::filesystem::path& path, Unit expected_unit);
void write_csv(const HourlySeries& series, const std::filesystem::path& path);

// College Station style flat tariff: one rate May-October, another
// November-April, plus a fixed monthly service fee.
struct RetailTariff {
    double summer_rate = 0.1369;  // $/kWh, May-Oct
    double winter_rate = 0.1323;  // $/kWh, Nov-Apr
    double monthly_fee = 7.0;     // $, cancels in with/without comparisons
};

double retail_rate_at(const RetailTariff& tariff, Date date);

// Knobs for the synthetic year. Defaults are documented inventions: a
// two-peak residential shape for 10 customers (3 low, 6 medium, 1 high),
// a daylight bell for the 10 kW PV system, and a daily+seasonal
// temperature sinusoid.
struct SyntheticParams {
    Date start = make_date(2018, 1, 1);
    // Load shape
    double evening_peak_kw = 34.0;   // nominal fleet evening peak before noise
    int morning_peak_hour = 7;
    int evening_peak_hour = 19;
    double peak_trough_ratio = 2.5;
    double summer_load_boost = 0.25;  // AC season multiplier at its peak
    double load_noise_frac = 0.05;    // uniform multiplicative noise
    // PV
    double pv_system_kw = 10.0;
    // Temperature
    double temp_mean_c = 20.0;
    double temp_daily_amplitude_c = 6.0;
    double temp_seasonal_amplitude_c = 10.0;
};

struct DatasetBundle {
    HourlySeries load_kw;
    HourlySeries temperature_c;
    HourlySeries pv_kw;
    RetailTariff tariff;
    std::optional<HourlySeries> wholesale_price;
};

// Throws std::invalid_argument when the bundle breaks its invariants
// (mismatched spans, negative load or PV).
void validate_bundle(const DatasetBundle& bundle);

// Deterministic for a fixed seed. Requires days >= 11 so downstream
// scheduling has its 10-day warm-up.
DatasetBundle synthesize_bundle(std::uint64_t seed, int days,
                                const SyntheticParams& params = {});

}  // namespace txlife
