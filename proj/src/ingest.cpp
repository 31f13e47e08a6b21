#include "txlife/ingest.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace txlife {

CsvError::CsvError(const std::filesystem::path& path, std::size_t line,
                   const std::string& what)
    : std::runtime_error(path.string() + ":" + std::to_string(line) + ": " +
                         what),
      line_(line) {}

namespace {

std::string format_timestamp(Date date, int hour) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d", int(date.year()),
                  unsigned(date.month()) % 100u, unsigned(date.day()) % 100u,
                  hour % 100);
    return buf;
}

// Shortest representation that parses back to the same double.
std::string format_value(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

}  // namespace

HourlySeries load_csv(const std::filesystem::path& path, Unit expected_unit) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) throw CsvError(path, 1, "empty file");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "timestamp,value")
        throw CsvError(path, lineno, "expected header 'timestamp,value', got '" +
                                         line + "'");

    std::vector<double> samples;
    Date start{};
    Date expected_date{};
    int expected_hour = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) throw CsvError(path, lineno, "blank row");

        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw CsvError(path, lineno, "expected exactly 2 columns");

        const std::string ts = line.substr(0, comma);
        const std::string val = line.substr(comma + 1);

        int y = 0, hh = -1;
        unsigned mo = 0, dd = 0;
        char trail = 0;
        if (std::sscanf(ts.c_str(), "%4d-%2u-%2uT%2d%c", &y, &mo, &dd, &hh,
                        &trail) != 4 ||
            hh < 0 || hh > 23)
            throw CsvError(path, lineno, "malformed timestamp '" + ts + "'");
        const Date row_date = make_date(y, mo, dd);
        if (!row_date.ok())
            throw CsvError(path, lineno, "invalid date '" + ts + "'");

        if (samples.empty()) {
            if (hh != 0)
                throw CsvError(path, lineno, "series must start at hour 00");
            start = row_date;
            expected_date = row_date;
            expected_hour = 0;
        }
        if (row_date != expected_date || hh != expected_hour)
            throw CsvError(path, lineno,
                           "timestamp not strictly increasing by one hour, "
                           "expected " +
                               format_timestamp(expected_date, expected_hour));

        double v = 0;
        const char* first = val.data();
        const char* last = val.data() + val.size();
        auto [p, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || p != last)
            throw CsvError(path, lineno, "malformed value '" + val + "'");
        if (!std::isfinite(v))
            throw CsvError(path, lineno, "non-finite value '" + val + "'");
        samples.push_back(v);

        expected_hour = (expected_hour + 1) % 24;
        if (expected_hour == 0) expected_date = date_plus_days(expected_date, 1);
    }

    if (samples.empty()) throw CsvError(path, lineno, "no data rows");
    if (samples.size() % 24 != 0)
        throw CsvError(path, lineno,
                       "row count " + std::to_string(samples.size()) +
                           " is not a multiple of 24");

    return HourlySeries(start, std::move(samples), expected_unit);
}

void write_csv(const HourlySeries& series, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "timestamp,value\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const Date d = series.date_of_day(i / 24);
        out << format_timestamp(d, int(i % 24)) << ',' << format_value(series[i])
            << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

double retail_rate_at(const RetailTariff& tariff, Date date) {
    const unsigned m = unsigned(date.month());
    return (m >= 5 && m <= 10) ? tariff.summer_rate : tariff.winter_rate;
}

void validate_bundle(const DatasetBundle& bundle) {
    auto check_span = [&](const HourlySeries& s, const char* name) {
        if (s.size() != bundle.load_kw.size())
            throw std::invalid_argument(std::string(name) + " length differs from load");
        if (s.start_date() != bundle.load_kw.start_date())
            throw std::invalid_argument(std::string(name) + " start date differs from load");
    };
    check_span(bundle.temperature_c, "temperature");
    check_span(bundle.pv_kw, "pv");
    if (bundle.wholesale_price) check_span(*bundle.wholesale_price, "wholesale");

    if (bundle.load_kw.unit() != Unit::kilowatt ||
        bundle.pv_kw.unit() != Unit::kilowatt)
        throw std::invalid_argument("load and pv must be in kW");
    if (bundle.temperature_c.unit() != Unit::celsius)
        throw std::invalid_argument("temperature must be in degC");

    for (std::size_t i = 0; i < bundle.load_kw.size(); ++i) {
        if (bundle.load_kw[i] < 0)
            throw std::invalid_argument("negative load at hour " + std::to_string(i));
        if (bundle.pv_kw[i] < 0)
            throw std::invalid_argument("negative pv at hour " + std::to_string(i));
    }
    if (bundle.tariff.summer_rate < 0 || bundle.tariff.winter_rate < 0 ||
        bundle.tariff.monthly_fee < 0)
        throw std::invalid_argument("tariff rates must be nonnegative");
}

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

// Wrapped distance between hours on the 24h circle.
double hour_distance(double a, double b) {
    double d = std::fabs(a - b);
    return std::min(d, 24.0 - d);
}

// Two-peak daily shape in [1/ratio, 1], maxima at the two peak hours.
double load_shape(double hour, const SyntheticParams& p) {
    const double trough = 1.0 / p.peak_trough_ratio;
    const double dm = hour_distance(hour, double(p.morning_peak_hour));
    const double de = hour_distance(hour, double(p.evening_peak_hour));
    const double bump_m = std::exp(-dm * dm / (2.0 * 2.2 * 2.2));
    const double bump_e = std::exp(-de * de / (2.0 * 3.0 * 3.0));
    return trough + (1.0 - trough) * std::max(bump_m, bump_e);
}

// 0 at mid-winter (day ~11), 1 at mid-summer; drives both the temperature
// seasonal term and the AC load boost.
double summer_fraction(int day) {
    return 0.5 * (1.0 - std::cos(kTau * (double(day) - 11.0) / 365.0));
}

double daylight_hours(int day) {
    // ~30 deg N latitude: 10 h at winter solstice, 14 h at summer solstice.
    return 10.0 + 4.0 * summer_fraction(day);
}

}  // namespace

DatasetBundle synthesize_bundle(std::uint64_t seed, int days,
                                const SyntheticParams& params) {
    if (days < 11)
        throw std::invalid_argument("need at least 11 days, got " +
                                    std::to_string(days));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const std::size_t n = std::size_t(days) * 24;
    std::vector<double> load(n), temp(n), pv(n);

    // Customer mix: 3 low + 6 medium + 1 high with relative demand
    // 0.6 / 1.0 / 1.8 -> 9.6 medium-household equivalents.
    const double household_peak_kw = params.evening_peak_kw / 9.6;
    const double fleet_equiv = 3 * 0.6 + 6 * 1.0 + 1 * 1.8;

    for (int day = 0; day < days; ++day) {
        const double sf = summer_fraction(day);
        const double season_load = 1.0 + params.summer_load_boost * sf;
        const double daylen = daylight_hours(day);
        const double clear_day = 1.0 - 0.7 * std::pow(unit(rng), 2.0);

        for (int h = 0; h < 24; ++h) {
            const std::size_t i = std::size_t(day) * 24 + h;

            const double noise =
                1.0 + params.load_noise_frac * (2.0 * unit(rng) - 1.0);
            load[i] = household_peak_kw * fleet_equiv * load_shape(h, params) *
                      season_load * noise;

            temp[i] = params.temp_mean_c -
                      params.temp_seasonal_amplitude_c *
                          std::cos(kTau * (double(day) - 11.0) / 365.0) -
                      params.temp_daily_amplitude_c *
                          std::cos(kTau * (double(h) - 14.0) / 24.0);

            const double x = (double(h) + 0.5 - 12.0) / (daylen / 2.0);
            double gen = 0.0;
            if (std::fabs(x) < 1.0) {
                const double bell = std::pow(std::cos(0.5 * std::numbers::pi * x), 1.5);
                const double cloud_hour = 1.0 - 0.25 * std::pow(unit(rng), 3.0);
                gen = params.pv_system_kw * bell * clear_day * cloud_hour;
            }
            pv[i] = gen;
        }
    }

    DatasetBundle bundle{
        HourlySeries(params.start, std::move(load), Unit::kilowatt),
        HourlySeries(params.start, std::move(temp), Unit::celsius),
        HourlySeries(params.start, std::move(pv), Unit::kilowatt),
        RetailTariff{}, std::nullopt};
    validate_bundle(bundle);
    return bundle;
}

}  // namespace txlife
