#include "txlife/timeseries.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace txlife {

Date date_plus_days(Date start, long days) {
    std::chrono::sys_days sd{start};
    sd += std::chrono::days{days};
    return Date{sd};
}

std::string format_date(Date d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(d.year()),
                  unsigned(d.month()), unsigned(d.day()));
    return buf;
}

Date parse_date(const std::string& iso) {
    int y = 0;
    unsigned m = 0, dd = 0;
    if (std::sscanf(iso.c_str(), "%d-%u-%u", &y, &m, &dd) != 3)
        throw std::invalid_argument("bad date: " + iso);
    Date d = make_date(y, m, dd);
    if (!d.ok()) throw std::invalid_argument("bad date: " + iso);
    return d;
}

const char* unit_name(Unit u) {
    switch (u) {
        case Unit::kilowatt: return "kW";
        case Unit::celsius: return "degC";
        case Unit::dollars_per_kwh: return "USD/kWh";
        case Unit::dimensionless: return "1";
    }
    return "?";
}

HourlySeries::HourlySeries(Date start, std::vector<double> samples, Unit unit)
    : start_(start), samples_(std::move(samples)), unit_(unit) {
    if (samples_.empty() || samples_.size() % 24 != 0)
        throw std::invalid_argument(
            "series length must be a positive multiple of 24, got " +
            std::to_string(samples_.size()));
    for (std::size_t i = 0; i < samples_.size(); ++i)
        if (!std::isfinite(samples_[i]))
            throw std::invalid_argument("non-finite sample at index " +
                                        std::to_string(i));
    if (!start_.ok()) throw std::invalid_argument("invalid start date");
}

Date HourlySeries::date_of_day(std::size_t j) const {
    return date_plus_days(start_, long(j));
}

DayProfile slice_day(const HourlySeries& series, std::size_t j) {
    if (j >= series.days())
        throw std::out_of_range("day " + std::to_string(j) +
                                " out of range, series has " +
                                std::to_string(series.days()) + " days");
    DayProfile out;
    for (int h = 0; h < 24; ++h) out[h] = series[j * 24 + h];
    return out;
}

DayProfile trailing_mean_profile(const HourlySeries& series, std::size_t j,
                                 std::size_t window_days) {
    if (window_days < 1) throw std::invalid_argument("window_days must be >= 1");
    if (j < window_days)
        throw std::out_of_range("insufficient history: day " + std::to_string(j) +
                                " needs " + std::to_string(window_days) +
                                " preceding days");
    if (j > series.days())
        throw std::out_of_range("day " + std::to_string(j) + " out of range");
    DayProfile out{};
    for (std::size_t k = 1; k <= window_days; ++k) {
        const std::size_t base = (j - k) * 24;
        for (int h = 0; h < 24; ++h) out[h] += series[base + h];
    }
    for (int h = 0; h < 24; ++h) out[h] /= double(window_days);
    return out;
}

double day_mean(const DayProfile& day) {
    double sum = 0;
    for (double v : day) sum += v;
    return sum / 24.0;
}

namespace {

void check_compatible(const HourlySeries& a, const HourlySeries& b) {
    if (a.unit() != b.unit())
        throw std::invalid_argument(std::string("unit mismatch: ") +
                                    unit_name(a.unit()) + " vs " +
                                    unit_name(b.unit()));
    if (a.size() != b.size())
        throw std::invalid_argument("length mismatch");
    if (a.start_date() != b.start_date())
        throw std::invalid_argument("start date mismatch");
}

}  // namespace

HourlySeries operator+(const HourlySeries& a, const HourlySeries& b) {
    check_compatible(a, b);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return HourlySeries(a.start_date(), std::move(out), a.unit());
}

HourlySeries operator-(const HourlySeries& a, const HourlySeries& b) {
    check_compatible(a, b);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return HourlySeries(a.start_date(), std::move(out), a.unit());
}

HourlySeries scale(const HourlySeries& s, double factor) {
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] * factor;
    return HourlySeries(s.start_date(), std::move(out), s.unit());
}

}  // namespace txlife
