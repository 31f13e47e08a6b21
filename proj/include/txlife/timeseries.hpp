#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

namespace txlife {

// Calendar date of the first sample. The simulation itself treats the
// horizon as contiguous days (no DST, no leap-second arithmetic); the
// calendar only matters for seasonal tariff lookup.
using Date = std::chrono::year_month_day;

constexpr Date make_date(int year, unsigned month, unsigned day) {
    return Date{std::chrono::year{year}, std::chrono::month{month},
                std::chrono::day{day}};
}

Date date_plus_days(Date start, long days);
std::string format_date(Date d);
Date parse_date(const std::string& iso);  // "YYYY-MM-DD"

enum class Unit { kilowatt, celsius, dollars_per_kwh, dimensionless };

const char* unit_name(Unit u);

using DayProfile = std::array<double, 24>;

// Calendar-aligned hourly samples with a fixed unit. Length is always a
// positive multiple of 24 and every sample is finite; both are enforced
// at construction. Instances are immutable and safe to share.
class HourlySeries {
public:
    HourlySeries(Date start, std::vector<double> samples, Unit unit);

    Date start_date() const { return start_; }
    Unit unit() const { return unit_; }
    std::size_t size() const { return samples_.size(); }
    std::size_t days() const { return samples_.size() / 24; }
    double operator[](std::size_t i) const { return samples_[i]; }
    const std::vector<double>& samples() const { return samples_; }

    // Calendar date of day j (j = 0 is start_date).
    Date date_of_day(std::size_t j) const;

private:
    Date start_;
    std::vector<double> samples_;
    Unit unit_;
};

// The 24 samples of day j, in hour order. Throws std::out_of_range if the
// day is not fully contained in the series.
DayProfile slice_day(const HourlySeries& series, std::size_t j);

// Hour-by-hour mean over the window_days days preceding day j (days j-1
// back to j-window_days). Throws std::out_of_range when fewer than
// window_days full days precede j.
DayProfile trailing_mean_profile(const HourlySeries& series, std::size_t j,
                                 std::size_t window_days);

double day_mean(const DayProfile& day);

// Elementwise arithmetic. Both operands must share unit, start date and
// length; mismatches throw std::invalid_argument.
HourlySeries operator+(const HourlySeries& a, const HourlySeries& b);
HourlySeries operator-(const HourlySeries& a, const HourlySeries& b);

HourlySeries scale(const HourlySeries& s, double factor);

}  // namespace txlife
