#include <stdexcept>

#include "txlife/timeseries.hpp"

#include <limits>
#include <random>

#include "doctest.h"

using namespace txlife;

namespace {

const Date kStart = make_date(2018, 1, 1);

HourlySeries series_of(std::vector<double> v, Unit u = Unit::kilowatt) {
    return HourlySeries(kStart, std::move(v), u);
}

std::vector<double> random_samples(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> d(-50.0, 50.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

}  // namespace

TEST_CASE("construction enforces the length and finiteness invariants") {
    CHECK_THROWS_AS(series_of({}), std::invalid_argument);
    CHECK_THROWS_AS(series_of(std::vector<double>(23, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(series_of(std::vector<double>(25, 0.0)), std::invalid_argument);
    CHECK_NOTHROW(series_of(std::vector<double>(48, 0.0)));

    std::vector<double> with_nan(24, 0.0);
    with_nan[7] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(series_of(std::move(with_nan)), std::invalid_argument);

    std::vector<double> with_inf(24, 0.0);
    with_inf[3] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(series_of(std::move(with_inf)), std::invalid_argument);
}

TEST_CASE("slice_day returns the requested day") {
    SUBCASE("identity case") {
        const auto s = series_of(std::vector<double>(48, 0.0));
        const auto day = slice_day(s, 1);
        for (double v : day) CHECK(v == 0.0);
    }
    SUBCASE("constructed indexing case") {
        std::vector<double> v(48);
        for (std::size_t i = 0; i < 48; ++i) v[i] = double(i);
        const auto s = series_of(std::move(v));
        const auto day = slice_day(s, 1);
        for (int h = 0; h < 24; ++h) CHECK(day[h] == doctest::Approx(24.0 + h));
    }
    SUBCASE("out of range") {
        const auto s = series_of(std::vector<double>(24, 1.0));
        CHECK_THROWS_AS(slice_day(s, 1), std::out_of_range);
    }
}

TEST_CASE("slice_day re-concatenation reproduces the series") {
    std::mt19937_64 rng(7);
    const auto s = series_of(random_samples(rng, 24 * 5));
    for (std::size_t j = 0; j < s.days(); ++j) {
        const auto day = slice_day(s, j);
        for (int h = 0; h < 24; ++h) CHECK(day[h] == s[j * 24 + h]);
    }
}

TEST_CASE("trailing_mean_profile") {
    SUBCASE("constant input") {
        const auto s = series_of(std::vector<double>(24 * 11, 5.0));
        const auto prof = trailing_mean_profile(s, 10, 10);
        for (double v : prof) CHECK(v == doctest::Approx(5.0));
    }
    SUBCASE("two-day hand mean") {
        std::vector<double> v(24 * 3, 0.0);
        for (int h = 0; h < 24; ++h) v[24 + h] = 4.0;  // day 1
        for (int h = 0; h < 24; ++h) v[48 + h] = 2.0;  // day 2
        const auto s = series_of(std::move(v));
        const auto prof = trailing_mean_profile(s, 3, 2);
        for (double x : prof) CHECK(x == doctest::Approx(3.0));
    }
    SUBCASE("insufficient history") {
        const auto s = series_of(std::vector<double>(24 * 11, 1.0));
        CHECK_THROWS_AS(trailing_mean_profile(s, 5, 10), std::out_of_range);
    }
}

TEST_CASE("trailing mean of a day-periodic series equals the day") {
    std::mt19937_64 rng(11);
    std::vector<double> day = random_samples(rng, 24);
    std::vector<double> v;
    for (int rep = 0; rep < 12; ++rep) v.insert(v.end(), day.begin(), day.end());
    const auto s = series_of(std::move(v));
    for (std::size_t window : {1u, 3u, 7u, 10u}) {
        const auto prof = trailing_mean_profile(s, 11, window);
        for (int h = 0; h < 24; ++h) CHECK(prof[h] == doctest::Approx(day[h]).epsilon(1e-12));
    }
}

TEST_CASE("trailing mean is linear") {
    std::mt19937_64 rng(13);
    const auto xs = random_samples(rng, 24 * 12);
    const auto ys = random_samples(rng, 24 * 12);
    const double a = 2.5, b = -0.75;

    std::vector<double> combo(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) combo[i] = a * xs[i] + b * ys[i];

    const auto px = trailing_mean_profile(series_of(xs), 11, 10);
    const auto py = trailing_mean_profile(series_of(ys), 11, 10);
    const auto pc = trailing_mean_profile(series_of(combo), 11, 10);
    for (int h = 0; h < 24; ++h)
        CHECK(pc[h] == doctest::Approx(a * px[h] + b * py[h]).epsilon(1e-10));
}

TEST_CASE("arithmetic requires matching units and spans") {
    const auto kw = series_of(std::vector<double>(24, 1.0), Unit::kilowatt);
    const auto c = series_of(std::vector<double>(24, 1.0), Unit::celsius);
    CHECK_THROWS_AS(kw + c, std::invalid_argument);

    const auto longer = series_of(std::vector<double>(48, 1.0), Unit::kilowatt);
    CHECK_THROWS_AS(kw + longer, std::invalid_argument);

    const HourlySeries shifted(make_date(2018, 2, 1), std::vector<double>(24, 1.0),
                               Unit::kilowatt);
    CHECK_THROWS_AS(kw - shifted, std::invalid_argument);

    const auto sum = kw + kw;
    CHECK(sum[0] == 2.0);
    CHECK(scale(kw, 3.0)[5] == 3.0);
}

TEST_CASE("date helpers") {
    CHECK(format_date(make_date(2018, 3, 9)) == "2018-03-09");
    CHECK(parse_date("2018-03-09") == make_date(2018, 3, 9));
    CHECK(date_plus_days(make_date(2018, 1, 31), 1) == make_date(2018, 2, 1));
    CHECK_THROWS_AS(parse_date("2018-13-01"), std::invalid_argument);

    const auto s = series_of(std::vector<double>(48, 0.0));
    CHECK(s.date_of_day(1) == make_date(2018, 1, 2));
}
