#include "notesforge/dates.hpp"

#include <array>
#include <charconv>

#include "notesforge/errors.hpp"

namespace notesforge {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr std::array<int, 12> lens = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lens[static_cast<size_t>(m - 1)];
}

int parse_int_field(std::string_view s, const char* what) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw SchemaError(std::string("invalid date ") + what + ": '" + std::string(s) + "'");
    return v;
}

}  // namespace

// Howard Hinnant's civil-days algorithms.
int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

Civil civil_from_days(int64_t z) {
    z += 719468;
    const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int64_t y = static_cast<int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Civil{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

Date parse_date(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-')
        throw SchemaError("invalid date '" + std::string(iso) + "', expected YYYY-MM-DD");
    const int y = parse_int_field(iso.substr(0, 4), "year");
    const int m = parse_int_field(iso.substr(5, 2), "month");
    const int d = parse_int_field(iso.substr(8, 2), "day");
    if (m < 1 || m > 12 || d < 1 || d > days_in_month(y, m))
        throw SchemaError("impossible date '" + std::string(iso) + "'");
    return Date{static_cast<int32_t>(days_from_civil(y, m, d))};
}

std::string format_date(Date d) {
    const Civil c = civil_from_days(d.days);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", c.year, c.month, c.day);
    return buf;
}

std::string format_month(Date d) {
    const Civil c = civil_from_days(d.days);
    char buf[12];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", c.year, c.month);
    return buf;
}

Date add_days(Date d, int n) { return Date{d.days + n}; }

int weekday(Date d) {
    // 1970-01-01 was a Thursday (ISO weekday 4).
    int64_t w = (static_cast<int64_t>(d.days) + 3) % 7;
    if (w < 0) w += 7;
    return static_cast<int>(w) + 1;
}

namespace {

int iso_weeks_in_year(int year) {
    // 53-week years start on a Thursday, or on a Wednesday when leap.
    const int wd = weekday(Date{static_cast<int32_t>(days_from_civil(year, 1, 1))});
    return (wd == 4 || (is_leap(year) && wd == 3)) ? 53 : 52;
}

}  // namespace

IsoWeek iso_week(Date d) {
    const Civil c = civil_from_days(d.days);
    const int64_t jan1 = days_from_civil(c.year, 1, 1);
    const int ordinal = static_cast<int>(d.days - jan1) + 1;
    int week = (ordinal - weekday(d) + 10) / 7;
    int year = c.year;
    if (week < 1) {
        year -= 1;
        week = iso_weeks_in_year(year);
    } else if (week > iso_weeks_in_year(year)) {
        year += 1;
        week = 1;
    }
    return IsoWeek{year, week};
}

std::string format_iso_week(IsoWeek w) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-W%02d", w.year, w.week);
    return buf;
}

}  // namespace notesforge
