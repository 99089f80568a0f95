#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace notesforge {

// Calendar date stored as days since 1970-01-01 (proleptic Gregorian).
struct Date {
    int32_t days = 0;
    auto operator<=>(const Date&) const = default;
};

struct Civil {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
};

// ISO-8601 week: week 1 is the week containing the first Thursday of the year.
struct IsoWeek {
    int year = 0;
    int week = 0;
    auto operator<=>(const IsoWeek&) const = default;
};

int64_t days_from_civil(int year, int month, int day);
Civil civil_from_days(int64_t days);

// Strict "YYYY-MM-DD"; throws SchemaError on malformed or impossible dates.
Date parse_date(std::string_view iso);
std::string format_date(Date d);
std::string format_month(Date d);  // "YYYY-MM"

Date add_days(Date d, int n);
int weekday(Date d);  // ISO convention, Mon=1 .. Sun=7

IsoWeek iso_week(Date d);
std::string format_iso_week(IsoWeek w);  // "YYYY-Www"

}  // namespace notesforge
