#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace grainstore {

/// A calendar day, stored as days since 1970-01-01 (UTC, proleptic Gregorian).
struct Date {
    std::int32_t days = 0;

    auto operator<=>(const Date&) const = default;

    static Date from_ymd(int year, unsigned month, unsigned day);
    void to_ymd(int& year, unsigned& month, unsigned& day) const;
    /// 0 = Sunday .. 6 = Saturday.
    int day_of_week() const;
};

/// A UTC instant with second precision, stored as seconds since the epoch.
struct Timestamp {
    std::int64_t seconds = 0;

    auto operator<=>(const Timestamp&) const = default;

    static Timestamp at(Date d, unsigned hour, unsigned minute, unsigned second);
    Date date() const;
    unsigned hour() const;
    unsigned minute() const;
    unsigned second() const;
};

/// A table cell. monostate is NULL and is distinct from empty text.
using FieldValue = std::variant<std::monostate, std::int64_t, double, std::string, Date, Timestamp>;

inline bool is_null(const FieldValue& v) { return std::holds_alternative<std::monostate>(v); }

/// Strict weak order over cells of any type; used for index maps and dedup.
/// Orders by alternative first, then by value.
struct FieldValueLess {
    bool operator()(const FieldValue& a, const FieldValue& b) const;
};

std::string format_date(Date d);           // YYYY-MM-DD
std::string format_timestamp(Timestamp t); // YYYY-MM-DDTHH:MM:SSZ
/// Canonical text of a non-null value. NULL renders as the empty string.
std::string format_value(const FieldValue& v);

/// Strict ISO-8601 forms only.
std::optional<Date> parse_date(std::string_view text);
std::optional<Timestamp> parse_timestamp(std::string_view text);

struct LenientTimestamp {
    Timestamp value;
    bool normalized = false; // true when an hour-24 time was rolled into the next day
};

/// ISO-8601 or the legacy MM-DD-YY form (two-digit years map to 20YY).
std::optional<Date> parse_date_lenient(std::string_view text);
/// ISO-8601 or legacy "MM-DD-YY HH:MM:SS". Hour 24 rolls over to the next day.
std::optional<LenientTimestamp> parse_timestamp_lenient(std::string_view text);

} // namespace grainstore
