#include "grainstore/value.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace grainstore {

namespace {

namespace chr = std::chrono;

chr::sys_days to_sys_days(Date d) {
    return chr::sys_days{chr::days{d.days}};
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

std::optional<unsigned> parse_fixed_uint(std::string_view s) {
    if (!all_digits(s)) return std::nullopt;
    unsigned value = 0;
    for (char c : s) value = value * 10 + static_cast<unsigned>(c - '0');
    return value;
}

std::optional<Date> make_date_checked(int y, unsigned m, unsigned d) {
    chr::year_month_day ymd{chr::year{y}, chr::month{m}, chr::day{d}};
    if (!ymd.ok()) return std::nullopt;
    return Date{static_cast<std::int32_t>(chr::sys_days{ymd}.time_since_epoch().count())};
}

struct HmsParts {
    unsigned hour, minute, second;
    bool hour24 = false;
};

// HH:MM:SS; hour 24 is accepted and flagged for rollover.
std::optional<HmsParts> parse_hms(std::string_view s) {
    if (s.size() != 8 || s[2] != ':' || s[5] != ':') return std::nullopt;
    auto h = parse_fixed_uint(s.substr(0, 2));
    auto m = parse_fixed_uint(s.substr(3, 2));
    auto sec = parse_fixed_uint(s.substr(6, 2));
    if (!h || !m || !sec) return std::nullopt;
    if (*h > 24 || *m > 59 || *sec > 59) return std::nullopt;
    return HmsParts{*h == 24 ? 0u : *h, *m, *sec, *h == 24};
}

std::optional<Date> parse_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto y = parse_fixed_uint(s.substr(0, 4));
    auto m = parse_fixed_uint(s.substr(5, 2));
    auto d = parse_fixed_uint(s.substr(8, 2));
    if (!y || !m || !d) return std::nullopt;
    return make_date_checked(static_cast<int>(*y), *m, *d);
}

std::optional<Date> parse_legacy_date(std::string_view s) {
    if (s.size() != 8 || s[2] != '-' || s[5] != '-') return std::nullopt;
    auto m = parse_fixed_uint(s.substr(0, 2));
    auto d = parse_fixed_uint(s.substr(3, 2));
    auto y = parse_fixed_uint(s.substr(6, 2));
    if (!m || !d || !y) return std::nullopt;
    return make_date_checked(static_cast<int>(2000 + *y), *m, *d);
}

} // namespace

Date Date::from_ymd(int year, unsigned month, unsigned day) {
    chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
    return Date{static_cast<std::int32_t>(chr::sys_days{ymd}.time_since_epoch().count())};
}

void Date::to_ymd(int& year, unsigned& month, unsigned& day) const {
    chr::year_month_day ymd{to_sys_days(*this)};
    year = static_cast<int>(ymd.year());
    month = static_cast<unsigned>(ymd.month());
    day = static_cast<unsigned>(ymd.day());
}

int Date::day_of_week() const {
    chr::weekday wd{to_sys_days(*this)};
    return static_cast<int>(wd.c_encoding());
}

Timestamp Timestamp::at(Date d, unsigned hour, unsigned minute, unsigned second) {
    return Timestamp{static_cast<std::int64_t>(d.days) * 86400 + hour * 3600 + minute * 60 + second};
}

Date Timestamp::date() const {
    std::int64_t d = seconds / 86400;
    if (seconds < 0 && seconds % 86400 != 0) --d;
    return Date{static_cast<std::int32_t>(d)};
}

unsigned Timestamp::hour() const {
    std::int64_t rem = seconds - static_cast<std::int64_t>(date().days) * 86400;
    return static_cast<unsigned>(rem / 3600);
}

unsigned Timestamp::minute() const {
    std::int64_t rem = seconds - static_cast<std::int64_t>(date().days) * 86400;
    return static_cast<unsigned>((rem / 60) % 60);
}

unsigned Timestamp::second() const {
    std::int64_t rem = seconds - static_cast<std::int64_t>(date().days) * 86400;
    return static_cast<unsigned>(rem % 60);
}

bool FieldValueLess::operator()(const FieldValue& a, const FieldValue& b) const {
    if (a.index() != b.index()) return a.index() < b.index();
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return false;
            } else {
                return lhs < std::get<T>(b);
            }
        },
        a);
}

std::string format_date(Date d) {
    int y;
    unsigned m, dd;
    d.to_ymd(y, m, dd);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, dd);
    return buf;
}

std::string format_timestamp(Timestamp t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%sT%02u:%02u:%02uZ", format_date(t.date()).c_str(), t.hour(),
                  t.minute(), t.second());
    return buf;
}

std::string format_value(const FieldValue& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(x);
            } else if constexpr (std::is_same_v<T, double>) {
                char buf[32];
                auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
                return std::string(buf, end);
            } else if constexpr (std::is_same_v<T, std::string>) {
                return x;
            } else if constexpr (std::is_same_v<T, Date>) {
                return format_date(x);
            } else {
                return format_timestamp(x);
            }
        },
        v);
}

std::optional<Date> parse_date(std::string_view text) {
    return parse_iso_date(text);
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    if (text.size() != 20 || text[10] != 'T' || text.back() != 'Z') return std::nullopt;
    auto d = parse_iso_date(text.substr(0, 10));
    auto hms = parse_hms(text.substr(11, 8));
    if (!d || !hms || hms->hour24) return std::nullopt;
    return Timestamp::at(*d, hms->hour, hms->minute, hms->second);
}

std::optional<Date> parse_date_lenient(std::string_view text) {
    if (auto iso = parse_iso_date(text)) return iso;
    return parse_legacy_date(text);
}

std::optional<LenientTimestamp> parse_timestamp_lenient(std::string_view text) {
    std::optional<Date> d;
    std::optional<HmsParts> hms;
    if (text.size() == 20 && text[10] == 'T' && text.back() == 'Z') {
        d = parse_iso_date(text.substr(0, 10));
        hms = parse_hms(text.substr(11, 8));
    } else if (text.size() == 17 && text[8] == ' ') {
        d = parse_legacy_date(text.substr(0, 8));
        hms = parse_hms(text.substr(9, 8));
    }
    if (!d || !hms) return std::nullopt;
    Date day = *d;
    if (hms->hour24) day.days += 1;
    return LenientTimestamp{Timestamp::at(day, hms->hour, hms->minute, hms->second), hms->hour24};
}

} // namespace grainstore
