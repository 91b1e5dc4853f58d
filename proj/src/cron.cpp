#include "grainstore/cron.hpp"

#include <charconv>
#include <vector>

#include "grainstore/error.hpp"

namespace grainstore {

namespace {

struct FieldSpecifier {
    const char* name;
    unsigned lo;
    unsigned hi;
};

constexpr FieldSpecifier kFields[5] = {
    {"minute", 0, 59}, {"hour", 0, 23}, {"day of month", 1, 31}, {"month", 1, 12},
    {"day of week", 0, 6},
};

[[noreturn]] void bad_field(std::size_t field_idx, const std::string& why) {
    throw Error(Errc::InvalidCronExpression,
                "field " + std::to_string(field_idx + 1) + " (" + kFields[field_idx].name +
                    "): " + why);
}

unsigned parse_number(std::string_view s, std::size_t field_idx) {
    unsigned v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        bad_field(field_idx, "bad number '" + std::string(s) + "'");
    return v;
}

unsigned parse_bounded(std::string_view s, std::size_t field_idx) {
    unsigned v = parse_number(s, field_idx);
    const FieldSpecifier& f = kFields[field_idx];
    if (v < f.lo || v > f.hi)
        bad_field(field_idx, "value " + std::to_string(v) + " out of range " +
                                 std::to_string(f.lo) + "-" + std::to_string(f.hi));
    return v;
}

/// One comma-separated atom: * | N | N-M, optionally /step on * or a range.
template <std::size_t N>
void parse_atom(std::string_view atom, std::size_t field_idx, std::bitset<N>& bits) {
    const FieldSpecifier& f = kFields[field_idx];
    if (atom.empty()) bad_field(field_idx, "empty list element");

    unsigned step = 1;
    std::string_view base = atom;
    if (auto slash = atom.find('/'); slash != std::string_view::npos) {
        base = atom.substr(0, slash);
        std::string_view step_text = atom.substr(slash + 1);
        if (step_text.empty()) bad_field(field_idx, "missing step value");
        step = parse_number(step_text, field_idx);
        if (step == 0) bad_field(field_idx, "step must be >= 1");
        if (base != "*" && base.find('-') == std::string_view::npos)
            bad_field(field_idx, "step needs '*' or a range");
    }

    unsigned lo = f.lo, hi = f.hi;
    if (base != "*") {
        if (auto dash = base.find('-'); dash != std::string_view::npos) {
            lo = parse_bounded(base.substr(0, dash), field_idx);
            hi = parse_bounded(base.substr(dash + 1), field_idx);
            if (lo > hi)
                bad_field(field_idx, "reversed range " + std::to_string(lo) + "-" +
                                         std::to_string(hi));
        } else {
            lo = hi = parse_bounded(base, field_idx);
        }
    }
    for (unsigned v = lo; v <= hi; v += step) bits.set(v);
}

template <std::size_t N>
void parse_field(std::string_view text, std::size_t field_idx, std::bitset<N>& bits) {
    std::size_t pos = 0;
    while (true) {
        auto comma = text.find(',', pos);
        parse_atom(text.substr(pos, comma == std::string_view::npos ? comma : comma - pos),
                   field_idx, bits);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
        if (pos == text.size()) bad_field(field_idx, "empty list element");
    }
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

bool day_clause(const CronSchedule& s, Date d) {
    int y;
    unsigned m, dom;
    d.to_ymd(y, m, dom);
    bool dom_ok = s.days_of_month.test(dom);
    bool dow_ok = s.days_of_week.test(static_cast<std::size_t>(d.day_of_week()));
    if (s.dom_restricted && s.dow_restricted) return dom_ok || dow_ok;
    return dom_ok && dow_ok;
}

bool month_ok(const CronSchedule& s, Date d) {
    int y;
    unsigned m, dom;
    d.to_ymd(y, m, dom);
    return s.months.test(m);
}

} // namespace

CronSchedule parse_cron(std::string_view expr) {
    auto fields = split_ws(expr);
    if (fields.size() != 5)
        throw Error(Errc::InvalidCronExpression,
                    "expected 5 fields, got " + std::to_string(fields.size()));
    CronSchedule s;
    parse_field(fields[0], 0, s.minutes);
    parse_field(fields[1], 1, s.hours);
    parse_field(fields[2], 2, s.days_of_month);
    parse_field(fields[3], 3, s.months);
    parse_field(fields[4], 4, s.days_of_week);
    auto unrestricted = [](std::string_view f) { return f == "*" || f == "*/1"; };
    s.dom_restricted = !unrestricted(fields[2]);
    s.dow_restricted = !unrestricted(fields[4]);
    return s;
}

bool cron_matches(const CronSchedule& schedule, Timestamp t) {
    Timestamp minute_aligned{t.seconds - t.seconds % 60};
    Date d = minute_aligned.date();
    return schedule.minutes.test(minute_aligned.minute()) &&
           schedule.hours.test(minute_aligned.hour()) && month_ok(schedule, d) &&
           day_clause(schedule, d);
}

Timestamp cron_horizon_end(Timestamp after) {
    Date last{after.date().days + kCronHorizonDays};
    return Timestamp::at(last, 23, 59, 0);
}

std::optional<Timestamp> next_fire_within(const CronSchedule& schedule, Timestamp after) {
    std::int64_t t0 = after.seconds - after.seconds % 60 + 60; // first candidate minute
    Timestamp horizon = cron_horizon_end(after);
    Date first_day = Timestamp{t0}.date();
    for (std::int32_t day = first_day.days; day <= first_day.days + kCronHorizonDays; ++day) {
        Date d{day};
        if (!month_ok(schedule, d) || !day_clause(schedule, d)) continue;
        for (unsigned h = 0; h < 24; ++h) {
            if (!schedule.hours.test(h)) continue;
            for (unsigned m = 0; m < 60; ++m) {
                if (!schedule.minutes.test(m)) continue;
                Timestamp cand = Timestamp::at(d, h, m, 0);
                if (cand.seconds < t0) continue;
                if (horizon < cand) return std::nullopt;
                return cand;
            }
        }
    }
    return std::nullopt;
}

Timestamp next_fire(const CronSchedule& schedule, Timestamp after) {
    if (auto t = next_fire_within(schedule, after)) return *t;
    throw Error(Errc::NoFireWithinHorizon,
                "no matching instant by " + format_timestamp(cron_horizon_end(after)));
}

} // namespace grainstore
