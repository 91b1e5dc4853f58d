#pragma once

#include <bitset>
#include <optional>
#include <string>
#include <string_view>

#include "grainstore/value.hpp"

namespace grainstore {

/// A parsed five-field crontab expression (minute, hour, day-of-month,
/// month, day-of-week; 0 = Sunday). Field atoms are `*`, N, N-M, and `/step`
/// on `*` or a range; commas separate atoms. No names, no seconds field, no
/// special strings.
///
/// The restricted flags remember whether the day fields were written as
/// something other than `*` (or the equivalent `*/1`): when both are
/// restricted the day clause is an OR, classic crontab style.
struct CronSchedule {
    std::bitset<60> minutes;
    std::bitset<24> hours;
    std::bitset<32> days_of_month; // bits 1..31
    std::bitset<13> months;        // bits 1..12
    std::bitset<7> days_of_week;
    bool dom_restricted = false;
    bool dow_restricted = false;
};

/// Throws InvalidCronExpression naming the 1-based field and the reason.
CronSchedule parse_cron(std::string_view expr);

/// Minute-granularity match (seconds of `t` are ignored).
bool cron_matches(const CronSchedule& schedule, Timestamp t);

/// Schedules are guaranteed to fire within this window or never (only
/// nonexistent dates like Feb 31 produce "never").
inline constexpr int kCronHorizonDays = 1462; // ~4 years

/// End of the last day next_fire will consider for `after`.
Timestamp cron_horizon_end(Timestamp after);

/// Least minute-aligned instant strictly after `after` that matches, or
/// nullopt when nothing fires by cron_horizon_end(after).
std::optional<Timestamp> next_fire_within(const CronSchedule& schedule, Timestamp after);

/// Throwing form: NoFireWithinHorizon instead of nullopt.
Timestamp next_fire(const CronSchedule& schedule, Timestamp after);

} // namespace grainstore
