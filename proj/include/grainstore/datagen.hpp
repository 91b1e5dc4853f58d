#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "grainstore/table.hpp"

namespace grainstore {

/// Seed-pinned generator. Bounded draws avoid std::uniform_int_distribution
/// so the same seed yields the same data on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
    std::int64_t range(std::int64_t lo, std::int64_t hi) { // inclusive
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 engine_;
};

/// TN / Customer ID / Customer Name / Subscription / Date, date-designated.
Schema customer_schema();

/// The 536-row fixture: 534 July records then one on Aug 1 and one on Aug 2
/// of 2018, dates ascending. Rows 1, 2, 534, 535 and 536 carry the classic
/// worked-example values (Anne Allgood .. Elise Everett).
Table example_customer_table();

/// Arbitrary-length customer-shaped rows, dates ascending from `first_day`
/// at `per_day` records per day.
std::vector<Record> make_customer_records(std::uint64_t seed, std::size_t n, Date first_day,
                                          std::size_t per_day);

/// Patient ID (key) / Case number. 18 rows with two pinned entities: id
/// ...27001 at ordinals {3,5,6,11,18} and id ...75507 at {2,4,10}.
Schema patient_schema();
Table example_patient_table();

/// Student name (key) / Submitted / Timestamp / [Action /] Currency, set up
/// for periodic modification; `with_action` adds the Action column used by
/// periodic deletion.
Schema submission_schema(bool with_action);

/// id / entity (key) / amount / date (designated), dates ascending from
/// `first_day` at `per_day` records per day, entity keys drawn from
/// `key_cardinality` distinct values.
Table make_sorted_table(std::uint64_t seed, std::size_t n, Date first_day, std::size_t per_day,
                        std::size_t key_cardinality);

/// seq (key) / payload / ts (designated), strictly increasing timestamps
/// starting at `start`, gaps of 1..max_step_minutes minutes.
Table make_event_table(std::uint64_t seed, std::size_t n, Timestamp start,
                       std::size_t max_step_minutes);

} // namespace grainstore
