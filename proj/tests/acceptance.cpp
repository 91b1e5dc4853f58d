// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each criterion also carries a wall-time budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "grainstore/bench.hpp"
#include "grainstore/cron.hpp"
#include "grainstore/datagen.hpp"
#include "grainstore/insert.hpp"
#include "grainstore/retrieval.hpp"
#include "grainstore/scheduler.hpp"
#include "grainstore/storage.hpp"
#include "grainstore/sync.hpp"
#include "grainstore/temporal.hpp"

#include "cron_gen.hpp"
#include "cron_oracle.hpp"

using namespace grainstore;

namespace {

struct CheckFailure {
    std::string message;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw CheckFailure{what};
}

template <typename A, typename B>
void require_eq(const A& a, const B& b, const std::string& what) {
    if (!(a == b)) {
        std::ostringstream ss;
        ss << what << " (got " << a << ", want " << b << ")";
        throw CheckFailure{ss.str()};
    }
}

Timestamp day_ts(unsigned month, unsigned day, unsigned hour = 0) {
    return Timestamp::at(Date::from_ymd(2018, month, day), hour, 0, 0);
}

std::string table_bytes(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.schema().arity(); ++i)
        out += (i ? "," : "") + t.schema().fields[i].name;
    out += "\r\n";
    for (const Record& r : t.records()) out += csv_line(t.schema(), r) + "\r\n";
    return out;
}

// ---- criterion 1: worked-example reproduction --------------------------------

void criterion_worked_examples() {
    // (a) customer/GLS worked example
    Table customers = example_customer_table();
    GrainIndex gidx = build_grain_index(customers, GrainSpec::QuarterMonth);
    require_eq(gidx.entries().size(), std::size_t{2}, "GLS lookup table has two entries");
    require(gidx.entries()[0].code == "Q3M7" && gidx.entries()[0].start_ordinal == 1,
            "entry (Q3M7, 1)");
    require(gidx.entries()[1].code == "Q3M8" && gidx.entries()[1].start_ordinal == 535,
            "entry (Q3M8, 535)");
    auto scan = scan_date_range(customers, Date::from_ymd(2018, 8, 1), Date::from_ymd(2018, 8, 2));
    auto gls = lookup_date_range_gls(customers, gidx, Date::from_ymd(2018, 8, 1),
                                     Date::from_ymd(2018, 8, 2));
    require_eq(scan.records.size(), std::size_t{2}, "Aug 1-2 returns two records");
    require(scan.records == gls.records, "GLS result equals the scan");
    require_eq(std::get<std::int64_t>(scan.records[0][0]), std::int64_t{535}, "first hit is TN 535");
    require_eq(std::get<std::int64_t>(scan.records[1][0]), std::int64_t{536}, "second hit is TN 536");

    // (b) indexed patient table and its row explosion
    Table patients = example_patient_table();
    EntityIndex eidx = build_entity_index(patients);
    const FieldValue pa = std::string("28435300131710927001");
    const FieldValue pb = std::string("56729845935643075507");
    require(eidx.entries().at(pa) == std::vector<std::size_t>{3, 5, 6, 11, 18},
            "patient ...27001 aggregates 3,5,6,11,18");
    require(eidx.entries().at(pb) == std::vector<std::size_t>{2, 4, 10},
            "patient ...75507 aggregates 2,4,10");
    auto exploded = row_explode(pa, eidx.entries().at(pa));
    require_eq(exploded.size(), std::size_t{5}, "row explosion yields five rows");
    for (std::size_t i = 0; i < exploded.size(); ++i)
        require(exploded[i].first == pa &&
                    exploded[i].second == eidx.entries().at(pa)[i],
                "exploded row " + std::to_string(i + 1));
    auto imploded = row_implode(exploded);
    require(imploded.first == pa && imploded.second == eidx.entries().at(pa),
            "row implosion inverts the explosion");

    // (c) submission tables, byte for byte after replaying the narration
    const FieldValue cruz = std::string("Cruz, Michael T.");
    Table mod(submission_schema(false));
    mod.append_committed(std::vector<Record>{
        {cruz, std::string("None"), std::monostate{}, std::string("Current")}});
    update_periodic(mod, cruz, {{"Submitted", std::string("file(1).txt")}},
                    Timestamp::at(Date::from_ymd(2018, 8, 23), 23, 58, 40));
    update_periodic(mod, cruz, {{"Submitted", std::string("file(2).txt")}},
                    Timestamp::at(Date::from_ymd(2018, 8, 23), 23, 59, 54));
    require_eq(table_bytes(mod),
               std::string("Student name,Submitted,Timestamp,Currency\r\n"
                           "\"Cruz, Michael T.\",None,,\r\n"
                           "\"Cruz, Michael T.\",file(1).txt,2018-08-23T23:58:40Z,\r\n"
                           "\"Cruz, Michael T.\",file(2).txt,2018-08-23T23:59:54Z,Current\r\n"),
               "periodic-modification table bytes");

    Table del(submission_schema(true));
    del.append_committed(std::vector<Record>{{cruz, std::string("None"), std::monostate{},
                                              std::string("Not Submitted"),
                                              std::string("Current")}});
    update_periodic(del, cruz,
                    {{"Submitted", std::string("file(1).txt")},
                     {"Action", std::string("Submitted")}},
                    Timestamp::at(Date::from_ymd(2018, 8, 23), 23, 58, 40));
    delete_periodic(del, cruz, Timestamp::at(Date::from_ymd(2018, 8, 23), 23, 59, 54));
    auto hour24 = parse_timestamp_lenient("08-24-18 24:05:23");
    require(hour24 && hour24->normalized, "hour-24 timestamp normalizes on load");
    update_periodic(del, cruz,
                    {{"Submitted", std::string("file(2).txt")},
                     {"Action", std::string("Submitted")}},
                    hour24->value);
    require_eq(table_bytes(del),
               std::string("Student name,Submitted,Timestamp,Action,Currency\r\n"
                           "\"Cruz, Michael T.\",None,,Not Submitted,\r\n"
                           "\"Cruz, Michael T.\",file(1).txt,2018-08-23T23:58:40Z,Submitted,\r\n"
                           "\"Cruz, Michael T.\",file(1).txt,2018-08-23T23:59:54Z,Deleted,\r\n"
                           "\"Cruz, Michael T.\",file(2).txt,2018-08-25T00:05:23Z,Submitted,"
                           "Current\r\n"),
               "periodic-deletion table bytes");

    // (d) the OLSP d-sequence with offset 3
    Schema es;
    es.fields = {{"seq", FieldType::Integer, false},
                 {"payload", FieldType::Text, false},
                 {"ts", FieldType::Timestamp, false}};
    es.key_column = "seq";
    es.timestamp_column = "ts";
    auto ev = [](std::int64_t seq, const std::string& p, unsigned day) {
        return Record{seq, p, Timestamp::at(Date::from_ymd(2018, 8, day), 0, 0, 0)};
    };
    Table source{es};
    source.append_committed(std::vector<Record>{ev(1, "d1", 1), ev(2, "d2", 3), ev(3, "d3", 10),
                                                ev(4, "d4", 20), ev(5, "d5", 21), ev(6, "d6", 22),
                                                ev(7, "d7", 23)});
    Table warehouse = Table::restored(es, std::vector<Record>(source.records().begin(),
                                                              source.records().begin() + 4));
    auto report = sync(source, warehouse, Olsp{"ts", 3});
    require_eq(report.duplicates_removed, std::size_t{1}, "exactly one duplicate removed");
    require(warehouse.records() == source.records(), "warehouse equals the source");
}

// ---- criterion 2: strategy equivalence -------------------------------------

void criterion_strategy_equivalence() {
    Rng rng(0xC2);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = rng.below(10001);
        auto rows = make_customer_records(0xC200 + trial, n, Date::from_ymd(2018, 7, 5), 400);
        std::size_t p = 1 + rng.below(700);
        std::size_t workers = 1 + rng.below(8);
        Parallel parallel{workers, Bulk{}};
        if (rng.below(2)) parallel.inner = Partitioned{p};

        Table successive(customer_schema());
        insert(successive, rows, Successive{});
        require_eq(successive.commit_count(), n, "successive commits = n");

        Table bulk(customer_schema());
        insert(bulk, rows, Bulk{});
        require_eq(bulk.commit_count(), std::uint64_t{1}, "bulk commits = 1");
        require(bulk == successive, "bulk equals successive");

        Table part(customer_schema());
        insert(part, rows, Partitioned{p});
        require_eq(part.commit_count(), (n + p - 1) / p, "partitioned commits = ceil(n/p)");
        require(part == successive, "partitioned equals successive");

        Table par(customer_schema());
        insert(par, rows, parallel);
        require_eq(par.commit_count(), commit_count_of(parallel, n),
                   "parallel commits match its inner strategy");
        require(par == successive, "parallel equals successive");
    }
}

// ---- criterion 3: retrieval oracle equality --------------------------------

void criterion_retrieval_oracles() {
    Rng rng(0xC3);
    const Date base = Date::from_ymd(2018, 2, 5);
    for (int trial = 0; trial < 1000; ++trial) {
        // 2+ records per day keeps every table inside one calendar year, as
        // the year-less quarter-month codes require.
        std::size_t n = rng.below(600);
        Table t = make_sorted_table(0xC300 + trial, n, base, 2 + rng.below(11),
                                    1 + rng.below(20));
        GrainSpec grain = trial % 3 == 0   ? GrainSpec::Day
                          : trial % 3 == 1 ? GrainSpec::Month
                                           : GrainSpec::QuarterMonth;
        GrainIndex gidx = build_grain_index(t, grain);

        // Bucket-aligned start (every start is aligned at Day grain).
        Date pick{static_cast<std::int32_t>(base.days + rng.range(-4, 120))};
        int y;
        unsigned m, d;
        pick.to_ymd(y, m, d);
        Date start = grain == GrainSpec::Day     ? pick
                     : grain == GrainSpec::Month ? Date::from_ymd(y, m, 1)
                                                 : Date::from_ymd(y, (m - 1) / 3 * 3 + 1, 1);
        Date end{static_cast<std::int32_t>(start.days + rng.range(0, 60))};

        auto scan = scan_date_range(t, start, end);
        auto gls = lookup_date_range_gls(t, gidx, start, end);
        require(gls.records == scan.records, "GLS equals first-occurrence scan");
        require(gls.stats.records_touched <= gls.stats.results_returned + 2,
                "GLS touches at most results + 2");

        // Entity retrieval: indexed vs exhaustive.
        EntityIndex eidx = build_entity_index(t);
        FieldValue key = std::string("E" + std::to_string(rng.below(22)));
        auto exhaustive = exhaustive_entity_search(t, key);
        auto indexed = lookup_entity(t, eidx, key);
        require(indexed.records == exhaustive.records, "indexed equals exhaustive");
        require_eq(exhaustive.stats.records_touched, t.record_count(),
                   "exhaustive touches the whole table");
        require_eq(indexed.stats.records_touched, indexed.stats.results_returned,
                   "indexed touches exactly the matches");
    }
}

// ---- criterion 4: temporal invariants --------------------------------------

void criterion_temporal_invariants() {
    Rng rng(0xC4);
    for (int trial = 0; trial < 500; ++trial) {
        Table t(submission_schema(true));
        std::vector<std::string> names;
        std::vector<Record> seed_rows;
        std::size_t entities = 1 + rng.below(6);
        for (std::size_t e = 0; e < entities; ++e) {
            names.push_back("S" + std::to_string(e));
            seed_rows.push_back(Record{names.back(), std::string("None"), std::monostate{},
                                       std::string("Not Submitted"), std::string("Current")});
        }
        t.append_committed(seed_rows);

        Timestamp clock = day_ts(8, 1);
        std::size_t ops = rng.below(101);
        for (std::size_t i = 0; i < ops; ++i) {
            const std::string& who = names[rng.below(names.size())];
            clock.seconds += static_cast<std::int64_t>(rng.below(7200));
            std::size_t before_len = t.record_count();
            std::vector<Record> before = t.records();
            if (rng.below(4) == 0)
                delete_periodic(t, who, clock);
            else
                update_periodic(t, who,
                                {{"Submitted", std::string("f" + std::to_string(i))},
                                 {"Action", std::string("Submitted")}},
                                clock);
            require_eq(t.record_count(), before_len + 1, "periodic ops append exactly one record");
            std::size_t cur_col = *t.schema().index_of("Currency");
            for (std::size_t ord = 1; ord <= before_len; ++ord) {
                Record old = before[ord - 1];
                Record now = t.records()[ord - 1];
                old[cur_col] = std::monostate{};
                now[cur_col] = std::monostate{};
                require(old == now, "append-only: existing cells only lose currency markers");
            }
        }

        // Exactly one Current per entity, latest by timestamp; history
        // timestamps never decrease.
        std::size_t cur_col = *t.schema().index_of("Currency");
        std::size_t ts_col = *t.schema().index_of("Timestamp");
        for (const std::string& who : names) {
            auto history = history_of(t, who);
            std::size_t current = 0;
            Timestamp prev{std::numeric_limits<std::int64_t>::min()};
            Timestamp max_seen = prev, current_ts = prev;
            for (const Record& r : history) {
                Timestamp rts{std::numeric_limits<std::int64_t>::min()};
                if (const auto* p = std::get_if<Timestamp>(&r[ts_col])) rts = *p;
                require(prev <= rts, "history timestamps are non-decreasing");
                prev = rts;
                max_seen = std::max(max_seen, rts);
                if (const auto* marker = std::get_if<std::string>(&r[cur_col]);
                    marker && *marker == "Current") {
                    ++current;
                    current_ts = rts;
                }
            }
            require_eq(current, std::size_t{1}, "exactly one Current record per live entity");
            require(current_ts == max_seen, "the Current record carries the latest timestamp");
        }

        // Exhaustive and indexed mutation paths produce identical tables.
        const std::string& who = names[rng.below(names.size())];
        clock.seconds += 60;
        Table a = t, b = t;
        EntityIndex idx = build_entity_index(b);
        if (rng.below(2)) {
            update_by_key(a, who, {{"Submitted", std::string("x")}}, TemporalMode::Periodic,
                          SearchVia::Exhaustive, nullptr, clock);
            update_by_key(b, who, {{"Submitted", std::string("x")}}, TemporalMode::Periodic,
                          SearchVia::Indexed, &idx, clock);
        } else {
            delete_by_key(a, who, TemporalMode::Periodic, SearchVia::Exhaustive, nullptr, clock);
            delete_by_key(b, who, TemporalMode::Periodic, SearchVia::Indexed, &idx, clock);
        }
        require(a == b, "exhaustive and indexed mutation paths agree");
    }
}

// ---- criterion 5: sync convergence -----------------------------------------

void criterion_sync_convergence() {
    Rng rng(0xC5);
    Schema es;
    es.fields = {{"seq", FieldType::Integer, false},
                 {"payload", FieldType::Text, false},
                 {"ts", FieldType::Timestamp, false}};
    es.key_column = "seq";
    es.timestamp_column = "ts";

    for (int trial = 0; trial < 60; ++trial) {
        // One record per simulated day, unique keys, strictly increasing ts.
        std::size_t days = 6 + rng.below(25);
        std::vector<Record> rows;
        for (std::size_t i = 0; i < days; ++i)
            rows.push_back(Record{static_cast<std::int64_t>(i + 1), "d" + std::to_string(i + 1),
                                  Timestamp{day_ts(7, 1).seconds +
                                            static_cast<std::int64_t>(i) * 86400 + 43200}});
        Table source = Table::restored(es, rows);

        std::int64_t offset = 1 + static_cast<std::int64_t>(rng.below(4));
        std::vector<SyncTechnique> techniques{Entirety{}, MatchSync{"seq"}, Lsp{"ts"},
                                              Olsp{"ts", offset}};
        for (std::size_t kind = 0; kind < techniques.size(); ++kind) {
            bool olsp = kind == 3;
            Table dest(es);
            std::size_t skipped_run = 0; // consecutive skips so far
            for (std::size_t day = 0; day < days; ++day) {
                Timestamp now{day_ts(7, 1).seconds + static_cast<std::int64_t>(day) * 86400 +
                              86340};
                // Outages only for OLSP, never longer than the offset, and
                // never on the last scheduled run.
                bool skip = olsp && day + 1 < days &&
                            skipped_run < static_cast<std::size_t>(offset) && rng.below(3) == 0;
                if (skip) {
                    ++skipped_run;
                    continue;
                }
                skipped_run = 0;
                Table slice = visible_slice(source, "ts", now);
                sync(slice, dest, techniques[kind]);
            }
            require(dest.records() == source.records(),
                    "technique " + technique_name(techniques[kind]) + " converges");
            require_eq(dedup(dest, std::nullopt), std::size_t{0}, "no residual duplicates");
        }
    }

    // The LSP-fragility scenario: a stale externally recorded watermark
    // (one day behind each scheduled run) permanently misses the day the
    // skipped run would have loaded; OLSP over the same cadence misses
    // nothing.
    std::vector<Record> rows;
    for (unsigned d = 1; d <= 4; ++d)
        rows.push_back(Record{static_cast<std::int64_t>(d), "d" + std::to_string(d),
                              day_ts(8, d, 12)});
    Table source = Table::restored(es, rows);
    Table lsp_dest{es}, olsp_dest{es};
    for (unsigned day : {1u, 3u, 4u}) { // the day-2 run is lost to an outage
        Timestamp run = day_ts(8, day, 23);
        Timestamp stale{run.seconds - 86400};
        Table slice = visible_slice(source, "ts", run);
        sync(slice, lsp_dest, Lsp{"ts"}, stale);
        sync(slice, olsp_dest, Olsp{"ts", 3}, stale);
    }
    require_eq(lsp_dest.record_count(), std::size_t{3}, "stale-watermark LSP lost a record");
    bool lost = true;
    for (const Record& r : lsp_dest.records())
        if (std::get<std::string>(r[1]) == "d2") lost = false;
    require(lost, "the skipped day's record is permanently missing under LSP");
    require(olsp_dest.records() == source.records(), "OLSP missed nothing");
}

// ---- criterion 6: cron oracle ----------------------------------------------

void criterion_cron_oracle() {
    Rng rng(0xC6);
    std::size_t with_star = 0, with_comma = 0, with_dash = 0, with_slash = 0;
    const std::int64_t t0 = day_ts(1, 1).seconds - 86400LL * 365 * 3; // 2015..2035 instants
    for (int i = 0; i < 10000; ++i) {
        auto gen = testutil::random_cron(rng);
        with_star += gen.has_star;
        with_comma += gen.has_comma;
        with_dash += gen.has_dash;
        with_slash += gen.has_slash;
        CronSchedule s = parse_cron(gen.text);
        Timestamp after{t0 + static_cast<std::int64_t>(rng.below(86400ULL * 365 * 20))};
        auto fired = next_fire_within(s, after);
        auto expected = testutil::oracle_next_fire(s, after);
        require(fired.has_value() == expected.has_value(),
                "fire/none agrees with the oracle for '" + gen.text + "'");
        if (fired)
            require(*fired == *expected,
                    "next_fire agrees with the minute-scan oracle for '" + gen.text + "'");
    }
    require(with_star >= 1000, "token coverage: *");
    require(with_comma >= 1000, "token coverage: ,");
    require(with_dash >= 1000, "token coverage: -");
    require(with_slash >= 1000, "token coverage: /");
}

// ---- criterion 7: bench sanity ---------------------------------------------

void criterion_bench_sanity() {
    auto report = bench_retrieval_example();
    require_eq(report.rows.size(), std::size_t{2}, "two approaches compared");
    require(report.rows[0].approach == "scan" && report.rows[0].counter >= 534,
            "scan touches at least 534 records");
    require(report.rows[1].approach == "gls:quartermonth" && report.rows[1].counter <= 3,
            "GLS touches at most 3 records");
    std::printf("       (informational) scan %.3f ms vs gls %.3f ms on the 536-record dataset\n",
                report.rows[0].wall_ms, report.rows[1].wall_ms);
}

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<void()> run;
};

} // namespace

int main() {
    std::vector<Criterion> criteria{
        {"worked-example reproduction", 1.0, criterion_worked_examples},
        {"strategy equivalence (200 randomized trials)", 30.0, criterion_strategy_equivalence},
        {"retrieval oracle equality (1000 randomized trials)", 30.0,
         criterion_retrieval_oracles},
        {"temporal invariants (500 randomized sequences)", 30.0, criterion_temporal_invariants},
        {"sync convergence and LSP fragility", 30.0, criterion_sync_convergence},
        {"cron oracle agreement (10000 random pairs)", 60.0, criterion_cron_oracle},
        {"bench sanity on the worked-example dataset", 30.0, criterion_bench_sanity},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            criteria[i].run();
        } catch (const CheckFailure& f) {
            failure = f.message;
        } catch (const std::exception& e) {
            failure = e.what();
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                             .count();
        if (failure.empty() && elapsed > criteria[i].budget_seconds)
            failure = "exceeded " + std::to_string(criteria[i].budget_seconds) + " s budget";
        if (failure.empty()) {
            std::printf("[PASS] %zu. %s (%.2f s)\n", i + 1, criteria[i].name.c_str(), elapsed);
        } else {
            std::printf("[FAIL] %zu. %s (%.2f s): %s\n", i + 1, criteria[i].name.c_str(), elapsed,
                        failure.c_str());
            ++failures;
        }
    }
    return failures;
}
