#include <doctest.h>

#include <fstream>

#include "grainstore/datagen.hpp"
#include "grainstore/error.hpp"
#include "grainstore/scheduler.hpp"
#include "grainstore/storage.hpp"

#include "helpers.hpp"

using namespace grainstore;
using testutil::TempDir;

namespace {

Timestamp day_ts(unsigned month, unsigned day, unsigned hour = 0, unsigned minute = 0) {
    return Timestamp::at(Date::from_ymd(2018, month, day), hour, minute, 0);
}

Schema event_schema() {
    Schema s;
    s.fields = {{"seq", FieldType::Integer, false},
                {"payload", FieldType::Text, false},
                {"ts", FieldType::Timestamp, false}};
    s.key_column = "seq";
    s.timestamp_column = "ts";
    return s;
}

/// One record per day at 12:00, growing over the simulated window.
Table daily_source(unsigned first_day, std::size_t n) {
    Table t(event_schema());
    std::vector<Record> rows;
    for (std::size_t i = 0; i < n; ++i)
        rows.push_back(Record{static_cast<std::int64_t>(i + 1), "d" + std::to_string(i + 1),
                              day_ts(8, first_day + static_cast<unsigned>(i), 12)});
    t.append_committed(rows);
    return t;
}

Job nightly(const std::string& name, SyncTechnique technique) {
    Job j;
    j.name = name;
    j.cron_text = "0 0 * * *";
    j.schedule = parse_cron(j.cron_text);
    j.action = {"src", "wh", std::move(technique), "ts"};
    return j;
}

} // namespace

TEST_CASE("a daily LSP job executes once per day and converges") {
    TableSet tables;
    tables["src"] = daily_source(1, 3);
    tables["wh"] = Table(event_schema());

    auto log = run_jobs({nightly("lsp", Lsp{"ts"})}, day_ts(8, 2), day_ts(8, 4, 23, 59), {},
                        tables);
    REQUIRE(log.size() == 3); // midnights of Aug 2, 3, 4
    for (const auto& entry : log) {
        CHECK(entry.outcome == RunOutcome::Executed);
        REQUIRE(entry.report);
    }
    CHECK(log[0].at == day_ts(8, 2));
    CHECK(log[2].at == day_ts(8, 4));
    // Each run picked up exactly the day that had become visible.
    CHECK(log[0].report->records_added == 1);
    CHECK(log[1].report->records_added == 1);
    CHECK(log[2].report->records_added == 1);

    // End state equals the direct Entirety copy oracle.
    Table oracle(event_schema());
    sync(tables["src"], oracle, Entirety{});
    CHECK(tables["wh"].records() == oracle.records());
}

TEST_CASE("an OLSP job with an outage skips fires and catches up") {
    TableSet tables;
    tables["src"] = daily_source(1, 5);
    tables["wh"] = Table(event_schema());

    // Two midnights lost to an outage window.
    OutageWindow outage{day_ts(8, 3), day_ts(8, 5)};
    auto log = run_jobs({nightly("olsp", Olsp{"ts", 3})}, day_ts(8, 2), day_ts(8, 6, 23, 59),
                        std::vector<OutageWindow>{outage}, tables);
    REQUIRE(log.size() == 5);
    CHECK(log[0].outcome == RunOutcome::Executed); // Aug 2
    CHECK(log[1].outcome == RunOutcome::Skipped);  // Aug 3
    CHECK(log[2].outcome == RunOutcome::Skipped);  // Aug 4
    CHECK(log[3].outcome == RunOutcome::Executed); // Aug 5: catch-up
    CHECK(log[4].outcome == RunOutcome::Executed);

    REQUIRE(log[3].report);
    CHECK(log[3].report->duplicates_removed >= 1); // the over-read re-read the stored tail
    Table oracle(event_schema());
    sync(tables["src"], oracle, Entirety{});
    CHECK(tables["wh"].records() == oracle.records());
}

TEST_CASE("empty job set yields an empty log") {
    TableSet tables;
    auto log = run_jobs({}, day_ts(8, 1), day_ts(8, 31), {}, tables);
    CHECK(log.empty());
}

TEST_CASE("runs are deterministic") {
    auto run_once = [] {
        TableSet tables;
        tables["src"] = daily_source(1, 4);
        tables["wh"] = Table(event_schema());
        return run_jobs({nightly("a", Lsp{"ts"}), nightly("b", Olsp{"ts", 2})}, day_ts(8, 1),
                        day_ts(8, 5), {}, tables);
    };
    auto first = run_once();
    auto second = run_once();
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].job == second[i].job);
        CHECK(first[i].at == second[i].at);
        CHECK(first[i].outcome == second[i].outcome);
    }
}

TEST_CASE("same-instant jobs run in name order") {
    TableSet tables;
    tables["src"] = daily_source(1, 3);
    tables["wh"] = Table(event_schema());
    auto log = run_jobs({nightly("zebra", Lsp{"ts"}), nightly("alpha", Entirety{})},
                        day_ts(8, 2), day_ts(8, 2, 23, 59), {}, tables);
    REQUIRE(log.size() == 2);
    CHECK(log[0].job == "alpha");
    CHECK(log[1].job == "zebra");
}

TEST_CASE("failures land in the log without halting other jobs") {
    TableSet tables;
    tables["src"] = daily_source(1, 3);
    tables["wh"] = Table(event_schema());
    Job broken = nightly("broken", Lsp{"ts"});
    broken.action.source = "missing";
    auto log = run_jobs({broken, nightly("ok", Lsp{"ts"})}, day_ts(8, 2), day_ts(8, 2, 23, 59),
                        {}, tables);
    REQUIRE(log.size() == 2);
    CHECK(log[0].job == "broken");
    CHECK(log[0].outcome == RunOutcome::Failed);
    CHECK(log[0].error.find("missing") != std::string::npos);
    CHECK(log[1].outcome == RunOutcome::Executed);
}

TEST_CASE("visibility clipping reveals records as time passes") {
    Table src = daily_source(1, 10);
    Table early = visible_slice(src, "ts", day_ts(8, 3, 23, 59));
    CHECK(early.record_count() == 3);
    Table all = visible_slice(src, "ts", day_ts(8, 30));
    CHECK(all.record_count() == 10);
    CHECK_THROWS_AS(visible_slice(src, "nope", day_ts(8, 1)), Error);
}

TEST_CASE("jobs files load and validate") {
    TempDir dir;
    std::ofstream(dir.file("jobs.json"))
        << R"([{"name": "nightly", "cron": "0 0 * * *", "source": "s.csv",
                "dest": "w.csv", "technique": "olsp:ts:3", "visible_from": "ts"}])";
    auto jobs = load_jobs(dir.file("jobs.json"));
    REQUIRE(jobs.size() == 1);
    CHECK(jobs[0].name == "nightly");
    CHECK(technique_name(jobs[0].action.technique) == "olsp:ts:3");
    CHECK(jobs[0].action.visible_from == "ts");

    SUBCASE("duplicate names rejected") {
        std::ofstream(dir.file("dup.json"))
            << R"([{"name": "x", "cron": "* * * * *", "source": "a", "dest": "b",
                    "technique": "entirety"},
                   {"name": "x", "cron": "* * * * *", "source": "a", "dest": "b",
                    "technique": "entirety"}])";
        CHECK_THROWS_AS(load_jobs(dir.file("dup.json")), Error);
    }
    SUBCASE("bad cron expressions surface with their field") {
        std::ofstream(dir.file("bad.json"))
            << R"([{"name": "x", "cron": "61 * * * *", "source": "a", "dest": "b",
                    "technique": "entirety"}])";
        try {
            load_jobs(dir.file("bad.json"));
            FAIL("expected InvalidCronExpression");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::InvalidCronExpression);
        }
    }
}

TEST_CASE("fires outside the clock range do not run") {
    TableSet tables;
    tables["src"] = daily_source(1, 3);
    tables["wh"] = Table(event_schema());
    Job hourly = nightly("hourly", Lsp{"ts"});
    hourly.cron_text = "30 * * * *";
    hourly.schedule = parse_cron(hourly.cron_text);
    auto log = run_jobs({hourly}, day_ts(8, 2, 10, 0), day_ts(8, 2, 12, 0), {}, tables);
    REQUIRE(log.size() == 2); // 10:30 and 11:30 only
    CHECK(log[0].at == day_ts(8, 2, 10, 30));
    CHECK(log[1].at == day_ts(8, 2, 11, 30));
}
