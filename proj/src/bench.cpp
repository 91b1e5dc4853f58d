#include "grainstore/bench.hpp"

#include <chrono>

#include "grainstore/datagen.hpp"
#include "grainstore/error.hpp"
#include "grainstore/retrieval.hpp"

namespace grainstore {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

[[noreturn]] void disagree(const std::string& scenario, const std::string& a,
                           const std::string& b) {
    throw std::logic_error("bench " + scenario + ": approaches '" + a + "' and '" + b +
                           "' disagree on results");
}

} // namespace

BenchReport bench_insert(std::size_t n, const std::vector<InsertStrategy>& strategies,
                         std::uint64_t seed) {
    if (n == 0) throw Error(Errc::Usage, "bench insert needs n >= 1");
    BenchReport report{"insert n=" + std::to_string(n), "commits", seed, {}};
    auto rows = make_customer_records(seed, n, Date::from_ymd(2018, 7, 5), 20);
    std::optional<Table> reference;
    for (const InsertStrategy& s : strategies) {
        Table t(customer_schema());
        auto t0 = std::chrono::steady_clock::now();
        insert(t, rows, s);
        double wall = ms_since(t0);
        if (!reference)
            reference = t;
        else if (!(t == *reference))
            disagree(report.scenario, strategy_name(strategies.front()), strategy_name(s));
        report.rows.push_back(
            {strategy_name(s), static_cast<std::size_t>(t.commit_count()), n, wall});
    }
    return report;
}

namespace {

struct Accumulated {
    std::size_t touched = 0;
    std::size_t results = 0;
    double wall_ms = 0.0;
};

} // namespace

BenchReport bench_retrieval(std::size_t n, std::size_t queries, std::uint64_t seed) {
    BenchReport report{"retrieval n=" + std::to_string(n) + " q=" + std::to_string(queries),
                       "records_touched", seed, {}};
    if (queries == 0) return report; // nothing ran, nothing to row
    Table table = make_sorted_table(seed, n, Date::from_ymd(2018, 1, 5), 20,
                                    std::max<std::size_t>(1, n / 10));
    GrainIndex gidx = build_grain_index(table, GrainSpec::Day);
    EntityIndex eidx = build_entity_index(table);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);

    Accumulated scan, gls, exhaustive, indexed;
    std::size_t days = table.record_count() ? n / 20 + 1 : 1;
    for (std::size_t q = 0; q < queries; ++q) {
        Date start{static_cast<std::int32_t>(Date::from_ymd(2018, 1, 5).days +
                                             rng.range(0, static_cast<std::int64_t>(days)))};
        Date end{static_cast<std::int32_t>(start.days + rng.range(0, 10))};

        auto t0 = std::chrono::steady_clock::now();
        ScanResult a = scan_date_range(table, start, end);
        scan.wall_ms += ms_since(t0);
        scan.touched += a.stats.records_touched;
        scan.results += a.stats.results_returned;

        t0 = std::chrono::steady_clock::now();
        ScanResult b = lookup_date_range_gls(table, gidx, start, end);
        gls.wall_ms += ms_since(t0);
        gls.touched += b.stats.records_touched;
        gls.results += b.stats.results_returned;
        if (a.records != b.records) disagree(report.scenario, "scan", "gls");

        FieldValue key = std::string("E" + std::to_string(rng.below(std::max<std::size_t>(
                                              1, n / 10))));
        t0 = std::chrono::steady_clock::now();
        ScanResult c = exhaustive_entity_search(table, key);
        exhaustive.wall_ms += ms_since(t0);
        exhaustive.touched += c.stats.records_touched;
        exhaustive.results += c.stats.results_returned;

        t0 = std::chrono::steady_clock::now();
        ScanResult d = lookup_entity(table, eidx, key);
        indexed.wall_ms += ms_since(t0);
        indexed.touched += d.stats.records_touched;
        indexed.results += d.stats.results_returned;
        if (c.records != d.records) disagree(report.scenario, "exhaustive", "indexed");
    }
    report.rows.push_back({"scan", scan.touched, scan.results, scan.wall_ms});
    report.rows.push_back({"gls:day", gls.touched, gls.results, gls.wall_ms});
    report.rows.push_back({"exhaustive", exhaustive.touched, exhaustive.results,
                           exhaustive.wall_ms});
    report.rows.push_back({"indexed", indexed.touched, indexed.results, indexed.wall_ms});
    return report;
}

BenchReport bench_retrieval_example() {
    BenchReport report{"retrieval example-shape n=536", "records_touched", 536, {}};
    Table table = example_customer_table();
    GrainIndex gidx = build_grain_index(table, GrainSpec::QuarterMonth);
    Date start = Date::from_ymd(2018, 8, 1);
    Date end = Date::from_ymd(2018, 8, 2);

    auto t0 = std::chrono::steady_clock::now();
    ScanResult a = scan_date_range(table, start, end);
    double scan_ms = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    ScanResult b = lookup_date_range_gls(table, gidx, start, end);
    double gls_ms = ms_since(t0);
    if (a.records != b.records) disagree(report.scenario, "scan", "gls");

    report.rows.push_back(
        {"scan", a.stats.records_touched, a.stats.results_returned, scan_ms});
    report.rows.push_back(
        {"gls:quartermonth", b.stats.records_touched, b.stats.results_returned, gls_ms});
    return report;
}

ReportFormat parse_report_format(std::string_view text) {
    if (text == "markdown") return ReportFormat::Markdown;
    if (text == "csv") return ReportFormat::Csv;
    throw Error(Errc::Usage, "unknown format '" + std::string(text) + "'");
}

std::string emit_report(const BenchReport& report, ReportFormat format, bool include_times) {
    std::string out;
    auto fmt_ms = [](double ms) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", ms);
        return std::string(buf);
    };
    if (format == ReportFormat::Markdown) {
        out += "# " + report.scenario + " (seed " + std::to_string(report.seed) + ")\n\n";
        out += "| approach | " + report.counter_name + " | results |";
        if (include_times) out += " wall_ms |";
        out += "\n|---|---|---|";
        if (include_times) out += "---|";
        out += "\n";
        for (const BenchRow& r : report.rows) {
            out += "| " + r.approach + " | " + std::to_string(r.counter) + " | " +
                   std::to_string(r.results) + " |";
            if (include_times) out += " " + fmt_ms(r.wall_ms) + " |";
            out += "\n";
        }
    } else {
        out += "scenario,approach," + report.counter_name + ",results";
        if (include_times) out += ",wall_ms";
        out += "\n";
        for (const BenchRow& r : report.rows) {
            out += report.scenario + "," + r.approach + "," + std::to_string(r.counter) + "," +
                   std::to_string(r.results);
            if (include_times) out += "," + fmt_ms(r.wall_ms);
            out += "\n";
        }
    }
    return out;
}

} // namespace grainstore
