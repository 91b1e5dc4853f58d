// grainstore: embeddable table store + warehouse sync toolkit, CLI front end.
//
// Exit codes: 0 success, 1 usage, 2 data/format error, 3 precondition
// error, 4 I/O error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grainstore/bench.hpp"
#include "grainstore/cron.hpp"
#include "grainstore/datagen.hpp"
#include "grainstore/error.hpp"
#include "grainstore/insert.hpp"
#include "grainstore/retrieval.hpp"
#include "grainstore/scheduler.hpp"
#include "grainstore/storage.hpp"
#include "grainstore/sync.hpp"
#include "grainstore/temporal.hpp"
#include "grainstore/topology.hpp"

namespace gs = grainstore;
namespace fs = std::filesystem;

namespace {

int exit_code(gs::Errc c) {
    switch (c) {
    case gs::Errc::Usage: return 1;
    case gs::Errc::InvalidSchema:
    case gs::Errc::SchemaMismatch:
    case gs::Errc::FormatError:
    case gs::Errc::InvalidCronExpression:
    case gs::Errc::UnknownField:
    case gs::Errc::MixedKeys:
    case gs::Errc::NonAscendingIndices:
    case gs::Errc::SchemaIncompatible: return 2;
    case gs::Errc::IoError: return 4;
    default: return 3; // unsatisfied preconditions (UnsortedTable, StaleIndex, ...)
    }
}

fs::path data_dir() {
    if (const char* env = std::getenv("GRAINSTORE_DATA_DIR")) return fs::path(env);
    return fs::path(".");
}

/// `--table` accepts a bare name (resolved inside the data directory) or an
/// explicit .csv path.
fs::path table_path(const std::string& name) {
    fs::path p = name;
    if (p.extension() != ".csv") p += ".csv";
    if (name.find('/') == std::string::npos && !p.is_absolute()) return data_dir() / p;
    return p;
}

gs::Table load(const std::string& name) {
    std::vector<std::string> warnings;
    gs::Table t = gs::load_table(table_path(name), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return t;
}

gs::Timestamp parse_cli_timestamp(const std::string& text) {
    auto t = gs::parse_timestamp(text);
    if (!t)
        throw gs::Error(gs::Errc::Usage,
                        "bad timestamp '" + text + "' (want YYYY-MM-DDTHH:MM:SSZ)");
    return *t;
}

gs::Date parse_cli_date(const std::string& text) {
    auto d = gs::parse_date(text);
    if (!d) throw gs::Error(gs::Errc::Usage, "bad date '" + text + "' (want YYYY-MM-DD)");
    return *d;
}

/// Key text typed against the table's key column.
gs::FieldValue typed_key(const gs::Table& t, const std::string& text) {
    if (!t.schema().key_column) throw gs::Error(gs::Errc::NoKeyColumn, "table has no key column");
    const auto& spec = t.schema().fields[*t.schema().index_of(*t.schema().key_column)];
    if (spec.type == gs::FieldType::Integer) {
        try {
            return std::int64_t{std::stoll(text)};
        } catch (...) {
            throw gs::Error(gs::Errc::Usage, "key column is integer, got '" + text + "'");
        }
    }
    return text;
}

gs::FieldValue typed_value(const gs::FieldSpec& spec, const std::string& text) {
    if (text.empty()) return std::monostate{}; // `field=` clears to NULL
    switch (spec.type) {
    case gs::FieldType::Integer:
        try {
            return std::int64_t{std::stoll(text)};
        } catch (...) {
            throw gs::Error(gs::Errc::Usage,
                            "field '" + spec.name + "': bad integer '" + text + "'");
        }
    case gs::FieldType::Float:
        try {
            return std::stod(text);
        } catch (...) {
            throw gs::Error(gs::Errc::Usage, "field '" + spec.name + "': bad float '" + text + "'");
        }
    case gs::FieldType::Date: return parse_cli_date(text);
    case gs::FieldType::Timestamp: return parse_cli_timestamp(text);
    case gs::FieldType::Text: return text;
    }
    return text;
}

/// "f=v[,f=v...]"; a comma that does not start another `name=` pair belongs
/// to the value (so `--set "Name=Cruz, Michael T."` works).
gs::FieldChanges parse_set_exprs(const gs::Table& t, const std::vector<std::string>& exprs) {
    std::vector<std::string> pairs;
    for (const std::string& expr : exprs) {
        std::size_t start = 0;
        while (start <= expr.size()) {
            std::size_t comma = expr.find(',', start);
            std::string piece =
                expr.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (piece.find('=') != std::string::npos)
                pairs.push_back(piece);
            else if (!pairs.empty())
                pairs.back() += "," + piece;
            else
                throw gs::Error(gs::Errc::Usage, "--set expects field=value, got '" + piece + "'");
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    gs::FieldChanges changes;
    for (const std::string& pair : pairs) {
        std::size_t eq = pair.find('=');
        std::string name = pair.substr(0, eq);
        auto idx = t.schema().index_of(name);
        if (!idx) throw gs::Error(gs::Errc::UnknownField, "no field '" + name + "'");
        changes[name] = typed_value(t.schema().fields[*idx], pair.substr(eq + 1));
    }
    return changes;
}

void print_records(const gs::Table& t, const std::vector<gs::Record>& records) {
    for (const gs::Record& r : records) std::cout << gs::csv_line(t.schema(), r) << "\n";
}

void print_stats(const gs::ScanStats& stats) {
    std::cout << "touched=" << stats.records_touched << " results=" << stats.results_returned
              << " index_comparisons=" << stats.index_comparisons << "\n";
}

void write_out(const std::optional<std::string>& out_file, const std::string& text) {
    if (!out_file) {
        std::cout << text;
        return;
    }
    std::ofstream out(*out_file, std::ios::binary | std::ios::trunc);
    if (!out) throw gs::Error(gs::Errc::IoError, "cannot open " + *out_file + " for writing");
    out << text;
}

struct CliState {
    std::string table, from_file, strategy, start, end, key, mode, at, kind;
    std::string query_via = "scan", mutate_via;
    std::string source, dest, technique, report_file, topology_file;
    std::string jobs_file, from_ts, to_ts, cron_expr, after;
    std::vector<std::string> set_exprs, outages;
    std::string schema_file, format = "csv";
    std::optional<std::string> out_file;
    bool include_times = false;
    bool example_shape = false;
    std::size_t n = 0, queries = 0;
    std::uint64_t seed = 0;
    std::string strategies = "successive,bulk,partitioned:100,parallel:4:bulk";
};

void cmd_init(CliState& st) {
    gs::Schema schema = gs::load_schema_json(st.schema_file);
    gs::Table t(schema);
    gs::save_table(t, table_path(st.table));
    std::cout << "created " << table_path(st.table).string() << " with " << schema.arity()
              << " fields\n";
}

void cmd_ingest(CliState& st) {
    gs::Table t = load(st.table);
    auto records = gs::load_records_csv(st.from_file, t.schema());
    auto strategy = gs::parse_strategy(st.strategy);
    auto commits_before = t.commit_count();
    gs::insert(t, records, strategy);
    gs::save_table(t, table_path(st.table));
    std::cout << "added " << records.size() << " records in "
              << (t.commit_count() - commits_before) << " commits\n";
}

void cmd_query_range(CliState& st) {
    gs::Table t = load(st.table);
    gs::Date start = parse_cli_date(st.start);
    gs::Date end = parse_cli_date(st.end);
    gs::ScanResult result;
    if (st.query_via == "scan") {
        result = gs::scan_date_range(t, start, end);
    } else if (st.query_via.starts_with("gls:")) {
        auto index = gs::build_grain_index(t, gs::parse_grain(st.query_via.substr(4)));
        result = gs::lookup_date_range_gls(t, index, start, end);
    } else {
        throw gs::Error(gs::Errc::Usage, "--via must be scan or gls:<grain>");
    }
    print_records(t, result.records);
    print_stats(result.stats);
}

void cmd_query_entity(CliState& st) {
    gs::Table t = load(st.table);
    gs::FieldValue key = typed_key(t, st.key);
    gs::ScanResult result;
    if (st.query_via == "scan") {
        result = gs::exhaustive_entity_search(t, key);
    } else if (st.query_via == "index") {
        auto index = gs::build_entity_index(t);
        result = gs::lookup_entity(t, index, key);
    } else {
        throw gs::Error(gs::Errc::Usage, "--via must be scan or index");
    }
    print_records(t, result.records);
    print_stats(result.stats);
}

void cmd_index_build(CliState& st) {
    gs::Table t = load(st.table);
    if (st.kind.starts_with("grain:")) {
        auto index = gs::build_grain_index(t, gs::parse_grain(st.kind.substr(6)));
        for (const auto& e : index.entries())
            std::cout << e.code << "," << e.start_ordinal << "\n";
        std::cout << "entries=" << index.entries().size() << "\n";
    } else if (st.kind == "entity") {
        auto index = gs::build_entity_index(t);
        for (const auto& [key, ordinals] : index.entries()) {
            std::cout << gs::format_value(key) << ",";
            for (std::size_t i = 0; i < ordinals.size(); ++i)
                std::cout << (i ? " " : "") << ordinals[i];
            std::cout << "\n";
        }
        std::cout << "entries=" << index.entries().size() << "\n";
    } else {
        throw gs::Error(gs::Errc::Usage, "--kind must be grain:<spec> or entity");
    }
}

gs::TemporalMode parse_mode(const std::string& mode) {
    if (mode == "transient") return gs::TemporalMode::Transient;
    if (mode == "periodic") return gs::TemporalMode::Periodic;
    throw gs::Error(gs::Errc::Usage, "--mode must be transient or periodic");
}

void cmd_update(CliState& st) {
    gs::Table t = load(st.table);
    gs::FieldValue key = typed_key(t, st.key);
    gs::FieldChanges changes = parse_set_exprs(t, st.set_exprs);
    gs::TemporalMode mode = parse_mode(st.mode);
    std::optional<gs::Timestamp> at;
    if (!st.at.empty()) at = parse_cli_timestamp(st.at);
    if (mode == gs::TemporalMode::Periodic && !at)
        throw gs::Error(gs::Errc::Usage, "--mode periodic requires --at");
    std::size_t matched = gs::exhaustive_entity_search(t, key).records.size();
    if (st.mutate_via == "index") {
        auto index = gs::build_entity_index(t);
        gs::update_by_key(t, key, changes, mode, gs::SearchVia::Indexed, &index, at);
    } else {
        gs::update_by_key(t, key, changes, mode, gs::SearchVia::Exhaustive, nullptr, at);
    }
    gs::save_table(t, table_path(st.table));
    if (mode == gs::TemporalMode::Periodic)
        std::cout << "appended periodic record at ordinal " << t.record_count() << "\n";
    else
        std::cout << "updated " << matched << " records in place\n";
}

void cmd_delete(CliState& st) {
    gs::Table t = load(st.table);
    gs::FieldValue key = typed_key(t, st.key);
    gs::TemporalMode mode = parse_mode(st.mode);
    std::optional<gs::Timestamp> at;
    if (!st.at.empty()) at = parse_cli_timestamp(st.at);
    if (mode == gs::TemporalMode::Periodic && !at)
        throw gs::Error(gs::Errc::Usage, "--mode periodic requires --at");
    std::size_t before = t.record_count();
    if (st.mutate_via == "index") {
        auto index = gs::build_entity_index(t);
        gs::delete_by_key(t, key, mode, gs::SearchVia::Indexed, &index, at);
    } else {
        gs::delete_by_key(t, key, mode, gs::SearchVia::Exhaustive, nullptr, at);
    }
    gs::save_table(t, table_path(st.table));
    if (mode == gs::TemporalMode::Periodic)
        std::cout << "appended Deleted record at ordinal " << t.record_count() << "\n";
    else
        std::cout << "removed " << (before - t.record_count()) << " records\n";
}

void cmd_history(CliState& st) {
    gs::Table t = load(st.table);
    auto records = gs::history_of(t, typed_key(t, st.key));
    print_records(t, records);
    std::cout << "records=" << records.size() << "\n";
}

void cmd_sync(CliState& st) {
    if (!st.topology_file.empty()) {
        auto topo = gs::load_topology(st.topology_file);
        for (const auto& report : gs::run_pipeline(topo))
            std::cout << gs::report_line(report) << "\n";
        return;
    }
    if (st.source.empty() || st.dest.empty() || st.technique.empty())
        throw gs::Error(gs::Errc::Usage,
                        "sync needs --source, --dest and --technique (or --topology)");
    gs::Table source = gs::load_table(st.source);
    gs::Table dest = gs::load_table(st.dest);
    auto report = gs::sync(source, dest, gs::parse_technique(st.technique));
    gs::save_table(dest, st.dest);
    std::cout << gs::report_line(report) << "\n";
    if (!st.report_file.empty()) {
        std::ofstream out(st.report_file, std::ios::trunc);
        if (!out) throw gs::Error(gs::Errc::IoError, "cannot open " + st.report_file);
        out << gs::report_json(report);
    }
}

void cmd_schedule_run(CliState& st) {
    auto jobs = gs::load_jobs(st.jobs_file);
    gs::Timestamp from = parse_cli_timestamp(st.from_ts);
    gs::Timestamp to = parse_cli_timestamp(st.to_ts);
    std::vector<gs::OutageWindow> outages;
    for (const std::string& o : st.outages) {
        auto sep = o.find("..");
        if (sep == std::string::npos)
            throw gs::Error(gs::Errc::Usage, "--outage wants START..END, got '" + o + "'");
        outages.push_back(
            {parse_cli_timestamp(o.substr(0, sep)), parse_cli_timestamp(o.substr(sep + 2))});
    }
    // Tables are keyed by the path strings the jobs file uses.
    gs::TableSet tables;
    std::set<std::string> dests;
    for (const auto& job : jobs) {
        for (const std::string& name : {job.action.source, job.action.dest})
            if (!tables.contains(name)) tables[name] = gs::load_table(name);
        dests.insert(job.action.dest);
    }
    auto log = gs::run_jobs(jobs, from, to, outages, tables);
    for (const std::string& dest : dests) gs::save_table(tables[dest], dest);
    for (const auto& entry : log) {
        std::cout << gs::format_timestamp(entry.at) << " " << entry.job << " "
                  << gs::run_outcome_name(entry.outcome);
        if (entry.report) std::cout << " " << gs::report_line(*entry.report);
        if (!entry.error.empty()) std::cout << " " << entry.error;
        std::cout << "\n";
    }
}

void cmd_schedule_next(CliState& st) {
    auto schedule = gs::parse_cron(st.cron_expr);
    gs::Timestamp after = parse_cli_timestamp(st.after);
    std::cout << gs::format_timestamp(gs::next_fire(schedule, after)) << "\n";
}

std::vector<gs::InsertStrategy> parse_strategies(const std::string& csv) {
    std::vector<gs::InsertStrategy> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        auto comma = csv.find(',', start);
        std::string item = csv.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!item.empty()) out.push_back(gs::parse_strategy(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw gs::Error(gs::Errc::Usage, "--strategies is empty");
    return out;
}

void cmd_bench_insert(CliState& st) {
    auto report = gs::bench_insert(st.n, parse_strategies(st.strategies), st.seed);
    write_out(st.out_file,
              gs::emit_report(report, gs::parse_report_format(st.format), st.include_times));
}

void cmd_bench_retrieval(CliState& st) {
    gs::BenchReport report = st.example_shape ? gs::bench_retrieval_example()
                                            : gs::bench_retrieval(st.n, st.queries, st.seed);
    write_out(st.out_file,
              gs::emit_report(report, gs::parse_report_format(st.format), st.include_times));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"grainstore: table store, retrieval indexes, warehouse sync, cron scheduler"};
    app.set_version_flag("--version", "grainstore 0.1.0");
    app.require_subcommand(1);
    CliState st;

    auto* init = app.add_subcommand("init", "Create an empty table from a schema descriptor");
    init->add_option("--table", st.table)->required();
    init->add_option("--schema", st.schema_file, "schema JSON document")->required();
    init->callback([&] { cmd_init(st); });

    auto* ingest = app.add_subcommand("ingest", "Append records from a CSV file");
    ingest->add_option("--table", st.table)->required();
    ingest->add_option("--from", st.from_file, "records CSV (header must match the schema)")
        ->required();
    ingest
        ->add_option("--strategy", st.strategy,
                     "successive|bulk|partitioned:<size>|parallel:<workers>:<inner>")
        ->required();
    ingest->callback([&] { cmd_ingest(st); });

    auto* query = app.add_subcommand("query", "Retrieve records");
    query->require_subcommand(1);
    auto* range = query->add_subcommand("range", "Records within a date range");
    range->add_option("--table", st.table)->required();
    range->add_option("--start", st.start)->required();
    range->add_option("--end", st.end)->required();
    range->add_option("--via", st.query_via, "scan|gls:<quartermonth|month|day>");
    range->callback([&] { cmd_query_range(st); });
    auto* entity = query->add_subcommand("entity", "Records for one entity key");
    entity->add_option("--table", st.table)->required();
    entity->add_option("--key", st.key)->required();
    entity->add_option("--via", st.query_via, "scan|index");
    entity->callback([&] { cmd_query_entity(st); });

    auto* index = app.add_subcommand("index", "Lookup-table maintenance");
    index->require_subcommand(1);
    auto* build = index->add_subcommand("build", "Build and print an index");
    build->add_option("--table", st.table)->required();
    build->add_option("--kind", st.kind, "grain:<spec>|entity")->required();
    build->callback([&] { cmd_index_build(st); });

    auto* update = app.add_subcommand("update", "Update records by key");
    update->add_option("--table", st.table)->required();
    update->add_option("--key", st.key)->required();
    update->add_option("--set", st.set_exprs, "field=value[,field=value...]")->required();
    update->add_option("--mode", st.mode, "transient|periodic")->required();
    update->add_option("--via", st.mutate_via, "index for the indexed path");
    update->add_option("--at", st.at, "timestamp for periodic mode (ISO-8601 UTC)");
    update->callback([&] { cmd_update(st); });

    auto* del = app.add_subcommand("delete", "Delete records by key");
    del->add_option("--table", st.table)->required();
    del->add_option("--key", st.key)->required();
    del->add_option("--mode", st.mode, "transient|periodic")->required();
    del->add_option("--via", st.mutate_via, "index for the indexed path");
    del->add_option("--at", st.at, "timestamp for periodic mode (ISO-8601 UTC)");
    del->callback([&] { cmd_delete(st); });

    auto* history = app.add_subcommand("history", "All records of an entity, oldest first");
    history->add_option("--table", st.table)->required();
    history->add_option("--key", st.key)->required();
    history->callback([&] { cmd_history(st); });

    auto* sync = app.add_subcommand("sync", "Run one warehouse sync (or a topology of them)");
    sync->add_option("--source", st.source, "source table CSV");
    sync->add_option("--dest", st.dest, "destination table CSV");
    sync->add_option("--technique", st.technique,
                     "entirety|match:<key>|lsp:<tscol>|olsp:<tscol>:<days>");
    sync->add_option("--report", st.report_file, "write the report as JSON");
    sync->add_option("--topology", st.topology_file, "run every edge of a topology JSON file");
    sync->callback([&] { cmd_sync(st); });

    auto* schedule = app.add_subcommand("schedule", "Cron-driven automated execution");
    schedule->require_subcommand(1);
    auto* run = schedule->add_subcommand("run", "Replay jobs over a simulated clock");
    run->add_option("--jobs", st.jobs_file)->required();
    run->add_option("--from", st.from_ts)->required();
    run->add_option("--to", st.to_ts)->required();
    run->add_option("--outage", st.outages, "START..END window(s) where fires are skipped");
    run->callback([&] { cmd_schedule_run(st); });
    auto* next = schedule->add_subcommand("next", "Print the next fire instant");
    next->add_option("--cron", st.cron_expr)->required();
    next->add_option("--after", st.after)->required();
    next->callback([&] { cmd_schedule_next(st); });

    auto* bench = app.add_subcommand("bench", "Counted, seed-pinned comparisons");
    bench->require_subcommand(1);
    auto* bi = bench->add_subcommand("insert", "Compare insert strategies");
    bi->add_option("--n", st.n)->required();
    bi->add_option("--seed", st.seed)->default_val(0);
    bi->add_option("--strategies", st.strategies, "comma-separated strategy list");
    bi->add_option("--format", st.format, "markdown|csv");
    bi->add_option("--out", st.out_file);
    bi->add_flag("--times", st.include_times, "include wall-clock columns");
    bi->callback([&] { cmd_bench_insert(st); });
    auto* br = bench->add_subcommand("retrieval", "Compare retrieval approaches");
    br->add_option("--n", st.n);
    br->add_option("--queries", st.queries);
    br->add_option("--seed", st.seed)->default_val(0);
    br->add_flag("--example-shape", st.example_shape, "use the 536-record worked-example dataset");
    br->add_option("--format", st.format, "markdown|csv");
    br->add_option("--out", st.out_file);
    br->add_flag("--times", st.include_times, "include wall-clock columns");
    br->callback([&] { cmd_bench_retrieval(st); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const gs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
