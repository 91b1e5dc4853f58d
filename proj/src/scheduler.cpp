#include "grainstore/scheduler.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "grainstore/error.hpp"

namespace grainstore {

std::string_view run_outcome_name(RunOutcome o) {
    switch (o) {
    case RunOutcome::Executed: return "executed";
    case RunOutcome::Skipped: return "skipped";
    case RunOutcome::Failed: return "failed";
    }
    return "?";
}

Table visible_slice(const Table& source, const std::string& ts_field, Timestamp now) {
    auto idx = source.schema().index_of(ts_field);
    if (!idx) throw Error(Errc::UnknownField, "no field '" + ts_field + "'");
    std::vector<Record> rows;
    for (const Record& r : source.records()) {
        const auto* ts = std::get_if<Timestamp>(&r[*idx]);
        if (!ts || *ts <= now) rows.push_back(r);
    }
    return Table::restored(source.schema(), std::move(rows));
}

namespace {

bool in_outage(Timestamp t, std::span<const OutageWindow> outages) {
    return std::any_of(outages.begin(), outages.end(), [&](const OutageWindow& w) {
        return w.start <= t && t < w.end;
    });
}

void run_one(const Job& job, Timestamp now, TableSet& tables, std::vector<LogEntry>& log) {
    try {
        auto src = tables.find(job.action.source);
        auto dst = tables.find(job.action.dest);
        if (src == tables.end())
            throw Error(Errc::IoError, "unknown table '" + job.action.source + "'");
        if (dst == tables.end())
            throw Error(Errc::IoError, "unknown table '" + job.action.dest + "'");
        SyncReport report;
        if (job.action.visible_from) {
            Table visible = visible_slice(src->second, *job.action.visible_from, now);
            report = sync(visible, dst->second, job.action.technique);
        } else {
            report = sync(src->second, dst->second, job.action.technique);
        }
        log.push_back({job.name, now, RunOutcome::Executed, std::move(report), {}});
    } catch (const std::exception& e) {
        log.push_back({job.name, now, RunOutcome::Failed, std::nullopt, e.what()});
    }
}

} // namespace

std::vector<LogEntry> run_jobs(std::vector<Job> jobs, Timestamp from, Timestamp to,
                               std::span<const OutageWindow> outages, TableSet& tables) {
    for (const OutageWindow& w : outages)
        if (!(w.start < w.end)) throw Error(Errc::Usage, "outage window start must precede end");
    std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.name < b.name; });

    Timestamp start{from.seconds - from.seconds % 60};
    Timestamp end{to.seconds - to.seconds % 60};
    std::vector<LogEntry> log;

    // Per-job next fire at or after `start`; simulated time then advances by
    // jumping to the earliest pending fire.
    std::vector<std::optional<Timestamp>> next(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i)
        next[i] = next_fire_within(jobs[i].schedule, Timestamp{start.seconds - 60});

    while (true) {
        std::optional<Timestamp> now;
        for (const auto& n : next)
            if (n && (!now || *n < *now)) now = n;
        if (!now || end < *now) break;
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            if (!next[i] || !(*next[i] == *now)) continue;
            if (in_outage(*now, outages))
                log.push_back({jobs[i].name, *now, RunOutcome::Skipped, std::nullopt, {}});
            else
                run_one(jobs[i], *now, tables, log);
            next[i] = next_fire_within(jobs[i].schedule, *now);
        }
    }
    return log;
}

std::vector<Job> load_jobs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::FormatError, path.string() + ": " + e.what());
    }
    if (!j.is_array()) throw Error(Errc::FormatError, path.string() + ": expected a JSON array");
    std::vector<Job> jobs;
    std::set<std::string> names;
    try {
        for (const auto& item : j) {
            Job job;
            job.name = item.at("name").get<std::string>();
            if (job.name.empty()) throw Error(Errc::FormatError, "job with empty name");
            if (!names.insert(job.name).second)
                throw Error(Errc::FormatError, "duplicate job name '" + job.name + "'");
            job.cron_text = item.at("cron").get<std::string>();
            job.schedule = parse_cron(job.cron_text);
            job.action.source = item.at("source").get<std::string>();
            job.action.dest = item.at("dest").get<std::string>();
            job.action.technique = parse_technique(item.at("technique").get<std::string>());
            if (item.contains("visible_from"))
                job.action.visible_from = item.at("visible_from").get<std::string>();
            jobs.push_back(std::move(job));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::FormatError, path.string() + ": " + e.what());
    }
    return jobs;
}

} // namespace grainstore
