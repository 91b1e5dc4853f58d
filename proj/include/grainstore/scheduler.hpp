#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grainstore/cron.hpp"
#include "grainstore/sync.hpp"

namespace grainstore {

/// A cron-scheduled sync. `source`/`dest` name entries of the table set the
/// runner is given (the CLI keys them by file path). When `visible_from` is
/// set, the runner syncs against only the source records whose value in
/// that timestamp column is <= the simulated instant, which is how a
/// growing dataset is replayed from one fixed file.
struct SyncAction {
    std::string source;
    std::string dest;
    SyncTechnique technique;
    std::optional<std::string> visible_from;
};

struct Job {
    std::string name;
    std::string cron_text;
    CronSchedule schedule;
    SyncAction action;
};

/// Fires with start <= t < end are skipped.
struct OutageWindow {
    Timestamp start;
    Timestamp end;
};

enum class RunOutcome { Executed, Skipped, Failed };
std::string_view run_outcome_name(RunOutcome o);

struct LogEntry {
    std::string job;
    Timestamp at;
    RunOutcome outcome;
    std::optional<SyncReport> report; // Executed only
    std::string error;                // Failed only
};

using TableSet = std::map<std::string, Table>;

/// Source records with `ts_field` <= now (null timestamps always visible);
/// record order preserved.
Table visible_slice(const Table& source, const std::string& ts_field, Timestamp now);

/// Drives simulated time from `from` to `to` (inclusive, minute-aligned) by
/// next-fire jumps. At every fire instant outside the outage windows the
/// job's sync runs against `tables`; jobs firing at the same instant run in
/// job-name order. Sync failures land in the log as Failed entries and do
/// not halt other jobs. The runner never reads the wall clock.
std::vector<LogEntry> run_jobs(std::vector<Job> jobs, Timestamp from, Timestamp to,
                               std::span<const OutageWindow> outages, TableSet& tables);

/// JSON array of {"name","cron","source","dest","technique"[,"visible_from"]}.
std::vector<Job> load_jobs(const std::filesystem::path& path);

} // namespace grainstore
