#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grainstore/insert.hpp"

namespace grainstore {

/// Side-by-side comparison rows produced from one seed-pinned dataset.
/// Counters are deterministic and assertable; wall times are measured but
/// never part of pass/fail, and report emission leaves them out unless
/// explicitly asked.
struct BenchRow {
    std::string approach;
    std::size_t counter = 0; // commits for inserts, records touched for retrieval
    std::size_t results = 0;
    double wall_ms = 0.0;
};

struct BenchReport {
    std::string scenario;
    std::string counter_name;
    std::uint64_t seed = 0;
    std::vector<BenchRow> rows;
};

/// Runs every strategy over the identical generated record set and verifies
/// the resulting tables are identical before reporting.
BenchReport bench_insert(std::size_t n, const std::vector<InsertStrategy>& strategies,
                         std::uint64_t seed);

/// Scan vs GLS over random day-aligned ranges and exhaustive vs indexed over
/// random keys, result equality asserted per query; counters are summed over
/// the queries.
BenchReport bench_retrieval(std::size_t n, std::size_t queries, std::uint64_t seed);

/// The 536-record worked-example dataset with the Aug 1..Aug 2 query.
BenchReport bench_retrieval_example();

enum class ReportFormat { Markdown, Csv };
ReportFormat parse_report_format(std::string_view text);

std::string emit_report(const BenchReport& report, ReportFormat format,
                        bool include_times = false);

} // namespace grainstore
