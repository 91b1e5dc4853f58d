#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grainstore/table.hpp"

namespace grainstore {

/// Bucket length for the granular lookup codes.
///   QuarterMonth -> "Q<q>M<m>" with q = ceil(m/3); carries no year, so a
///                   table spanning more than one year cannot be indexed at
///                   this grain (the code sequence would repeat).
///   Month        -> "Y<yyyy>M<m>"
///   Day          -> ISO date text
enum class GrainSpec { QuarterMonth, Month, Day };

GrainSpec parse_grain(std::string_view text); // quartermonth | month | day
std::string_view grain_name(GrainSpec g);
std::string grain_code(Date d, GrainSpec g);

struct ScanStats {
    std::size_t records_touched = 0;
    std::size_t results_returned = 0;
    std::size_t index_comparisons = 0; // lookup-table probes, counted apart from record touches
};

struct ScanResult {
    std::vector<Record> records;
    ScanStats stats;
};

/// Sorted lookup table from grain code to the first record ordinal bearing
/// that code. Immutable once built; carries the table length at build time
/// so a mismatched table is rejected as stale instead of answered wrongly.
class GrainIndex {
public:
    struct Entry {
        std::string code;
        std::size_t start_ordinal;
        std::int64_t bucket; // chronologically ordered key behind the code
    };

    GrainSpec grain() const { return grain_; }
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t built_length() const { return built_length_; }

private:
    friend GrainIndex build_grain_index(const Table&, GrainSpec);
    friend GrainIndex extend_grain_index(const GrainIndex&, const Table&);

    GrainSpec grain_ = GrainSpec::Day;
    std::vector<Entry> entries_;
    std::size_t built_length_ = 0;
};

/// Entity key -> ascending record ordinals. Null keys are not indexed.
class EntityIndex {
public:
    using Map = std::map<FieldValue, std::vector<std::size_t>, FieldValueLess>;

    const std::string& key_column() const { return key_column_; }
    const Map& entries() const { return entries_; }
    std::size_t built_length() const { return built_length_; }

private:
    friend EntityIndex build_entity_index(const Table&);
    friend EntityIndex extend_entity_index(const EntityIndex&, const Table&);

    std::string key_column_;
    Map entries_;
    std::size_t built_length_ = 0;
};

/// Walks from ordinal 1: skips records before `start`, collects until the
/// first record dated past `end` (that probe is counted too). Sortedness of
/// the date column is checked over the records the walk touches; the first
/// out-of-order (or null-dated) ordinal is reported.
ScanResult scan_date_range(const Table& table, Date start, Date end);

/// Requires the full table to be date-sorted; one entry per distinct code.
GrainIndex build_grain_index(const Table& table, GrainSpec grain);

/// Incremental maintenance for appended records: valid only while the new
/// codes stay >= the last indexed code; otherwise UnsortedTable (rebuild).
GrainIndex extend_grain_index(const GrainIndex& index, const Table& table);

/// Binary-searches the lookup table for the first bucket that can hold
/// `start`, then walks records from that entry's ordinal. Index probes are
/// reported in index_comparisons; records_touched covers only the walked
/// range (jump-in ordinal through the one-past-end probe).
ScanResult lookup_date_range_gls(const Table& table, const GrainIndex& index, Date start, Date end);

/// Full-table scan by definition: records_touched always equals the table
/// length, matches are returned in table order.
ScanResult exhaustive_entity_search(const Table& table, const FieldValue& key);

EntityIndex build_entity_index(const Table& table);
EntityIndex extend_entity_index(const EntityIndex& index, const Table& table);

/// records_touched equals the number of matches (only matched ordinals are
/// fetched); one keyed probe is counted in index_comparisons.
ScanResult lookup_entity(const Table& table, const EntityIndex& index, const FieldValue& key);

/// One (key, ordinal) row per index; NonAscendingIndices unless strictly
/// ascending.
std::vector<std::pair<FieldValue, std::size_t>> row_explode(const FieldValue& key,
                                                            std::span<const std::size_t> ordinals);

/// Inverse of row_explode; MixedKeys when the rows disagree on the key.
std::pair<FieldValue, std::vector<std::size_t>>
row_implode(std::span<const std::pair<FieldValue, std::size_t>> rows);

} // namespace grainstore
