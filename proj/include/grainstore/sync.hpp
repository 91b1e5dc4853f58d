#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "grainstore/table.hpp"

namespace grainstore {

/// The four warehouse syncing techniques.
///   Entirety - clear the destination, copy the whole source.
///   Match    - cross-match on a key column; append records whose key is
///              absent from the destination (a key that arrives twice in
///              one run is appended once).
///   LSP      - last sync pick-up: append source records with a timestamp
///              strictly after the destination watermark.
///   OLSP     - offset LSP: read back `offset_days` before the watermark
///              (inclusive at the boundary) so missed runs are covered,
///              then delete the duplicates the over-read generated.
struct Entirety {
    bool operator==(const Entirety&) const = default;
};
struct MatchSync {
    std::string key;
    bool operator==(const MatchSync&) const = default;
};
struct Lsp {
    std::string ts;
    bool operator==(const Lsp&) const = default;
};
struct Olsp {
    std::string ts;
    std::int64_t offset_days = 1; // >= 1
    bool operator==(const Olsp&) const = default;
};

using SyncTechnique = std::variant<Entirety, MatchSync, Lsp, Olsp>;

/// entirety | match:<key> | lsp:<tscol> | olsp:<tscol>:<days>
SyncTechnique parse_technique(std::string_view text);
std::string technique_name(const SyncTechnique& t);

/// Latest timestamp present in a table (max over the column, not the last
/// row), or empty when the table holds no timestamps.
struct SyncWatermark {
    std::optional<Timestamp> value;
};
SyncWatermark watermark_of(const Table& table, const std::string& ts_field);

struct SyncReport {
    std::string technique;
    std::size_t records_read = 0;       // candidate records read past the pick-up point
    std::size_t records_added = 0;      // records appended (before OLSP dedup)
    std::size_t records_deleted = 0;    // Entirety's clear
    std::size_t duplicates_removed = 0; // OLSP dedup only
};

std::string report_line(const SyncReport& r);
std::string report_json(const SyncReport& r);

/// Runs one sync into `dest`. Source and destination schemas must carry the
/// same field list. LSP/OLSP check that the source is sorted ascending on
/// the timestamp column and compute the watermark from the destination
/// itself unless `watermark_override` supplies an externally recorded one
/// (the override is what the LSP-fragility scenario simulates).
SyncReport sync(const Table& source, Table& dest, const SyncTechnique& technique,
                std::optional<Timestamp> watermark_override = std::nullopt);

/// Removes later duplicates, keeping each group's first occurrence; stable
/// and idempotent. Identity is the named key column, or the whole record
/// when `key_field` is empty. Returns the number removed (0 removals leave
/// the table untouched, commits included).
std::size_t dedup(Table& table, const std::optional<std::string>& key_field);

} // namespace grainstore
