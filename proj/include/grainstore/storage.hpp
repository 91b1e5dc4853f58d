#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "grainstore/table.hpp"

namespace grainstore {

/// On-disk form: `<name>.csv` (RFC 4180, UTF-8, CRLF, header row of field
/// names) plus a `<name>.schema.json` sidecar holding field types, nullable
/// flags and the designated columns.
///
/// NULL is written as a completely empty unquoted field; empty text is
/// written as "" so the two stay distinct.
std::filesystem::path schema_sidecar_path(const std::filesystem::path& csv_path);

void save_table(const Table& table, const std::filesystem::path& csv_path);

/// Loads csv + sidecar. The loader also accepts legacy MM-DD-YY dates and
/// "MM-DD-YY HH:MM:SS" timestamps and normalizes them to the canonical
/// forms; hour-24 timestamps roll into the next day and are reported through
/// `warnings`. commit_count starts at zero on the loaded table.
Table load_table(const std::filesystem::path& csv_path,
                 std::vector<std::string>* warnings = nullptr);

Schema load_schema_json(const std::filesystem::path& path);
void save_schema_json(const Schema& schema, const std::filesystem::path& path);

/// Parses a header+rows CSV of records against an existing schema (the form
/// `ingest --from` consumes; no sidecar involved).
std::vector<Record> load_records_csv(const std::filesystem::path& path, const Schema& schema,
                                     std::vector<std::string>* warnings = nullptr);

/// One record as an RFC 4180 line (no terminator), canonical value texts.
std::string csv_line(const Schema& schema, const Record& r);

} // namespace grainstore
