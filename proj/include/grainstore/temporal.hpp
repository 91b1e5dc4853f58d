#pragma once

#include <map>
#include <optional>
#include <string>

#include "grainstore/retrieval.hpp"
#include "grainstore/table.hpp"

namespace grainstore {

/// Which record of an entity is the live one. Persisted as the text
/// "Current" in the currency column; NotCurrent is a null cell, which keeps
/// stored tables byte-identical to the classic marker layout.
inline constexpr std::string_view kCurrentMarker = "Current";

enum class ActionLabel { NotSubmittedPlaceholder, Submitted, Deleted, Updated };
std::string_view action_text(ActionLabel a);

enum class TemporalMode { Transient, Periodic };
enum class SearchVia { Exhaustive, Indexed };

using FieldChanges = std::map<std::string, FieldValue>;

/// Overwrites fields of the record in place. History is destroyed; one
/// commit.
void update_transient(Table& table, std::size_t ordinal, const FieldChanges& changes);

/// Removes the record; later ordinals shift down by one. Indexes built
/// before the call become stale. One commit.
void delete_transient(Table& table, std::size_t ordinal);

/// Appends instead of modifying: the entity's Current record is demoted
/// (marker nulled) and one new record is appended carrying the current
/// payload with `changes` applied, timestamp = at, marker = Current. All in
/// one commit. Requires key, timestamp and currency columns; `at` may not
/// precede the current record's timestamp (ties allowed, the newer ordinal
/// wins). The key, currency and timestamp columns cannot appear in
/// `changes`. Creating an entity is insertion, not update: an absent key is
/// NoSuchEntity.
void update_periodic(Table& table, const FieldValue& key, const FieldChanges& changes,
                     Timestamp at);

/// Periodic deletion is periodic modification that stamps the action column
/// "Deleted": appends a copy of the current payload with Action = Deleted,
/// timestamp = at, marker = Current. Requires an action column on top of
/// update_periodic's columns.
void delete_periodic(Table& table, const FieldValue& key, Timestamp at);

/// The entity's unique Current record, or nullopt for an absent key.
std::optional<Record> current_of(const Table& table, const FieldValue& key);

/// All the entity's records in ordinal order (empty for an absent key).
std::vector<Record> history_of(const Table& table, const FieldValue& key);

/// Key-term update over every matching record. Transient mode rewrites all
/// matches in place (one commit; zero matches leave the table untouched);
/// periodic mode delegates to update_periodic and needs `at`. The indexed
/// path takes a current EntityIndex and yields a table identical to the
/// exhaustive path.
void update_by_key(Table& table, const FieldValue& key, const FieldChanges& changes,
                   TemporalMode mode, SearchVia via, const EntityIndex* index = nullptr,
                   std::optional<Timestamp> at = std::nullopt);

/// Symmetric with update_by_key; transient mode removes all matches
/// (erased from the highest ordinal down so positions stay valid).
void delete_by_key(Table& table, const FieldValue& key, TemporalMode mode, SearchVia via,
                   const EntityIndex* index = nullptr, std::optional<Timestamp> at = std::nullopt);

} // namespace grainstore
