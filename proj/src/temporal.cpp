#include "grainstore/temporal.hpp"

#include <algorithm>

#include "grainstore/error.hpp"

namespace grainstore {

namespace {

struct PeriodicColumns {
    std::size_t key;
    std::size_t timestamp;
    std::size_t currency;
    std::optional<std::size_t> action;
};

std::size_t require_key_column(const Table& t) {
    if (!t.schema().key_column) throw Error(Errc::NoKeyColumn, "table has no key column");
    return *t.schema().index_of(*t.schema().key_column);
}

PeriodicColumns periodic_columns(const Table& t) {
    const Schema& s = t.schema();
    PeriodicColumns c{};
    c.key = require_key_column(t);
    if (!s.timestamp_column)
        throw Error(Errc::NoTimestampColumn, "periodic table needs a timestamp column");
    c.timestamp = *s.index_of(*s.timestamp_column);
    if (!s.currency_column)
        throw Error(Errc::NoCurrencyColumn, "periodic table needs a currency column");
    c.currency = *s.index_of(*s.currency_column);
    if (s.action_column) c.action = *s.index_of(*s.action_column);
    return c;
}

bool is_current(const Record& r, std::size_t currency_col) {
    const FieldValue& v = r[currency_col];
    const auto* s = std::get_if<std::string>(&v);
    return s && *s == kCurrentMarker;
}

/// Resolved (field index, value) changes, type-checked against the schema.
std::vector<std::pair<std::size_t, FieldValue>>
resolve_changes(const Table& t, const FieldChanges& changes) {
    std::vector<std::pair<std::size_t, FieldValue>> out;
    out.reserve(changes.size());
    for (const auto& [name, value] : changes) {
        auto idx = t.schema().index_of(name);
        if (!idx) throw Error(Errc::UnknownField, "no field '" + name + "'");
        const FieldSpec& f = t.schema().fields[*idx];
        if (is_null(value)) {
            if (!f.nullable)
                throw Error(Errc::SchemaMismatch, "field '" + name + "': null not allowed");
        } else if (!value_has_type(value, f.type)) {
            throw Error(Errc::SchemaMismatch,
                        "field '" + name + "': expected " + std::string(field_type_name(f.type)));
        }
        out.emplace_back(*idx, value);
    }
    return out;
}

void forbid_managed_columns(const Table& t, const FieldChanges& changes,
                            const PeriodicColumns& cols) {
    const Schema& s = t.schema();
    auto forbid = [&](const std::optional<std::string>& col, std::string_view why) {
        if (col && changes.contains(*col))
            throw Error(Errc::SchemaMismatch,
                        "column '" + *col + "' is " + std::string(why) +
                            " and cannot be set through a periodic update");
    };
    forbid(s.key_column, "the entity key");
    forbid(s.currency_column, "the currency marker");
    forbid(s.timestamp_column, "set from the operation timestamp");
    (void)cols;
}

std::vector<std::size_t> matching_ordinals(const Table& t, const FieldValue& key,
                                           SearchVia via, const EntityIndex* index) {
    std::size_t col = require_key_column(t);
    if (via == SearchVia::Indexed) {
        if (!index) throw Error(Errc::Usage, "indexed search needs an index");
        if (index->built_length() != t.record_count())
            throw Error(Errc::StaleIndex,
                        "index built at length " + std::to_string(index->built_length()) +
                            ", table has " + std::to_string(t.record_count()));
        auto it = index->entries().find(key);
        if (it == index->entries().end()) return {};
        return it->second;
    }
    std::vector<std::size_t> out;
    for (std::size_t ord = 1; ord <= t.record_count(); ++ord)
        if (t.records()[ord - 1][col] == key) out.push_back(ord);
    return out;
}

/// The entity's Current record among the given ordinals.
std::size_t current_ordinal_of(const Table& t, const FieldValue& key,
                               const std::vector<std::size_t>& ordinals,
                               const PeriodicColumns& cols) {
    if (ordinals.empty())
        throw Error(Errc::NoSuchEntity, "no records for key " + format_value(key));
    for (auto it = ordinals.rbegin(); it != ordinals.rend(); ++it)
        if (is_current(t.records()[*it - 1], cols.currency)) return *it;
    throw Error(Errc::NoSuchEntity, "key " + format_value(key) + " has no Current record");
}

void append_periodic(Table& table, const FieldValue& key, const FieldChanges& changes,
                     Timestamp at, std::optional<ActionLabel> stamp, SearchVia via,
                     const EntityIndex* index) {
    PeriodicColumns cols = periodic_columns(table);
    if (stamp && !cols.action)
        throw Error(Errc::NoActionColumn, "periodic deletion needs an action column");
    forbid_managed_columns(table, changes, cols);
    auto resolved = resolve_changes(table, changes);

    std::size_t cur = current_ordinal_of(table, key, matching_ordinals(table, key, via, index),
                                         cols);
    const Record& current = table.records()[cur - 1];
    if (const auto* ts = std::get_if<Timestamp>(&current[cols.timestamp]); ts && at < *ts)
        throw Error(Errc::NonMonotoneTimestamp,
                    format_timestamp(at) + " precedes current record's " + format_timestamp(*ts));

    Record next = current;
    for (auto& [idx, value] : resolved) next[idx] = std::move(value);
    next[cols.timestamp] = at;
    next[cols.currency] = std::string(kCurrentMarker);
    if (stamp) next[*cols.action] = std::string(action_text(*stamp));

    Table::Mutation m(table);
    m.set_cell(cur, cols.currency, std::monostate{});
    m.append(std::move(next));
    m.commit();
}

} // namespace

std::string_view action_text(ActionLabel a) {
    switch (a) {
    case ActionLabel::NotSubmittedPlaceholder: return "Not Submitted";
    case ActionLabel::Submitted: return "Submitted";
    case ActionLabel::Deleted: return "Deleted";
    case ActionLabel::Updated: return "Updated";
    }
    return "?";
}

void update_transient(Table& table, std::size_t ordinal, const FieldChanges& changes) {
    table.read(ordinal); // OutOfRange check
    auto resolved = resolve_changes(table, changes);
    Table::Mutation m(table);
    for (auto& [idx, value] : resolved) m.set_cell(ordinal, idx, std::move(value));
    m.commit();
}

void delete_transient(Table& table, std::size_t ordinal) {
    table.read(ordinal);
    Table::Mutation m(table);
    m.erase(ordinal);
    m.commit();
}

void update_periodic(Table& table, const FieldValue& key, const FieldChanges& changes,
                     Timestamp at) {
    append_periodic(table, key, changes, at, std::nullopt, SearchVia::Exhaustive, nullptr);
}

void delete_periodic(Table& table, const FieldValue& key, Timestamp at) {
    append_periodic(table, key, {}, at, ActionLabel::Deleted, SearchVia::Exhaustive, nullptr);
}

std::optional<Record> current_of(const Table& table, const FieldValue& key) {
    PeriodicColumns cols = periodic_columns(table);
    auto ordinals = matching_ordinals(table, key, SearchVia::Exhaustive, nullptr);
    for (auto it = ordinals.rbegin(); it != ordinals.rend(); ++it)
        if (is_current(table.records()[*it - 1], cols.currency)) return table.records()[*it - 1];
    return std::nullopt;
}

std::vector<Record> history_of(const Table& table, const FieldValue& key) {
    require_key_column(table);
    std::vector<Record> out;
    for (std::size_t ord : matching_ordinals(table, key, SearchVia::Exhaustive, nullptr))
        out.push_back(table.records()[ord - 1]);
    return out;
}

void update_by_key(Table& table, const FieldValue& key, const FieldChanges& changes,
                   TemporalMode mode, SearchVia via, const EntityIndex* index,
                   std::optional<Timestamp> at) {
    if (mode == TemporalMode::Periodic) {
        if (!at) throw Error(Errc::Usage, "periodic update needs a timestamp");
        append_periodic(table, key, changes, *at, std::nullopt, via, index);
        return;
    }
    auto ordinals = matching_ordinals(table, key, via, index);
    auto resolved = resolve_changes(table, changes);
    if (ordinals.empty()) return; // nothing matched, nothing committed
    Table::Mutation m(table);
    for (std::size_t ord : ordinals)
        for (const auto& [idx, value] : resolved) m.set_cell(ord, idx, value);
    m.commit();
}

void delete_by_key(Table& table, const FieldValue& key, TemporalMode mode, SearchVia via,
                   const EntityIndex* index, std::optional<Timestamp> at) {
    if (mode == TemporalMode::Periodic) {
        if (!at) throw Error(Errc::Usage, "periodic deletion needs a timestamp");
        append_periodic(table, key, {}, *at, ActionLabel::Deleted, via, index);
        return;
    }
    auto ordinals = matching_ordinals(table, key, via, index);
    if (ordinals.empty()) return;
    Table::Mutation m(table);
    for (auto it = ordinals.rbegin(); it != ordinals.rend(); ++it) m.erase(*it);
    m.commit();
}

} // namespace grainstore
