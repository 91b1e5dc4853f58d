#include "grainstore/retrieval.hpp"

#include <algorithm>

#include "grainstore/error.hpp"

namespace grainstore {

namespace {

std::size_t date_column_index(const Table& t) {
    if (!t.schema().date_column) throw Error(Errc::NoDateColumn, "table has no date column");
    return *t.schema().index_of(*t.schema().date_column);
}

std::size_t key_column_index(const Table& t) {
    if (!t.schema().key_column) throw Error(Errc::NoKeyColumn, "table has no key column");
    return *t.schema().index_of(*t.schema().key_column);
}

Date date_at(const Table& t, std::size_t ordinal, std::size_t col) {
    const FieldValue& v = t.records()[ordinal - 1][col];
    if (is_null(v))
        throw Error(Errc::UnsortedTable, "null date at ordinal " + std::to_string(ordinal));
    return std::get<Date>(v);
}

/// Chronologically ordered bucket key for a grain code.
std::int64_t bucket_of(Date d, GrainSpec g) {
    int y;
    unsigned m, dd;
    d.to_ymd(y, m, dd);
    switch (g) {
    case GrainSpec::QuarterMonth: return static_cast<std::int64_t>(m);
    case GrainSpec::Month: return static_cast<std::int64_t>(y) * 12 + m;
    case GrainSpec::Day: return d.days;
    }
    return 0;
}

void check_stale(std::size_t built_length, const Table& t) {
    if (built_length != t.record_count())
        throw Error(Errc::StaleIndex, "index built at length " + std::to_string(built_length) +
                                          ", table has " + std::to_string(t.record_count()));
}

} // namespace

GrainSpec parse_grain(std::string_view text) {
    if (text == "quartermonth") return GrainSpec::QuarterMonth;
    if (text == "month") return GrainSpec::Month;
    if (text == "day") return GrainSpec::Day;
    throw Error(Errc::Usage, "unknown grain '" + std::string(text) + "'");
}

std::string_view grain_name(GrainSpec g) {
    switch (g) {
    case GrainSpec::QuarterMonth: return "quartermonth";
    case GrainSpec::Month: return "month";
    case GrainSpec::Day: return "day";
    }
    return "?";
}

std::string grain_code(Date d, GrainSpec g) {
    int y;
    unsigned m, dd;
    d.to_ymd(y, m, dd);
    switch (g) {
    case GrainSpec::QuarterMonth:
        return "Q" + std::to_string((m + 2) / 3) + "M" + std::to_string(m);
    case GrainSpec::Month: return "Y" + std::to_string(y) + "M" + std::to_string(m);
    case GrainSpec::Day: return format_date(d);
    }
    return {};
}

ScanResult scan_date_range(const Table& table, Date start, Date end) {
    std::size_t col = date_column_index(table);
    if (end < start) throw Error(Errc::Usage, "range end precedes start");
    ScanResult out;
    Date prev{};
    for (std::size_t ord = 1; ord <= table.record_count(); ++ord) {
        Date d = date_at(table, ord, col);
        ++out.stats.records_touched;
        if (ord > 1 && d < prev)
            throw Error(Errc::UnsortedTable, "out of order at ordinal " + std::to_string(ord));
        prev = d;
        if (d > end) break; // the one-past-end probe, already counted
        if (d >= start) out.records.push_back(table.records()[ord - 1]);
    }
    out.stats.results_returned = out.records.size();
    return out;
}

GrainIndex build_grain_index(const Table& table, GrainSpec grain) {
    std::size_t col = date_column_index(table);
    GrainIndex idx;
    idx.grain_ = grain;
    idx.built_length_ = table.record_count();
    Date prev{};
    for (std::size_t ord = 1; ord <= table.record_count(); ++ord) {
        Date d = date_at(table, ord, col);
        if (ord > 1 && d < prev)
            throw Error(Errc::UnsortedTable, "out of order at ordinal " + std::to_string(ord));
        prev = d;
        std::int64_t bucket = bucket_of(d, grain);
        if (idx.entries_.empty() || idx.entries_.back().bucket != bucket) {
            if (!idx.entries_.empty() && bucket < idx.entries_.back().bucket)
                throw Error(Errc::UnsortedTable,
                            "grain code regresses at ordinal " + std::to_string(ord) +
                                " (does the table span more than one year?)");
            idx.entries_.push_back({grain_code(d, grain), ord, bucket});
        }
    }
    return idx;
}

GrainIndex extend_grain_index(const GrainIndex& index, const Table& table) {
    if (table.record_count() < index.built_length())
        throw Error(Errc::StaleIndex, "table shrank below indexed length");
    std::size_t col = date_column_index(table);
    GrainIndex idx = index;
    Date prev{};
    if (idx.built_length_ > 0) prev = date_at(table, idx.built_length_, col);
    for (std::size_t ord = idx.built_length_ + 1; ord <= table.record_count(); ++ord) {
        Date d = date_at(table, ord, col);
        if ((ord > 1 && d < prev) ||
            (!idx.entries_.empty() && bucket_of(d, idx.grain_) < idx.entries_.back().bucket))
            throw Error(Errc::UnsortedTable, "appended record at ordinal " + std::to_string(ord) +
                                                 " breaks code order; rebuild the index");
        prev = d;
        std::int64_t bucket = bucket_of(d, idx.grain_);
        if (idx.entries_.empty() || idx.entries_.back().bucket != bucket)
            idx.entries_.push_back({grain_code(d, idx.grain_), ord, bucket});
    }
    idx.built_length_ = table.record_count();
    return idx;
}

ScanResult lookup_date_range_gls(const Table& table, const GrainIndex& index, Date start,
                                 Date end) {
    check_stale(index.built_length(), table);
    std::size_t col = date_column_index(table);
    if (end < start) throw Error(Errc::Usage, "range end precedes start");
    ScanResult out;

    // First entry whose bucket can hold a date >= start.
    std::int64_t target = bucket_of(start, index.grain());
    const auto& entries = index.entries();
    std::size_t lo = 0, hi = entries.size();
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        ++out.stats.index_comparisons;
        if (entries[mid].bucket < target)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == entries.size()) return out; // every bucket precedes the range

    for (std::size_t ord = entries[lo].start_ordinal; ord <= table.record_count(); ++ord) {
        Date d = date_at(table, ord, col);
        ++out.stats.records_touched;
        if (d > end) break;
        if (d >= start) out.records.push_back(table.records()[ord - 1]);
    }
    out.stats.results_returned = out.records.size();
    return out;
}

ScanResult exhaustive_entity_search(const Table& table, const FieldValue& key) {
    std::size_t col = key_column_index(table);
    ScanResult out;
    for (std::size_t ord = 1; ord <= table.record_count(); ++ord) {
        ++out.stats.records_touched;
        if (table.records()[ord - 1][col] == key) out.records.push_back(table.records()[ord - 1]);
    }
    out.stats.results_returned = out.records.size();
    return out;
}

EntityIndex build_entity_index(const Table& table) {
    std::size_t col = key_column_index(table);
    EntityIndex idx;
    idx.key_column_ = *table.schema().key_column;
    idx.built_length_ = table.record_count();
    for (std::size_t ord = 1; ord <= table.record_count(); ++ord) {
        const FieldValue& k = table.records()[ord - 1][col];
        if (!is_null(k)) idx.entries_[k].push_back(ord);
    }
    return idx;
}

EntityIndex extend_entity_index(const EntityIndex& index, const Table& table) {
    if (table.record_count() < index.built_length())
        throw Error(Errc::StaleIndex, "table shrank below indexed length");
    std::size_t col = key_column_index(table);
    EntityIndex idx = index;
    for (std::size_t ord = idx.built_length_ + 1; ord <= table.record_count(); ++ord) {
        const FieldValue& k = table.records()[ord - 1][col];
        if (!is_null(k)) idx.entries_[k].push_back(ord);
    }
    idx.built_length_ = table.record_count();
    return idx;
}

ScanResult lookup_entity(const Table& table, const EntityIndex& index, const FieldValue& key) {
    check_stale(index.built_length(), table);
    key_column_index(table);
    ScanResult out;
    out.stats.index_comparisons = 1;
    auto it = index.entries().find(key);
    if (it != index.entries().end()) {
        for (std::size_t ord : it->second) {
            ++out.stats.records_touched;
            out.records.push_back(table.read(ord));
        }
    }
    out.stats.results_returned = out.records.size();
    return out;
}

std::vector<std::pair<FieldValue, std::size_t>> row_explode(const FieldValue& key,
                                                            std::span<const std::size_t> ordinals) {
    std::vector<std::pair<FieldValue, std::size_t>> rows;
    rows.reserve(ordinals.size());
    for (std::size_t i = 0; i < ordinals.size(); ++i) {
        if (i > 0 && ordinals[i] <= ordinals[i - 1])
            throw Error(Errc::NonAscendingIndices,
                        "ordinal " + std::to_string(ordinals[i]) + " after " +
                            std::to_string(ordinals[i - 1]));
        rows.emplace_back(key, ordinals[i]);
    }
    return rows;
}

std::pair<FieldValue, std::vector<std::size_t>>
row_implode(std::span<const std::pair<FieldValue, std::size_t>> rows) {
    if (rows.empty()) throw Error(Errc::Usage, "cannot implode zero rows");
    std::pair<FieldValue, std::vector<std::size_t>> out{rows.front().first, {}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!(rows[i].first == out.first))
            throw Error(Errc::MixedKeys, "row " + std::to_string(i + 1) + " has a different key");
        if (i > 0 && rows[i].second <= out.second.back())
            throw Error(Errc::NonAscendingIndices,
                        "ordinal " + std::to_string(rows[i].second) + " after " +
                            std::to_string(out.second.back()));
        out.second.push_back(rows[i].second);
    }
    return out;
}

} // namespace grainstore
