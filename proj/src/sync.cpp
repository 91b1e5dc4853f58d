#include "grainstore/sync.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include <json.hpp>

#include "grainstore/error.hpp"

namespace grainstore {

namespace {

std::int64_t parse_days(std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v < 1)
        throw Error(Errc::Usage, "bad offset '" + std::string(s) + "' (whole days >= 1)");
    return v;
}

std::size_t field_index(const Table& t, const std::string& name) {
    auto idx = t.schema().index_of(name);
    if (!idx) throw Error(Errc::UnknownField, "no field '" + name + "'");
    return *idx;
}

void check_compatible(const Table& source, const Table& dest) {
    if (source.schema().fields != dest.schema().fields)
        throw Error(Errc::SchemaIncompatible, "source and destination field lists differ");
}

/// LSP/OLSP precondition; nulls cannot be ordered so they fail the check.
void check_source_sorted(const Table& source, std::size_t ts_col) {
    Timestamp prev{};
    for (std::size_t ord = 1; ord <= source.record_count(); ++ord) {
        const FieldValue& v = source.records()[ord - 1][ts_col];
        const auto* ts = std::get_if<Timestamp>(&v);
        if (!ts)
            throw Error(Errc::UnsortedSource,
                        "null timestamp at source ordinal " + std::to_string(ord));
        if (ord > 1 && *ts < prev)
            throw Error(Errc::UnsortedSource,
                        "out of order at source ordinal " + std::to_string(ord));
        prev = *ts;
    }
}

/// First source ordinal with timestamp >= bound (source sorted).
std::size_t first_at_or_after(const Table& source, std::size_t ts_col, Timestamp bound) {
    std::size_t lo = 1, hi = source.record_count() + 1;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (std::get<Timestamp>(source.records()[mid - 1][ts_col]) < bound)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

void append_tail(const Table& source, Table& dest, std::size_t from_ordinal, SyncReport& report) {
    if (from_ordinal > source.record_count()) return;
    std::span<const Record> tail{source.records().data() + (from_ordinal - 1),
                                 source.record_count() - from_ordinal + 1};
    report.records_read = tail.size();
    report.records_added = tail.size();
    dest.append_committed(tail);
}

} // namespace

SyncTechnique parse_technique(std::string_view text) {
    if (text == "entirety") return Entirety{};
    if (text.starts_with("match:")) {
        std::string key(text.substr(6));
        if (key.empty()) throw Error(Errc::Usage, "match technique needs a key column");
        return MatchSync{std::move(key)};
    }
    if (text.starts_with("lsp:")) {
        std::string ts(text.substr(4));
        if (ts.empty()) throw Error(Errc::Usage, "lsp technique needs a timestamp column");
        return Lsp{std::move(ts)};
    }
    if (text.starts_with("olsp:")) {
        std::string_view rest = text.substr(5);
        auto colon = rest.find(':');
        if (colon == std::string_view::npos || colon == 0)
            throw Error(Errc::Usage, "olsp technique is olsp:<tscol>:<days>");
        return Olsp{std::string(rest.substr(0, colon)), parse_days(rest.substr(colon + 1))};
    }
    throw Error(Errc::Usage, "unknown technique '" + std::string(text) + "'");
}

std::string technique_name(const SyncTechnique& t) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Entirety>) {
                return "entirety";
            } else if constexpr (std::is_same_v<T, MatchSync>) {
                return "match:" + v.key;
            } else if constexpr (std::is_same_v<T, Lsp>) {
                return "lsp:" + v.ts;
            } else {
                return "olsp:" + v.ts + ":" + std::to_string(v.offset_days);
            }
        },
        t);
}

SyncWatermark watermark_of(const Table& table, const std::string& ts_field) {
    std::size_t col = field_index(table, ts_field);
    SyncWatermark wm;
    for (const Record& r : table.records())
        if (const auto* ts = std::get_if<Timestamp>(&r[col]))
            if (!wm.value || *wm.value < *ts) wm.value = *ts;
    return wm;
}

std::string report_line(const SyncReport& r) {
    return r.technique + ": read=" + std::to_string(r.records_read) +
           " added=" + std::to_string(r.records_added) +
           " deleted=" + std::to_string(r.records_deleted) +
           " duplicates_removed=" + std::to_string(r.duplicates_removed);
}

std::string report_json(const SyncReport& r) {
    nlohmann::ordered_json j{{"technique", r.technique},
                             {"records_read", r.records_read},
                             {"records_added", r.records_added},
                             {"records_deleted", r.records_deleted},
                             {"duplicates_removed", r.duplicates_removed}};
    return j.dump(2) + "\n";
}

SyncReport sync(const Table& source, Table& dest, const SyncTechnique& technique,
                std::optional<Timestamp> watermark_override) {
    check_compatible(source, dest);
    SyncReport report;
    report.technique = technique_name(technique);
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, Entirety>) {
                report.records_read = source.record_count();
                report.records_deleted = dest.record_count();
                report.records_added = source.record_count();
                Table::Mutation m(dest);
                m.clear();
                for (const Record& r : source.records()) m.append(r);
                m.commit();
            } else if constexpr (std::is_same_v<T, MatchSync>) {
                std::size_t src_col = field_index(source, t.key);
                std::size_t dst_col = field_index(dest, t.key);
                std::set<FieldValue, FieldValueLess> present;
                for (const Record& r : dest.records()) present.insert(r[dst_col]);
                std::vector<Record> fresh;
                report.records_read = source.record_count();
                for (const Record& r : source.records())
                    if (present.insert(r[src_col]).second) fresh.push_back(r);
                report.records_added = fresh.size();
                if (!fresh.empty()) dest.append_committed(fresh);
            } else if constexpr (std::is_same_v<T, Lsp>) {
                std::size_t ts_col = field_index(source, t.ts);
                check_source_sorted(source, ts_col);
                SyncWatermark wm{watermark_override};
                if (!wm.value) wm = watermark_of(dest, t.ts);
                std::size_t from = 1;
                if (wm.value) {
                    // strictly after the watermark
                    from = first_at_or_after(source, ts_col,
                                             Timestamp{wm.value->seconds + 1});
                }
                append_tail(source, dest, from, report);
            } else {
                std::size_t ts_col = field_index(source, t.ts);
                check_source_sorted(source, ts_col);
                SyncWatermark wm{watermark_override};
                if (!wm.value) wm = watermark_of(dest, t.ts);
                std::size_t from = 1;
                if (wm.value) {
                    Timestamp bound{wm.value->seconds - t.offset_days * 86400};
                    from = first_at_or_after(source, ts_col, bound);
                }
                append_tail(source, dest, from, report);
                report.duplicates_removed = dedup(dest, std::nullopt);
            }
        },
        technique);
    return report;
}

std::size_t dedup(Table& table, const std::optional<std::string>& key_field) {
    std::optional<std::size_t> col;
    if (key_field) col = field_index(table, *key_field);

    std::vector<std::size_t> doomed;
    if (col) {
        std::set<FieldValue, FieldValueLess> seen;
        for (std::size_t ord = 1; ord <= table.record_count(); ++ord)
            if (!seen.insert(table.records()[ord - 1][*col]).second) doomed.push_back(ord);
    } else {
        auto record_less = [](const Record& a, const Record& b) {
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                                FieldValueLess{});
        };
        std::set<Record, decltype(record_less)> seen(record_less);
        for (std::size_t ord = 1; ord <= table.record_count(); ++ord)
            if (!seen.insert(table.records()[ord - 1]).second) doomed.push_back(ord);
    }
    if (doomed.empty()) return 0;
    Table::Mutation m(table);
    for (auto it = doomed.rbegin(); it != doomed.rend(); ++it) m.erase(*it);
    m.commit();
    return doomed.size();
}

} // namespace grainstore
