#include "helpers.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <doctest.h>

namespace testutil {

using namespace grainstore;

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void verify_grain_index(const Table& t, const GrainIndex& idx) {
    REQUIRE(idx.built_length() == t.record_count());
    auto date_col = t.schema().index_of(*t.schema().date_column);
    REQUIRE(date_col.has_value());
    const auto& entries = idx.entries();
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (k > 0) {
            CHECK(entries[k - 1].bucket < entries[k].bucket);
            CHECK(entries[k - 1].start_ordinal < entries[k].start_ordinal);
        }
        std::size_t stop = k + 1 < entries.size() ? entries[k + 1].start_ordinal
                                                  : t.record_count() + 1;
        for (std::size_t ord = entries[k].start_ordinal; ord < stop; ++ord) {
            Date d = std::get<Date>(t.records()[ord - 1][*date_col]);
            CHECK(grain_code(d, idx.grain()) == entries[k].code);
        }
    }
    if (!entries.empty()) CHECK(entries.front().start_ordinal == 1);
}

void verify_entity_index(const Table& t, const EntityIndex& idx) {
    REQUIRE(idx.built_length() == t.record_count());
    auto key_col = t.schema().index_of(idx.key_column());
    REQUIRE(key_col.has_value());
    std::set<std::size_t> seen;
    for (const auto& [key, ordinals] : idx.entries()) {
        for (std::size_t i = 0; i < ordinals.size(); ++i) {
            if (i > 0) CHECK(ordinals[i - 1] < ordinals[i]);
            CHECK(t.records().at(ordinals[i] - 1)[*key_col] == key);
            CHECK(seen.insert(ordinals[i]).second);
        }
    }
    for (std::size_t ord = 1; ord <= t.record_count(); ++ord)
        if (!is_null(t.records()[ord - 1][*key_col])) CHECK(seen.contains(ord));
}

} // namespace testutil
