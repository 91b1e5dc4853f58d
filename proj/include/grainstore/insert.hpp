#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "grainstore/table.hpp"

namespace grainstore {

/// The four record-addition approaches. All of them append the same records
/// in the same (input) order; they differ only in how the work is batched
/// into commit events:
///   Successive  - one commit per record
///   Bulk        - the whole sequence as one commit
///   Partitioned - one commit per partition of `size` records
///   Parallel    - Bulk or Partitioned with validation and staging fanned
///                 out over `workers` threads; commits stay serialized in
///                 input order, so the result is identical to the inner
///                 strategy run alone
struct Successive {
    bool operator==(const Successive&) const = default;
};
struct Bulk {
    bool operator==(const Bulk&) const = default;
};
struct Partitioned {
    std::size_t size = 1; // >= 1
    bool operator==(const Partitioned&) const = default;
};
struct Parallel {
    std::size_t workers = 1; // >= 1
    std::variant<Bulk, Partitioned> inner;
    bool operator==(const Parallel&) const = default;
};

using InsertStrategy = std::variant<Successive, Bulk, Partitioned, Parallel>;

/// successive | bulk | partitioned:<size> | parallel:<workers>:<inner>
InsertStrategy parse_strategy(std::string_view text);
std::string strategy_name(const InsertStrategy& s);

/// Commits `insert` would perform for n records: n / 1 / ceil(n/size), and
/// for Parallel the inner strategy's count, except that an empty input
/// performs zero commits under Parallel.
std::size_t commit_count_of(const InsertStrategy& s, std::size_t n);

/// Appends `records` to `table` under the given strategy. On SchemaMismatch,
/// commits that completed before the failing batch remain (Successive,
/// Partitioned); Bulk is all-or-nothing. The error names the first offending
/// record's position in `records` and its field.
void insert(Table& table, std::span<const Record> records, const InsertStrategy& strategy);

} // namespace grainstore
