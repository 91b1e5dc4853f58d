#include "grainstore/insert.hpp"

#include <atomic>
#include <charconv>
#include <exception>
#include <thread>
#include <vector>

#include "grainstore/error.hpp"

namespace grainstore {

namespace {

std::size_t parse_count(std::string_view s, std::string_view what) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v == 0)
        throw Error(Errc::Usage, "bad " + std::string(what) + " '" + std::string(s) + "'");
    return v;
}

// Contiguous [begin, end) slice of the input, one commit each.
struct Batch {
    std::size_t begin;
    std::size_t end;
};

std::vector<Batch> partition_batches(std::size_t n, std::size_t size) {
    std::vector<Batch> batches;
    for (std::size_t b = 0; b < n; b += size) batches.push_back({b, std::min(b + size, n)});
    return batches;
}

struct StagedBatch {
    std::exception_ptr error;       // validation failure, if any
    std::size_t first_bad_ordinal = 0;
};

/// Validates batches concurrently, then replays commits in batch order on a
/// single thread. `single_commit` collapses all batches into one commit
/// (the Parallel+Bulk case).
void staged_insert(Table& table, std::span<const Record> records, const std::vector<Batch>& batches,
                   std::size_t workers, bool single_commit) {
    std::vector<StagedBatch> staged(batches.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= batches.size()) return;
            for (std::size_t r = batches[i].begin; r < batches[i].end; ++r) {
                try {
                    table.check_record(records[r], r + 1);
                } catch (...) {
                    staged[i].error = std::current_exception();
                    staged[i].first_bad_ordinal = r + 1;
                    break;
                }
            }
        }
    };
    std::vector<std::thread> pool;
    std::size_t nthreads = std::min(workers, batches.size());
    for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    if (single_commit) {
        // All-or-nothing: surface the earliest offending record.
        const StagedBatch* bad = nullptr;
        for (const auto& s : staged)
            if (s.error && (!bad || s.first_bad_ordinal < bad->first_bad_ordinal)) bad = &s;
        if (bad) std::rethrow_exception(bad->error);
        table.append_committed(records);
        return;
    }
    for (std::size_t i = 0; i < batches.size(); ++i) {
        if (staged[i].error) std::rethrow_exception(staged[i].error);
        table.append_committed(records.subspan(batches[i].begin,
                                               batches[i].end - batches[i].begin));
    }
}

} // namespace

InsertStrategy parse_strategy(std::string_view text) {
    if (text == "successive") return Successive{};
    if (text == "bulk") return Bulk{};
    if (text.starts_with("partitioned:"))
        return Partitioned{parse_count(text.substr(12), "partition size")};
    if (text.starts_with("parallel:")) {
        std::string_view rest = text.substr(9);
        auto colon = rest.find(':');
        if (colon == std::string_view::npos)
            throw Error(Errc::Usage, "parallel strategy needs an inner strategy");
        std::size_t workers = parse_count(rest.substr(0, colon), "worker count");
        std::string_view inner = rest.substr(colon + 1);
        if (inner == "bulk") return Parallel{workers, Bulk{}};
        if (inner.starts_with("partitioned:"))
            return Parallel{workers, Partitioned{parse_count(inner.substr(12), "partition size")}};
        throw Error(Errc::Usage, "unknown inner strategy '" + std::string(inner) + "'");
    }
    throw Error(Errc::Usage, "unknown strategy '" + std::string(text) + "'");
}

std::string strategy_name(const InsertStrategy& s) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Successive>) {
                return "successive";
            } else if constexpr (std::is_same_v<T, Bulk>) {
                return "bulk";
            } else if constexpr (std::is_same_v<T, Partitioned>) {
                return "partitioned:" + std::to_string(v.size);
            } else {
                std::string inner = std::holds_alternative<Bulk>(v.inner)
                                        ? "bulk"
                                        : "partitioned:" +
                                              std::to_string(std::get<Partitioned>(v.inner).size);
                return "parallel:" + std::to_string(v.workers) + ":" + inner;
            }
        },
        s);
}

std::size_t commit_count_of(const InsertStrategy& s, std::size_t n) {
    return std::visit(
        [n](const auto& v) -> std::size_t {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Successive>) {
                return n;
            } else if constexpr (std::is_same_v<T, Bulk>) {
                return 1; // an empty batch is still one commit event
            } else if constexpr (std::is_same_v<T, Partitioned>) {
                return (n + v.size - 1) / v.size;
            } else {
                if (n == 0) return 0; // empty input commits nothing under Parallel
                return std::visit([n](const auto& inner) {
                    return commit_count_of(InsertStrategy{inner}, n);
                }, v.inner);
            }
        },
        s);
}

void insert(Table& table, std::span<const Record> records, const InsertStrategy& strategy) {
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Successive>) {
                for (std::size_t i = 0; i < records.size(); ++i) {
                    try {
                        table.append_committed(records.subspan(i, 1));
                    } catch (const Error& e) {
                        if (e.code() != Errc::SchemaMismatch) throw;
                        // Restate against the caller's record numbering.
                        table.check_record(records[i], i + 1);
                        throw;
                    }
                }
            } else if constexpr (std::is_same_v<T, Bulk>) {
                table.append_committed(records);
            } else if constexpr (std::is_same_v<T, Partitioned>) {
                if (s.size == 0) throw Error(Errc::Usage, "partition size must be >= 1");
                for (const Batch& b : partition_batches(records.size(), s.size)) {
                    try {
                        table.append_committed(records.subspan(b.begin, b.end - b.begin));
                    } catch (const Error& e) {
                        if (e.code() != Errc::SchemaMismatch) throw;
                        for (std::size_t r = b.begin; r < b.end; ++r)
                            table.check_record(records[r], r + 1);
                        throw;
                    }
                }
            } else {
                if (s.workers == 0) throw Error(Errc::Usage, "worker count must be >= 1");
                if (records.empty()) return; // no empty commit per worker
                if (std::holds_alternative<Bulk>(s.inner)) {
                    // Staging slices exist only to spread validation work.
                    std::size_t slice = std::max<std::size_t>(1, records.size() / s.workers);
                    staged_insert(table, records, partition_batches(records.size(), slice),
                                  s.workers, /*single_commit=*/true);
                } else {
                    std::size_t size = std::get<Partitioned>(s.inner).size;
                    if (size == 0) throw Error(Errc::Usage, "partition size must be >= 1");
                    staged_insert(table, records, partition_batches(records.size(), size),
                                  s.workers, /*single_commit=*/false);
                }
            }
        },
        strategy);
}

} // namespace grainstore
