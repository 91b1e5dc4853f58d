#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "grainstore/schema.hpp"
#include "grainstore/value.hpp"

namespace grainstore {

using Record = std::vector<FieldValue>;

/// A typed, ordered record store. Record ordinals are 1-based and contiguous;
/// appending never renumbers existing records. Every mutation happens inside
/// a commit, and commit_count counts commit events since creation (loading a
/// table from disk starts the count at zero again).
///
/// A Table is single-writer: concurrent reads are safe between commits,
/// concurrent mutation is not.
class Table {
public:
    Table() = default;
    explicit Table(Schema schema); // validates; throws InvalidSchema

    const Schema& schema() const { return schema_; }
    std::size_t record_count() const { return records_.size(); }
    std::uint64_t commit_count() const { return commit_count_; }
    const std::vector<Record>& records() const { return records_; }

    /// 1-based access. Throws OutOfRange.
    const Record& read(std::size_t ordinal) const;

    /// Appends all records in order as one commit event (an empty batch is
    /// still one commit). Throws SchemaMismatch naming the first offending
    /// record ordinal (position in `records`) and field; nothing is applied.
    void append_committed(std::span<const Record> records);

    /// Throws SchemaMismatch naming the offending field if `r` does not
    /// satisfy the schema. `ordinal_for_message` is used in the error text.
    void check_record(const Record& r, std::size_t ordinal_for_message) const;

    /// Adopts already-validated-on-disk records with commit_count zero;
    /// loading a table is not a commit event. Records are checked.
    static Table restored(Schema schema, std::vector<Record> records);

    /// Stages an arbitrary batch of edits that apply together as exactly one
    /// commit event. Value edits are type-checked when staged; ordinals are
    /// resolved when committed, each edit seeing the effect of the ones
    /// staged before it.
    class Mutation {
    public:
        explicit Mutation(Table& table) : table_(&table) {}

        void append(Record r);
        void set_cell(std::size_t ordinal, std::size_t field, FieldValue v);
        void erase(std::size_t ordinal);
        void clear();
        void commit();

    private:
        enum class Kind { Append, SetCell, Erase, Clear };
        struct Edit {
            Kind kind;
            std::size_t ordinal = 0;
            std::size_t field = 0;
            Record record;
            FieldValue value;
        };
        Table* table_;
        std::vector<Edit> edits_;
        bool committed_ = false;
    };

    /// Schema and record contents/order. commit_count is not persisted and
    /// not part of equality.
    bool operator==(const Table& other) const {
        return schema_ == other.schema_ && records_ == other.records_;
    }

private:
    Schema schema_;
    std::vector<Record> records_;
    std::uint64_t commit_count_ = 0;
};

/// create_table in the external vocabulary: an empty table under a validated
/// schema with commit_count zero.
inline Table create_table(Schema schema) { return Table(std::move(schema)); }

} // namespace grainstore
