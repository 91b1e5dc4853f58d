#include "grainstore/table.hpp"

#include "grainstore/error.hpp"

namespace grainstore {

Table::Table(Schema schema) : schema_(std::move(schema)) {
    schema_.validate();
}

const Record& Table::read(std::size_t ordinal) const {
    if (ordinal < 1 || ordinal > records_.size())
        throw Error(Errc::OutOfRange, "ordinal " + std::to_string(ordinal) + " not in 1.." +
                                          std::to_string(records_.size()));
    return records_[ordinal - 1];
}

void Table::check_record(const Record& r, std::size_t ordinal_for_message) const {
    if (r.size() != schema_.arity())
        throw Error(Errc::SchemaMismatch, "record " + std::to_string(ordinal_for_message) +
                                              ": arity " + std::to_string(r.size()) +
                                              ", schema has " + std::to_string(schema_.arity()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        const FieldSpec& f = schema_.fields[i];
        if (is_null(r[i])) {
            if (!f.nullable)
                throw Error(Errc::SchemaMismatch, "record " + std::to_string(ordinal_for_message) +
                                                      ", field '" + f.name + "': null not allowed");
        } else if (!value_has_type(r[i], f.type)) {
            throw Error(Errc::SchemaMismatch, "record " + std::to_string(ordinal_for_message) +
                                                  ", field '" + f.name + "': expected " +
                                                  std::string(field_type_name(f.type)));
        }
    }
}

Table Table::restored(Schema schema, std::vector<Record> records) {
    Table t(std::move(schema));
    for (std::size_t i = 0; i < records.size(); ++i) t.check_record(records[i], i + 1);
    t.records_ = std::move(records);
    return t;
}

void Table::append_committed(std::span<const Record> records) {
    Mutation m(*this);
    for (const Record& r : records) m.append(r);
    m.commit();
}

void Table::Mutation::append(Record r) {
    table_->check_record(r, edits_.size() + 1);
    edits_.push_back({Kind::Append, 0, 0, std::move(r), {}});
}

void Table::Mutation::set_cell(std::size_t ordinal, std::size_t field, FieldValue v) {
    if (field >= table_->schema_.arity())
        throw Error(Errc::UnknownField, "field index " + std::to_string(field));
    const FieldSpec& f = table_->schema_.fields[field];
    if (is_null(v)) {
        if (!f.nullable)
            throw Error(Errc::SchemaMismatch, "field '" + f.name + "': null not allowed");
    } else if (!value_has_type(v, f.type)) {
        throw Error(Errc::SchemaMismatch,
                    "field '" + f.name + "': expected " + std::string(field_type_name(f.type)));
    }
    edits_.push_back({Kind::SetCell, ordinal, field, {}, std::move(v)});
}

void Table::Mutation::erase(std::size_t ordinal) {
    edits_.push_back({Kind::Erase, ordinal, 0, {}, {}});
}

void Table::Mutation::clear() {
    edits_.push_back({Kind::Clear, 0, 0, {}, {}});
}

void Table::Mutation::commit() {
    if (committed_) throw Error(Errc::Usage, "mutation already committed");
    // Dry-run the ordinal arithmetic so a bad edit cannot leave the table
    // half-applied.
    std::size_t len = table_->records_.size();
    for (const Edit& e : edits_) {
        switch (e.kind) {
        case Kind::Append: ++len; break;
        case Kind::SetCell:
            if (e.ordinal < 1 || e.ordinal > len)
                throw Error(Errc::OutOfRange, "ordinal " + std::to_string(e.ordinal));
            break;
        case Kind::Erase:
            if (e.ordinal < 1 || e.ordinal > len)
                throw Error(Errc::OutOfRange, "ordinal " + std::to_string(e.ordinal));
            --len;
            break;
        case Kind::Clear: len = 0; break;
        }
    }
    for (Edit& e : edits_) {
        switch (e.kind) {
        case Kind::Append: table_->records_.push_back(std::move(e.record)); break;
        case Kind::SetCell: table_->records_[e.ordinal - 1][e.field] = std::move(e.value); break;
        case Kind::Erase:
            table_->records_.erase(table_->records_.begin() +
                                   static_cast<std::ptrdiff_t>(e.ordinal - 1));
            break;
        case Kind::Clear: table_->records_.clear(); break;
        }
    }
    ++table_->commit_count_;
    committed_ = true;
    edits_.clear();
}

} // namespace grainstore
