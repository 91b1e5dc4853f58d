#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grainstore/value.hpp"

namespace grainstore {

enum class FieldType { Integer, Float, Text, Date, Timestamp };

std::string_view field_type_name(FieldType t);
std::optional<FieldType> parse_field_type(std::string_view name);

/// Does the value inhabit the given type? NULL never does; nullability is
/// checked separately.
bool value_has_type(const FieldValue& v, FieldType t);

struct FieldSpec {
    std::string name;
    FieldType type = FieldType::Text;
    bool nullable = false;

    bool operator==(const FieldSpec&) const = default;
};

/// An ordered field list plus the designated columns the higher-level
/// operations key off: entity key, record date, record timestamp, and the
/// currency/action markers used by periodic tables.
struct Schema {
    std::vector<FieldSpec> fields;
    std::optional<std::string> key_column;
    std::optional<std::string> date_column;
    std::optional<std::string> timestamp_column;
    std::optional<std::string> currency_column;
    std::optional<std::string> action_column;

    bool operator==(const Schema&) const = default;

    std::size_t arity() const { return fields.size(); }
    std::optional<std::size_t> index_of(std::string_view name) const;

    /// Throws InvalidSchema on duplicate/empty field names or bad column
    /// designations. Designated columns must exist and have a usable type:
    /// key -> integer or text, date -> date, timestamp -> timestamp,
    /// currency -> nullable text, action -> text.
    void validate() const;
};

} // namespace grainstore
