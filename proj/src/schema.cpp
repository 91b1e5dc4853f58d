#include "grainstore/schema.hpp"

#include <set>

#include "grainstore/error.hpp"

namespace grainstore {

std::string_view field_type_name(FieldType t) {
    switch (t) {
    case FieldType::Integer: return "integer";
    case FieldType::Float: return "float";
    case FieldType::Text: return "text";
    case FieldType::Date: return "date";
    case FieldType::Timestamp: return "timestamp";
    }
    return "?";
}

std::optional<FieldType> parse_field_type(std::string_view name) {
    if (name == "integer") return FieldType::Integer;
    if (name == "float") return FieldType::Float;
    if (name == "text") return FieldType::Text;
    if (name == "date") return FieldType::Date;
    if (name == "timestamp") return FieldType::Timestamp;
    return std::nullopt;
}

bool value_has_type(const FieldValue& v, FieldType t) {
    switch (t) {
    case FieldType::Integer: return std::holds_alternative<std::int64_t>(v);
    case FieldType::Float: return std::holds_alternative<double>(v);
    case FieldType::Text: return std::holds_alternative<std::string>(v);
    case FieldType::Date: return std::holds_alternative<Date>(v);
    case FieldType::Timestamp: return std::holds_alternative<Timestamp>(v);
    }
    return false;
}

std::optional<std::size_t> Schema::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < fields.size(); ++i)
        if (fields[i].name == name) return i;
    return std::nullopt;
}

namespace {

void check_designation(const Schema& s, const std::optional<std::string>& column,
                       std::string_view what, bool (*type_ok)(const FieldSpec&)) {
    if (!column) return;
    auto idx = s.index_of(*column);
    if (!idx)
        throw Error(Errc::InvalidSchema,
                    std::string(what) + " column '" + *column + "' names no field");
    if (!type_ok(s.fields[*idx]))
        throw Error(Errc::InvalidSchema, std::string(what) + " column '" + *column +
                                             "' has incompatible type " +
                                             std::string(field_type_name(s.fields[*idx].type)));
}

} // namespace

void Schema::validate() const {
    if (fields.empty()) throw Error(Errc::InvalidSchema, "schema has no fields");
    std::set<std::string> seen;
    for (const auto& f : fields) {
        if (f.name.empty()) throw Error(Errc::InvalidSchema, "empty field name");
        if (!seen.insert(f.name).second)
            throw Error(Errc::InvalidSchema, "duplicate field name '" + f.name + "'");
    }
    check_designation(*this, key_column, "key", [](const FieldSpec& f) {
        return f.type == FieldType::Integer || f.type == FieldType::Text;
    });
    check_designation(*this, date_column, "date",
                      [](const FieldSpec& f) { return f.type == FieldType::Date; });
    check_designation(*this, timestamp_column, "timestamp",
                      [](const FieldSpec& f) { return f.type == FieldType::Timestamp; });
    check_designation(*this, currency_column, "currency", [](const FieldSpec& f) {
        return f.type == FieldType::Text && f.nullable;
    });
    check_designation(*this, action_column, "action",
                      [](const FieldSpec& f) { return f.type == FieldType::Text; });
}

} // namespace grainstore
