#include "grainstore/storage.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "grainstore/error.hpp"

namespace grainstore {

namespace {

struct RawField {
    std::string text;
    bool quoted = false;
};

struct RawRecord {
    std::vector<RawField> fields;
    std::size_t line = 0; // physical line the record starts on
};

bool needs_quoting(std::string_view s) {
    if (s.empty()) return false;
    return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

void write_text_field(std::string& out, std::string_view s) {
    if (s.empty()) {
        out += "\"\""; // empty text, distinct from NULL
        return;
    }
    if (!needs_quoting(s)) {
        out += s;
        return;
    }
    out += '"';
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

void write_field(std::string& out, const FieldValue& v) {
    if (is_null(v)) return; // empty unquoted field
    if (const auto* s = std::get_if<std::string>(&v)) {
        write_text_field(out, *s);
        return;
    }
    out += format_value(v);
}

/// Whole-file RFC 4180 parse. Accepts CRLF and LF terminators; quoted fields
/// may span physical lines.
std::vector<RawRecord> parse_csv(const std::string& data) {
    std::vector<RawRecord> records;
    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = data.size();
    while (i < n) {
        RawRecord rec;
        rec.line = line;
        bool record_done = false;
        while (!record_done) {
            RawField field;
            if (i < n && data[i] == '"') {
                field.quoted = true;
                ++i;
                bool closed = false;
                while (i < n) {
                    char c = data[i];
                    if (c == '"') {
                        if (i + 1 < n && data[i + 1] == '"') {
                            field.text += '"';
                            i += 2;
                            continue;
                        }
                        ++i;
                        closed = true;
                        break;
                    }
                    if (c == '\n') ++line;
                    field.text += c;
                    ++i;
                }
                if (!closed)
                    throw Error(Errc::FormatError,
                                "line " + std::to_string(rec.line) + ": unterminated quote");
                if (i < n && data[i] != ',' && data[i] != '\r' && data[i] != '\n')
                    throw Error(Errc::FormatError, "line " + std::to_string(line) +
                                                       ": unexpected character after closing quote");
            } else {
                while (i < n && data[i] != ',' && data[i] != '\r' && data[i] != '\n') {
                    if (data[i] == '"')
                        throw Error(Errc::FormatError, "line " + std::to_string(line) +
                                                           ": quote inside unquoted field");
                    field.text += data[i];
                    ++i;
                }
            }
            rec.fields.push_back(std::move(field));
            if (i >= n) {
                record_done = true;
            } else if (data[i] == ',') {
                ++i;
            } else { // \r or \n
                if (data[i] == '\r') ++i;
                if (i < n && data[i] == '\n') ++i;
                ++line;
                record_done = true;
            }
        }
        records.push_back(std::move(rec));
    }
    return records;
}

FieldValue typed_value(const RawField& raw, const FieldSpec& spec, std::size_t line,
                       std::vector<std::string>* warnings) {
    if (!raw.quoted && raw.text.empty()) return std::monostate{};
    auto fail = [&](const std::string& why) -> Error {
        return Error(Errc::FormatError,
                     "line " + std::to_string(line) + ", field '" + spec.name + "': " + why);
    };
    switch (spec.type) {
    case FieldType::Text: return raw.text;
    case FieldType::Integer: {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(raw.text.data(), raw.text.data() + raw.text.size(), v);
        if (ec != std::errc{} || p != raw.text.data() + raw.text.size())
            throw fail("bad integer '" + raw.text + "'");
        return v;
    }
    case FieldType::Float: {
        double v = 0;
        auto [p, ec] = std::from_chars(raw.text.data(), raw.text.data() + raw.text.size(), v);
        if (ec != std::errc{} || p != raw.text.data() + raw.text.size())
            throw fail("bad float '" + raw.text + "'");
        return v;
    }
    case FieldType::Date: {
        auto d = parse_date_lenient(raw.text);
        if (!d) throw fail("bad date '" + raw.text + "'");
        return *d;
    }
    case FieldType::Timestamp: {
        auto t = parse_timestamp_lenient(raw.text);
        if (!t) throw fail("bad timestamp '" + raw.text + "'");
        if (t->normalized && warnings)
            warnings->push_back("line " + std::to_string(line) + ", field '" + spec.name +
                                "': hour-24 timestamp '" + raw.text + "' normalized to " +
                                format_timestamp(t->value));
        return t->value;
    }
    }
    throw fail("unknown field type");
}

std::vector<Record> records_from_csv(const std::string& data, const Schema& schema,
                                     std::vector<std::string>* warnings) {
    auto raw = parse_csv(data);
    if (raw.empty()) throw Error(Errc::FormatError, "line 1: missing header row");
    const RawRecord& header = raw.front();
    if (header.fields.size() != schema.arity())
        throw Error(Errc::FormatError,
                    "line 1: header has " + std::to_string(header.fields.size()) +
                        " columns, schema has " + std::to_string(schema.arity()));
    for (std::size_t i = 0; i < schema.arity(); ++i)
        if (header.fields[i].text != schema.fields[i].name)
            throw Error(Errc::FormatError, "line 1: header column '" + header.fields[i].text +
                                               "' does not match schema field '" +
                                               schema.fields[i].name + "'");
    std::vector<Record> out;
    out.reserve(raw.size() - 1);
    for (std::size_t r = 1; r < raw.size(); ++r) {
        const RawRecord& rec = raw[r];
        // A blank line cannot be data under a multi-column schema; tolerate
        // it. Under a single-column schema it is a record with a null cell.
        if (schema.arity() > 1 && rec.fields.size() == 1 && !rec.fields[0].quoted &&
            rec.fields[0].text.empty())
            continue;
        if (rec.fields.size() != schema.arity())
            throw Error(Errc::FormatError, "line " + std::to_string(rec.line) + ": " +
                                               std::to_string(rec.fields.size()) +
                                               " fields, expected " +
                                               std::to_string(schema.arity()));
        Record row;
        row.reserve(schema.arity());
        for (std::size_t i = 0; i < schema.arity(); ++i) {
            FieldValue v = typed_value(rec.fields[i], schema.fields[i], rec.line, warnings);
            if (is_null(v) && !schema.fields[i].nullable)
                throw Error(Errc::FormatError, "line " + std::to_string(rec.line) + ", field '" +
                                                   schema.fields[i].name +
                                                   "': null not allowed");
            row.push_back(std::move(v));
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(Errc::IoError, "read failed for " + path.string());
    return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot open " + path.string() + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

} // namespace

std::filesystem::path schema_sidecar_path(const std::filesystem::path& csv_path) {
    std::filesystem::path p = csv_path;
    if (p.extension() == ".csv") p.replace_extension();
    p += ".schema.json";
    return p;
}

std::string csv_line(const Schema& schema, const Record& r) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) line += ',';
        write_field(line, r[i]);
    }
    (void)schema;
    return line;
}

void save_table(const Table& table, const std::filesystem::path& csv_path) {
    std::string out;
    const Schema& s = table.schema();
    for (std::size_t i = 0; i < s.arity(); ++i) {
        if (i) out += ',';
        write_text_field(out, s.fields[i].name);
    }
    out += "\r\n";
    for (const Record& r : table.records()) {
        out += csv_line(s, r);
        out += "\r\n";
    }
    write_file(csv_path, out);
    save_schema_json(s, schema_sidecar_path(csv_path));
}

void save_schema_json(const Schema& schema, const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    j["fields"] = nlohmann::ordered_json::array();
    for (const FieldSpec& f : schema.fields)
        j["fields"].push_back({{"name", f.name},
                               {"type", std::string(field_type_name(f.type))},
                               {"nullable", f.nullable}});
    auto put = [&](const char* key, const std::optional<std::string>& v) {
        if (v) j[key] = *v;
    };
    put("key_column", schema.key_column);
    put("date_column", schema.date_column);
    put("timestamp_column", schema.timestamp_column);
    put("currency_column", schema.currency_column);
    put("action_column", schema.action_column);
    write_file(path, j.dump(2) + "\n");
}

Schema load_schema_json(const std::filesystem::path& path) {
    std::string data = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(data);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::FormatError, path.string() + ": " + e.what());
    }
    Schema s;
    try {
        for (const auto& f : j.at("fields")) {
            FieldSpec spec;
            spec.name = f.at("name").get<std::string>();
            auto t = parse_field_type(f.at("type").get<std::string>());
            if (!t)
                throw Error(Errc::FormatError, path.string() + ": unknown field type '" +
                                                   f.at("type").get<std::string>() + "'");
            spec.type = *t;
            spec.nullable = f.value("nullable", false);
            s.fields.push_back(std::move(spec));
        }
        auto get = [&](const char* key) -> std::optional<std::string> {
            if (j.contains(key)) return j.at(key).get<std::string>();
            return std::nullopt;
        };
        s.key_column = get("key_column");
        s.date_column = get("date_column");
        s.timestamp_column = get("timestamp_column");
        s.currency_column = get("currency_column");
        s.action_column = get("action_column");
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::FormatError, path.string() + ": " + e.what());
    }
    s.validate();
    return s;
}

Table load_table(const std::filesystem::path& csv_path, std::vector<std::string>* warnings) {
    Schema schema = load_schema_json(schema_sidecar_path(csv_path));
    std::string data = read_file(csv_path);
    std::vector<Record> rows = records_from_csv(data, schema, warnings);
    return Table::restored(std::move(schema), std::move(rows));
}

std::vector<Record> load_records_csv(const std::filesystem::path& path, const Schema& schema,
                                     std::vector<std::string>* warnings) {
    return records_from_csv(read_file(path), schema, warnings);
}

} // namespace grainstore
