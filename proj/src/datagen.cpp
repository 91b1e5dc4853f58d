#include "grainstore/datagen.hpp"

namespace grainstore {

namespace {

constexpr const char* kFirstNames[] = {
    "Anne",  "Barbie", "Catherine", "Diana",  "Elise",  "Frank", "Greta", "Henry",
    "Irene", "Jonah",  "Karla",     "Liam",   "Mona",   "Nina",  "Oscar", "Paula",
    "Quinn", "Rita",   "Stefan",    "Teresa",
};

constexpr const char* kLastNames[] = {
    "Allgood", "Banderas", "Calvin",  "Delevingne", "Everett", "Fuller", "Grant",
    "Holt",    "Ibarra",   "Jimenez", "Kirby",      "Lowell",  "Mendez", "Norris",
    "Osman",   "Pruitt",   "Quigley", "Reyes",      "Salazar", "Tanaka",
};

constexpr const char* kSubscriptions[] = {"AMZ20", "AMZ30", "AMZ40"};

std::string random_id(Rng& rng, std::size_t len) {
    static constexpr char kAlnum[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
    std::string id;
    id.reserve(len);
    for (std::size_t i = 0; i < len; ++i) id += kAlnum[rng.below(sizeof kAlnum - 1)];
    return id;
}

std::string random_name(Rng& rng) {
    return std::string(kFirstNames[rng.below(20)]) + " " + kLastNames[rng.below(20)];
}

Record customer_row(std::int64_t tn, std::string id, std::string name, std::string sub, Date d) {
    return Record{tn, std::move(id), std::move(name), std::move(sub), d};
}

} // namespace

Schema customer_schema() {
    Schema s;
    s.fields = {{"Transaction number", FieldType::Integer, false},
                {"Customer ID", FieldType::Text, false},
                {"Customer Name", FieldType::Text, false},
                {"Subscription", FieldType::Text, false},
                {"Date", FieldType::Date, false}};
    s.date_column = "Date";
    return s;
}

std::vector<Record> make_customer_records(std::uint64_t seed, std::size_t n, Date first_day,
                                          std::size_t per_day) {
    Rng rng(seed);
    std::vector<Record> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Date d{static_cast<std::int32_t>(first_day.days + (per_day ? i / per_day : 0))};
        rows.push_back(customer_row(static_cast<std::int64_t>(i + 1), random_id(rng, 10),
                                    random_name(rng), kSubscriptions[rng.below(3)], d));
    }
    return rows;
}

Table example_customer_table() {
    Table t(customer_schema());
    std::vector<Record> rows;
    rows.reserve(536);
    rows.push_back(customer_row(1, "RSoLGFtpbJ", "Anne Allgood", "AMZ20",
                                Date::from_ymd(2018, 7, 5)));
    rows.push_back(customer_row(2, "7FbkoTnEMh", "Barbie Banderas", "AMZ30",
                                Date::from_ymd(2018, 7, 5)));
    Rng rng(536);
    const Date first = Date::from_ymd(2018, 7, 5);
    for (std::int64_t tn = 3; tn <= 533; ++tn) {
        // 531 filler rows spread evenly across July 5..31, dates ascending.
        auto offset = static_cast<std::int32_t>((tn - 3) * 27 / 531);
        rows.push_back(customer_row(tn, random_id(rng, 10), random_name(rng),
                                    kSubscriptions[rng.below(3)], Date{first.days + offset}));
    }
    rows.push_back(customer_row(534, "s0E78xxKuG", "Catherine Calvin", "AMZ20",
                                Date::from_ymd(2018, 7, 31)));
    rows.push_back(customer_row(535, "IrmfSP9ZjJ", "Diana Delevingne", "AMZ20",
                                Date::from_ymd(2018, 8, 1)));
    rows.push_back(customer_row(536, "CqHVuthBnH", "Elise Everett", "AMZ40",
                                Date::from_ymd(2018, 8, 2)));
    t.append_committed(rows);
    return t;
}

Schema patient_schema() {
    Schema s;
    s.fields = {{"Patient id", FieldType::Text, false},
                {"Case number", FieldType::Integer, false}};
    s.key_column = "Patient id";
    return s;
}

Table example_patient_table() {
    const std::string a = "28435300131710927001";
    const std::string b = "56729845935643075507";
    const char* filler[] = {"90218374650912837465", "11209384756102938475",
                            "73645102938475610293", "48576610293847561029"};
    Table t(patient_schema());
    std::vector<Record> rows;
    Rng rng(18);
    for (std::int64_t ord = 1; ord <= 18; ++ord) {
        std::string id;
        switch (ord) {
        case 3: case 5: case 6: case 11: case 18: id = a; break;
        case 2: case 4: case 10: id = b; break;
        default: id = filler[rng.below(4)]; break;
        }
        rows.push_back(Record{std::move(id), ord});
    }
    t.append_committed(rows);
    return t;
}

Schema submission_schema(bool with_action) {
    Schema s;
    s.fields = {{"Student name", FieldType::Text, false},
                {"Submitted", FieldType::Text, true},
                {"Timestamp", FieldType::Timestamp, true}};
    if (with_action) s.fields.push_back({"Action", FieldType::Text, false});
    s.fields.push_back({"Currency", FieldType::Text, true});
    s.key_column = "Student name";
    s.timestamp_column = "Timestamp";
    s.currency_column = "Currency";
    if (with_action) s.action_column = "Action";
    return s;
}

Table make_sorted_table(std::uint64_t seed, std::size_t n, Date first_day, std::size_t per_day,
                        std::size_t key_cardinality) {
    Schema s;
    s.fields = {{"id", FieldType::Integer, false},
                {"entity", FieldType::Text, false},
                {"amount", FieldType::Float, false},
                {"date", FieldType::Date, false}};
    s.key_column = "entity";
    s.date_column = "date";
    Table t(std::move(s));
    Rng rng(seed);
    std::vector<Record> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Date d{static_cast<std::int32_t>(first_day.days + (per_day ? i / per_day : 0))};
        rows.push_back(Record{static_cast<std::int64_t>(i + 1),
                              "E" + std::to_string(rng.below(key_cardinality ? key_cardinality : 1)),
                              static_cast<double>(rng.below(100000)) / 100.0, d});
    }
    t.append_committed(rows);
    return t;
}

Table make_event_table(std::uint64_t seed, std::size_t n, Timestamp start,
                       std::size_t max_step_minutes) {
    Schema s;
    s.fields = {{"seq", FieldType::Integer, false},
                {"payload", FieldType::Text, false},
                {"ts", FieldType::Timestamp, false}};
    s.key_column = "seq";
    s.timestamp_column = "ts";
    Table t(std::move(s));
    Rng rng(seed);
    std::vector<Record> rows;
    rows.reserve(n);
    Timestamp ts = start;
    for (std::size_t i = 0; i < n; ++i) {
        rows.push_back(Record{static_cast<std::int64_t>(i + 1), random_id(rng, 6), ts});
        ts.seconds += 60 * static_cast<std::int64_t>(1 + rng.below(std::max<std::size_t>(
                                                             1, max_step_minutes)));
    }
    t.append_committed(rows);
    return t;
}

} // namespace grainstore
