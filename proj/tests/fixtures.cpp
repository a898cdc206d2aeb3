#include "fixtures.hpp"

#include "helpers.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace dbdesc::testing {

namespace {

std::string pad2(int v) {
    std::string s = std::to_string(v);
    return s.size() < 2 ? "0" + s : s;
}

std::string quoted(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        out.push_back(c);
        if (c == '\'') out.push_back('\'');
    }
    out.push_back('\'');
    return out;
}

ExpectedCategory rule(CategoryKind kind, std::optional<Granularity> granularity = std::nullopt) {
    return {kind, granularity, Confidence::rule};
}

ExpectedCategory model(CategoryKind kind, std::optional<Granularity> granularity = std::nullopt) {
    return {kind, granularity, Confidence::model};
}

CorpusDb build_retail(const std::filesystem::path& dir) {
    CorpusDb db;
    db.name = "retail";
    db.path = dir / "retail.db";
    db.url = "sqlite:///" + db.path.string();

    std::ostringstream sql;
    sql << "CREATE TABLE users ( -- registered shop customers\n"
           "  id INTEGER PRIMARY KEY, -- surrogate user key\n"
           "  email TEXT NOT NULL UNIQUE,\n"
           "  signup_date TEXT NOT NULL,\n"
           "  status TEXT NOT NULL,\n"
           "  age INTEGER\n"
           ");\n"
           "CREATE TABLE orders (\n"
           "  id INTEGER PRIMARY KEY,\n"
           "  user_id INTEGER NOT NULL REFERENCES users(id), -- purchasing user\n"
           "  total REAL NOT NULL,\n"
           "  created_at TEXT NOT NULL, -- order creation timestamp\n"
           "  is_promo INTEGER NOT NULL,\n"
           "  promo_type TEXT\n"
           ");\n"
           "CREATE TABLE products (\n"
           "  id INTEGER PRIMARY KEY,\n"
           "  sku TEXT NOT NULL, -- stock keeping unit\n"
           "  name TEXT NOT NULL,\n"
           "  price REAL NOT NULL,\n"
           "  category TEXT NOT NULL,\n"
           "  description TEXT\n"
           ");\n";

    for (int i = 0; i < 40; ++i) {
        sql << "INSERT INTO users VALUES (" << (i + 1) << ", 'user" << i << "@example.com', "
            << "'2024-01-" << pad2((i % 28) + 1) << "', "
            << (i % 2 ? "'active'" : "'inactive'") << ", " << (18 + (i * 7) % 30) << ");\n";
    }
    const char* promo_kinds[] = {"percent", "bogo", "free_shipping"};
    for (int i = 0; i < 60; ++i) {
        sql << "INSERT INTO orders VALUES (" << (i + 1) << ", " << ((i % 25) + 1) << ", "
            << (5.0 + (i % 37) * 1.25) << ", "
            << "'2024-02-" << pad2((i % 27) + 1) << " " << pad2(i % 24) << ":"
            << pad2((i * 3) % 60) << ":" << pad2((i * 7) % 60) << "', " << (i % 3 == 0 ? 1 : 0)
            << ", "
            << (i % 3 == 0 ? quoted(promo_kinds[(i / 3) % 3]) : std::string("NULL")) << ");\n";
    }
    const char* categories[] = {"electronics", "toys", "grocery", "books"};
    for (int i = 0; i < 30; ++i) {
        std::string description = "NULL";
        if (i % 10 != 9) {
            description = quoted("A long-form catalog entry number " + std::to_string(i) +
                                 " describing materials, dimensions, warranty coverage and "
                                 "recommended usage in detail.");
        }
        sql << "INSERT INTO products VALUES (" << (i + 1) << ", 'SKU-" << pad2(i) << pad2(i + 40)
            << "', 'Product Item " << i << "', " << (2.5 + (i % 22) * 3.75) << ", "
            << quoted(categories[i % 4]) << ", " << description << ");\n";
    }
    exec_sqlite(db.path, sql.str());

    db.ground_truth = {
        {{"users", "id"}, rule(CategoryKind::code)},
        {{"users", "email"}, model(CategoryKind::text_dim)},
        {{"users", "signup_date"}, model(CategoryKind::datetime_dim, Granularity::day)},
        {{"users", "status"}, rule(CategoryKind::enum_dim)},
        {{"users", "age"}, rule(CategoryKind::measure)},
        {{"orders", "id"}, rule(CategoryKind::code)},
        {{"orders", "user_id"}, rule(CategoryKind::code)},
        {{"orders", "total"}, rule(CategoryKind::measure)},
        {{"orders", "created_at"}, model(CategoryKind::datetime_dim, Granularity::second)},
        {{"orders", "is_promo"}, rule(CategoryKind::enum_dim)},
        {{"orders", "promo_type"}, rule(CategoryKind::enum_dim)},
        {{"products", "id"}, rule(CategoryKind::code)},
        {{"products", "sku"}, model(CategoryKind::code)},
        {{"products", "name"}, model(CategoryKind::text_dim)},
        {{"products", "price"}, rule(CategoryKind::measure)},
        {{"products", "category"}, rule(CategoryKind::enum_dim)},
        {{"products", "description"}, rule(CategoryKind::text_dim)},
    };
    db.classification_replies = {
        {{"users", "email"}, "TEXT"},
        {{"users", "signup_date"}, "DATETIME"},
        {{"orders", "created_at"}, "DATETIME"},
        {{"products", "sku"}, "CODE"},
        {{"products", "name"}, "TEXT"},
    };
    db.datetime_columns = {
        {{"users", "signup_date"}, Granularity::day},
        {{"orders", "created_at"}, Granularity::second},
    };
    return db;
}

CorpusDb build_sensors(const std::filesystem::path& dir) {
    CorpusDb db;
    db.name = "sensors";
    db.path = dir / "sensors.db";
    db.url = "sqlite:///" + db.path.string();

    std::ostringstream sql;
    sql << "CREATE TABLE sensors (\n"
           "  sensor_id INTEGER PRIMARY KEY,\n"
           "  label TEXT NOT NULL,\n"
           "  install_year INTEGER NOT NULL\n"
           ");\n"
           "CREATE TABLE readings (\n"
           "  id INTEGER PRIMARY KEY,\n"
           "  sensor_id INTEGER NOT NULL REFERENCES sensors(sensor_id),\n"
           "  ts INTEGER NOT NULL,\n"
           "  value REAL NOT NULL,\n"
           "  quality INTEGER NOT NULL\n"
           ");\n";
    for (int i = 0; i < 25; ++i) {
        sql << "INSERT INTO sensors VALUES (" << (i + 1) << ", 'unit-" << char('a' + i % 26) << "-"
            << (100 + i) << "', " << (1995 + i) << ");\n";
    }
    for (int i = 0; i < 48; ++i) {
        sql << "INSERT INTO readings VALUES (" << (i + 1) << ", " << ((i % 25) + 1) << ", "
            << (1700000000LL + i * 3600LL) << ", " << (20.0 + (i % 31) * 0.5) << ", " << (i % 3)
            << ");\n";
    }
    exec_sqlite(db.path, sql.str());

    db.ground_truth = {
        {{"sensors", "sensor_id"}, rule(CategoryKind::code)},
        {{"sensors", "label"}, model(CategoryKind::text_dim)},
        {{"sensors", "install_year"}, model(CategoryKind::datetime_dim, Granularity::year)},
        {{"readings", "id"}, rule(CategoryKind::code)},
        {{"readings", "sensor_id"}, rule(CategoryKind::code)},
        {{"readings", "ts"}, model(CategoryKind::datetime_dim, Granularity::second)},
        {{"readings", "value"}, rule(CategoryKind::measure)},
        {{"readings", "quality"}, rule(CategoryKind::enum_dim)},
    };
    db.classification_replies = {
        {{"sensors", "label"}, "TEXT"},
        {{"sensors", "install_year"}, "DATETIME"},
        {{"readings", "ts"}, "DATETIME"},
    };
    db.datetime_columns = {
        {{"sensors", "install_year"}, Granularity::year},
        {{"readings", "ts"}, Granularity::second},
    };
    return db;
}

CorpusDb build_library(const std::filesystem::path& dir) {
    CorpusDb db;
    db.name = "library";
    db.path = dir / "library.db";
    db.url = "sqlite:///" + db.path.string();

    std::ostringstream sql;
    sql << "CREATE TABLE books (\n"
           "  book_id INTEGER PRIMARY KEY,\n"
           "  isbn TEXT NOT NULL,\n"
           "  title TEXT NOT NULL,\n"
           "  published_month TEXT NOT NULL,\n"
           "  page_count INTEGER\n"
           ");\n"
           "CREATE TABLE loans (\n"
           "  loan_id INTEGER PRIMARY KEY,\n"
           "  book_id INTEGER NOT NULL REFERENCES books(book_id),\n"
           "  loan_date INTEGER NOT NULL,\n"
           "  due_minute TEXT NOT NULL,\n"
           "  return_status TEXT NOT NULL\n"
           ");\n";
    for (int i = 0; i < 26; ++i) {
        int j = i % 22;
        sql << "INSERT INTO books VALUES (" << (i + 1) << ", '978-" << (600 + i) << "', "
            << "'The Catalog Volume " << i << "', '" << (2000 + j / 3) << "-" << pad2((j % 12) + 1)
            << "', " << (120 + (i % 23) * 7) << ");\n";
    }
    const char* statuses[] = {"returned", "overdue", "out"};
    for (int i = 0; i < 30; ++i) {
        sql << "INSERT INTO loans VALUES (" << (i + 1) << ", " << ((i % 26) + 1) << ", "
            << (20240000 + ((i % 12) + 1) * 100 + (i % 28) + 1) << ", "
            << "'2024-" << pad2((i % 12) + 1) << "-" << pad2((i % 25) + 1) << " " << pad2(i % 24)
            << ":" << pad2((i * 2) % 60) << "', " << quoted(statuses[i % 3]) << ");\n";
    }
    exec_sqlite(db.path, sql.str());

    db.ground_truth = {
        {{"books", "book_id"}, rule(CategoryKind::code)},
        {{"books", "isbn"}, model(CategoryKind::code)},
        {{"books", "title"}, model(CategoryKind::text_dim)},
        {{"books", "published_month"}, model(CategoryKind::datetime_dim, Granularity::month)},
        {{"books", "page_count"}, rule(CategoryKind::measure)},
        {{"loans", "loan_id"}, rule(CategoryKind::code)},
        {{"loans", "book_id"}, rule(CategoryKind::code)},
        {{"loans", "loan_date"}, model(CategoryKind::datetime_dim, Granularity::day)},
        {{"loans", "due_minute"}, model(CategoryKind::datetime_dim, Granularity::minute)},
        {{"loans", "return_status"}, rule(CategoryKind::enum_dim)},
    };
    db.classification_replies = {
        {{"books", "isbn"}, "CODE"},
        {{"books", "title"}, "TEXT"},
        {{"books", "published_month"}, "DATETIME"},
        {{"loans", "loan_date"}, "DATETIME"},
        {{"loans", "due_minute"}, "DATETIME"},
    };
    db.datetime_columns = {
        {{"books", "published_month"}, Granularity::month},
        {{"loans", "loan_date"}, Granularity::day},
        {{"loans", "due_minute"}, Granularity::minute},
    };
    return db;
}

CorpusDb build_clinic(const std::filesystem::path& dir) {
    CorpusDb db;
    db.name = "clinic";
    db.path = dir / "clinic.db";
    db.url = "sqlite:///" + db.path.string();

    std::ostringstream sql;
    sql << "CREATE TABLE patients ( -- registered patients of the clinic\n"
           "  patient_uuid TEXT PRIMARY KEY, -- unique patient identifier\n"
           "  full_name TEXT NOT NULL,\n"
           "  birth_date DATE NOT NULL,\n"
           "  is_active BOOLEAN NOT NULL,\n"
           "  height_cm REAL,\n"
           "  photo BLOB,\n"
           "  notes TEXT\n"
           ");\n"
           "CREATE TABLE audit_log (\n"
           "  entry_id INTEGER PRIMARY KEY,\n"
           "  logged_at TIMESTAMP NOT NULL,\n"
           "  action TEXT NOT NULL\n"
           ");\n"
           "CREATE TABLE archived_visits (\n"
           "  visit_id INTEGER PRIMARY KEY,\n"
           "  visit_date DATE,\n"
           "  charge REAL\n"
           ");\n";
    for (int i = 0; i < 25; ++i) {
        std::string photo = "NULL";
        if (i < 23) {
            std::ostringstream hex;
            hex << "X'" << pad2(i) << "d0f0'";
            photo = hex.str();
        }
        std::string notes = "NULL";
        if (i % 8 != 7) {
            notes = quoted("Clinical visit notes entry " + std::to_string(i) +
                           " covering intake assessment, medication adjustments and the agreed "
                           "follow-up plan for the patient.");
        }
        sql << "INSERT INTO patients VALUES ('00000000-0000-4000-8000-" << pad2(i) << pad2(i + 1)
            << pad2(i + 2) << "000000', 'Alex Example " << i << "', '19" << pad2(50 + i % 40)
            << "-" << pad2((i % 12) + 1) << "-" << pad2((i % 28) + 1) << "', " << (i % 2) << ", "
            << (150.0 + (i % 22) * 2.5) << ", " << photo << ", " << notes << ");\n";
    }
    const char* actions[] = {"login", "update", "delete", "export"};
    for (int i = 0; i < 30; ++i) {
        sql << "INSERT INTO audit_log VALUES (" << (i + 1) << ", '2024-" << pad2((i % 12) + 1)
            << "-" << pad2((i % 28) + 1) << " " << pad2(i % 24) << ":30:00', "
            << quoted(actions[i % 4]) << ");\n";
    }
    exec_sqlite(db.path, sql.str());

    db.ground_truth = {
        {{"patients", "patient_uuid"}, rule(CategoryKind::code)},
        {{"patients", "full_name"}, model(CategoryKind::text_dim)},
        {{"patients", "birth_date"}, rule(CategoryKind::datetime_dim, Granularity::day)},
        {{"patients", "is_active"}, rule(CategoryKind::enum_dim)},
        {{"patients", "height_cm"}, rule(CategoryKind::measure)},
        {{"patients", "photo"}, model(CategoryKind::text_dim)},
        {{"patients", "notes"}, rule(CategoryKind::text_dim)},
        {{"audit_log", "entry_id"}, rule(CategoryKind::code)},
        {{"audit_log", "logged_at"}, rule(CategoryKind::datetime_dim, Granularity::second)},
        {{"audit_log", "action"}, rule(CategoryKind::enum_dim)},
        {{"archived_visits", "visit_id"}, rule(CategoryKind::code)},
        {{"archived_visits", "visit_date"}, rule(CategoryKind::datetime_dim, Granularity::day)},
        {{"archived_visits", "charge"}, rule(CategoryKind::measure)},
    };
    db.classification_replies = {
        {{"patients", "full_name"}, "TEXT"},
        {{"patients", "photo"}, "TEXT"},
    };
    db.datetime_columns = {
        {{"patients", "birth_date"}, Granularity::day},
        {{"audit_log", "logged_at"}, Granularity::second},
    };
    return db;
}

CorpusDb build_warehouse(const std::filesystem::path& dir) {
    CorpusDb db;
    db.name = "warehouse";
    db.path = dir / "warehouse.db";
    db.url = "sqlite:///" + db.path.string();

    std::ostringstream sql;
    sql << "CREATE TABLE regions (\n"
           "  region_code TEXT PRIMARY KEY,\n"
           "  region_name TEXT NOT NULL\n"
           ");\n"
           "CREATE TABLE shipments (\n"
           "  shipment_id INTEGER PRIMARY KEY,\n"
           "  region_code TEXT NOT NULL REFERENCES regions(region_code),\n"
           "  fiscal_quarter TEXT NOT NULL,\n"
           "  weight_kg REAL NOT NULL,\n"
           "  crate_count INTEGER NOT NULL,\n"
           "  hazmat INTEGER NOT NULL\n"
           ");\n";
    const char* region_codes[] = {"AF", "APAC", "EU", "LATAM", "ME", "NA"};
    const char* region_names[] = {"Africa", "Asia Pacific", "Europe", "Latin America",
                                  "Middle East", "North America"};
    for (int i = 0; i < 6; ++i) {
        sql << "INSERT INTO regions VALUES (" << quoted(region_codes[i]) << ", "
            << quoted(region_names[i]) << ");\n";
    }
    for (int i = 0; i < 45; ++i) {
        sql << "INSERT INTO shipments VALUES (" << (i + 1) << ", " << quoted(region_codes[i % 6])
            << ", '" << (2018 + i % 7) << "Q" << ((i % 4) + 1) << "', "
            << (1.5 + (i % 33) * 2.25) << ", " << (1 + i % 24) << ", " << (i % 5 == 0 ? 1 : 0)
            << ");\n";
    }
    exec_sqlite(db.path, sql.str());

    db.ground_truth = {
        {{"regions", "region_code"}, rule(CategoryKind::code)},
        {{"regions", "region_name"}, rule(CategoryKind::enum_dim)},
        {{"shipments", "shipment_id"}, rule(CategoryKind::code)},
        {{"shipments", "region_code"}, rule(CategoryKind::code)},
        {{"shipments", "fiscal_quarter"}, model(CategoryKind::datetime_dim, Granularity::quarter)},
        {{"shipments", "weight_kg"}, rule(CategoryKind::measure)},
        {{"shipments", "crate_count"}, rule(CategoryKind::measure)},
        {{"shipments", "hazmat"}, rule(CategoryKind::enum_dim)},
    };
    db.classification_replies = {
        {{"shipments", "fiscal_quarter"}, "DATETIME"},
    };
    db.datetime_columns = {
        {{"shipments", "fiscal_quarter"}, Granularity::quarter},
    };
    return db;
}

} // namespace

Corpus::Corpus(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    dbs_.push_back(build_retail(dir));
    dbs_.push_back(build_sensors(dir));
    dbs_.push_back(build_library(dir));
    dbs_.push_back(build_clinic(dir));
    dbs_.push_back(build_warehouse(dir));
}

const CorpusDb& Corpus::db(const std::string& name) const {
    for (const auto& db : dbs_) {
        if (db.name == name) return db;
    }
    throw Error("no corpus db named " + name);
}

size_t Corpus::total_columns() const {
    size_t n = 0;
    for (const auto& db : dbs_) n += db.ground_truth.size();
    return n;
}

CategoryMap categories_from_ground_truth(const CorpusDb& db) {
    CategoryMap categories;
    for (const auto& [ref, expected] : db.ground_truth) {
        categories.emplace(ref, FieldCategory{expected.kind, expected.granularity,
                                              expected.confidence});
    }
    return categories;
}

FixtureEntries classification_fixture_entries(const CorpusDb& db) {
    FixtureEntries entries;
    for (const auto& [ref, token] : db.classification_replies) {
        entries["field_classification:" + ref.first + "." + ref.second] = {
            "The category is " + token + "."};
    }
    return entries;
}

namespace {

std::string fenced(const std::string& body) {
    return "```\n" + body + "```\n";
}

std::string domain_for(const std::string& db_id) {
    if (db_id == "retail") return "e-commerce";
    if (db_id == "sensors") return "industrial telemetry";
    if (db_id == "library") return "library management";
    if (db_id == "clinic") return "healthcare";
    if (db_id == "warehouse") return "logistics";
    return db_id + " operations";
}

} // namespace

FixtureEntries pipeline_fixture_entries(const SchemaSnapshot& snapshot,
                                        const CategoryMap& categories) {
    FixtureEntries entries;
    const std::string domain = domain_for(snapshot.db_id);

    entries["database_summary:" + snapshot.db_id] = {fenced(
        "domain: " + domain + "\n"
        "overview: The " + snapshot.db_id + " database stores " +
        std::to_string(snapshot.tables.size()) + " tables of " + domain + " records.\n"
        "key_dimensions: region, time, category\n"
        "key_metrics: volume, revenue\n")};

    for (const auto& table : snapshot.tables) {
        std::string function = "Supports " + domain + " operations around " + table.name + ".";
        if (snapshot.db_id == "retail" && table.name == "orders") {
            function = "Tracks purchase transactions made by registered users.";
        }
        entries["table_overview:" + table.name] = {fenced(
            "summary: Table " + table.name + " holds " + domain + " records.\n"
            "function: " + function + "\n")};

        entries["table_description:" + table.name] = {fenced(
            "description: Table " + table.name + " records " + domain +
            " data, useful for reporting and analysis.\n")};

        for (const auto& column : table.columns) {
            std::string description =
                "Stores the " + column.name + " attribute of each " + table.name + " row.";
            if (snapshot.db_id == "retail" && table.name == "orders" &&
                column.name == "is_promo") {
                description = "Whether the transaction is promotional.";
            }
            entries["column_description:" + table.name + "." + column.name] = {fenced(
                "description: " + description + "\n")};
        }
    }

    for (const auto& [table, kind] : relation_groups(snapshot, categories)) {
        entries["column_relations:" + table + "." + category_kind_name(kind)] = {fenced(
            "analysis: The " + category_kind_name(kind) + " columns of " + table +
            " cover distinct roles and must not be confused with one another.\n")};
    }
    return entries;
}

void script_overlong_replies(FixtureEntries& entries, const ColumnRef& column,
                             const std::string& table) {
    auto words = [](size_t n, const std::string& tag) {
        std::string body = "description:";
        for (size_t i = 0; i < n; ++i) body += " " + tag + std::to_string(i);
        return fenced(body + "\n");
    };
    entries["column_description:" + column.first + "." + column.second] = {words(40, "w"),
                                                                           words(40, "v")};
    entries["table_description:" + table] = {words(130, "t"), words(130, "u")};
}

MockModel make_mock(const FixtureEntries& entries) {
    MockModel mock;
    for (const auto& [key, replies] : entries) {
        size_t colon = key.find(':');
        std::string stage = colon == std::string::npos ? key : key.substr(0, colon);
        std::string target = colon == std::string::npos ? "" : key.substr(colon + 1);
        for (const auto& reply : replies) mock.add_reply(stage, target, reply);
    }
    return mock;
}

void merge_entries(FixtureEntries& into, const FixtureEntries& from) {
    for (const auto& [key, replies] : from) into[key] = replies;
}

void write_fixture_file(const std::filesystem::path& path, const FixtureEntries& entries) {
    nlohmann::ordered_json doc;
    for (const auto& [key, replies] : entries) doc[key] = replies;
    std::ofstream out(path);
    out << doc.dump(2) << "\n";
}

std::vector<std::pair<std::string, CategoryKind>> relation_groups(
    const SchemaSnapshot& snapshot, const CategoryMap& categories) {
    std::vector<std::pair<std::string, CategoryKind>> groups;
    for (const auto& table : snapshot.tables) {
        std::map<CategoryKind, size_t> counts;
        for (const auto& column : table.columns) {
            auto it = categories.find({table.name, column.name});
            if (it != categories.end()) ++counts[it->second.kind];
        }
        for (const auto& [kind, count] : counts) {
            if (count >= 2) groups.emplace_back(table.name, kind);
        }
    }
    return groups;
}

} // namespace dbdesc::testing
