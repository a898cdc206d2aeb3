#pragma once

#include "dbdesc/mschema.hpp"

#include <random>
#include <string>
#include <vector>

namespace dbdesc::testing {

inline MSchemaColumn doc_column(std::string name, std::string type, std::string description = "",
                                SlotSource source = SlotSource::empty, bool pk = false,
                                std::vector<std::string> examples = {}) {
    MSchemaColumn c;
    c.name = std::move(name);
    c.type = std::move(type);
    c.description = std::move(description);
    c.description_source = source;
    c.primary_key = pk;
    c.examples = std::move(examples);
    return c;
}

// The three frozen documents behind tests/golden/*.mschema.
inline MSchemaDoc golden_minimal() {
    MSchemaDoc doc;
    doc.db_id = "minimal";
    MSchemaTable notes;
    notes.name = "notes";
    notes.columns = {doc_column("id", "INTEGER", "", SlotSource::empty, true),
                     doc_column("body", "TEXT")};
    doc.tables = {notes};
    return doc;
}

inline MSchemaDoc golden_shop() {
    MSchemaDoc doc;
    doc.db_id = "shop";
    MSchemaTable users;
    users.name = "users";
    users.description = "Registered customers of the shop.";
    users.description_source = SlotSource::generated;
    users.columns = {
        doc_column("id", "INTEGER", "Unique customer identifier.", SlotSource::generated, true,
                   {"1", "2", "3"}),
        doc_column("email", "TEXT", "Customer contact address.", SlotSource::origin, false,
                   {"a@x.com", "b@y.org"}),
        doc_column("age", "INTEGER", "", SlotSource::empty, false, {"31", "44"}),
    };
    MSchemaTable orders;
    orders.name = "orders";
    orders.columns = {
        doc_column("id", "INTEGER", "", SlotSource::empty, true, {"1", "2"}),
        doc_column("user_id", "INTEGER", "Buyer reference.", SlotSource::generated, false,
                   {"1", "2"}),
        doc_column("total", "REAL"),
    };
    doc.tables = {users, orders};
    doc.foreign_keys = {{"orders", "user_id", "users", "id"}};
    return doc;
}

inline MSchemaDoc golden_tricky() {
    MSchemaDoc doc;
    doc.db_id = "tricky";
    MSchemaTable items;
    items.name = "items";
    items.columns = {
        doc_column("label", "VARCHAR(64)", "Display label.", SlotSource::generated, false,
                   {"a, b", "x]y", "plain"}),
        doc_column("price", "DECIMAL(10,2)"),
        doc_column("ref_a", "INTEGER"),
        doc_column("ref_b", "INTEGER"),
    };
    MSchemaTable parents;
    parents.name = "parents";
    parents.columns = {doc_column("id", "INTEGER", "", SlotSource::empty, true)};
    doc.tables = {items, parents};
    doc.foreign_keys = {{"items", "ref_a", "parents", "id"},
                        {"items", "ref_b", "parents", "id"}};
    return doc;
}

// Deterministic random documents for the round-trip law. Descriptions
// always end with a period so they cannot collide with the grammar's
// reserved trailing markers.
struct DocGenerator {
    std::mt19937 rng{20240817};

    int range(int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); }

    std::string identifier() {
        static const char* heads = "abcdefghijklmnopqrstuvwxyz_";
        static const char* tails = "abcdefghijklmnopqrstuvwxyz0123456789_";
        std::string s(1, heads[rng() % 27]);
        int len = range(0, 8);
        for (int i = 0; i < len; ++i) s.push_back(tails[rng() % 37]);
        return s;
    }

    std::string type() {
        static const std::vector<std::string> types = {
            "INTEGER", "TEXT", "REAL", "BLOB", "VARCHAR(40)", "DECIMAL(10,2)",
            "TIMESTAMP WITH TIME ZONE", ""};
        return types[rng() % types.size()];
    }

    std::string description() {
        static const std::vector<std::string> vocab = {
            "tracks", "the",  "value", "per",     "row,",  "keyed", "by:",
            "region", "code", "and",   "quarter", "total", "spend"};
        int words = range(1, 10);
        std::string out;
        for (int i = 0; i < words; ++i) {
            if (i) out += " ";
            out += vocab[rng() % vocab.size()];
        }
        return out + ".";
    }

    std::string example_value() {
        switch (rng() % 6) {
        case 0: return std::to_string(range(0, 100000));
        case 1: return "plain_" + identifier();
        case 2: return "with, comma";
        case 3: return "with ]bracket";
        case 4: return "with \"quote\" inside";
        default: return "2024-01-" + std::to_string(range(10, 28));
        }
    }

    MSchemaDoc doc() {
        MSchemaDoc d;
        d.db_id = identifier();
        int tables = range(1, 4);
        for (int t = 0; t < tables; ++t) {
            MSchemaTable table;
            table.name = identifier() + std::to_string(t);
            if (rng() % 2) {
                table.description = description();
                table.description_source = SlotSource::generated;
            }
            int columns = range(1, 6);
            for (int c = 0; c < columns; ++c) {
                MSchemaColumn col;
                col.name = identifier() + std::to_string(c);
                col.type = type();
                if (rng() % 2) {
                    col.description = description();
                    col.description_source = SlotSource::generated;
                }
                col.primary_key = rng() % 4 == 0;
                int examples = range(0, 4);
                for (int e = 0; e < examples; ++e) col.examples.push_back(example_value());
                table.columns.push_back(std::move(col));
            }
            d.tables.push_back(std::move(table));
        }
        int fks = range(0, 3);
        for (int f = 0; f < fks; ++f) {
            d.foreign_keys.push_back({identifier(), identifier(), identifier(), identifier()});
        }
        return d;
    }
};

} // namespace dbdesc::testing
