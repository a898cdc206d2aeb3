#include "dbdesc/mschema.hpp"

#include "dbdesc/errors.hpp"
#include "dbdesc/text.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace dbdesc {

std::string slot_source_name(SlotSource source) {
    switch (source) {
    case SlotSource::empty: return "empty";
    case SlotSource::origin: return "origin";
    case SlotSource::generated: return "generated";
    }
    return "empty";
}

bool MSchemaDoc::structurally_equal(const MSchemaDoc& other) const {
    auto strip_tags = [](MSchemaDoc doc) {
        for (auto& table : doc.tables) {
            table.description_source = SlotSource::empty;
            for (auto& column : table.columns) column.description_source = SlotSource::empty;
        }
        return doc;
    };
    return strip_tags(*this) == strip_tags(other);
}

MSchemaDoc MSchemaDoc::stripped() const {
    MSchemaDoc doc = *this;
    for (auto& table : doc.tables) {
        table.description.clear();
        table.description_source = SlotSource::empty;
        for (auto& column : table.columns) {
            column.description.clear();
            column.description_source = SlotSource::empty;
        }
    }
    return doc;
}

// --- resolution -----------------------------------------------------------------

namespace {

std::string single_line(const std::string& s) {
    return text::collapse_whitespace(s);
}

} // namespace

MSchemaDoc resolve_descriptions(const SchemaSnapshot& snapshot, const AnalysisContext& context,
                                GenerationMode mode, const ProfileSet* profiles) {
    MSchemaDoc doc;
    doc.db_id = snapshot.db_id;
    doc.foreign_keys = snapshot.foreign_keys;

    auto resolve_slot = [&](const std::optional<std::string>& original,
                            const Description* generated, const std::string& what,
                            std::string& text_out, SlotSource& source_out) {
        switch (mode) {
        case GenerationMode::no_comment:
            break;
        case GenerationMode::origin:
            if (original) {
                text_out = single_line(*original);
                source_out = SlotSource::origin;
            }
            break;
        case GenerationMode::generation:
            if (!generated) {
                throw ContextError("generation mode lacks a description for " + what);
            }
            text_out = single_line(generated->text);
            source_out = SlotSource::generated;
            break;
        case GenerationMode::merge:
            if (original) {
                text_out = single_line(*original);
                source_out = SlotSource::origin;
            } else {
                if (!generated) {
                    throw ContextError("merge mode lacks a description for " + what);
                }
                text_out = single_line(generated->text);
                source_out = SlotSource::generated;
            }
            break;
        }
        if (text_out.empty()) source_out = SlotSource::empty;
    };

    for (const auto& table : snapshot.tables) {
        MSchemaTable out_table;
        out_table.name = table.name;

        const Description* generated = nullptr;
        auto table_it = context.table_descriptions.find(table.name);
        if (table_it != context.table_descriptions.end()) generated = &table_it->second;
        resolve_slot(table.original_comment, generated, "table " + table.name,
                     out_table.description, out_table.description_source);

        for (const auto& column : table.columns) {
            MSchemaColumn out_column;
            out_column.name = column.name;
            out_column.type = text::to_upper(column.declared_type);
            out_column.primary_key = column.is_primary_key;

            const Description* column_generated = nullptr;
            auto column_it = context.column_descriptions.find({table.name, column.name});
            if (column_it != context.column_descriptions.end()) {
                column_generated = &column_it->second;
            }
            resolve_slot(column.original_comment, column_generated,
                         "column " + table.name + "." + column.name, out_column.description,
                         out_column.description_source);

            if (profiles) {
                auto profile_it = profiles->find({table.name, column.name});
                if (profile_it != profiles->end()) {
                    const auto& samples = profile_it->second.samples;
                    for (size_t i = 0; i < samples.size() && i < 3; ++i) {
                        out_column.examples.push_back(samples[i]);
                    }
                }
            }
            out_table.columns.push_back(std::move(out_column));
        }
        doc.tables.push_back(std::move(out_table));
    }
    return doc;
}

// --- serialization ----------------------------------------------------------------

namespace {

bool example_needs_quoting(const std::string& value) {
    if (value.empty()) return true;
    if (value.front() == '"' || value.front() == ' ' || value.back() == ' ') return true;
    return value.find_first_of(",]\"\n") != std::string::npos;
}

std::string render_example(const std::string& value) {
    if (!example_needs_quoting(value)) return value;
    return nlohmann::json(value).dump();
}

} // namespace

std::string serialize_mschema(const MSchemaDoc& doc) {
    std::ostringstream out;
    out << "【DB_ID】 " << doc.db_id << "\n";
    out << "【Schema】\n";
    for (const auto& table : doc.tables) {
        out << "# Table: " << table.name << "\n";
        if (!table.description.empty()) out << table.description << "\n";
        out << "[\n";
        for (const auto& column : table.columns) {
            out << "(" << column.name << ":" << column.type;
            if (!column.description.empty()) out << ", " << column.description;
            if (column.primary_key) out << ", Primary Key";
            if (!column.examples.empty()) {
                out << ", Examples: [";
                for (size_t i = 0; i < column.examples.size(); ++i) {
                    if (i) out << ", ";
                    out << render_example(column.examples[i]);
                }
                out << "]";
            }
            out << ")\n";
        }
        out << "]\n";
    }
    out << "【Foreign keys】\n";
    for (const auto& fk : doc.foreign_keys) {
        out << fk.from_table << "." << fk.from_column << "=" << fk.to_table << "." << fk.to_column
            << "\n";
    }
    return out.str();
}

// --- parsing ----------------------------------------------------------------------

namespace {

[[noreturn]] void fail(const std::string& msg, int line, int column = 1) {
    throw MSchemaParseError(msg, line, column);
}

std::vector<std::string> parse_example_list(const std::string& inner, int line_no) {
    std::vector<std::string> values;
    size_t pos = 0;
    while (pos < inner.size()) {
        if (inner[pos] == '"') {
            // JSON-quoted value
            size_t end = pos + 1;
            while (end < inner.size()) {
                if (inner[end] == '\\') {
                    end += 2;
                    continue;
                }
                if (inner[end] == '"') break;
                ++end;
            }
            if (end >= inner.size()) fail("unterminated quoted example value", line_no);
            std::string quoted = inner.substr(pos, end - pos + 1);
            try {
                values.push_back(nlohmann::json::parse(quoted).get<std::string>());
            } catch (const nlohmann::json::exception&) {
                fail("malformed quoted example value", line_no);
            }
            pos = end + 1;
        } else {
            size_t sep = inner.find(", ", pos);
            values.push_back(inner.substr(pos, sep == std::string::npos ? std::string::npos
                                                                        : sep - pos));
            pos = sep == std::string::npos ? inner.size() : sep;
        }
        if (pos < inner.size()) {
            if (inner.compare(pos, 2, ", ") != 0) {
                fail("expected ', ' between example values", line_no);
            }
            pos += 2;
        }
    }
    return values;
}

MSchemaColumn parse_column_line(const std::string& line, int line_no) {
    if (line.size() < 2 || line.front() != '(' || line.back() != ')') {
        fail("column line must be parenthesized", line_no);
    }
    std::string inner = line.substr(1, line.size() - 2);

    MSchemaColumn column;
    size_t colon = inner.find(':');
    if (colon == std::string::npos || colon == 0) {
        fail("column line lacks a name:type prefix", line_no);
    }
    column.name = inner.substr(0, colon);

    // the type runs to the first top-level ", " (types may carry parens
    // and commas inside them, e.g. DECIMAL(10,2))
    size_t pos = colon + 1;
    int depth = 0;
    while (pos < inner.size()) {
        char c = inner[pos];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (c == ',' && depth == 0 && pos + 1 < inner.size() && inner[pos + 1] == ' ') break;
        ++pos;
    }
    column.type = inner.substr(colon + 1, pos - colon - 1);
    std::string rest = pos < inner.size() ? inner.substr(pos) : "";

    // optional parts, anchored from the right: Examples, then Primary Key
    if (!rest.empty() && rest.back() == ']') {
        size_t marker = rest.rfind(", Examples: [");
        if (marker == std::string::npos) fail("unmatched ']' in column line", line_no);
        std::string list = rest.substr(marker + 13, rest.size() - marker - 14);
        column.examples = parse_example_list(list, line_no);
        rest = rest.substr(0, marker);
    }
    const std::string pk_marker = ", Primary Key";
    if (rest.size() >= pk_marker.size() &&
        rest.compare(rest.size() - pk_marker.size(), pk_marker.size(), pk_marker) == 0) {
        column.primary_key = true;
        rest = rest.substr(0, rest.size() - pk_marker.size());
    }
    if (!rest.empty()) {
        if (rest.compare(0, 2, ", ") != 0 || rest.size() <= 2) {
            fail("malformed description part in column line", line_no);
        }
        column.description = rest.substr(2);
        column.description_source = SlotSource::generated; // not carried by text
    }
    return column;
}

} // namespace

MSchemaDoc parse_mschema(const std::string& mschema_text) {
    std::vector<std::string> lines = text::split(mschema_text, '\n');
    // a trailing LF yields one empty trailing entry; drop it
    if (!lines.empty() && lines.back().empty()) lines.pop_back();

    const std::string db_header = "【DB_ID】 ";
    const std::string schema_header = "【Schema】";
    const std::string fk_header = "【Foreign keys】";

    size_t i = 0;
    auto line_no = [&]() { return static_cast<int>(i + 1); };
    auto need_line = [&](const char* what) -> const std::string& {
        if (i >= lines.size()) fail(std::string("unexpected end of input, expected ") + what,
                                    static_cast<int>(lines.size() + 1));
        return lines[i];
    };

    MSchemaDoc doc;
    {
        const std::string& line = need_line("DB_ID header");
        if (line.rfind(db_header, 0) != 0) fail("expected DB_ID header", line_no());
        doc.db_id = line.substr(db_header.size());
        if (doc.db_id.empty()) fail("empty DB_ID", line_no());
        ++i;
    }
    if (need_line("Schema header") != schema_header) fail("expected Schema header", line_no());
    ++i;

    while (i < lines.size() && lines[i] != fk_header) {
        const std::string& header = lines[i];
        if (header.rfind("# Table: ", 0) != 0) {
            if (header.rfind("【", 0) == 0) {
                // a different 【...】 section here is unknown, not skippable
                fail("unknown section header: " + header, line_no());
            }
            fail("expected '# Table:' header", line_no());
        }
        MSchemaTable table;
        table.name = header.substr(9);
        if (table.name.empty()) fail("empty table name", line_no());
        ++i;

        if (need_line("column list or table description") != "[") {
            table.description = lines[i];
            table.description_source = SlotSource::generated; // not carried by text
            ++i;
        }
        if (need_line("'['") != "[") fail("expected '[' to open the column list", line_no());
        ++i;
        while (need_line("column line or ']'") != "]") {
            table.columns.push_back(parse_column_line(lines[i], line_no()));
            ++i;
        }
        ++i; // past "]"
        doc.tables.push_back(std::move(table));
    }

    if (i >= lines.size()) {
        fail("missing Foreign keys section", static_cast<int>(lines.size() + 1));
    }
    ++i; // past the FK header
    for (; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        size_t eq = line.find('=');
        size_t d1 = line.find('.');
        if (eq == std::string::npos || d1 == std::string::npos || d1 > eq) {
            fail("malformed foreign key line", line_no());
        }
        size_t d2 = line.find('.', eq);
        if (d2 == std::string::npos) fail("malformed foreign key line", line_no());
        ForeignKey fk;
        fk.from_table = line.substr(0, d1);
        fk.from_column = line.substr(d1 + 1, eq - d1 - 1);
        fk.to_table = line.substr(eq + 1, d2 - eq - 1);
        fk.to_column = line.substr(d2 + 1);
        if (fk.from_table.empty() || fk.from_column.empty() || fk.to_table.empty() ||
            fk.to_column.empty()) {
            fail("malformed foreign key line", line_no());
        }
        doc.foreign_keys.push_back(std::move(fk));
    }
    return doc;
}

// --- JSON export --------------------------------------------------------------------

std::string mschema_to_json(const MSchemaDoc& doc) {
    nlohmann::ordered_json out;
    out["db_id"] = doc.db_id;
    out["tables"] = nlohmann::ordered_json::array();
    for (const auto& table : doc.tables) {
        nlohmann::ordered_json table_json;
        table_json["name"] = table.name;
        if (table.description.empty()) {
            table_json["description"] = nullptr;
        } else {
            table_json["description"] = table.description;
        }
        table_json["description_source"] = slot_source_name(table.description_source);
        table_json["columns"] = nlohmann::ordered_json::array();
        for (const auto& column : table.columns) {
            nlohmann::ordered_json column_json;
            column_json["name"] = column.name;
            column_json["type"] = column.type;
            if (column.description.empty()) {
                column_json["description"] = nullptr;
            } else {
                column_json["description"] = column.description;
            }
            column_json["description_source"] = slot_source_name(column.description_source);
            column_json["primary_key"] = column.primary_key;
            column_json["examples"] = column.examples;
            table_json["columns"].push_back(std::move(column_json));
        }
        out["tables"].push_back(std::move(table_json));
    }
    out["foreign_keys"] = nlohmann::ordered_json::array();
    for (const auto& fk : doc.foreign_keys) {
        out["foreign_keys"].push_back({
            {"from_table", fk.from_table},
            {"from_column", fk.from_column},
            {"to_table", fk.to_table},
            {"to_column", fk.to_column},
        });
    }
    return out.dump(2) + "\n";
}

} // namespace dbdesc
