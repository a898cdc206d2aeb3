#include "dbdesc/prompts.hpp"

#include "dbdesc/text.hpp"

#include <sstream>

namespace dbdesc::prompts {

namespace {

std::string task_header(const std::string& stage, const std::string& target) {
    std::string out = "## Task: " + stage + "\n";
    out += "## Target: " + target + "\n\n";
    return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

const char* kStructuredReplyNote =
    "Reply with a fenced code block containing one `key: value` pair per line, "
    "values on a single line, using exactly these keys: ";

} // namespace

std::string render_schema_text(const SchemaSnapshot& snapshot) {
    std::ostringstream out;
    out << "Database: " << snapshot.db_id << " (" << engine_name(snapshot.engine) << ")\n";
    for (const auto& table : snapshot.tables) {
        out << "Table " << table.name;
        if (table.original_comment) out << "  -- " << *table.original_comment;
        out << "\n";
        for (const auto& col : table.columns) {
            out << "  - " << col.name << " " << col.declared_type;
            if (col.is_primary_key) out << " [primary key]";
            if (!col.nullable) out << " [not null]";
            if (col.original_comment) out << "  -- " << *col.original_comment;
            out << "\n";
        }
    }
    if (!snapshot.foreign_keys.empty()) {
        out << "Foreign keys:\n";
        for (const auto& fk : snapshot.foreign_keys) {
            out << "  " << fk.from_table << "." << fk.from_column << " -> " << fk.to_table << "."
                << fk.to_column << "\n";
        }
    }
    return out.str();
}

std::string render_schema_names_only(const SchemaSnapshot& snapshot) {
    std::ostringstream out;
    out << "Database: " << snapshot.db_id << " (" << engine_name(snapshot.engine) << ")\n";
    for (const auto& table : snapshot.tables) {
        out << "Table " << table.name << ": ";
        std::vector<std::string> names;
        for (const auto& col : table.columns) names.push_back(col.name);
        out << join(names, ", ") << "\n";
    }
    return out.str();
}

std::string render_column_profile(const std::string& table, const ColumnProfile& profile,
                                  const FieldCategory* category) {
    const ColumnMeta& meta = profile.meta;
    std::ostringstream out;
    out << "Column: " << table << "." << meta.name << "\n";
    out << "  type: " << meta.declared_type << " (" << normalized_type_name(meta.normalized_type)
        << ")";
    if (meta.is_primary_key) out << ", primary key";
    if (meta.is_foreign_key) out << ", foreign key";
    out << ", " << (meta.nullable ? "nullable" : "not null");
    if (meta.declared_unique) out << ", declared unique";
    out << "\n";
    if (meta.original_comment) out << "  original comment: " << *meta.original_comment << "\n";
    out << "  rows: " << profile.row_count << ", distinct: " << profile.distinct_count
        << ", nulls: " << profile.null_count << ", unique: " << (profile.is_unique ? "yes" : "no")
        << "\n";
    if (profile.numeric_min || profile.numeric_max || profile.numeric_avg) {
        out << "  numeric:";
        if (profile.numeric_min) out << " min " << text::render_double(*profile.numeric_min);
        if (profile.numeric_max) out << " max " << text::render_double(*profile.numeric_max);
        if (profile.numeric_avg) out << " avg " << text::render_double(*profile.numeric_avg);
        out << "\n";
    }
    if (profile.strlen_min || profile.strlen_max) {
        out << "  string length:";
        if (profile.strlen_min) out << " min " << *profile.strlen_min;
        if (profile.strlen_max) out << " max " << *profile.strlen_max;
        out << "\n";
    }
    if (!profile.samples.empty()) {
        out << "  samples: [" << join(profile.samples, ", ") << "]\n";
    }
    if (category) {
        out << "  category: " << category_kind_name(category->kind);
        if (category->granularity) {
            out << ", datetime granularity: " << granularity_name(*category->granularity);
        }
        out << "\n";
    }
    return out.str();
}

std::string render_table_block(const TableMeta& table, const ProfileSet& profiles,
                               const CategoryMap& categories) {
    std::ostringstream out;
    out << "Table: " << table.name << "\n";
    if (table.original_comment) out << "Original comment: " << *table.original_comment << "\n";
    for (const auto& col : table.columns) {
        auto profile_it = profiles.find({table.name, col.name});
        if (profile_it == profiles.end()) continue;
        auto category_it = categories.find({table.name, col.name});
        const FieldCategory* category =
            category_it == categories.end() ? nullptr : &category_it->second;
        out << render_column_profile(table.name, profile_it->second, category);
    }
    return out.str();
}

std::string render_db_info(const DbInfo& db_info) {
    std::ostringstream out;
    out << "Database domain: " << db_info.domain << "\n";
    out << "Database overview: " << db_info.overview << "\n";
    if (!db_info.key_dimensions.empty()) {
        out << "Key dimensions: " << join(db_info.key_dimensions, ", ") << "\n";
    }
    if (!db_info.key_metrics.empty()) {
        out << "Key metrics: " << join(db_info.key_metrics, ", ") << "\n";
    }
    return out.str();
}

std::string render_table_info(const TableInfo& table_info) {
    std::ostringstream out;
    out << "Table summary: " << table_info.content_summary << "\n";
    out << "Table function: " << table_info.function_hypothesis << "\n";
    return out.str();
}

size_t estimate_tokens(const std::string& prompt) {
    return prompt.size() / 4;
}

std::string database_summary_prompt(const SchemaSnapshot& snapshot, bool names_only) {
    std::ostringstream out;
    out << task_header(kStageDatabaseSummary, snapshot.db_id);
    out << "Study the complete schema below. Identify the domain the database belongs to and "
           "give an overview of its general content. Then, from your own knowledge of that "
           "domain, list the dimensions and metrics an analyst would typically care about.\n\n";
    out << (names_only ? render_schema_names_only(snapshot) : render_schema_text(snapshot));
    out << "\n" << kStructuredReplyNote << "domain, overview, key_dimensions, key_metrics. "
        << "domain is a short label, overview one paragraph, key_dimensions and key_metrics "
           "comma-separated lists.\n";
    return out.str();
}

std::string table_overview_prompt(const DbInfo& db_info, const TableMeta& table,
                                  const ProfileSet& profiles, const CategoryMap& categories) {
    std::ostringstream out;
    out << task_header(kStageTableOverview, table.name);
    out << "Context from the database-level analysis:\n" << render_db_info(db_info) << "\n";
    out << "Analyze the table below: what data does it store, and what might its function in "
           "this database be?\n\n";
    out << render_table_block(table, profiles, categories);
    out << "\n" << kStructuredReplyNote << "summary, function. "
        << "summary describes the stored data, function hypothesizes the table's purpose.\n";
    return out.str();
}

std::string column_relations_prompt(const TableMeta& table, CategoryKind kind,
                                    const std::vector<const ColumnProfile*>& group,
                                    const ProfileSet& profiles, const CategoryMap& categories) {
    std::ostringstream out;
    out << task_header(kStageColumnRelations, table.name + "." + category_kind_name(kind));
    out << "The whole table:\n\n" << render_table_block(table, profiles, categories) << "\n";
    out << "The following columns of this table all belong to the " << category_kind_name(kind)
        << " category:\n";
    for (const auto* profile : group) out << "  - " << profile->meta.name << "\n";
    out << "\nAnalyze the differences and interconnections between these columns, so that "
           "similar columns cannot be confused with each other.\n";
    out << "\n" << kStructuredReplyNote << "analysis.\n";
    return out.str();
}

std::string column_description_prompt(const TableInfo& table_info, const ColumnRelation* relation,
                                      const std::string& table, const ColumnProfile& profile,
                                      const FieldCategory* category) {
    std::ostringstream out;
    out << task_header(kStageColumnDescription, table + "." + profile.meta.name);
    out << "Context from the table-level analysis of " << table << ":\n"
        << render_table_info(table_info) << "\n";
    if (relation) {
        out << "Relations among the table's " << category_kind_name(relation->category)
            << " columns:\n" << relation->analysis << "\n\n";
    }
    out << "Predict the likely semantics of this field and describe it:\n\n"
        << render_column_profile(table, profile, category);
    out << "\nThe description must be at most " << kColumnWordLimit << " words.\n";
    out << "\n" << kStructuredReplyNote << "description.\n";
    return out.str();
}

std::string table_description_prompt(const TableMeta& table,
                                     const std::vector<std::pair<std::string, Description>>&
                                         column_descriptions,
                                     const DbInfo& db_info) {
    std::ostringstream out;
    out << task_header(kStageTableDescription, table.name);
    out << "Context from the database-level analysis:\n" << render_db_info(db_info) << "\n";
    out << "Every column of table " << table.name << " has been described:\n";
    for (const auto& [column, description] : column_descriptions) {
        out << "  - " << column << ": " << description.text << "\n";
    }
    out << "\nOverview the entire table, summarize its content, and analyze its potential "
           "application, as a table description of at most " << kTableWordLimit << " words.\n";
    out << "\n" << kStructuredReplyNote << "description.\n";
    return out.str();
}

std::string field_classification_prompt(const ClassificationRequest& request) {
    std::ostringstream out;
    out << task_header(kStageFieldClassification,
                       request.table + "." + request.profile->meta.name);
    out << "Categorize this database column as one of:\n"
           "  MEASURE  - numerical values meaningful under aggregation\n"
           "  CODE     - identifiers or codes that name an entity\n"
           "  ENUM     - a small fixed set of categorical values\n"
           "  DATETIME - points or periods in time, in any storage type\n"
           "  TEXT     - unstructured or semi-structured text\n\n";
    out << render_column_profile(request.table, *request.profile, nullptr);
    if (!request.peer_columns.empty()) {
        out << "  peer columns in " << request.table << ": " << join(request.peer_columns, ", ")
            << "\n";
    }
    out << "\nAnswer with exactly one category token.\n";
    return out.str();
}

std::string datetime_granularity_prompt(const std::string& table, const ColumnProfile& profile) {
    std::ostringstream out;
    out << task_header(kStageDatetimeGranularity, table + "." + profile.meta.name);
    out << "This column holds datetime values. Decide the granularity they are stored at.\n\n";
    out << render_column_profile(table, profile, nullptr);
    out << "\nAnswer with exactly one of: YEAR, QUARTER, MONTH, DAY, HOUR, MINUTE, SECOND.\n";
    return out.str();
}

std::string repair_suffix(const std::vector<std::string>& required_keys) {
    std::string out = "\n\nYour previous reply could not be parsed. ";
    out += kStructuredReplyNote;
    out += join(required_keys, ", ");
    out += ".\n";
    return out;
}

std::string shorten_suffix(size_t got_words, size_t limit) {
    std::ostringstream out;
    out << "\n\nYour previous description was " << got_words
        << " words long, over the limit. Reply again in the same key: value format with a "
           "description of at most " << limit << " words.\n";
    return out.str();
}

} // namespace dbdesc::prompts
