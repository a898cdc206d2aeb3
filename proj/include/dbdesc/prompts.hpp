#pragma once

#include "dbdesc/classify.hpp"
#include "dbdesc/pipeline.hpp"
#include "dbdesc/profile.hpp"
#include "dbdesc/schema.hpp"

#include <string>
#include <vector>

namespace dbdesc::prompts {

// Stage identifiers: they head every prompt ("## Task: <stage>"), key the
// cache, and route the mock fixture.
inline constexpr const char* kStageDatabaseSummary = "database_summary";
inline constexpr const char* kStageTableOverview = "table_overview";
inline constexpr const char* kStageColumnRelations = "column_relations";
inline constexpr const char* kStageColumnDescription = "column_description";
inline constexpr const char* kStageTableDescription = "table_description";
inline constexpr const char* kStageFieldClassification = "field_classification";
inline constexpr const char* kStageDatetimeGranularity = "datetime_granularity";

// Complete schema rendering: every table with columns, types, keys and
// original comments.
std::string render_schema_text(const SchemaSnapshot& snapshot);

// Compact fallback for over-budget schemas: table names and column names
// only.
std::string render_schema_names_only(const SchemaSnapshot& snapshot);

// Basic details plus statistics of one column, one block. The inferred
// datetime granularity, when known, is appended so downstream prompts see
// it.
std::string render_column_profile(const std::string& table, const ColumnProfile& profile,
                                  const FieldCategory* category);

// All columns of a table with their profiles.
std::string render_table_block(const TableMeta& table, const ProfileSet& profiles,
                               const CategoryMap& categories);

std::string render_db_info(const DbInfo& db_info);
std::string render_table_info(const TableInfo& table_info);

// crude size estimate for the schema-budget check: ~4 chars per token
size_t estimate_tokens(const std::string& prompt);

// --- prompt builders, one per stage --------------------------------------

std::string database_summary_prompt(const SchemaSnapshot& snapshot, bool names_only);

std::string table_overview_prompt(const DbInfo& db_info, const TableMeta& table,
                                  const ProfileSet& profiles, const CategoryMap& categories);

std::string column_relations_prompt(const TableMeta& table, CategoryKind kind,
                                    const std::vector<const ColumnProfile*>& group,
                                    const ProfileSet& profiles, const CategoryMap& categories);

std::string column_description_prompt(const TableInfo& table_info, const ColumnRelation* relation,
                                      const std::string& table, const ColumnProfile& profile,
                                      const FieldCategory* category);

std::string table_description_prompt(const TableMeta& table,
                                     const std::vector<std::pair<std::string, Description>>&
                                         column_descriptions,
                                     const DbInfo& db_info);

std::string field_classification_prompt(const ClassificationRequest& request);

std::string datetime_granularity_prompt(const std::string& table, const ColumnProfile& profile);

// Follow-ups appended to a failed call's prompt.
std::string repair_suffix(const std::vector<std::string>& required_keys);
std::string shorten_suffix(size_t got_words, size_t limit);

} // namespace dbdesc::prompts
