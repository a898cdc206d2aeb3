#pragma once

#include "dbdesc/classify.hpp"
#include "dbdesc/profile.hpp"
#include "dbdesc/schema.hpp"
#include "dbdesc/session.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dbdesc {

// What the dual-process analysis produces at each stage, database level
// downwards. db_info seeds every later prompt.
struct DbInfo {
    std::string domain;
    std::string overview;
    std::vector<std::string> key_dimensions;
    std::vector<std::string> key_metrics;
};

struct TableInfo {
    std::string table;
    std::string content_summary;
    std::string function_hypothesis;
};

struct ColumnRelation {
    std::string table;
    CategoryKind category = CategoryKind::measure;
    std::string analysis;
};

enum class DescriptionSource { origin, generated };
enum class DescriptionTarget { table, column };

inline constexpr size_t kColumnWordLimit = 20;
inline constexpr size_t kTableWordLimit = 100;

// Generated text obeys the word limits (20 for columns, 100 for tables);
// original catalog comments are preserved verbatim and exempt.
struct Description {
    std::string text;
    size_t word_count = 0;
    DescriptionSource source = DescriptionSource::generated;
    DescriptionTarget target = DescriptionTarget::column;

    bool operator==(const Description&) const = default;
};

Description make_origin_description(const std::string& text, DescriptionTarget target);
Description make_generated_description(const std::string& text, DescriptionTarget target);

// Accumulated pipeline state. Later-stage entries never exist without
// their prerequisites; validate_stage_order checks that.
struct AnalysisContext {
    std::optional<DbInfo> db_info;
    std::map<std::string, TableInfo> table_infos;
    std::map<std::pair<std::string, CategoryKind>, ColumnRelation> relations;
    std::map<ColumnRef, Description> column_descriptions;
    std::map<std::string, Description> table_descriptions;

    // Deterministic JSON text; two identical contexts serialize
    // byte-identically.
    std::string serialize() const;

    void validate_stage_order() const;
};

enum class GenerationMode { no_comment, origin, generation, merge };

std::string generation_mode_name(GenerationMode mode);
std::optional<GenerationMode> generation_mode_from_name(const std::string& name);

// First unrecoverable stage failure; carries whatever the pipeline had
// completed for diagnosis.
class PipelineError : public Error {
public:
    PipelineError(const std::string& msg, std::string stage,
                  std::shared_ptr<AnalysisContext> partial)
        : Error(msg + " (stage " + stage + ")"),
          stage_(std::move(stage)),
          partial_(std::move(partial)) {}

    const std::string& stage() const { return stage_; }
    const AnalysisContext* partial_context() const { return partial_.get(); }

private:
    std::string stage_;
    std::shared_ptr<AnalysisContext> partial_;
};

// --- individual stages -----------------------------------------------------

// Database-level pass: domain recognition plus typical dimensions and
// metrics of the domain. The prompt carries the complete schema
// rendering; schemas whose rendering overflows the token budget fall back
// to a names-only rendering (logged).
DbInfo summarize_database(const SchemaSnapshot& snapshot, ModelSession& session,
                          size_t prompt_token_budget = 24000);

// Table-level pass under db_info context: what the table stores and what
// it might be for.
TableInfo analyze_table_preliminary(const DbInfo& db_info, const TableMeta& table,
                                    const ProfileSet& profiles, const CategoryMap& categories,
                                    ModelSession& session);

// Same-category pass: the whole table plus the >=2 columns of one
// category, asking for differences and links between them.
ColumnRelation analyze_column_relations(const TableMeta& table, CategoryKind kind,
                                        const std::vector<const ColumnProfile*>& group,
                                        const ProfileSet& profiles, const CategoryMap& categories,
                                        ModelSession& session);

// Column description from table_info + same-category relation + the
// field's own profile. At most 20 words: over-long replies get one
// shorten re-prompt, then a hard cut at a word boundary.
Description generate_column_description(const TableInfo& table_info,
                                        const ColumnRelation* relation, const std::string& table,
                                        const ColumnProfile& profile,
                                        const FieldCategory* category, ModelSession& session);

// Fine-to-coarse step: all column descriptions roll up into a table
// description of at most 100 words, same enforcement.
Description generate_table_description(const TableMeta& table,
                                       const std::vector<std::pair<std::string, Description>>&
                                           column_descriptions,
                                       const DbInfo& db_info, ModelSession& session);

// --- whole pipeline ----------------------------------------------------------

struct PipelineOptions {
    GenerationMode mode = GenerationMode::generation;
    size_t max_inflight = 4;
    size_t prompt_token_budget = 24000;
};

// Runs the stages in dependency order: database summary, per-table
// preliminary analysis, per-(table, category) relations, per-column
// descriptions, per-table descriptions. Targets within a stage run
// concurrently; results merge in catalog order.
//
// no_comment/origin modes return an empty context without touching the
// model. merge mode keeps original comments: commented columns and
// tables get origin-sourced entries instead of generation calls.
AnalysisContext run_pipeline(const SchemaSnapshot& snapshot, const ProfileSet& profiles,
                             const CategoryMap& categories, ModelSession* session,
                             const PipelineOptions& options);

} // namespace dbdesc
