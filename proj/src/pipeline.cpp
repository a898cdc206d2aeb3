#include "dbdesc/pipeline.hpp"

#include "dbdesc/log.hpp"
#include "dbdesc/parallel.hpp"
#include "dbdesc/prompts.hpp"
#include "dbdesc/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace dbdesc {

Description make_origin_description(const std::string& text, DescriptionTarget target) {
    Description description;
    description.text = text;
    description.word_count = text::count_words(text);
    description.source = DescriptionSource::origin;
    description.target = target;
    return description;
}

Description make_generated_description(const std::string& raw, DescriptionTarget target) {
    Description description;
    description.text = text::collapse_whitespace(raw);
    description.word_count = text::count_words(description.text);
    description.source = DescriptionSource::generated;
    description.target = target;
    return description;
}

std::string generation_mode_name(GenerationMode mode) {
    switch (mode) {
    case GenerationMode::no_comment: return "no_comment";
    case GenerationMode::origin: return "origin";
    case GenerationMode::generation: return "generation";
    case GenerationMode::merge: return "merge";
    }
    return "no_comment";
}

std::optional<GenerationMode> generation_mode_from_name(const std::string& name) {
    if (name == "no_comment") return GenerationMode::no_comment;
    if (name == "origin") return GenerationMode::origin;
    if (name == "generation") return GenerationMode::generation;
    if (name == "merge") return GenerationMode::merge;
    return std::nullopt;
}

// --- context serialization -----------------------------------------------------

namespace {

nlohmann::ordered_json description_json(const Description& description) {
    return {
        {"text", description.text},
        {"word_count", description.word_count},
        {"source", description.source == DescriptionSource::origin ? "origin" : "generated"},
        {"target", description.target == DescriptionTarget::table ? "table" : "column"},
    };
}

} // namespace

std::string AnalysisContext::serialize() const {
    nlohmann::ordered_json doc;
    if (db_info) {
        doc["db_info"] = {
            {"domain", db_info->domain},
            {"overview", db_info->overview},
            {"key_dimensions", db_info->key_dimensions},
            {"key_metrics", db_info->key_metrics},
        };
    } else {
        doc["db_info"] = nullptr;
    }
    doc["table_infos"] = nlohmann::ordered_json::object();
    for (const auto& [name, info] : table_infos) {
        doc["table_infos"][name] = {
            {"summary", info.content_summary},
            {"function", info.function_hypothesis},
        };
    }
    doc["relations"] = nlohmann::ordered_json::array();
    for (const auto& [key, relation] : relations) {
        doc["relations"].push_back({
            {"table", relation.table},
            {"category", category_kind_name(relation.category)},
            {"analysis", relation.analysis},
        });
    }
    doc["column_descriptions"] = nlohmann::ordered_json::object();
    for (const auto& [ref, description] : column_descriptions) {
        doc["column_descriptions"][ref.first + "." + ref.second] = description_json(description);
    }
    doc["table_descriptions"] = nlohmann::ordered_json::object();
    for (const auto& [name, description] : table_descriptions) {
        doc["table_descriptions"][name] = description_json(description);
    }
    return doc.dump(2);
}

void AnalysisContext::validate_stage_order() const {
    bool has_later_stage = !table_infos.empty() || !relations.empty() ||
                           !column_descriptions.empty() || !table_descriptions.empty();
    if (has_later_stage && !db_info) {
        throw ContextError("analysis context has stage results but no db_info");
    }
    for (const auto& [key, relation] : relations) {
        if (!table_infos.count(key.first)) {
            throw ContextError("relation for " + key.first + " lacks its table_info");
        }
    }
    for (const auto& [ref, description] : column_descriptions) {
        if (description.source == DescriptionSource::generated && !table_infos.count(ref.first)) {
            throw ContextError("generated description for " + ref.first + "." + ref.second +
                               " lacks its table_info");
        }
    }
}

// --- shared helpers --------------------------------------------------------------

namespace {

// One structured exchange: call, parse, one repair retry, then fail with
// both raw replies attached.
std::map<std::string, std::string> structured_call(ModelSession& session,
                                                   const std::string& stage,
                                                   const std::string& target,
                                                   const std::string& prompt,
                                                   const std::vector<std::string>& keys) {
    std::string first = session.call(stage, target, prompt);
    if (auto parsed = parse_structured_reply(first, keys)) return *parsed;

    std::string repair_prompt = prompt + prompts::repair_suffix(keys);
    std::string second = session.call(stage, target, repair_prompt);
    if (auto parsed = parse_structured_reply(second, keys)) return *parsed;

    throw ModelError("stage " + stage + " for " + target +
                     " replied unparseably twice; first reply: \"" + first +
                     "\", second reply: \"" + second + "\"");
}

// Word-limit enforcement: one shorten re-prompt, then a hard cut at a
// word boundary.
Description limited_description(ModelSession& session, const std::string& stage,
                                const std::string& target, const std::string& prompt,
                                size_t limit, DescriptionTarget target_kind) {
    auto fetch = [&](const std::string& p) {
        auto fields = structured_call(session, stage, target, p, {"description"});
        return make_generated_description(fields.at("description"), target_kind);
    };

    Description description = fetch(prompt);
    if (description.word_count <= limit) return description;

    Description second = fetch(prompt + prompts::shorten_suffix(description.word_count, limit));
    if (second.word_count <= limit) return second;

    log::warn("description for " + target + " still over " + std::to_string(limit) +
              " words after re-prompt; truncating");
    return make_generated_description(text::truncate_words(second.text, limit), target_kind);
}

} // namespace

// --- stages ---------------------------------------------------------------------

DbInfo summarize_database(const SchemaSnapshot& snapshot, ModelSession& session,
                          size_t prompt_token_budget) {
    std::string prompt = prompts::database_summary_prompt(snapshot, false);
    if (prompts::estimate_tokens(prompt) > prompt_token_budget) {
        log::warn("schema rendering of " + snapshot.db_id +
                  " exceeds the prompt budget; falling back to names-only rendering");
        prompt = prompts::database_summary_prompt(snapshot, true);
    }
    auto fields = structured_call(session, prompts::kStageDatabaseSummary, snapshot.db_id, prompt,
                                  {"domain", "overview", "key_dimensions", "key_metrics"});
    DbInfo info;
    info.domain = fields.at("domain");
    info.overview = fields.at("overview");
    info.key_dimensions = parse_list_value(fields.at("key_dimensions"));
    info.key_metrics = parse_list_value(fields.at("key_metrics"));
    if (info.domain.empty()) throw ModelError("database summary returned an empty domain");
    return info;
}

TableInfo analyze_table_preliminary(const DbInfo& db_info, const TableMeta& table,
                                    const ProfileSet& profiles, const CategoryMap& categories,
                                    ModelSession& session) {
    std::string prompt = prompts::table_overview_prompt(db_info, table, profiles, categories);
    auto fields = structured_call(session, prompts::kStageTableOverview, table.name, prompt,
                                  {"summary", "function"});
    TableInfo info;
    info.table = table.name;
    info.content_summary = fields.at("summary");
    info.function_hypothesis = fields.at("function");
    return info;
}

ColumnRelation analyze_column_relations(const TableMeta& table, CategoryKind kind,
                                        const std::vector<const ColumnProfile*>& group,
                                        const ProfileSet& profiles, const CategoryMap& categories,
                                        ModelSession& session) {
    if (group.size() < 2) {
        throw Error("column relation analysis needs at least two columns of one category");
    }
    std::string prompt =
        prompts::column_relations_prompt(table, kind, group, profiles, categories);
    auto fields = structured_call(session, prompts::kStageColumnRelations,
                                  table.name + "." + category_kind_name(kind), prompt,
                                  {"analysis"});
    ColumnRelation relation;
    relation.table = table.name;
    relation.category = kind;
    relation.analysis = fields.at("analysis");
    return relation;
}

Description generate_column_description(const TableInfo& table_info,
                                        const ColumnRelation* relation, const std::string& table,
                                        const ColumnProfile& profile,
                                        const FieldCategory* category, ModelSession& session) {
    std::string prompt =
        prompts::column_description_prompt(table_info, relation, table, profile, category);
    return limited_description(session, prompts::kStageColumnDescription,
                               table + "." + profile.meta.name, prompt, kColumnWordLimit,
                               DescriptionTarget::column);
}

Description generate_table_description(const TableMeta& table,
                                       const std::vector<std::pair<std::string, Description>>&
                                           column_descriptions,
                                       const DbInfo& db_info, ModelSession& session) {
    std::string prompt = prompts::table_description_prompt(table, column_descriptions, db_info);
    return limited_description(session, prompts::kStageTableDescription, table.name, prompt,
                               kTableWordLimit, DescriptionTarget::table);
}

// --- full pipeline -----------------------------------------------------------------

namespace {

// Generation mode simulates the cold start: the model never sees original
// comments, they are only removed from its inputs here.
void strip_comments(SchemaSnapshot& snapshot, ProfileSet& profiles) {
    for (auto& table : snapshot.tables) {
        table.original_comment.reset();
        for (auto& column : table.columns) column.original_comment.reset();
    }
    for (auto& [ref, profile] : profiles) profile.meta.original_comment.reset();
}

struct RelationTarget {
    const TableMeta* table;
    CategoryKind kind;
    std::vector<const ColumnProfile*> group;
};

} // namespace

AnalysisContext run_pipeline(const SchemaSnapshot& original_snapshot,
                             const ProfileSet& original_profiles, const CategoryMap& categories,
                             ModelSession* session, const PipelineOptions& options) {
    AnalysisContext context;
    if (options.mode == GenerationMode::no_comment || options.mode == GenerationMode::origin) {
        return context; // no analysis, no model calls
    }
    if (!session || !session->has_model()) {
        throw ModelError("mode " + generation_mode_name(options.mode) +
                         " requires a model backend");
    }

    SchemaSnapshot snapshot = original_snapshot;
    ProfileSet profiles = original_profiles;
    const bool merge = options.mode == GenerationMode::merge;
    if (!merge) strip_comments(snapshot, profiles);

    auto guarded = [&](const char* stage, auto&& body) {
        try {
            body();
        } catch (const PipelineError&) {
            throw;
        } catch (const Error& e) {
            throw PipelineError(e.what(), stage, std::make_shared<AnalysisContext>(context));
        }
    };

    // stage 1: database level
    guarded(prompts::kStageDatabaseSummary, [&]() {
        context.db_info = summarize_database(snapshot, *session, options.prompt_token_budget);
    });

    // stage 2: per-table preliminary understanding
    guarded(prompts::kStageTableOverview, [&]() {
        std::vector<TableInfo> results(snapshot.tables.size());
        parallel_for(snapshot.tables.size(), options.max_inflight, [&](size_t i) {
            results[i] = analyze_table_preliminary(*context.db_info, snapshot.tables[i], profiles,
                                                   categories, *session);
        });
        for (auto& info : results) context.table_infos.emplace(info.table, std::move(info));
    });

    // stage 3: same-category relations, for every group of >= 2 columns
    std::vector<RelationTarget> relation_targets;
    for (const auto& table : snapshot.tables) {
        std::map<CategoryKind, std::vector<const ColumnProfile*>> groups;
        for (const auto& column : table.columns) {
            auto category_it = categories.find({table.name, column.name});
            auto profile_it = profiles.find({table.name, column.name});
            if (category_it == categories.end() || profile_it == profiles.end()) continue;
            groups[category_it->second.kind].push_back(&profile_it->second);
        }
        for (auto& [kind, group] : groups) {
            if (group.size() >= 2) relation_targets.push_back({&table, kind, std::move(group)});
        }
    }
    guarded(prompts::kStageColumnRelations, [&]() {
        std::vector<ColumnRelation> results(relation_targets.size());
        parallel_for(relation_targets.size(), options.max_inflight, [&](size_t i) {
            const auto& target = relation_targets[i];
            results[i] = analyze_column_relations(*target.table, target.kind, target.group,
                                                  profiles, categories, *session);
        });
        for (auto& relation : results) {
            context.relations.emplace(std::make_pair(relation.table, relation.category),
                                      std::move(relation));
        }
    });

    // stage 4: column descriptions; merge keeps original comments as-is
    struct ColumnTarget {
        const TableMeta* table;
        const ColumnMeta* column;
    };
    std::vector<ColumnTarget> column_targets;
    for (const auto& table : snapshot.tables) {
        for (const auto& column : table.columns) {
            if (merge && column.original_comment) {
                context.column_descriptions.emplace(
                    ColumnRef{table.name, column.name},
                    make_origin_description(*column.original_comment,
                                            DescriptionTarget::column));
            } else {
                column_targets.push_back({&table, &column});
            }
        }
    }
    guarded(prompts::kStageColumnDescription, [&]() {
        std::vector<Description> results(column_targets.size());
        parallel_for(column_targets.size(), options.max_inflight, [&](size_t i) {
            const auto& [table, column] = column_targets[i];
            const TableInfo& table_info = context.table_infos.at(table->name);
            auto category_it = categories.find({table->name, column->name});
            const FieldCategory* category =
                category_it == categories.end() ? nullptr : &category_it->second;
            const ColumnRelation* relation = nullptr;
            if (category) {
                auto relation_it =
                    context.relations.find(std::make_pair(table->name, category->kind));
                if (relation_it != context.relations.end()) relation = &relation_it->second;
            }
            results[i] = generate_column_description(
                table_info, relation, table->name, profiles.at({table->name, column->name}),
                category, *session);
        });
        for (size_t i = 0; i < column_targets.size(); ++i) {
            context.column_descriptions.emplace(
                ColumnRef{column_targets[i].table->name, column_targets[i].column->name},
                std::move(results[i]));
        }
    });

    // stage 5: fine-to-coarse rollup into table descriptions
    std::vector<const TableMeta*> table_targets;
    for (const auto& table : snapshot.tables) {
        if (merge && table.original_comment) {
            context.table_descriptions.emplace(
                table.name,
                make_origin_description(*table.original_comment, DescriptionTarget::table));
        } else {
            table_targets.push_back(&table);
        }
    }
    guarded(prompts::kStageTableDescription, [&]() {
        std::vector<Description> results(table_targets.size());
        parallel_for(table_targets.size(), options.max_inflight, [&](size_t i) {
            const TableMeta& table = *table_targets[i];
            std::vector<std::pair<std::string, Description>> column_descriptions;
            for (const auto& column : table.columns) {
                auto it = context.column_descriptions.find({table.name, column.name});
                if (it == context.column_descriptions.end()) {
                    throw ContextError("column " + table.name + "." + column.name +
                                       " has no description before the table stage");
                }
                column_descriptions.emplace_back(column.name, it->second);
            }
            results[i] =
                generate_table_description(table, column_descriptions, *context.db_info, *session);
        });
        for (size_t i = 0; i < table_targets.size(); ++i) {
            context.table_descriptions.emplace(table_targets[i]->name, std::move(results[i]));
        }
    });

    context.validate_stage_order();
    return context;
}

} // namespace dbdesc
