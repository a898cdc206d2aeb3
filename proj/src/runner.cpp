#include "dbdesc/runner.hpp"

#include "dbdesc/cache.hpp"
#include "dbdesc/classify.hpp"
#include "dbdesc/introspect.hpp"
#include "dbdesc/log.hpp"
#include "dbdesc/mschema.hpp"
#include "dbdesc/profile.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace dbdesc {

namespace {

bool needs_backend(GenerationMode mode) {
    return mode == GenerationMode::generation || mode == GenerationMode::merge;
}

std::unique_ptr<DescriptionModel> open_backend(const RunConfig& config) {
    if (!config.mock_path.empty()) {
        return std::make_unique<MockModel>(MockModel::from_file(config.mock_path));
    }
    if (!config.endpoint_url.empty()) {
        return std::make_unique<HttpModel>(config.endpoint_url, config.model_name);
    }
    return nullptr;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path.string());
    out << content;
    if (!out) throw Error("write failed: " + path.string());
}

int exit_code_for(const std::exception& e, std::ostream& err, const char* command) {
    int code = kExitIo;
    if (dynamic_cast<const ConfigError*>(&e)) {
        code = kExitConfig;
    } else if (dynamic_cast<const ConnectionError*>(&e) ||
               dynamic_cast<const EmptyDatabaseError*>(&e) ||
               dynamic_cast<const QueryError*>(&e)) {
        code = kExitConnection;
    } else if (dynamic_cast<const ModelError*>(&e) || dynamic_cast<const PipelineError*>(&e)) {
        code = kExitModel;
    }
    err << "dbdesc " << command << ": " << e.what() << "\n";
    return code;
}

} // namespace

void validate_generate_config(const RunConfig& config) {
    if (config.db_url.empty()) throw ConfigError("--db is required");
    if (config.out_dir.empty()) throw ConfigError("--out is required");
    if (!config.mock_path.empty() && !config.endpoint_url.empty()) {
        throw ConfigError("--mock and --endpoint are mutually exclusive");
    }
    if (!config.endpoint_url.empty() && config.model_name.empty()) {
        throw ConfigError("--endpoint requires --model");
    }
    bool has_backend = !config.mock_path.empty() || !config.endpoint_url.empty();
    if (needs_backend(config.mode) && !has_backend) {
        throw ConfigError("mode " + generation_mode_name(config.mode) +
                          " requires a model backend (--mock or --endpoint)");
    }
    if (!needs_backend(config.mode) && has_backend) {
        throw ConfigError("mode " + generation_mode_name(config.mode) +
                          " never calls a model; remove --mock/--endpoint");
    }
}

int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate_generate_config(config);
        ConnectionSpec spec = parse_connection_url(config.db_url);

        SchemaSnapshot snapshot = introspect_database(spec);
        std::string fingerprint = snapshot_fingerprint(snapshot);

        ProfileOptions profile_options;
        profile_options.sample_limit = config.sample_limit;
        profile_options.row_limit = config.profile_row_limit;
        ProfileSet profiles =
            profile_snapshot(spec, snapshot, profile_options, config.max_inflight);

        std::unique_ptr<DescriptionModel> model = open_backend(config);

        std::filesystem::create_directories(config.out_dir);
        std::filesystem::path cache_path = config.cache_path.empty()
                                               ? std::filesystem::path(config.out_dir) /
                                                     (snapshot.db_id + ".cache.jsonl")
                                               : std::filesystem::path(config.cache_path);

        std::unique_ptr<ModelCallCache> cache;
        std::unique_ptr<ModelSession> session;
        AnalysisContext context;
        CategoryMap categories;

        if (model) {
            cache = std::make_unique<ModelCallCache>(cache_path);
            ModelParams params;
            params.seed = config.seed;
            session = std::make_unique<ModelSession>(model.get(), params, RetryPolicy{},
                                                     cache.get(), fingerprint);
            categories = classify_snapshot(snapshot, profiles, session.get(), {},
                                           config.max_inflight);
            PipelineOptions pipeline_options;
            pipeline_options.mode = config.mode;
            pipeline_options.max_inflight = config.max_inflight;
            context = run_pipeline(snapshot, profiles, categories, session.get(),
                                   pipeline_options);
        }

        MSchemaDoc doc = resolve_descriptions(snapshot, context, config.mode, &profiles);
        std::filesystem::path text_path =
            std::filesystem::path(config.out_dir) / (snapshot.db_id + ".mschema.txt");
        std::filesystem::path json_path =
            std::filesystem::path(config.out_dir) / (snapshot.db_id + ".mschema.json");
        write_file(text_path, serialize_mschema(doc));
        write_file(json_path, mschema_to_json(doc));

        out << "db: " << snapshot.db_id << "\n"
            << "mode: " << generation_mode_name(config.mode) << "\n"
            << "tables: " << snapshot.tables.size() << "\n"
            << "columns: " << snapshot.column_count() << "\n"
            << "model calls: " << (session ? session->model_call_count() : 0) << "\n"
            << "cache hits: " << (session ? session->cache_hit_count() : 0) << "\n"
            << "wrote: " << text_path.string() << ", " << json_path.string() << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        return exit_code_for(e, err, "generate");
    }
}

int cmd_inspect(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.db_url.empty()) throw ConfigError("--db is required");
        if (!config.mock_path.empty() && !config.endpoint_url.empty()) {
            throw ConfigError("--mock and --endpoint are mutually exclusive");
        }
        ConnectionSpec spec = parse_connection_url(config.db_url);

        SchemaSnapshot snapshot = introspect_database(spec);
        ProfileOptions profile_options;
        profile_options.sample_limit = config.sample_limit;
        profile_options.row_limit = config.profile_row_limit;
        ProfileSet profiles =
            profile_snapshot(spec, snapshot, profile_options, config.max_inflight);

        std::unique_ptr<DescriptionModel> model;
        std::unique_ptr<ModelSession> session;
        if (!config.rules_only) {
            model = open_backend(config);
            if (model) {
                ModelParams params;
                params.seed = config.seed;
                session = std::make_unique<ModelSession>(model.get(), params, RetryPolicy{},
                                                         nullptr, snapshot_fingerprint(snapshot));
            }
        }
        CategoryMap categories =
            classify_snapshot(snapshot, profiles, session.get(), {}, config.max_inflight);

        if (config.json_output) {
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (const auto& table : snapshot.tables) {
                for (const auto& column : table.columns) {
                    const ColumnProfile& profile = profiles.at({table.name, column.name});
                    const FieldCategory& category = categories.at({table.name, column.name});
                    nlohmann::ordered_json row;
                    row["table"] = table.name;
                    row["column"] = column.name;
                    row["declared_type"] = column.declared_type;
                    row["normalized_type"] = normalized_type_name(column.normalized_type);
                    row["category"] = category_kind_name(category.kind);
                    if (category.granularity) {
                        row["granularity"] = granularity_name(*category.granularity);
                    }
                    row["confidence"] =
                        category.confidence == Confidence::rule ? "rule" : "model";
                    row["rows"] = profile.row_count;
                    row["distinct"] = profile.distinct_count;
                    row["nulls"] = profile.null_count;
                    row["unique"] = profile.is_unique;
                    if (profile.numeric_min) row["min"] = *profile.numeric_min;
                    if (profile.numeric_max) row["max"] = *profile.numeric_max;
                    if (profile.numeric_avg) row["avg"] = *profile.numeric_avg;
                    if (profile.strlen_min) row["strlen_min"] = *profile.strlen_min;
                    if (profile.strlen_max) row["strlen_max"] = *profile.strlen_max;
                    row["samples"] = profile.samples;
                    rows.push_back(std::move(row));
                }
            }
            out << rows.dump(2) << "\n";
        } else {
            for (const auto& table : snapshot.tables) {
                for (const auto& column : table.columns) {
                    const ColumnProfile& profile = profiles.at({table.name, column.name});
                    const FieldCategory& category = categories.at({table.name, column.name});
                    std::ostringstream line;
                    line << table.name << "." << column.name << "  " << column.declared_type
                         << "  " << category_kind_name(category.kind);
                    if (category.granularity) {
                        line << "(" << granularity_name(*category.granularity) << ")";
                    }
                    line << " [" << (category.confidence == Confidence::rule ? "rule" : "model")
                         << "]  rows=" << profile.row_count
                         << " distinct=" << profile.distinct_count
                         << " nulls=" << profile.null_count
                         << " unique=" << (profile.is_unique ? "y" : "n");
                    if (!profile.samples.empty()) {
                        line << "  samples=[";
                        for (size_t s = 0; s < profile.samples.size(); ++s) {
                            if (s) line << ", ";
                            line << profile.samples[s];
                        }
                        line << "]";
                    }
                    out << line.str() << "\n";
                }
            }
        }
        return kExitOk;
    } catch (const std::exception& e) {
        return exit_code_for(e, err, "inspect");
    }
}

} // namespace dbdesc
