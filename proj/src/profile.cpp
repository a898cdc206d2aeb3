#include "dbdesc/profile.hpp"

#include "dbdesc/errors.hpp"
#include "dbdesc/introspect.hpp"
#include "dbdesc/log.hpp"
#include "dbdesc/parallel.hpp"
#include "dbdesc/text.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace dbdesc {

namespace {

bool is_numeric_kind(NormalizedType t) {
    return t == NormalizedType::integer || t == NormalizedType::real;
}

std::optional<double> optional_numeric(const Value& v) {
    if (v.is_numeric()) return v.numeric();
    return std::nullopt;
}

std::optional<uint64_t> optional_count(const Value& v) {
    if (v.is_int() && v.as_int() >= 0) return static_cast<uint64_t>(v.as_int());
    if (v.is_real() && v.as_real() >= 0) return static_cast<uint64_t>(v.as_real());
    return std::nullopt;
}

// Derived-table source for the statistics queries. With a row cap the
// prefix is ordered by primary key so reruns see the same rows; keyless
// sqlite tables fall back to rowid, other engines to the column itself.
std::string source_relation(Connector& connector, const TableMeta& table,
                            const ColumnMeta& column, uint64_t row_limit, bool rowid_fallback) {
    std::string qtable = connector.quote_identifier(table.name);
    std::string qcol = connector.quote_identifier(column.name);
    if (row_limit == 0) return qtable;

    std::string order;
    if (!table.primary_key.empty()) {
        for (const auto& pk : table.primary_key) {
            if (!order.empty()) order += ", ";
            order += connector.quote_identifier(pk);
        }
    } else if (connector.engine() == Engine::sqlite && rowid_fallback) {
        order = "rowid";
    } else {
        order = qcol;
    }
    return "(SELECT " + qcol + " AS " + qcol + " FROM " + qtable + " ORDER BY " + order +
           " LIMIT " + std::to_string(row_limit) + ") AS profiled_rows";
}

std::string length_fn(Engine engine) {
    return engine == Engine::mysql ? "CHAR_LENGTH" : "LENGTH";
}

} // namespace

std::string render_sample_value(const Value& value) {
    std::string rendered;
    if (value.is_int()) {
        rendered = std::to_string(value.as_int());
    } else if (value.is_real()) {
        rendered = text::render_double(value.as_real());
    } else if (value.is_text()) {
        rendered = value.as_text();
    } else {
        return "";
    }
    return text::clip_codepoints(rendered, 64);
}

ColumnProfile profile_column(Connector& connector, const TableMeta& table,
                             const ColumnMeta& column, const ProfileOptions& options) {
    ColumnProfile profile;
    profile.meta = column;

    std::string qcol = connector.quote_identifier(column.name);

    auto run_with_source = [&](const std::string& select, const std::string& suffix = "") {
        // rowid ordering can fail on WITHOUT ROWID tables; retry ordered
        // by the column itself
        try {
            std::string src = source_relation(connector, table, column, options.row_limit, true);
            return connector.query(select + " FROM " + src + suffix);
        } catch (const QueryError&) {
            if (options.row_limit == 0 || !table.primary_key.empty()) throw;
            std::string src = source_relation(connector, table, column, options.row_limit, false);
            return connector.query(select + " FROM " + src + suffix);
        }
    };

    QueryResult counts = run_with_source(
        "SELECT COUNT(*), COUNT(" + qcol + "), COUNT(DISTINCT " + qcol + ")");
    if (counts.rows.empty()) throw QueryError("count query returned no rows for " + table.name);
    uint64_t non_null = optional_count(counts.at(0, 1)).value_or(0);
    profile.row_count = optional_count(counts.at(0, 0)).value_or(0);
    profile.distinct_count = optional_count(counts.at(0, 2)).value_or(0);
    profile.null_count = profile.row_count - std::min(non_null, profile.row_count);
    profile.is_unique =
        profile.row_count > 0 && profile.distinct_count == profile.row_count - profile.null_count;

    if (profile.row_count == 0) return profile;

    if (is_numeric_kind(column.normalized_type)) {
        try {
            QueryResult stats =
                run_with_source("SELECT MIN(" + qcol + "), MAX(" + qcol + "), AVG(" + qcol + ")");
            profile.numeric_min = optional_numeric(stats.at(0, 0));
            profile.numeric_max = optional_numeric(stats.at(0, 1));
            profile.numeric_avg = optional_numeric(stats.at(0, 2));
        } catch (const QueryError&) {
            // avg cast failed on this engine; keep min/max, leave avg absent
            QueryResult stats =
                run_with_source("SELECT MIN(" + qcol + "), MAX(" + qcol + ")");
            profile.numeric_min = optional_numeric(stats.at(0, 0));
            profile.numeric_max = optional_numeric(stats.at(0, 1));
        }
        // mixed-type storage can push an engine-computed average outside
        // [min, max]; an average we cannot trust is dropped
        if (profile.numeric_avg &&
            ((profile.numeric_min && *profile.numeric_avg < *profile.numeric_min) ||
             (profile.numeric_max && *profile.numeric_avg > *profile.numeric_max))) {
            log::debug("dropping out-of-range average for " + table.name + "." + column.name);
            profile.numeric_avg.reset();
        }
    }

    if (column.normalized_type == NormalizedType::text) {
        std::string len = length_fn(connector.engine());
        QueryResult lens = run_with_source(
            "SELECT MIN(" + len + "(" + qcol + ")), MAX(" + len + "(" + qcol + "))");
        profile.strlen_min = optional_count(lens.at(0, 0));
        profile.strlen_max = optional_count(lens.at(0, 1));
    }

    if (column.normalized_type != NormalizedType::blob && options.sample_limit > 0) {
        // server-side ORDER BY keeps the fetch bounded and repeatable;
        // clipping can render two long values identically, so dedupe again
        QueryResult sample_rows = run_with_source(
            "SELECT DISTINCT " + qcol,
            " WHERE " + qcol + " IS NOT NULL ORDER BY " + qcol + " LIMIT " +
                std::to_string(options.sample_limit));
        std::vector<std::string> rendered;
        for (const auto& row : sample_rows.rows) {
            if (row.at(0).is_null() || row.at(0).is_blob()) continue;
            std::string value = render_sample_value(row.at(0));
            if (std::find(rendered.begin(), rendered.end(), value) == rendered.end()) {
                rendered.push_back(value);
            }
        }
        profile.samples = std::move(rendered);
    }

    return profile;
}

ColumnProfile profile_column(const ConnectionSpec& spec, const std::string& table,
                             const std::string& column, uint64_t sample_limit) {
    auto connector = make_connector(spec);
    SchemaSnapshot snapshot = introspect_snapshot(*connector, spec.db_id());
    const TableMeta* table_meta = snapshot.find_table(table);
    if (!table_meta) throw QueryError("no such table: " + table);
    const ColumnMeta* column_meta = table_meta->find_column(column);
    if (!column_meta) throw QueryError("no such column: " + table + "." + column);
    ProfileOptions options;
    options.sample_limit = sample_limit;
    return profile_column(*connector, *table_meta, *column_meta, options);
}

ProfileSet profile_snapshot(const ConnectionSpec& spec, const SchemaSnapshot& snapshot,
                            const ProfileOptions& options, size_t max_inflight) {
    std::vector<std::pair<const TableMeta*, const ColumnMeta*>> targets;
    for (const auto& table : snapshot.tables) {
        for (const auto& column : table.columns) targets.emplace_back(&table, &column);
    }

    std::vector<ColumnProfile> results(targets.size());
    size_t workers = std::max<size_t>(1, std::min(max_inflight, targets.size()));
    if (workers <= 1) {
        auto connector = make_connector(spec);
        for (size_t i = 0; i < targets.size(); ++i) {
            results[i] = profile_column(*connector, *targets[i].first, *targets[i].second, options);
        }
    } else {
        // one connection per worker; a handle never sees two in-flight queries
        std::vector<std::unique_ptr<Connector>> connectors;
        for (size_t w = 0; w < workers; ++w) connectors.push_back(make_connector(spec));
        std::vector<std::exception_ptr> errors(targets.size());
        std::vector<std::thread> threads;
        std::atomic<size_t> next{0};
        for (size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w]() {
                Connector* conn = connectors[w].get();
                while (true) {
                    size_t i = next.fetch_add(1);
                    if (i >= targets.size()) return;
                    try {
                        results[i] =
                            profile_column(*conn, *targets[i].first, *targets[i].second, options);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : threads) t.join();
        for (auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }

    ProfileSet set;
    for (size_t i = 0; i < targets.size(); ++i) {
        set.emplace(ColumnRef{targets[i].first->name, targets[i].second->name},
                    std::move(results[i]));
    }
    return set;
}

} // namespace dbdesc
