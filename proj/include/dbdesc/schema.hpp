#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace dbdesc {

enum class Engine { sqlite, mysql, postgresql };

std::string engine_name(Engine engine);

// Engine-independent buckets the classifier and profiler work against.
// The per-engine mapping tables live in the introspectors; anything they
// do not recognize lands in `other`.
enum class NormalizedType { integer, real, text, blob, datetime, boolean, other };

std::string normalized_type_name(NormalizedType type);

struct ColumnMeta {
    std::string name;
    std::string declared_type;
    NormalizedType normalized_type = NormalizedType::other;
    bool nullable = true;
    bool is_primary_key = false;
    bool declared_unique = false;
    bool is_foreign_key = false; // derived from the snapshot's FK list
    std::optional<std::string> original_comment;

    bool operator==(const ColumnMeta&) const = default;
};

struct TableMeta {
    std::string name;
    std::vector<ColumnMeta> columns;
    std::vector<std::string> primary_key;
    std::optional<std::string> original_comment;

    const ColumnMeta* find_column(const std::string& name) const;

    bool operator==(const TableMeta&) const = default;
};

struct ForeignKey {
    std::string from_table;
    std::string from_column;
    std::string to_table;
    std::string to_column;

    bool operator==(const ForeignKey&) const = default;
    auto tie() const { return std::tie(from_table, from_column, to_table, to_column); }
    bool operator<(const ForeignKey& other) const { return tie() < other.tie(); }
};

struct SchemaSnapshot {
    std::string db_id;
    Engine engine = Engine::sqlite;
    std::vector<TableMeta> tables;       // catalog order, ties lexicographic
    std::vector<ForeignKey> foreign_keys; // canonical sorted order

    const TableMeta* find_table(const std::string& name) const;
    size_t column_count() const;

    // Throws Error if names collide, a primary-key name is not a column,
    // or a foreign-key endpoint does not exist.
    void validate() const;

    bool operator==(const SchemaSnapshot&) const = default;
};

// Stable content digest over names, types, keys and comments. Foreign
// keys are canonically ordered before hashing, so two snapshots that
// differ only in FK list order share a fingerprint.
std::string snapshot_fingerprint(const SchemaSnapshot& snapshot);

} // namespace dbdesc
