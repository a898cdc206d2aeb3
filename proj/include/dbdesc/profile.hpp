#pragma once

#include "dbdesc/connection.hpp"
#include "dbdesc/connector.hpp"
#include "dbdesc/schema.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dbdesc {

// Per-column basic details plus statistics. Fields that do not apply to
// the column's type stay absent rather than zero: numeric bounds exist
// only for integer/real columns, string lengths only for text.
struct ColumnProfile {
    ColumnMeta meta;
    uint64_t row_count = 0;
    uint64_t distinct_count = 0;
    uint64_t null_count = 0;
    bool is_unique = false;
    std::optional<double> numeric_min;
    std::optional<double> numeric_max;
    std::optional<double> numeric_avg;
    std::optional<uint64_t> strlen_min;
    std::optional<uint64_t> strlen_max;
    std::vector<std::string> samples; // rendered, deduplicated, no nulls
};

struct ProfileOptions {
    uint64_t sample_limit = 5;
    // 0 profiles every row; otherwise statistics run over a deterministic
    // ORDER-BY-primary-key prefix of this many rows.
    uint64_t row_limit = 0;
};

// Renders one cell for samples and prompt text: integers in decimal,
// reals as shortest round-trip decimals, text verbatim, clipped to 64
// codepoints with a trailing ellipsis.
std::string render_sample_value(const Value& value);

ColumnProfile profile_column(Connector& connector, const TableMeta& table, const ColumnMeta& column,
                             const ProfileOptions& options = {});

// Convenience form matching the library surface: opens a connection and
// introspects the table first.
ColumnProfile profile_column(const ConnectionSpec& spec, const std::string& table,
                             const std::string& column, uint64_t sample_limit = 5);

using ColumnRef = std::pair<std::string, std::string>; // table, column
using ProfileSet = std::map<ColumnRef, ColumnProfile>;

// Profiles every column in the snapshot. Distinct columns run
// concurrently, one connection per worker, up to max_inflight.
ProfileSet profile_snapshot(const ConnectionSpec& spec, const SchemaSnapshot& snapshot,
                            const ProfileOptions& options = {}, size_t max_inflight = 4);

} // namespace dbdesc
