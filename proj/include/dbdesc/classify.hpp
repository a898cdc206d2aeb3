#pragma once

#include "dbdesc/profile.hpp"
#include "dbdesc/schema.hpp"
#include "dbdesc/session.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dbdesc {

// Field taxonomy: measures aggregate, dimensions segment. Dimensions are
// split into identifier codes, small closed enumerations, datetimes (with
// a granularity), and free text.
enum class CategoryKind { measure, code, enum_dim, datetime_dim, text_dim };

enum class Granularity { year, quarter, month, day, hour, minute, second };

enum class Confidence { rule, model };

struct FieldCategory {
    CategoryKind kind = CategoryKind::text_dim;
    std::optional<Granularity> granularity; // present iff kind == datetime_dim
    Confidence confidence = Confidence::rule;

    bool operator==(const FieldCategory&) const = default;
};

std::string category_kind_name(CategoryKind kind);      // "measure", "code", "enum", ...
std::string category_wire_token(CategoryKind kind);     // "MEASURE", "CODE", "ENUM", ...
std::string granularity_name(Granularity granularity);  // "year" ... "second"
std::optional<CategoryKind> category_kind_from_token(const std::string& token);
std::optional<Granularity> granularity_from_token(const std::string& token);

struct ClassificationRequest {
    std::string table;
    std::vector<std::string> peer_columns; // other columns of the table
    const ColumnProfile* profile = nullptr;
};

struct ClassifyOptions {
    uint64_t enum_threshold = 20;  // max distinct values for an enum
    uint64_t text_threshold = 64;  // min max-length for free text
};

// Deterministic first pass. Fires only when a high-precision rule
// matches; anything ambiguous comes back absent and goes to the model.
// Rules in order, first match wins:
//   1. primary key, foreign-key endpoint, or id/code/uuid name suffix
//      on a unique column                                          -> code
//   2. declared datetime type                                      -> datetime (granularity later)
//   3. declared boolean type                                       -> enum {true, false}
//   4. numeric, not key-like, distinct count above enum threshold  -> measure
//   5. 1..enum_threshold distinct values                           -> enum
//   6. text with max length above the text threshold               -> text
// "Key-like" in rule 4 means primary key, observed unique, or declared
// unique; a unique numeric column may well be a code, so it is left to
// the model.
std::optional<FieldCategory> classify_rule_based(const ColumnProfile& profile,
                                                 const ClassifyOptions& options = {});

// Declared-type fallback used for empty columns and rules-only runs:
// datetime -> datetime/day, boolean -> enum, numeric -> measure,
// everything else -> text.
FieldCategory default_category(const ColumnMeta& meta);

// Second pass: presents the profile to the model and expects one taxonomy
// token (MEASURE | CODE | ENUM | DATETIME | TEXT, prose tolerated). An
// unparseable answer is retried once, then falls back to text for
// text-like columns and measure for numeric ones. Transport errors
// propagate.
FieldCategory classify_with_model(const ClassificationRequest& request, ModelSession& session,
                                  const ClassifyOptions& options = {});

// Granularity of a datetime column. A deterministic format probe over the
// samples decides when at least 80% agree on one pattern; otherwise the
// model is consulted when available. Never throws: total ambiguity
// defaults to day with a logged warning.
Granularity infer_datetime_granularity(const std::string& table, const ColumnProfile& profile,
                                       ModelSession* session);

// One sample against the ordered pattern list (ISO datetime forms,
// YYYYMMDD, YYYYMM, bare year, quarter, epoch seconds/millis).
std::optional<Granularity> match_datetime_pattern(const std::string& sample);

// The >=80% agreement probe over a sample list.
std::optional<Granularity> probe_granularity(const std::vector<std::string>& samples);

// Full per-column decision: rules, then declared-type defaults (empty
// columns, or no model), then the model; datetime columns get a
// granularity. Total: always returns exactly one category.
FieldCategory classify_column(const std::string& table, const ColumnProfile& profile,
                              const std::vector<std::string>& peer_columns, ModelSession* session,
                              const ClassifyOptions& options = {});

using CategoryMap = std::map<ColumnRef, FieldCategory>;

// Classifies every profiled column of the snapshot; independent columns
// run concurrently up to max_inflight.
CategoryMap classify_snapshot(const SchemaSnapshot& snapshot, const ProfileSet& profiles,
                              ModelSession* session, const ClassifyOptions& options = {},
                              size_t max_inflight = 4);

} // namespace dbdesc
