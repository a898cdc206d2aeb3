#pragma once

#include "dbdesc/classify.hpp"
#include "dbdesc/model.hpp"
#include "dbdesc/profile.hpp"
#include "dbdesc/schema.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dbdesc::testing {

struct ExpectedCategory {
    CategoryKind kind = CategoryKind::text_dim;
    std::optional<Granularity> granularity;
    Confidence confidence = Confidence::rule; // which path should decide
};

// One fixture database plus its hand-assigned labels. Columns whose
// expected confidence is `model` carry the taxonomy token a scripted
// model should answer with.
struct CorpusDb {
    std::string name;
    std::filesystem::path path;
    std::string url;
    std::map<ColumnRef, ExpectedCategory> ground_truth;
    std::map<ColumnRef, std::string> classification_replies;
    // datetime columns whose samples are well-formed, with the expected
    // granularity (probe must agree with the independent oracle on them)
    std::map<ColumnRef, Granularity> datetime_columns;
};

// Builds the five synthetic databases (sqlite files) under dir:
// retail (mixed comments), sensors, library, clinic (comments, native
// datetime types, an empty table, blobs), warehouse. 56 columns total.
class Corpus {
public:
    explicit Corpus(const std::filesystem::path& dir);

    const std::vector<CorpusDb>& dbs() const { return dbs_; }
    const CorpusDb& db(const std::string& name) const;

    size_t total_columns() const;

private:
    std::vector<CorpusDb> dbs_;
};

// Ground truth as a CategoryMap (what end-to-end classification must
// reproduce).
CategoryMap categories_from_ground_truth(const CorpusDb& db);

using FixtureEntries = std::map<std::string, std::vector<std::string>>;

// Scripted replies for the classification stage of one corpus db.
FixtureEntries classification_fixture_entries(const CorpusDb& db);

// Deterministic scripted replies for every pipeline stage over the
// snapshot, based on the categories the run will assign. Retail's
// replies follow the fixture narrative (e-commerce domain, transactional
// orders table, promotional flag wording).
FixtureEntries pipeline_fixture_entries(const SchemaSnapshot& snapshot,
                                        const CategoryMap& categories);

// In pipeline entries, replaces the given column's script with two
// over-limit replies (word-limit enforcement path), and the given
// table's script likewise.
void script_overlong_replies(FixtureEntries& entries, const ColumnRef& column,
                             const std::string& table);

MockModel make_mock(const FixtureEntries& entries);
void merge_entries(FixtureEntries& into, const FixtureEntries& from);
void write_fixture_file(const std::filesystem::path& path, const FixtureEntries& entries);

// The relation groups the pipeline will analyze: (table, kind) pairs
// with at least two columns, re-derived here independently for the
// closed-form call counts.
std::vector<std::pair<std::string, CategoryKind>> relation_groups(
    const SchemaSnapshot& snapshot, const CategoryMap& categories);

} // namespace dbdesc::testing
