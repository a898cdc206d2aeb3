#pragma once

#include "dbdesc/pipeline.hpp"
#include "dbdesc/profile.hpp"
#include "dbdesc/schema.hpp"

#include <string>
#include <vector>

namespace dbdesc {

// Where a description slot came from. The textual form does not carry
// these tags (the JSON export does), so structural equality ignores them.
enum class SlotSource { empty, origin, generated };

std::string slot_source_name(SlotSource source);

struct MSchemaColumn {
    std::string name;
    std::string type; // declared type, uppercased
    std::string description; // empty = slot empty
    SlotSource description_source = SlotSource::empty;
    bool primary_key = false;
    std::vector<std::string> examples; // at most 3

    bool operator==(const MSchemaColumn&) const = default;
};

struct MSchemaTable {
    std::string name;
    std::string description;
    SlotSource description_source = SlotSource::empty;
    std::vector<MSchemaColumn> columns;

    bool operator==(const MSchemaTable&) const = default;
};

// The final output document. Structure mirrors the snapshot exactly:
// same tables, same columns, same order; descriptions never change it.
struct MSchemaDoc {
    std::string db_id;
    std::vector<MSchemaTable> tables;
    std::vector<ForeignKey> foreign_keys;

    bool operator==(const MSchemaDoc&) const = default;

    // Equality over everything the text form carries, i.e. ignoring the
    // per-slot source tags.
    bool structurally_equal(const MSchemaDoc& other) const;

    // Copy with every description slot emptied.
    MSchemaDoc stripped() const;
};

// Applies the generation mode:
//   no_comment  - every slot empty
//   origin      - slot = original catalog comment where present
//   generation  - slot = generated text for every table and column
//   merge       - original comment where present, generated text elsewhere
// generation/merge throw ContextError when the context lacks a required
// description. Examples come from the profiles (3 per column); newlines
// in any description collapse to spaces since slots are single-line.
MSchemaDoc resolve_descriptions(const SchemaSnapshot& snapshot, const AnalysisContext& context,
                                GenerationMode mode, const ProfileSet* profiles = nullptr);

// Deterministic text form:
//   【DB_ID】 <db_id>
//   【Schema】
//   # Table: <name>
//   <table description line, omitted when empty>
//   [
//   (<name>:<TYPE>, <description>, Primary Key, Examples: [v1, v2])
//   ]
//   【Foreign keys】
//   <t1>.<c1>=<t2>.<c2>
// Absent column parts are omitted. Example values that contain commas,
// quotes or brackets are JSON-quoted; descriptions must not end with the
// reserved ", Primary Key" / ", Examples: [...]" markers. UTF-8, LF.
std::string serialize_mschema(const MSchemaDoc& doc);

// Strict parser for the grammar above; throws MSchemaParseError with the
// offending line. parse(serialize(doc)) is structurally equal to doc.
MSchemaDoc parse_mschema(const std::string& mschema_text);

// Stable-key-order JSON export, source tags included.
std::string mschema_to_json(const MSchemaDoc& doc);

} // namespace dbdesc
