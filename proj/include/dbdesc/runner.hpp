#pragma once

#include "dbdesc/pipeline.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace dbdesc {

// Everything the CLI front end wires together. The mock fixture and the
// live endpoint are mutually exclusive; generation/merge need one of
// them, origin/no_comment forbid both.
struct RunConfig {
    std::string db_url;
    GenerationMode mode = GenerationMode::merge;
    std::string mock_path;
    std::string endpoint_url;
    std::string model_name;
    std::string out_dir = "out";
    std::string cache_path; // empty = <out_dir>/<db_id>.cache.jsonl
    uint64_t profile_row_limit = 0;
    uint64_t sample_limit = 5;
    size_t max_inflight = 4;
    uint64_t seed = 0;
    bool rules_only = false;
    bool json_output = false;
};

// Exit codes shared by both commands:
//   0 success, 2 config validation, 3 connection/introspection,
//   4 model backend, 5 serialization/io and anything internal.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitConnection = 3;
inline constexpr int kExitModel = 4;
inline constexpr int kExitIo = 5;

// Throws ConfigError on invalid flag combinations; runs before anything
// touches the database.
void validate_generate_config(const RunConfig& config);

// Full run: introspect, profile, classify, pipeline, resolve, write the
// M-Schema text and JSON export, print a summary line.
int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err);

// Debug view: prints one row per column with profile and category; never
// calls the model except for category fallback (disabled by rules_only).
int cmd_inspect(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace dbdesc
