#pragma once

#include "dbdesc/errors.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace dbdesc {

struct ModelParams {
    double temperature = 0.0; // deterministic by default
    uint64_t seed = 0;
    int max_output_tokens = 512;

    std::string render() const;
};

// Behavior contract for a text model. send() returns the raw reply text
// and throws ModelError on transport failure. Implementations must either
// tolerate concurrent calls or serialize internally.
class DescriptionModel {
public:
    virtual ~DescriptionModel() = default;
    virtual std::string name() const = 0;
    virtual std::string send(const std::string& prompt, const ModelParams& params) = 0;
};

// Scripted model driven by a fixture: keys are "stage" or "stage:target",
// values are reply lists consumed in order (the last entry repeats once a
// list is exhausted). A reply spelled {"error": "..."} raises a transport
// error instead, which is how retry paths get scripted. Stage and target
// are recovered from the prompt's "## Task:" / "## Target:" header lines.
class MockModel final : public DescriptionModel {
public:
    MockModel() = default;
    MockModel(MockModel&& other) noexcept;
    MockModel& operator=(MockModel&& other) noexcept;

    static MockModel from_file(const std::filesystem::path& fixture_path);
    static MockModel from_json_text(const std::string& json_text);

    void add_reply(const std::string& stage, const std::string& target, std::string reply);
    void add_error(const std::string& stage, const std::string& target, std::string message);

    std::string name() const override { return "mock"; }
    std::string send(const std::string& prompt, const ModelParams& params) override;

    // number of send() calls so far (scripted errors included)
    size_t call_count() const;

private:
    struct Entry {
        std::string text;
        bool is_error = false;
    };
    struct Script {
        std::vector<Entry> entries;
        size_t next = 0;
    };

    mutable std::mutex mutex_;
    std::map<std::string, Script> scripts_;
    size_t calls_ = 0;
};

// Chat-completions style HTTP backend. The endpoint is the full URL of
// the completions route; the API key comes from an environment variable
// and is sent as a bearer token when present.
class HttpModel final : public DescriptionModel {
public:
    HttpModel(std::string endpoint_url, std::string model_name,
              std::string api_key_env = "DBDESC_API_KEY");

    std::string name() const override { return model_name_; }
    std::string send(const std::string& prompt, const ModelParams& params) override;

private:
    std::string endpoint_url_;
    std::string model_name_;
    std::string api_key_;
};

// --- reply parsing -------------------------------------------------------

// Parses a reply that should carry a fenced block of `key: value` lines.
// The first fenced block wins; a reply without fences is parsed whole.
// Returns nullopt when any required key is missing. Keys compare
// case-insensitively and come back lowercased.
std::optional<std::map<std::string, std::string>> parse_structured_reply(
    const std::string& reply, const std::vector<std::string>& required_keys);

// Splits a comma-separated list value, trimming entries, dropping empties.
std::vector<std::string> parse_list_value(const std::string& value);

// First whitespace/punctuation-delimited word matching one of the tokens,
// case-insensitive; returns the canonical (given) spelling.
std::optional<std::string> extract_token(const std::string& reply,
                                         const std::vector<std::string>& tokens);

// --- retry policy --------------------------------------------------------

struct RetryPolicy {
    int transport_retries = 3;
    std::chrono::milliseconds initial_backoff{1000}; // doubles per retry
    std::function<void(std::chrono::milliseconds)> sleeper; // injectable for tests
};

// send() with exponential backoff on ModelError. Rethrows the last error
// once retries are exhausted.
std::string call_with_retries(DescriptionModel& model, const std::string& prompt,
                              const ModelParams& params, const RetryPolicy& policy);

} // namespace dbdesc
