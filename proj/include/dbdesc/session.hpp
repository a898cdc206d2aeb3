#pragma once

#include "dbdesc/cache.hpp"
#include "dbdesc/model.hpp"

#include <mutex>
#include <string>
#include <vector>

namespace dbdesc {

inline constexpr const char* kPromptTemplateVersion = "v1";

struct ModelCallRecord {
    std::string stage;
    std::string target;
    std::string prompt;
    std::string reply;
    bool cache_hit = false;
};

using CallTrace = std::vector<ModelCallRecord>;

// Bundles a model with its params, retry policy, optional cache, and a
// prompt/reply trace. All pipeline and classification calls go through
// here so caching and capture behave the same everywhere. Thread-safe;
// stage workers share one session.
class ModelSession {
public:
    explicit ModelSession(DescriptionModel* model, ModelParams params = {},
                          RetryPolicy policy = {}, ModelCallCache* cache = nullptr,
                          std::string snapshot_fingerprint = "");

    bool has_model() const { return model_ != nullptr; }
    const ModelParams& params() const { return params_; }

    // Runs one model call: cache lookup, transport retries, cache store,
    // trace append. Throws ModelError after retries are exhausted.
    std::string call(const std::string& stage, const std::string& target,
                     const std::string& prompt);

    CallTrace trace() const;
    size_t model_call_count() const; // live calls, cache hits excluded
    size_t cache_hit_count() const;

private:
    std::string cache_key(const std::string& stage, const std::string& target) const;

    DescriptionModel* model_;
    ModelParams params_;
    RetryPolicy policy_;
    ModelCallCache* cache_;
    std::string fingerprint_;

    mutable std::mutex mutex_;
    CallTrace trace_;
    size_t live_calls_ = 0;
    size_t cache_hits_ = 0;
};

} // namespace dbdesc
