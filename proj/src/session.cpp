#include "dbdesc/session.hpp"

#include "dbdesc/digest.hpp"
#include "dbdesc/errors.hpp"

namespace dbdesc {

ModelSession::ModelSession(DescriptionModel* model, ModelParams params, RetryPolicy policy,
                           ModelCallCache* cache, std::string snapshot_fingerprint)
    : model_(model),
      params_(params),
      policy_(std::move(policy)),
      cache_(cache),
      fingerprint_(std::move(snapshot_fingerprint)) {}

std::string ModelSession::cache_key(const std::string& stage, const std::string& target) const {
    return fingerprint_ + "|" + stage + "|" + target + "|" + kPromptTemplateVersion + "|" +
           (model_ ? model_->name() : "none");
}

std::string ModelSession::call(const std::string& stage, const std::string& target,
                               const std::string& prompt) {
    if (!model_) {
        throw ModelError("stage " + stage + " needs a model backend but none is configured");
    }
    std::string key = cache_key(stage, target);
    std::string digest = sha256_hex(prompt + "\x1f" + params_.render());

    if (cache_) {
        if (auto cached = cache_->lookup(key, digest)) {
            std::lock_guard<std::mutex> lock(mutex_);
            trace_.push_back({stage, target, prompt, *cached, true});
            ++cache_hits_;
            return *cached;
        }
    }

    std::string reply = call_with_retries(*model_, prompt, params_, policy_);

    if (cache_) cache_->store(key, digest, reply);
    std::lock_guard<std::mutex> lock(mutex_);
    trace_.push_back({stage, target, prompt, reply, false});
    ++live_calls_;
    return reply;
}

CallTrace ModelSession::trace() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return trace_;
}

size_t ModelSession::model_call_count() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return live_calls_;
}

size_t ModelSession::cache_hit_count() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_hits_;
}

} // namespace dbdesc
