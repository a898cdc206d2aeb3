#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace dbdesc {

// Append-only JSON-lines store of model calls, one file per database.
// Each record is {key, prompt_digest, reply, timestamp}; a call hits only
// when both the content-address key and the prompt digest match, so a
// repair or shorten re-prompt never shadows the original call.
class ModelCallCache {
public:
    explicit ModelCallCache(std::filesystem::path file);

    std::optional<std::string> lookup(const std::string& key,
                                      const std::string& prompt_digest) const;
    void store(const std::string& key, const std::string& prompt_digest,
               const std::string& reply);

    size_t size() const;
    const std::filesystem::path& path() const { return file_; }

private:
    std::filesystem::path file_;
    mutable std::mutex mutex_;
    std::map<std::pair<std::string, std::string>, std::string> entries_;
};

} // namespace dbdesc
