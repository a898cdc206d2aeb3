#include "dbdesc/cache.hpp"

#include "dbdesc/errors.hpp"
#include "dbdesc/log.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>

namespace dbdesc {

namespace {

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

ModelCallCache::ModelCallCache(std::filesystem::path file) : file_(std::move(file)) {
    std::ifstream in(file_);
    if (!in) return; // cold cache
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            nlohmann::json record = nlohmann::json::parse(line);
            entries_[{record.at("key").get<std::string>(),
                      record.at("prompt_digest").get<std::string>()}] =
                record.at("reply").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            log::warn("skipping corrupt cache record at " + file_.string() + ":" +
                      std::to_string(line_no) + " (" + e.what() + ")");
        }
    }
}

std::optional<std::string> ModelCallCache::lookup(const std::string& key,
                                                  const std::string& prompt_digest) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find({key, prompt_digest});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ModelCallCache::store(const std::string& key, const std::string& prompt_digest,
                           const std::string& reply) {
    std::lock_guard<std::mutex> lock(mutex_);
    entries_[{key, prompt_digest}] = reply;

    if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
    std::ofstream out(file_, std::ios::app);
    if (!out) throw Error("cannot append to cache file: " + file_.string());
    nlohmann::ordered_json record = {
        {"key", key},
        {"prompt_digest", prompt_digest},
        {"reply", reply},
        {"timestamp", utc_timestamp()},
    };
    out << record.dump() << "\n";
}

size_t ModelCallCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.size();
}

} // namespace dbdesc
