#include "dbdesc/model.hpp"

#include "dbdesc/log.hpp"
#include "dbdesc/text.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <thread>

namespace dbdesc {

std::string ModelParams::render() const {
    std::ostringstream out;
    out << "temperature=" << text::render_double(temperature) << ";seed=" << seed
        << ";max_output_tokens=" << max_output_tokens;
    return out.str();
}

// --- MockModel -------------------------------------------------------------

namespace {

// Prompts open with "## Task: <stage>" and "## Target: <target>" lines;
// the mock routes on them.
std::string header_value(const std::string& prompt, const std::string& header) {
    size_t pos = prompt.find(header);
    if (pos == std::string::npos) return "";
    size_t start = pos + header.size();
    size_t eol = prompt.find('\n', start);
    return text::trim(prompt.substr(start, eol == std::string::npos ? std::string::npos
                                                                    : eol - start));
}

} // namespace

MockModel::MockModel(MockModel&& other) noexcept {
    std::lock_guard<std::mutex> lock(other.mutex_);
    scripts_ = std::move(other.scripts_);
    calls_ = other.calls_;
}

MockModel& MockModel::operator=(MockModel&& other) noexcept {
    if (this != &other) {
        std::scoped_lock lock(mutex_, other.mutex_);
        scripts_ = std::move(other.scripts_);
        calls_ = other.calls_;
    }
    return *this;
}

MockModel MockModel::from_file(const std::filesystem::path& fixture_path) {
    std::ifstream in(fixture_path);
    if (!in) throw ModelError("cannot open mock fixture: " + fixture_path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_json_text(buffer.str());
}

MockModel MockModel::from_json_text(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ModelError(std::string("mock fixture is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ModelError("mock fixture must be a JSON object");

    MockModel model;
    for (const auto& [key, value] : doc.items()) {
        Script script;
        auto push_entry = [&](const nlohmann::json& item) {
            if (item.is_string()) {
                script.entries.push_back({item.get<std::string>(), false});
            } else if (item.is_object() && item.contains("error")) {
                script.entries.push_back({item["error"].get<std::string>(), true});
            } else {
                throw ModelError("mock fixture entry for '" + key +
                                 "' must be a string or {\"error\": ...}");
            }
        };
        if (value.is_array()) {
            for (const auto& item : value) push_entry(item);
        } else {
            push_entry(value);
        }
        if (script.entries.empty()) {
            throw ModelError("mock fixture entry for '" + key + "' is empty");
        }
        model.scripts_.emplace(key, std::move(script));
    }
    return model;
}

void MockModel::add_reply(const std::string& stage, const std::string& target, std::string reply) {
    std::lock_guard<std::mutex> lock(mutex_);
    std::string key = target.empty() ? stage : stage + ":" + target;
    scripts_[key].entries.push_back({std::move(reply), false});
}

void MockModel::add_error(const std::string& stage, const std::string& target,
                          std::string message) {
    std::lock_guard<std::mutex> lock(mutex_);
    std::string key = target.empty() ? stage : stage + ":" + target;
    scripts_[key].entries.push_back({std::move(message), true});
}

std::string MockModel::send(const std::string& prompt, const ModelParams&) {
    std::lock_guard<std::mutex> lock(mutex_);
    ++calls_;
    std::string stage = header_value(prompt, "## Task: ");
    std::string target = header_value(prompt, "## Target: ");

    auto it = scripts_.end();
    if (!target.empty()) it = scripts_.find(stage + ":" + target);
    if (it == scripts_.end()) it = scripts_.find(stage);
    if (it == scripts_.end()) it = scripts_.find(stage + ":*");
    if (it == scripts_.end()) {
        throw ModelError("mock fixture has no reply for stage '" + stage + "', target '" + target +
                         "'");
    }
    Script& script = it->second;
    size_t index = std::min(script.next, script.entries.size() - 1);
    ++script.next;
    const Entry& entry = script.entries[index];
    if (entry.is_error) throw ModelError("scripted transport error: " + entry.text);
    return entry.text;
}

size_t MockModel::call_count() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return calls_;
}

// --- reply parsing -----------------------------------------------------------

std::optional<std::map<std::string, std::string>> parse_structured_reply(
    const std::string& reply, const std::vector<std::string>& required_keys) {
    std::string body = reply;
    size_t fence = reply.find("```");
    if (fence != std::string::npos) {
        size_t start = reply.find('\n', fence);
        if (start == std::string::npos) return std::nullopt;
        size_t end = reply.find("```", start);
        if (end == std::string::npos) return std::nullopt;
        body = reply.substr(start + 1, end - start - 1);
    }

    std::map<std::string, std::string> fields;
    for (const auto& line : text::split(body, '\n')) {
        size_t colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string key = text::to_lower(text::trim(line.substr(0, colon)));
        std::string value = text::trim(line.substr(colon + 1));
        if (key.empty()) continue;
        fields.emplace(key, value); // first occurrence wins
    }
    for (const auto& key : required_keys) {
        if (!fields.count(text::to_lower(key))) return std::nullopt;
    }
    return fields;
}

std::vector<std::string> parse_list_value(const std::string& value) {
    std::vector<std::string> out;
    for (const auto& part : text::split(value, ',')) {
        std::string trimmed = text::trim(part);
        if (!trimmed.empty()) out.push_back(trimmed);
    }
    return out;
}

std::optional<std::string> extract_token(const std::string& reply,
                                         const std::vector<std::string>& tokens) {
    std::string word;
    auto check = [&]() -> std::optional<std::string> {
        if (word.empty()) return std::nullopt;
        for (const auto& token : tokens) {
            if (text::iequals(word, token)) return token;
        }
        return std::nullopt;
    };
    for (char c : reply) {
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            word.push_back(c);
        } else {
            if (auto hit = check()) return hit;
            word.clear();
        }
    }
    return check();
}

// --- retries -----------------------------------------------------------------

std::string call_with_retries(DescriptionModel& model, const std::string& prompt,
                              const ModelParams& params, const RetryPolicy& policy) {
    auto backoff = policy.initial_backoff;
    int attempts_left = policy.transport_retries;
    while (true) {
        try {
            return model.send(prompt, params);
        } catch (const ModelError& e) {
            if (attempts_left <= 0) throw;
            --attempts_left;
            log::warn(std::string("model transport error, retrying: ") + e.what());
            if (policy.sleeper) {
                policy.sleeper(backoff);
            } else {
                std::this_thread::sleep_for(backoff);
            }
            backoff *= 2;
        }
    }
}

} // namespace dbdesc
