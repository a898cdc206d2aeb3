#include "dbdesc/model.hpp"

#ifdef DBDESC_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <nlohmann/json.hpp>

#include <cstdlib>

namespace dbdesc {

namespace {

struct SplitUrl {
    std::string origin; // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ModelError("endpoint URL has no scheme: " + url);
    }
    size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

} // namespace

HttpModel::HttpModel(std::string endpoint_url, std::string model_name, std::string api_key_env)
    : endpoint_url_(std::move(endpoint_url)), model_name_(std::move(model_name)) {
    if (const char* key = std::getenv(api_key_env.c_str())) api_key_ = key;
}

std::string HttpModel::send(const std::string& prompt, const ModelParams& params) {
    SplitUrl url = split_url(endpoint_url_);

    nlohmann::json request = {
        {"model", model_name_},
        {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
        {"temperature", params.temperature},
        {"seed", params.seed},
        {"max_tokens", params.max_output_tokens},
    };

    httplib::Client client(url.origin);
    client.set_connection_timeout(std::chrono::seconds(15));
    client.set_read_timeout(std::chrono::seconds(120));
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    auto response = client.Post(url.path, headers, request.dump(), "application/json");
    if (!response) {
        throw ModelError("model endpoint unreachable: " + endpoint_url_ + " (" +
                         httplib::to_string(response.error()) + ")");
    }
    if (response->status != 200) {
        throw ModelError("model endpoint returned HTTP " + std::to_string(response->status) +
                         ": " + response->body.substr(0, 500));
    }

    try {
        nlohmann::json body = nlohmann::json::parse(response->body);
        return body.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ModelError(std::string("malformed completions response: ") + e.what());
    }
}

} // namespace dbdesc
