#include "dbdesc/connection.hpp"

#include "dbdesc/errors.hpp"
#include "dbdesc/text.hpp"

namespace dbdesc {

namespace {

// user:pass@host:port/db, every piece optional except the database name
void parse_network_url(const std::string& rest, ConnectionSpec& spec) {
    std::string authority = rest;
    size_t slash = authority.find('/');
    if (slash == std::string::npos || slash + 1 >= authority.size()) {
        throw ConfigError("connection URL is missing a database name: " + spec.url);
    }
    spec.database = authority.substr(slash + 1);
    authority = authority.substr(0, slash);

    size_t at = authority.rfind('@');
    if (at != std::string::npos) {
        std::string credentials = authority.substr(0, at);
        authority = authority.substr(at + 1);
        size_t colon = credentials.find(':');
        if (colon == std::string::npos) {
            spec.user = credentials;
        } else {
            spec.user = credentials.substr(0, colon);
            spec.password = credentials.substr(colon + 1);
        }
    }

    size_t colon = authority.rfind(':');
    if (colon != std::string::npos) {
        spec.host = authority.substr(0, colon);
        std::string port_text = authority.substr(colon + 1);
        try {
            spec.port = std::stoi(port_text);
        } catch (const std::exception&) {
            throw ConfigError("invalid port in connection URL: " + spec.url);
        }
        if (spec.port <= 0 || spec.port > 65535) {
            throw ConfigError("port out of range in connection URL: " + spec.url);
        }
    } else {
        spec.host = authority;
    }
    if (spec.host.empty()) spec.host = "localhost";
}

} // namespace

ConnectionSpec parse_connection_url(const std::string& url) {
    ConnectionSpec spec;
    spec.url = url;

    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("connection URL has no scheme: " + url);
    }
    std::string scheme = text::to_lower(url.substr(0, scheme_end));
    std::string rest = url.substr(scheme_end + 3);

    if (scheme == "sqlite") {
        spec.engine = Engine::sqlite;
        // sqlite:///x.db is relative, sqlite:////x.db is absolute
        if (rest.empty() || rest[0] != '/') {
            throw ConfigError("sqlite URL must look like sqlite:///path.db: " + url);
        }
        spec.path = rest.substr(1);
        if (spec.path.empty()) {
            throw ConfigError("sqlite URL has an empty path: " + url);
        }
    } else if (scheme == "mysql") {
        spec.engine = Engine::mysql;
        parse_network_url(rest, spec);
        if (spec.port == 0) spec.port = 3306;
    } else if (scheme == "postgresql" || scheme == "postgres") {
        spec.engine = Engine::postgresql;
        parse_network_url(rest, spec);
        if (spec.port == 0) spec.port = 5432;
    } else {
        throw ConfigError("unsupported engine scheme '" + scheme + "' in " + url);
    }
    return spec;
}

std::string ConnectionSpec::db_id() const {
    if (engine != Engine::sqlite) return database;
    if (path == ":memory:") return "memory";
    std::string stem = path;
    size_t slash = stem.find_last_of('/');
    if (slash != std::string::npos) stem = stem.substr(slash + 1);
    size_t dot = stem.find_last_of('.');
    if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
    return stem.empty() ? "db" : stem;
}

} // namespace dbdesc
