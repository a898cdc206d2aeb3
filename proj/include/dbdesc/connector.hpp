#pragma once

#include "dbdesc/connection.hpp"
#include "dbdesc/value.hpp"

#include <memory>
#include <string>

namespace dbdesc {

// One live database session. A handle runs at most one query at a time;
// callers that profile concurrently open one connector per worker.
class Connector {
public:
    virtual ~Connector() = default;

    virtual Engine engine() const = 0;

    // Executes a read-only statement. Throws QueryError on failure.
    virtual QueryResult query(const std::string& sql) = 0;

    // Engine identifier quoting ("a" vs `a`).
    std::string quote_identifier(const std::string& name) const;
};

// Opens a session for the spec. Throws ConnectionError when the engine is
// unreachable or its driver was not compiled into this build.
std::unique_ptr<Connector> make_connector(const ConnectionSpec& spec);

} // namespace dbdesc
