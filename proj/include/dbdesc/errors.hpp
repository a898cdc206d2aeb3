#pragma once

#include <stdexcept>
#include <string>

namespace dbdesc {

// Base class for every error raised by this library. Subclasses map onto
// the CLI exit-code categories (see tools/dbdesc_main.cpp).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration: bad URL scheme, incompatible flag combinations.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Could not reach or open the database, or the driver is not built in.
class ConnectionError : public Error {
public:
    using Error::Error;
};

// A query against a live connection failed.
class QueryError : public Error {
public:
    using Error::Error;
};

// Model backend failure: transport errors, or replies that stay
// unparseable after the repair retry.
class ModelError : public Error {
public:
    using Error::Error;
};

// M-Schema text that does not conform to the grammar.
class MSchemaParseError : public Error {
public:
    MSchemaParseError(const std::string& msg, int line, int column)
        : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Description resolution asked for pipeline results that were never produced.
class ContextError : public Error {
public:
    using Error::Error;
};

} // namespace dbdesc
