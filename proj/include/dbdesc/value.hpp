#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace dbdesc {

// A single cell coming back from a connector. Engines surface richer type
// systems than this, but everything the profiler and introspectors need
// collapses onto these five alternatives.
struct Value {
    struct Null {
        bool operator==(const Null&) const { return true; }
    };

    std::variant<Null, int64_t, double, std::string, std::vector<uint8_t>> data;

    Value() : data(Null{}) {}
    Value(int64_t v) : data(v) {}
    Value(double v) : data(v) {}
    Value(std::string v) : data(std::move(v)) {}
    Value(const char* v) : data(std::string(v)) {}
    Value(std::vector<uint8_t> v) : data(std::move(v)) {}

    bool is_null() const { return std::holds_alternative<Null>(data); }
    bool is_int() const { return std::holds_alternative<int64_t>(data); }
    bool is_real() const { return std::holds_alternative<double>(data); }
    bool is_text() const { return std::holds_alternative<std::string>(data); }
    bool is_blob() const { return std::holds_alternative<std::vector<uint8_t>>(data); }

    int64_t as_int() const { return std::get<int64_t>(data); }
    double as_real() const { return std::get<double>(data); }
    const std::string& as_text() const { return std::get<std::string>(data); }
    const std::vector<uint8_t>& as_blob() const { return std::get<std::vector<uint8_t>>(data); }

    // Numeric view: ints widen to double, reals pass through.
    bool is_numeric() const { return is_int() || is_real(); }
    double numeric() const { return is_int() ? static_cast<double>(as_int()) : as_real(); }

    bool operator==(const Value& other) const { return data == other.data; }
};

struct QueryResult {
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;

    bool empty() const { return rows.empty(); }
    const Value& at(size_t row, size_t col) const { return rows.at(row).at(col); }
};

} // namespace dbdesc
