#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "folmet/types.hpp"

namespace folmet::cfg {

// Structured config syntax: nested sections and key = value pairs, e.g.
//   polydisc { center = [0,0, 0,0]; radius = [1.0, 1.0]; }
// Values: numbers, quoted strings, bare words, [lists], { records }.
// Parsing is strict: consumers must account for every key they receive.

struct Value;
using ValueList = std::vector<Value>;

struct Record {
    std::vector<std::pair<std::string, Value>> items;

    const Value* find(const std::string& key) const;
    bool has(const std::string& key) const { return find(key) != nullptr; }
    void set(const std::string& key, Value v);
};

struct Value {
    std::variant<double, std::string, ValueList, Record> v;

    Value() : v(0.0) {}
    Value(double d) : v(d) {}
    Value(std::string s) : v(std::move(s)) {}
    Value(ValueList l) : v(std::move(l)) {}
    Value(Record r) : v(std::move(r)) {}

    bool is_number() const { return std::holds_alternative<double>(v); }
    bool is_string() const { return std::holds_alternative<std::string>(v); }
    bool is_list() const { return std::holds_alternative<ValueList>(v); }
    bool is_record() const { return std::holds_alternative<Record>(v); }

    double num() const;
    const std::string& str() const;
    const ValueList& list() const;
    const Record& record() const;
};

bool operator==(const Value& a, const Value& b);
bool operator==(const Record& a, const Record& b);

/// Parse a whole config document (a record without outer braces).
/// Throws input_error with line/column info on malformed input.
Record parse(const std::string& text, const std::string& origin = "<config>");

/// Canonical serialization; parse(serialize(r)) == r.
std::string serialize(const Record& r);

/// Strict accessor: every key must be consumed exactly once; leftover keys are
/// rejected by finish() with the offending names.
class Binder {
public:
    Binder(const Record& r, std::string context) : rec_(r), ctx_(std::move(context)) {}
    ~Binder() noexcept(false);

    bool has(const std::string& key);
    const Value& get(const std::string& key);
    const Value* get_opt(const std::string& key);

    double number(const std::string& key);
    double number_or(const std::string& key, double fallback);
    std::string str(const std::string& key);
    std::string str_or(const std::string& key, const std::string& fallback);
    std::vector<double> numbers(const std::string& key);
    const Record& section(const std::string& key);

    /// Call when done; throws if any key was never requested.
    void finish();

private:
    const Record& rec_;
    std::string ctx_;
    std::set<std::string> used_;
    bool finished_ = false;
};

} // namespace folmet::cfg
