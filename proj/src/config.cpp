#include "folmet/config.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace folmet::cfg {

const Value* Record::find(const std::string& key) const {
    for (const auto& [k, v] : items)
        if (k == key) return &v;
    return nullptr;
}

void Record::set(const std::string& key, Value v) {
    for (auto& [k, old] : items)
        if (k == key) { old = std::move(v); return; }
    items.emplace_back(key, std::move(v));
}

double Value::num() const {
    if (!is_number()) throw input_error("config value is not a number");
    return std::get<double>(v);
}
const std::string& Value::str() const {
    if (!is_string()) throw input_error("config value is not a string");
    return std::get<std::string>(v);
}
const ValueList& Value::list() const {
    if (!is_list()) throw input_error("config value is not a list");
    return std::get<ValueList>(v);
}
const Record& Value::record() const {
    if (!is_record()) throw input_error("config value is not a section");
    return std::get<Record>(v);
}

bool operator==(const Record& a, const Record& b) {
    if (a.items.size() != b.items.size()) return false;
    for (size_t i = 0; i < a.items.size(); ++i)
        if (a.items[i].first != b.items[i].first || !(a.items[i].second == b.items[i].second))
            return false;
    return true;
}

bool operator==(const Value& a, const Value& b) {
    if (a.v.index() != b.v.index()) return false;
    if (a.is_number()) return a.num() == b.num();
    if (a.is_string()) return a.str() == b.str();
    if (a.is_record()) return a.record() == b.record();
    const auto& x = a.list();
    const auto& y = b.list();
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); ++i)
        if (!(x[i] == y[i])) return false;
    return true;
}

namespace {

class Lexer {
public:
    Lexer(const std::string& text, std::string origin)
        : s_(text), origin_(std::move(origin)) {}

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << origin_ << ":" << line_ << ":" << col_ << ": " << msg;
        throw input_error(os.str());
    }

    void skip_ws() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_ws();
        return pos_ >= s_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        advance();
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            advance();
            return true;
        }
        return false;
    }

    std::string ident() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                s_[pos_] == '.' || s_[pos_] == '-' || s_[pos_] == '+'))
            advance();
        if (start == pos_) fail("expected identifier");
        return s_.substr(start, pos_ - start);
    }

    std::string quoted() {
        expect('"');
        std::string out;
        while (pos_ < s_.size() && s_[pos_] != '"') {
            if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) advance();
            out += s_[pos_];
            advance();
        }
        if (pos_ >= s_.size()) fail("unterminated string");
        advance();
        return out;
    }

private:
    void advance() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& s_;
    std::string origin_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

Value parse_value(Lexer& lx);

Record parse_record_body(Lexer& lx, bool top_level) {
    Record rec;
    for (;;) {
        if (top_level ? lx.eof() : lx.peek() == '}') break;
        std::string key = lx.ident();
        if (lx.accept('=')) {
            rec.items.emplace_back(key, parse_value(lx));
        } else if (lx.peek() == '{') {
            lx.expect('{');
            Record sub = parse_record_body(lx, false);
            lx.expect('}');
            rec.items.emplace_back(key, Value(std::move(sub)));
        } else {
            lx.fail("expected '=' or '{' after key '" + key + "'");
        }
        while (lx.accept(';') || lx.accept(',')) {}
    }
    return rec;
}

Value parse_value(Lexer& lx) {
    char c = lx.peek();
    if (c == '[') {
        lx.expect('[');
        ValueList list;
        while (lx.peek() != ']') {
            list.push_back(parse_value(lx));
            while (lx.accept(',') || lx.accept(';')) {}
        }
        lx.expect(']');
        return Value(std::move(list));
    }
    if (c == '{') {
        lx.expect('{');
        Record rec = parse_record_body(lx, false);
        lx.expect('}');
        return Value(std::move(rec));
    }
    if (c == '"') return Value(lx.quoted());
    std::string word = lx.ident();
    try {
        size_t used = 0;
        double d = std::stod(word, &used);
        if (used == word.size()) return Value(d);
    } catch (...) {
    }
    return Value(word);
}

void write_value(std::ostream& os, const Value& v, int indent);

void write_record(std::ostream& os, const Record& r, int indent) {
    std::string pad(indent * 2, ' ');
    for (const auto& [k, v] : r.items) {
        if (v.is_record()) {
            os << pad << k << " {\n";
            write_record(os, v.record(), indent + 1);
            os << pad << "}\n";
        } else {
            os << pad << k << " = ";
            write_value(os, v, indent);
            os << ";\n";
        }
    }
}

bool needs_quotes(const std::string& s) {
    if (s.empty()) return true;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
              c == '-' || c == '+'))
            return true;
    // avoid bare words that would re-parse as numbers
    try {
        size_t used = 0;
        (void)std::stod(s, &used);
        if (used == s.size()) return true;
    } catch (...) {
    }
    return false;
}

void write_value(std::ostream& os, const Value& v, int indent) {
    if (v.is_number()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.num());
        os << buf;
    } else if (v.is_string()) {
        if (needs_quotes(v.str()))
            os << '"' << v.str() << '"';
        else
            os << v.str();
    } else if (v.is_list()) {
        os << "[";
        const auto& list = v.list();
        for (size_t i = 0; i < list.size(); ++i) {
            if (i) os << ", ";
            write_value(os, list[i], indent);
        }
        os << "]";
    } else {
        os << "{ ";
        const auto& rec = v.record();
        for (size_t i = 0; i < rec.items.size(); ++i) {
            if (i) os << ", ";
            os << rec.items[i].first << " = ";
            write_value(os, rec.items[i].second, indent);
        }
        os << " }";
    }
}

} // namespace

Record parse(const std::string& text, const std::string& origin) {
    Lexer lx(text, origin);
    Record rec = parse_record_body(lx, true);
    if (!lx.eof()) lx.fail("trailing input");
    return rec;
}

std::string serialize(const Record& r) {
    std::ostringstream os;
    write_record(os, r, 0);
    return os.str();
}

Binder::~Binder() noexcept(false) {
    // finish() is the normal path; the destructor only guards forgotten calls
    // during exception unwinding, where a second throw would terminate.
    if (!finished_ && !std::uncaught_exceptions()) finish();
}

bool Binder::has(const std::string& key) { return rec_.has(key); }

const Value& Binder::get(const std::string& key) {
    const Value* v = rec_.find(key);
    if (!v) throw input_error(ctx_ + ": missing required key '" + key + "'");
    used_.insert(key);
    return *v;
}

const Value* Binder::get_opt(const std::string& key) {
    const Value* v = rec_.find(key);
    if (v) used_.insert(key);
    return v;
}

double Binder::number(const std::string& key) { return get(key).num(); }

double Binder::number_or(const std::string& key, double fallback) {
    const Value* v = get_opt(key);
    return v ? v->num() : fallback;
}

std::string Binder::str(const std::string& key) { return get(key).str(); }

std::string Binder::str_or(const std::string& key, const std::string& fallback) {
    const Value* v = get_opt(key);
    return v ? v->str() : fallback;
}

std::vector<double> Binder::numbers(const std::string& key) {
    std::vector<double> out;
    for (const Value& v : get(key).list()) out.push_back(v.num());
    return out;
}

const Record& Binder::section(const std::string& key) { return get(key).record(); }

void Binder::finish() {
    finished_ = true;
    std::vector<std::string> unknown;
    for (const auto& [k, v] : rec_.items)
        if (!used_.count(k)) unknown.push_back(k);
    if (!unknown.empty()) {
        std::string msg = ctx_ + ": unknown key(s):";
        for (const auto& k : unknown) msg += " '" + k + "'";
        throw input_error(msg);
    }
}

} // namespace folmet::cfg
