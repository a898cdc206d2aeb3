#include "dbdesc/introspect.hpp"

#include "dbdesc/text.hpp"

#include <cctype>

namespace dbdesc {

namespace {

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_constraint_keyword(const std::string& word) {
    std::string upper = text::to_upper(word);
    return upper == "PRIMARY" || upper == "FOREIGN" || upper == "UNIQUE" || upper == "CHECK" ||
           upper == "CONSTRAINT";
}

} // namespace

DdlComments parse_create_table_comments(const std::string& create_sql) {
    DdlComments out;

    bool body_started = false;
    bool body_ended = false;
    int depth = 0;
    bool expecting_head = true;

    struct Item {
        std::string head;
        bool is_constraint = false;
    };
    std::optional<Item> current;
    std::optional<Item> previous;

    auto append_comment = [](std::optional<std::string>& slot, const std::string& comment) {
        if (!slot) {
            slot = comment;
        } else {
            *slot += " " + comment;
        }
    };

    auto attach = [&](const std::string& comment) {
        if (comment.empty()) return;
        if (!body_started || body_ended) {
            append_comment(out.table_comment, comment);
            return;
        }
        const Item* target = current ? &*current : (previous ? &*previous : nullptr);
        if (!target) {
            // comment on the CREATE line right after the opening paren
            append_comment(out.table_comment, comment);
            return;
        }
        if (target->is_constraint) return;
        auto it = out.column_comments.find(target->head);
        if (it == out.column_comments.end()) {
            out.column_comments.emplace(target->head, comment);
        } else {
            it->second += " " + comment;
        }
    };

    size_t i = 0;
    const size_t n = create_sql.size();
    while (i < n) {
        char c = create_sql[i];

        // line comment
        if (c == '-' && i + 1 < n && create_sql[i + 1] == '-') {
            size_t eol = create_sql.find('\n', i);
            std::string body = create_sql.substr(i + 2, eol == std::string::npos ? std::string::npos
                                                                                 : eol - i - 2);
            attach(text::trim(body));
            if (eol == std::string::npos) break;
            i = eol + 1;
            continue;
        }
        // block comment (skipped, not a comment source)
        if (c == '/' && i + 1 < n && create_sql[i + 1] == '*') {
            size_t end = create_sql.find("*/", i + 2);
            i = end == std::string::npos ? n : end + 2;
            continue;
        }
        // string literal
        if (c == '\'') {
            ++i;
            while (i < n) {
                if (create_sql[i] == '\'') {
                    if (i + 1 < n && create_sql[i + 1] == '\'') { i += 2; continue; }
                    ++i;
                    break;
                }
                ++i;
            }
            continue;
        }
        // quoted identifiers: "x", `x`, [x]
        if (c == '"' || c == '`' || c == '[') {
            char close = c == '[' ? ']' : c;
            size_t start = ++i;
            std::string name;
            while (i < n) {
                if (create_sql[i] == close) {
                    if (close != ']' && i + 1 < n && create_sql[i + 1] == close) {
                        name += create_sql.substr(start, i - start + 1);
                        i += 2;
                        start = i;
                        continue;
                    }
                    name += create_sql.substr(start, i - start);
                    ++i;
                    break;
                }
                ++i;
            }
            if (body_started && !body_ended && depth == 1 && expecting_head) {
                current = Item{name, false};
                expecting_head = false;
            }
            continue;
        }
        if (c == '(') {
            if (!body_started && depth == 0) {
                body_started = true;
                expecting_head = true;
            }
            ++depth;
            ++i;
            continue;
        }
        if (c == ')') {
            --depth;
            if (body_started && depth == 0 && !body_ended) {
                body_ended = true;
                if (current) previous = current;
                current.reset();
            }
            ++i;
            continue;
        }
        if (c == ',' && body_started && !body_ended && depth == 1) {
            if (current) previous = current;
            current.reset();
            expecting_head = true;
            ++i;
            continue;
        }
        if (is_ident_char(c)) {
            size_t start = i;
            while (i < n && is_ident_char(create_sql[i])) ++i;
            std::string word = create_sql.substr(start, i - start);
            if (body_started && !body_ended && depth == 1 && expecting_head) {
                current = Item{word, is_constraint_keyword(word)};
                expecting_head = false;
            }
            continue;
        }
        ++i;
    }
    return out;
}

} // namespace dbdesc
