#include "dbdesc/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstring>

namespace dbdesc::text {

std::vector<uint32_t> decode_utf8(const std::string& s) {
    std::vector<uint32_t> out;
    out.reserve(s.size());
    size_t i = 0;
    const auto bad = [&]() { out.push_back(0xFFFD); ++i; };
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            out.push_back(c);
            ++i;
            continue;
        }
        int len = 0;
        uint32_t cp = 0;
        if ((c & 0xE0) == 0xC0) { len = 2; cp = c & 0x1F; }
        else if ((c & 0xF0) == 0xE0) { len = 3; cp = c & 0x0F; }
        else if ((c & 0xF8) == 0xF0) { len = 4; cp = c & 0x07; }
        else { bad(); continue; }
        if (i + len > s.size()) { bad(); continue; }
        bool ok = true;
        for (int k = 1; k < len; ++k) {
            unsigned char cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80) { ok = false; break; }
            cp = (cp << 6) | (cc & 0x3F);
        }
        if (!ok) { bad(); continue; }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string encode_utf8(const std::vector<uint32_t>& cps) {
    std::string out;
    for (uint32_t cp : cps) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

bool is_cjk(uint32_t cp) {
    return (cp >= 0x3040 && cp <= 0x30FF)   // hiragana, katakana
        || (cp >= 0x3400 && cp <= 0x4DBF)   // CJK extension A
        || (cp >= 0x4E00 && cp <= 0x9FFF)   // CJK unified ideographs
        || (cp >= 0xAC00 && cp <= 0xD7AF)   // hangul syllables
        || (cp >= 0xF900 && cp <= 0xFAFF);  // CJK compatibility ideographs
}

namespace {

bool is_space_cp(uint32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\v' || cp == '\f';
}

// Word cost of one whitespace-free token: each maximal non-CJK run counts
// as one word, CJK codepoints count half a word each, rounded up per token.
size_t token_cost(const std::vector<uint32_t>& token) {
    size_t runs = 0;
    size_t cjk = 0;
    bool in_run = false;
    for (uint32_t cp : token) {
        if (is_cjk(cp)) {
            ++cjk;
            in_run = false;
        } else {
            if (!in_run) ++runs;
            in_run = true;
        }
    }
    return runs + (cjk + 1) / 2;
}

std::vector<std::vector<uint32_t>> tokenize(const std::string& s) {
    std::vector<std::vector<uint32_t>> tokens;
    std::vector<uint32_t> cur;
    for (uint32_t cp : decode_utf8(s)) {
        if (is_space_cp(cp)) {
            if (!cur.empty()) tokens.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(cp);
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

} // namespace

size_t count_words(const std::string& s) {
    size_t total = 0;
    for (const auto& token : tokenize(s)) total += token_cost(token);
    return total;
}

std::string truncate_words(const std::string& s, size_t max_words) {
    auto tokens = tokenize(s);
    std::vector<uint32_t> out;
    size_t used = 0;
    for (size_t i = 0; i < tokens.size(); ++i) {
        size_t cost = token_cost(tokens[i]);
        if (used + cost > max_words) {
            // A single oversized CJK token still has to fit the budget:
            // cut codepoints until its cost drops within what remains.
            if (i == 0 && !tokens[i].empty()) {
                std::vector<uint32_t> partial = tokens[i];
                while (!partial.empty() && token_cost(partial) > max_words) partial.pop_back();
                return encode_utf8(partial);
            }
            break;
        }
        if (!out.empty()) out.push_back(' ');
        out.insert(out.end(), tokens[i].begin(), tokens[i].end());
        used += cost;
    }
    return encode_utf8(out);
}

std::string collapse_whitespace(const std::string& s) {
    std::string out;
    bool pending_space = false;
    bool seen_char = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = seen_char;
        } else {
            if (pending_space) out.push_back(' ');
            out.push_back(c);
            pending_space = false;
            seen_char = true;
        }
    }
    return out;
}

std::string trim(const std::string& s) {
    size_t begin = 0;
    size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

std::string to_lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string to_upper(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

bool iequals(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i]))) {
            return false;
        }
    }
    return true;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

std::string clip_codepoints(const std::string& s, size_t max_codepoints) {
    auto cps = decode_utf8(s);
    if (cps.size() <= max_codepoints) return s;
    cps.resize(max_codepoints);
    cps.push_back(0x2026); // …
    return encode_utf8(cps);
}

std::string render_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace dbdesc::text
