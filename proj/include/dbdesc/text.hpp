#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dbdesc::text {

// Decodes UTF-8 into codepoints. Invalid bytes decode as U+FFFD, one
// replacement per bad byte, so counting never throws on dirty data.
std::vector<uint32_t> decode_utf8(const std::string& s);

std::string encode_utf8(const std::vector<uint32_t>& cps);

bool is_cjk(uint32_t cp);

// Word count used for description length limits: whitespace-delimited
// tokens, except CJK codepoints which count as half a word each (rounded
// up). "hello world" -> 2, a 4-ideogram string -> 2.
size_t count_words(const std::string& s);

// Cuts text down to at most `max_words` (per count_words) at a word
// boundary. Kept tokens are re-joined with single spaces.
std::string truncate_words(const std::string& s, size_t max_words);

// Collapses all runs of whitespace (including newlines) to single spaces
// and trims the ends. Model replies are folded with this before they are
// stored as descriptions.
std::string collapse_whitespace(const std::string& s);

std::string trim(const std::string& s);
std::string to_lower(const std::string& s);
std::string to_upper(const std::string& s);

bool iequals(const std::string& a, const std::string& b);

std::vector<std::string> split(const std::string& s, char sep);

// Truncates to `max_codepoints`, appending a single ellipsis codepoint
// when anything was cut. Used for sample rendering.
std::string clip_codepoints(const std::string& s, size_t max_codepoints);

// Shortest round-trip decimal rendering of a double (to_chars).
std::string render_double(double v);

} // namespace dbdesc::text
