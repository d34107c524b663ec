#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace corpuskit::text {

inline constexpr char32_t kReplacement = 0xFFFD;

/// Strict UTF-8 validation: rejects overlong forms, surrogates and
/// code points above U+10FFFF.
bool valid_utf8(std::string_view s);

/// Decodes the code point starting at `pos` and advances `pos` past it.
/// Malformed input consumes one byte and yields U+FFFD.
char32_t decode_at(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

std::size_t codepoint_count(std::string_view s);

// Classification pinned to the generated tables in unicode_tables.inc.
bool is_letter(char32_t cp);
bool is_punct(char32_t cp);
bool is_space(char32_t cp);
char32_t to_lower(char32_t cp);

std::string lowercase(std::string_view s);

/// Splits on runs of Unicode whitespace; views point into `s`.
std::vector<std::string_view> split_whitespace(std::string_view s);

/// Removes leading and trailing punctuation (category P*) code points.
std::string_view strip_edge_punct(std::string_view word);

char32_t first_codepoint(std::string_view s);
char32_t last_codepoint(std::string_view s);

}  // namespace corpuskit::text
