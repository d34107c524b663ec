#include "corpuskit/text.hpp"

#include <algorithm>
#include <iterator>

namespace corpuskit::text {

namespace {

#include "unicode_tables.inc"

template <std::size_t N>
bool in_ranges(const char32_t (&ranges)[N][2], char32_t cp) {
    auto it = std::upper_bound(std::begin(ranges), std::end(ranges), cp,
                               [](char32_t v, const char32_t (&r)[2]) { return v < r[0]; });
    if (it == std::begin(ranges)) return false;
    --it;
    return cp >= (*it)[0] && cp <= (*it)[1];
}

}  // namespace

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    const std::size_t n = s.size();
    while (i < n) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            ++i;
            continue;
        }
        int len;
        char32_t cp;
        if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + len > n) return false;
        for (int k = 1; k < len; ++k) {
            const unsigned char cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        if (len == 2 && cp < 0x80) return false;
        if (len == 3 && cp < 0x800) return false;
        if (len == 4 && cp < 0x10000) return false;
        if (cp >= 0xD800 && cp <= 0xDFFF) return false;
        if (cp > 0x10FFFF) return false;
        i += len;
    }
    return true;
}

char32_t decode_at(std::string_view s, std::size_t& pos) {
    const unsigned char c = static_cast<unsigned char>(s[pos]);
    if (c < 0x80) {
        ++pos;
        return c;
    }
    int len;
    char32_t cp;
    if ((c & 0xE0) == 0xC0) {
        len = 2;
        cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
        len = 3;
        cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
        len = 4;
        cp = c & 0x07;
    } else {
        ++pos;
        return kReplacement;
    }
    if (pos + len > s.size()) {
        ++pos;
        return kReplacement;
    }
    for (int k = 1; k < len; ++k) {
        const unsigned char cc = static_cast<unsigned char>(s[pos + k]);
        if ((cc & 0xC0) != 0x80) {
            ++pos;
            return kReplacement;
        }
        cp = (cp << 6) | (cc & 0x3F);
    }
    pos += len;
    return cp;
}

void append_utf8(std::string& out, char32_t cp) {
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

std::size_t codepoint_count(std::string_view s) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < s.size();) {
        decode_at(s, i);
        ++count;
    }
    return count;
}

bool is_letter(char32_t cp) { return in_ranges(kLetterRanges, cp); }
bool is_punct(char32_t cp) { return in_ranges(kPunctRanges, cp); }
bool is_space(char32_t cp) { return in_ranges(kSpaceRanges, cp); }

char32_t to_lower(char32_t cp) {
    auto it = std::lower_bound(std::begin(kLowerPairs), std::end(kLowerPairs), cp,
                               [](const char32_t (&p)[2], char32_t v) { return p[0] < v; });
    if (it != std::end(kLowerPairs) && (*it)[0] == cp) return (*it)[1];
    return cp;
}

std::string lowercase(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        append_utf8(out, to_lower(decode_at(s, i)));
    }
    return out;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    std::size_t word_start = 0;
    bool in_word = false;
    while (i < s.size()) {
        const std::size_t at = i;
        const char32_t cp = decode_at(s, i);
        if (is_space(cp)) {
            if (in_word) {
                words.push_back(s.substr(word_start, at - word_start));
                in_word = false;
            }
        } else if (!in_word) {
            word_start = at;
            in_word = true;
        }
    }
    if (in_word) words.push_back(s.substr(word_start));
    return words;
}

std::string_view strip_edge_punct(std::string_view word) {
    std::size_t begin = 0;
    while (begin < word.size()) {
        std::size_t next = begin;
        if (!is_punct(decode_at(word, next))) break;
        begin = next;
    }
    // end of the last non-punctuation code point
    std::size_t end = begin;
    std::size_t i = begin;
    while (i < word.size()) {
        if (!is_punct(decode_at(word, i))) end = i;
    }
    return word.substr(begin, end - begin);
}

char32_t first_codepoint(std::string_view s) {
    if (s.empty()) return 0;
    std::size_t pos = 0;
    return decode_at(s, pos);
}

char32_t last_codepoint(std::string_view s) {
    if (s.empty()) return 0;
    char32_t cp = 0;
    for (std::size_t i = 0; i < s.size();) cp = decode_at(s, i);
    return cp;
}

}  // namespace corpuskit::text
