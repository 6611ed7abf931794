#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "statementnet/errors.hpp"

namespace statementnet {

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline bool is_ascii_alnum(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

inline char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? char(c - 'A' + 'a') : c; }

/// ASCII case fold; bytes outside ASCII pass through unchanged.
inline std::string fold_case(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(ascii_lower(c));
    return out;
}

/// Decodes one UTF-8 code point at byte offset i. Malformed bytes decode as
/// single-byte code points so scanning always advances.
inline char32_t decode_utf8(std::string_view s, std::size_t i, std::size_t& len) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
        len = 1;
        return c;
    }
    int extra = 0;
    char32_t cp = 0;
    if ((c & 0xE0) == 0xC0) {
        extra = 1;
        cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
        extra = 2;
        cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
        extra = 3;
        cp = c & 0x07;
    } else {
        len = 1;
        return c;
    }
    if (i + std::size_t(extra) >= s.size()) {
        len = 1;
        return c;
    }
    for (int k = 1; k <= extra; ++k) {
        unsigned char cc = static_cast<unsigned char>(s[i + std::size_t(k)]);
        if ((cc & 0xC0) != 0x80) {
            len = 1;
            return c;
        }
        cp = (cp << 6) | (cc & 0x3F);
    }
    len = std::size_t(extra) + 1;
    return cp;
}

struct DecodedCp {
    char32_t cp = 0;
    std::size_t len = 0;
};

inline DecodedCp decode_utf8(std::string_view s, std::size_t i) {
    DecodedCp d;
    d.cp = decode_utf8(s, i, d.len);
    return d;
}

inline constexpr char32_t kLeftSingleQuote = 0x2018;   // ‘
inline constexpr char32_t kRightSingleQuote = 0x2019;  // ’
inline constexpr char32_t kLeftDoubleQuote = 0x201C;   // “
inline constexpr char32_t kRightDoubleQuote = 0x201D;  // ”
inline constexpr char32_t kEnDash = 0x2013;
inline constexpr char32_t kEmDash = 0x2014;
inline constexpr char32_t kEllipsis = 0x2026;

inline bool is_single_quote_cp(char32_t cp) {
    return cp == '\'' || cp == kLeftSingleQuote || cp == kRightSingleQuote;
}

inline bool is_double_quote_cp(char32_t cp) {
    return cp == '"' || cp == kLeftDoubleQuote || cp == kRightDoubleQuote;
}

/// Straight double/single quotes plus the typographic curly variants.
inline bool is_quote_cp(char32_t cp) { return is_single_quote_cp(cp) || is_double_quote_cp(cp); }

inline bool is_punct_cp(char32_t cp) {
    if (cp < 0x80) {
        char c = char(cp);
        return !is_ascii_space(c) && !is_ascii_alnum(c);
    }
    switch (cp) {
        case kLeftSingleQuote:
        case kRightSingleQuote:
        case kLeftDoubleQuote:
        case kRightDoubleQuote:
        case kEnDash:
        case kEmDash:
        case kEllipsis:
        case 0x00AB:  // «
        case 0x00BB:  // »
            return true;
        default:
            return false;
    }
}

/// Word constituents: ASCII alphanumerics and any non-ASCII code point that
/// is not recognized punctuation (keeps accented names whole).
inline bool is_word_cp(char32_t cp) {
    if (cp < 0x80) return is_ascii_alnum(char(cp));
    return !is_punct_cp(cp);
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_ascii_space(s[b])) ++b;
    while (e > b && is_ascii_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

/// Trims and collapses internal whitespace runs to single spaces.
inline std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_ws = true;  // swallow leading whitespace
    for (char c : s) {
        if (is_ascii_space(c)) {
            in_ws = true;
        } else {
            if (in_ws && !out.empty()) out.push_back(' ');
            in_ws = false;
            out.push_back(c);
        }
    }
    return out;
}

/// Normalizes a surface string into a canonical name: trims, collapses
/// whitespace, strips leading/trailing punctuation. Case is preserved —
/// canonical names are case-sensitive identities.
inline std::string canonicalize(std::string_view surface) {
    // locate first and last code points that are neither space nor punctuation
    std::size_t begin = surface.size(), end = 0;
    std::size_t i = 0;
    while (i < surface.size()) {
        std::size_t len = 0;
        char32_t cp = decode_utf8(surface, i, len);
        bool strip = is_punct_cp(cp) || (cp < 0x80 && is_ascii_space(char(cp)));
        if (!strip) {
            if (begin == surface.size()) begin = i;
            end = i + len;
        }
        i += len;
    }
    if (begin >= end) throw DataError("canonicalize: name is empty after normalization");
    return collapse_whitespace(surface.substr(begin, end - begin));
}

}  // namespace statementnet
