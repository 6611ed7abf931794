#pragma once

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "statementnet/text.hpp"

namespace statementnet {

/// One token plus its byte span [begin, end) in the sentence text.
struct Token {
    std::string text;
    std::size_t begin = 0;
    std::size_t end = 0;

    bool operator==(const Token&) const = default;
};

struct Sentence {
    std::size_t index = 0;
    std::string text;
    std::vector<Token> tokens;
};

namespace detail {

/// Dot-terminated words that do not end a sentence. Case-sensitive.
inline const std::set<std::string>& abbreviations() {
    static const std::set<std::string> abbr = {
        "Mr",   "Mrs",  "Ms",   "Dr",   "Prof", "Md",  "St",  "Jr",  "Sr",
        "Gen",  "Col",  "Sgt",  "Lt",   "Capt", "Rev", "Hon", "Gov", "Sen",
        "Rep",  "Pres", "Supt", "Insp", "Adv",  "Eng", "Mx",  "vs",  "etc",
        "Jan",  "Feb",  "Mar",  "Apr",  "Jun",  "Jul", "Aug", "Sep", "Sept",
        "Oct",  "Nov",  "Dec",  "Mon",  "Tue",  "Wed", "Thu", "Fri", "Sat",
        "Sun",  "no",   "No",   "pp",   "p",    "cf",  "al",  "Ltd", "Inc",
        "Co",   "Corp", "Ave",  "Blvd", "Rd",   "Mt",  "Ft",
    };
    return abbr;
}

inline bool is_single_alpha(std::string_view word) {
    return word.size() == 1 &&
           ((word[0] >= 'a' && word[0] <= 'z') || (word[0] >= 'A' && word[0] <= 'Z'));
}

/// The word immediately before byte position `pos`, scanning back over
/// word characters only.
inline std::string_view word_before(std::string_view text, std::size_t pos) {
    std::size_t end = pos;
    std::size_t begin = end;
    while (begin > 0) {
        unsigned char c = static_cast<unsigned char>(text[begin - 1]);
        if (is_ascii_alnum(c) || c == '.' || c >= 0x80)
            --begin;
        else
            break;
    }
    return text.substr(begin, end - begin);
}

/// True when the '.' at `pos` should not terminate a sentence.
inline bool dot_is_guarded(std::string_view text, std::size_t pos) {
    std::string_view word = word_before(text, pos);
    if (word.empty()) return false;
    // Decimal or dotted-abbreviation context: a dot inside the preceding run
    // ("U.S", "3") followed by a digit after, or a digit right before.
    if (word.find('.') != std::string_view::npos) return true;
    if (pos + 1 < text.size() && is_ascii_digit(text[pos + 1]) &&
        is_ascii_digit(word.back()))
        return true;
    if (is_single_alpha(word)) return true;
    std::string w(word);
    if (abbreviations().count(w)) return true;
    return false;
}

inline bool is_closing_trailer_cp(char32_t cp) {
    return is_quote_cp(cp) || cp == U')' || cp == U']' || cp == U'}';
}

}  // namespace detail

/// Splits text into sentences. Terminators are '.', '!' and '?' with guards
/// for abbreviations, initials and decimals; trailing closers (quotes,
/// brackets) are absorbed into the sentence; a blank line always breaks.
/// Concatenating the sentence texts reproduces the input modulo whitespace.
inline std::vector<std::string> split_sentences(const std::string& text) {
    std::vector<std::string> sentences;
    std::string current;

    auto flush = [&]() {
        std::string t = trim(current);
        if (!t.empty()) sentences.push_back(collapse_whitespace(t));
        current.clear();
    };

    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        // Blank line (two or more newlines with only spaces between) is a
        // hard paragraph break.
        if (text[i] == '\n') {
            std::size_t j = i + 1;
            int newlines = 1;
            while (j < n && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r' || text[j] == '\n')) {
                if (text[j] == '\n') ++newlines;
                ++j;
            }
            if (newlines >= 2) {
                flush();
                i = j;
                continue;
            }
            current += ' ';
            ++i;
            continue;
        }

        char c = text[i];
        if (c == '.' || c == '!' || c == '?') {
            if (c == '.' && detail::dot_is_guarded(text, i)) {
                current += c;
                ++i;
                continue;
            }
            // Absorb the full terminator run ("...", "?!") and any closing
            // quotes or brackets right after it.
            while (i < n && (text[i] == '.' || text[i] == '!' || text[i] == '?')) {
                current += text[i];
                ++i;
            }
            while (i < n) {
                auto [cp, len] = decode_utf8(text, i);
                if (!detail::is_closing_trailer_cp(cp)) break;
                current.append(text, i, len);
                i += len;
            }
            flush();
            continue;
        }

        auto [cp, len] = decode_utf8(text, i);
        (void)cp;
        current.append(text, i, len);
        i += len;
    }
    flush();
    return sentences;
}

/// Splits a sentence into tokens with byte spans. Words keep internal
/// apostrophes, hyphens and dots; every other punctuation code point is its
/// own token; whitespace separates.
inline std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    const std::size_t n = text.size();

    auto word_cp_at = [&](std::size_t pos) -> bool {
        if (pos >= n) return false;
        auto [cp, len] = decode_utf8(text, pos);
        (void)len;
        return is_word_cp(cp);
    };

    while (i < n) {
        auto [cp, len] = decode_utf8(text, i);
        if (cp < 0x80 && is_ascii_space(static_cast<char>(cp))) {
            i += len;
            continue;
        }
        if (is_word_cp(cp)) {
            std::size_t begin = i;
            while (i < n) {
                auto [wcp, wlen] = decode_utf8(text, i);
                if (is_word_cp(wcp)) {
                    i += wlen;
                    continue;
                }
                // Apostrophes, hyphens and dots stay in-word between word
                // characters ("O'Brien", "co-chair", "U.S."); a trailing
                // apostrophe after 's' is possessive and stays attached
                // ("leaders'"), ending the token.
                bool apostrophe = (wcp == U'\'' || wcp == kRightSingleQuote);
                bool joiner = apostrophe || wcp == U'-' || wcp == U'.';
                unsigned char prev = i > begin ? static_cast<unsigned char>(text[i - 1]) : 0;
                bool prev_word = is_ascii_alnum(static_cast<char>(prev)) || prev >= 0x80;
                if (joiner && prev_word && word_cp_at(i + wlen)) {
                    i += wlen;
                    continue;
                }
                if (apostrophe && (prev == 's' || prev == 'S') && !word_cp_at(i + wlen)) {
                    i += wlen;
                }
                break;
            }
            tokens.push_back({text.substr(begin, i - begin), begin, i});
            continue;
        }
        tokens.push_back({text.substr(i, len), i, i + len});
        i += len;
    }
    return tokens;
}

/// Segments article text into indexed, tokenized sentences.
inline std::vector<Sentence> segment_sentences(const std::string& text) {
    std::vector<Sentence> out;
    std::vector<std::string> parts = split_sentences(text);
    out.reserve(parts.size());
    for (std::size_t k = 0; k < parts.size(); ++k) {
        Sentence s;
        s.index = k;
        s.text = std::move(parts[k]);
        s.tokens = tokenize(s.text);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace statementnet
