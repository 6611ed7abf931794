#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>

#include "statementnet/io.hpp"
#include "statementnet/segment.hpp"
#include "statementnet/text.hpp"

namespace statementnet {

/// Speech-trigger vocabulary. Surface forms are stored case-folded and
/// matched as whole tokens. quote_trigger lets a quotation mark alone fire;
/// require_both demands a verb and a quote in the same sentence.
struct SpeechLexicon {
    std::set<std::string> surfaces;
    bool quote_trigger = true;
    bool require_both = false;
};

/// Built-in vocabulary: say, ask, tell, speak, add, declare, allege with
/// their inflections.
inline SpeechLexicon default_lexicon() {
    SpeechLexicon lex;
    lex.surfaces = {
        "say",     "says",     "said",      "saying",    "ask",     "asks",
        "asked",   "asking",   "tell",      "tells",     "told",    "telling",
        "speak",   "speaks",   "spoke",     "spoken",    "speaking", "add",
        "adds",    "added",    "adding",    "declare",   "declares", "declared",
        "declaring", "allege", "alleges",   "alleged",   "alleging",
    };
    return lex;
}

/// One surface form per line; `#` starts a comment line. Flags keep their
/// defaults and are set by the caller.
inline SpeechLexicon load_lexicon(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    SpeechLexicon lex;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::string s = trim(chomp_cr(line));
        if (s.empty() || s[0] == '#') continue;
        std::string folded = fold_case(s);
        if (tokenize(folded).size() != 1)
            throw DataError(path.string() + ": line " + std::to_string(line_number) +
                            ": surface form must be a single token: '" + s + "'");
        lex.surfaces.insert(folded);
    }
    if (lex.surfaces.empty()) throw DataError(path.string() + ": lexicon has no surface forms");
    return lex;
}

/// Returns the trigger that selects this sentence, or nullopt. Under the
/// default disjunctive rule the first token that is a lexicon form or (when
/// enabled) a quotation mark wins; under require_both the sentence needs
/// both kinds and the first verb is reported.
inline std::optional<std::string> detect_statement(const Sentence& sentence,
                                                   const SpeechLexicon& lexicon) {
    std::optional<std::string> first_verb;
    std::optional<std::string> first_quote;
    std::optional<std::string> first_any;
    for (const Token& t : sentence.tokens) {
        std::string folded = fold_case(t.text);
        if (lexicon.surfaces.count(folded)) {
            if (!first_verb) first_verb = folded;
            if (!first_any) first_any = folded;
        } else if (lexicon.quote_trigger) {
            auto d = decode_utf8(t.text, 0);
            if (d.len == t.text.size() && is_quote_cp(d.cp)) {
                if (!first_quote) first_quote = t.text;
                if (!first_any) first_any = t.text;
            }
        }
        if (!lexicon.require_both && first_any) return first_any;
        if (lexicon.require_both && first_verb && (first_quote || !lexicon.quote_trigger))
            return first_verb;
    }
    if (lexicon.require_both) {
        if (first_verb && (first_quote || !lexicon.quote_trigger)) return first_verb;
        return std::nullopt;
    }
    return first_any;
}

}  // namespace statementnet
