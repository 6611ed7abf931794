#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "statementnet/errors.hpp"
#include "statementnet/io.hpp"
#include "statementnet/segment.hpp"
#include "statementnet/text.hpp"

namespace statementnet {

/// Token-index span [begin, end) inside one sentence.
struct TokenSpan {
    std::size_t sentence = 0;
    std::size_t begin = 0;
    std::size_t end = 0;

    bool operator==(const TokenSpan&) const = default;
};

struct EntityMention {
    std::string name;
    TokenSpan span;

    bool operator==(const EntityMention&) const = default;
};

/// Tagger backends produce per-sentence mention lists for one article.
class EntityTagger {
public:
    virtual ~EntityTagger() = default;
    virtual std::vector<std::vector<EntityMention>> tag(
        const std::string& article_id, const std::vector<Sentence>& sentences) const = 0;
};

/// Dictionary tagger. Matching is case-insensitive longest-match over token
/// sequences; the canonical name keeps the dictionary entry's casing.
class Gazetteer : public EntityTagger {
public:
    Gazetteer() = default;

    explicit Gazetteer(const std::vector<std::string>& names) {
        for (const std::string& name : names) add(name);
    }

    void add(const std::string& name) {
        std::string canonical = canonicalize(name);
        std::vector<Token> toks = tokenize(canonical);
        if (toks.empty()) throw DataError("gazetteer entry is empty after normalization");
        Entry e;
        e.canonical = canonical;
        for (const Token& t : toks) e.folded_tokens.push_back(fold_case(t.text));
        auto& bucket = by_first_[e.folded_tokens.front()];
        for (const Entry& existing : bucket)
            if (existing.folded_tokens == e.folded_tokens) return;
        bucket.push_back(std::move(e));
        std::sort(bucket.begin(), bucket.end(), [](const Entry& a, const Entry& b) {
            return a.folded_tokens.size() > b.folded_tokens.size();
        });
        ++size_;
    }

    std::size_t size() const { return size_; }

    std::vector<EntityMention> tag_sentence(const Sentence& sentence) const {
        std::vector<EntityMention> mentions;
        const std::vector<Token>& toks = sentence.tokens;
        std::vector<std::string> folded;
        folded.reserve(toks.size());
        for (const Token& t : toks) folded.push_back(fold_case(t.text));

        std::size_t i = 0;
        while (i < toks.size()) {
            auto bucket = by_first_.find(folded[i]);
            const Entry* hit = nullptr;
            if (bucket != by_first_.end()) {
                for (const Entry& e : bucket->second) {
                    std::size_t len = e.folded_tokens.size();
                    if (i + len > toks.size()) continue;
                    bool match = true;
                    for (std::size_t k = 1; k < len; ++k) {
                        if (folded[i + k] != e.folded_tokens[k]) {
                            match = false;
                            break;
                        }
                    }
                    if (match) {
                        hit = &e;
                        break;
                    }
                }
            }
            if (hit) {
                EntityMention m;
                m.name = hit->canonical;
                m.span = {sentence.index, i, i + hit->folded_tokens.size()};
                mentions.push_back(std::move(m));
                i += hit->folded_tokens.size();
            } else {
                ++i;
            }
        }
        return mentions;
    }

    std::vector<std::vector<EntityMention>> tag(
        const std::string&, const std::vector<Sentence>& sentences) const override {
        std::vector<std::vector<EntityMention>> out;
        out.reserve(sentences.size());
        for (const Sentence& s : sentences) out.push_back(tag_sentence(s));
        return out;
    }

private:
    struct Entry {
        std::string canonical;
        std::vector<std::string> folded_tokens;
    };
    // First folded token -> entries, longest first so the scan can take the
    // first match.
    std::map<std::string, std::vector<Entry>> by_first_;
    std::size_t size_ = 0;
};

/// One name per line, UTF-8. Blank lines are skipped.
inline Gazetteer load_gazetteer(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    Gazetteer g;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::string name = trim(chomp_cr(line));
        if (name.empty()) continue;
        try {
            g.add(name);
        } catch (const DataError&) {
            throw DataError(path.string() + ": line " + std::to_string(line_number) +
                            ": entry is empty after normalization");
        }
    }
    return g;
}

/// Imports per-article token/label sidecar files: `<article_id>.tags` with
/// one `token TAB label` line per token and a blank line between sentences.
/// Labels PER/PERSON mark person tokens; B-/I- prefixes are honored.
class ExternalTags : public EntityTagger {
public:
    explicit ExternalTags(std::filesystem::path directory) : dir_(std::move(directory)) {
        if (!std::filesystem::is_directory(dir_))
            throw DataError("external tags directory not found: " + dir_.string());
    }

    const std::filesystem::path& directory() const { return dir_; }

    std::vector<std::vector<EntityMention>> tag(
        const std::string& article_id, const std::vector<Sentence>& sentences) const override {
        std::filesystem::path path = dir_ / (article_id + ".tags");
        if (!std::filesystem::exists(path))
            throw DataError("missing tag sidecar for article '" + article_id +
                            "': " + path.string());
        std::vector<std::vector<TaggedToken>> file_sentences = parse_file(path);
        if (file_sentences.size() != sentences.size())
            throw DataError(path.string() + ": has " + std::to_string(file_sentences.size()) +
                            " sentences but article '" + article_id + "' segments into " +
                            std::to_string(sentences.size()));
        std::vector<std::vector<EntityMention>> out;
        out.reserve(sentences.size());
        for (std::size_t s = 0; s < sentences.size(); ++s) {
            const std::vector<TaggedToken>& tagged = file_sentences[s];
            const std::vector<Token>& toks = sentences[s].tokens;
            if (tagged.size() != toks.size())
                throw DataError(path.string() + ": sentence " + std::to_string(s) + " has " +
                                std::to_string(tagged.size()) + " tokens but segmentation yields " +
                                std::to_string(toks.size()));
            for (std::size_t t = 0; t < toks.size(); ++t) {
                if (tagged[t].text != toks[t].text)
                    throw DataError(path.string() + ": sentence " + std::to_string(s) + " token " +
                                    std::to_string(t) + " is '" + tagged[t].text +
                                    "' but segmentation yields '" + toks[t].text + "'");
            }
            out.push_back(mentions_from_labels(sentences[s], tagged));
        }
        return out;
    }

private:
    struct TaggedToken {
        std::string text;
        std::string label;
    };

    enum class LabelKind { Outside, Begin, Inside, Plain };

    static LabelKind classify(const std::string& label) {
        std::string folded = fold_case(label);
        if (folded == "per" || folded == "person") return LabelKind::Plain;
        if (folded.rfind("b-", 0) == 0 && is_person_tail(folded.substr(2))) return LabelKind::Begin;
        if (folded.rfind("i-", 0) == 0 && is_person_tail(folded.substr(2))) return LabelKind::Inside;
        return LabelKind::Outside;
    }

    static bool is_person_tail(const std::string& tail) { return tail == "per" || tail == "person"; }

    static std::vector<std::vector<TaggedToken>> parse_file(const std::filesystem::path& path) {
        std::ifstream in = open_input(path);
        std::vector<std::vector<TaggedToken>> sentences;
        std::vector<TaggedToken> current;
        std::string line;
        std::size_t line_number = 0;
        while (std::getline(in, line)) {
            ++line_number;
            std::string_view sv = chomp_cr(line);
            if (sv.empty()) {
                if (!current.empty()) sentences.push_back(std::move(current));
                current.clear();
                continue;
            }
            std::vector<std::string> fields = split_tabs(sv);
            if (fields.size() != 2 || fields[0].empty())
                throw DataError(path.string() + ": line " + std::to_string(line_number) +
                                ": expected 'token TAB label'");
            current.push_back({fields[0], fields[1]});
        }
        if (!current.empty()) sentences.push_back(std::move(current));
        return sentences;
    }

    static std::vector<EntityMention> mentions_from_labels(const Sentence& sentence,
                                                           const std::vector<TaggedToken>& tagged) {
        std::vector<EntityMention> mentions;
        std::size_t i = 0;
        while (i < tagged.size()) {
            LabelKind kind = classify(tagged[i].label);
            if (kind == LabelKind::Outside) {
                ++i;
                continue;
            }
            std::size_t begin = i;
            ++i;
            if (kind == LabelKind::Plain) {
                while (i < tagged.size() && classify(tagged[i].label) == LabelKind::Plain) ++i;
            } else {
                while (i < tagged.size() && classify(tagged[i].label) == LabelKind::Inside) ++i;
            }
            std::string joined;
            for (std::size_t k = begin; k < i; ++k) {
                if (!joined.empty()) joined += ' ';
                joined += tagged[k].text;
            }
            EntityMention m;
            m.name = canonicalize(joined);
            m.span = {sentence.index, begin, i};
            mentions.push_back(std::move(m));
        }
        return mentions;
    }

    std::filesystem::path dir_;
};

struct MergeRule {
    std::string left;
    std::string right;
    std::string merged;
};

/// `left TAB right` or `left TAB right TAB merged`, one rule per line; the
/// merged name defaults to `left right`.
inline std::vector<MergeRule> load_merge_rules(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::vector<MergeRule> rules;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::string_view sv = chomp_cr(line);
        if (trim(sv).empty()) continue;
        std::vector<std::string> fields = split_tabs(sv);
        if (fields.size() < 2 || fields.size() > 3)
            throw DataError(path.string() + ": line " + std::to_string(line_number) +
                            ": expected 'left TAB right [TAB merged]'");
        MergeRule r;
        try {
            r.left = canonicalize(fields[0]);
            r.right = canonicalize(fields[1]);
            r.merged = fields.size() == 3 ? canonicalize(fields[2]) : r.left + " " + r.right;
        } catch (const DataError&) {
            throw DataError(path.string() + ": line " + std::to_string(line_number) +
                            ": rule field is empty after normalization");
        }
        rules.push_back(std::move(r));
    }
    return rules;
}

/// Replaces adjacent mention pairs (right begins where left ends, same
/// sentence) that match a rule with one merged mention. Left-to-right single
/// pass; a merged mention may keep merging with what follows, which makes
/// the operation idempotent.
inline std::vector<EntityMention> apply_merge_rules(const std::vector<EntityMention>& mentions,
                                                    const std::vector<MergeRule>& rules) {
    if (rules.empty() || mentions.size() < 2) return mentions;
    std::vector<EntityMention> out;
    out.reserve(mentions.size());
    std::size_t i = 0;
    while (i < mentions.size()) {
        EntityMention current = mentions[i];
        ++i;
        bool merged = true;
        while (merged && i < mentions.size()) {
            merged = false;
            const EntityMention& next = mentions[i];
            if (next.span.sentence != current.span.sentence || next.span.begin != current.span.end)
                break;
            for (const MergeRule& r : rules) {
                if (r.left == current.name && r.right == next.name) {
                    current.name = r.merged;
                    current.span.end = next.span.end;
                    ++i;
                    merged = true;
                    break;
                }
            }
        }
        out.push_back(std::move(current));
    }
    return out;
}

}  // namespace statementnet
