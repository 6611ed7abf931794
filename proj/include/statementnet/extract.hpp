#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "statementnet/corpus.hpp"
#include "statementnet/lexicon.hpp"
#include "statementnet/segment.hpp"
#include "statementnet/tagging.hpp"

namespace statementnet {

/// A sentence that passed the speech filter, with its resolved entities.
struct StatementSentence {
    std::string article_id;
    std::size_t sentence_index = 0;
    std::string text;
    std::vector<std::string> entities;
    std::string trigger;
};

/// StatementSentence joined with its article's date and source.
struct DatedStatement {
    StatementSentence stmt;
    Date date;
    std::string source;
};

struct ExtractOptions {
    bool include_headline = false;
};

/// Text the filter scans: body only by default, headline prepended as its
/// own paragraph on request.
inline std::string searchable_text(const NewsArticle& article, const ExtractOptions& options) {
    if (!options.include_headline) return article.body;
    return article.headline + "\n\n" + article.body;
}

/// Runs the filter over one article: a sentence is emitted when it carries a
/// speech trigger and, after merge rules, at least two distinct entities.
/// Entities are deduplicated in order of first appearance.
inline std::vector<StatementSentence> extract_article(const NewsArticle& article,
                                                      const EntityTagger& tagger,
                                                      const SpeechLexicon& lexicon,
                                                      const std::vector<MergeRule>& rules,
                                                      const ExtractOptions& options = {},
                                                      std::size_t* sentence_count = nullptr) {
    std::vector<Sentence> sentences = segment_sentences(searchable_text(article, options));
    if (sentence_count) *sentence_count = sentences.size();
    std::vector<std::vector<EntityMention>> tagged = tagger.tag(article.article_id, sentences);

    std::vector<StatementSentence> out;
    for (std::size_t s = 0; s < sentences.size(); ++s) {
        auto trigger = detect_statement(sentences[s], lexicon);
        if (!trigger) continue;
        std::vector<EntityMention> mentions = apply_merge_rules(tagged[s], rules);
        std::vector<std::string> entities;
        std::set<std::string> seen;
        for (const EntityMention& m : mentions)
            if (seen.insert(m.name).second) entities.push_back(m.name);
        if (entities.size() < 2) continue;
        StatementSentence st;
        st.article_id = article.article_id;
        st.sentence_index = sentences[s].index;
        st.text = sentences[s].text;
        st.entities = std::move(entities);
        st.trigger = *trigger;
        out.push_back(std::move(st));
    }
    return out;
}

struct ExtractResult {
    std::vector<DatedStatement> statements;
    std::size_t sentence_count = 0;
};

/// Extracts over the whole corpus. Output order follows corpus order
/// (published, article_id) then sentence_index.
inline ExtractResult extract_corpus(const Corpus& corpus, const EntityTagger& tagger,
                                    const SpeechLexicon& lexicon,
                                    const std::vector<MergeRule>& rules,
                                    const ExtractOptions& options = {}) {
    ExtractResult result;
    for (const NewsArticle& article : corpus.articles()) {
        std::size_t count = 0;
        std::vector<StatementSentence> stmts =
            extract_article(article, tagger, lexicon, rules, options, &count);
        result.sentence_count += count;
        for (StatementSentence& st : stmts)
            result.statements.push_back({std::move(st), article.published, article.source});
    }
    return result;
}

}  // namespace statementnet
