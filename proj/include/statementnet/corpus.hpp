#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "statementnet/date.hpp"
#include "statementnet/errors.hpp"
#include "statementnet/io.hpp"
#include "statementnet/text.hpp"

namespace statementnet {

/// One dated, sourced news item — the ingestion unit.
struct NewsArticle {
    std::string article_id;
    std::string source;
    Date published;
    std::string headline;
    std::string body;
    std::optional<std::string> category;
};

struct SourceSummary {
    std::size_t article_count = 0;
    DateRange range;
};

struct SkippedLine {
    std::size_t line_number = 0;
    std::string reason;
};

struct IngestOptions {
    enum class OnMalformed { Fail, Skip };
    OnMalformed on_malformed = OnMalformed::Fail;
};

/// Immutable article collection. Iteration order is (published, article_id)
/// ascending; per-source date ranges are maintained on construction.
class Corpus {
public:
    Corpus() = default;

    Corpus(std::vector<NewsArticle> articles, std::vector<SkippedLine> skipped)
        : articles_(std::move(articles)), skipped_(std::move(skipped)) {
        std::sort(articles_.begin(), articles_.end(), [](const NewsArticle& a, const NewsArticle& b) {
            if (a.published != b.published) return a.published < b.published;
            return a.article_id < b.article_id;
        });
        for (const NewsArticle& a : articles_) {
            auto [it, fresh] = sources_.try_emplace(a.source, SourceSummary{1, {a.published, a.published}});
            if (!fresh) {
                SourceSummary& s = it->second;
                ++s.article_count;
                if (a.published < s.range.min) s.range.min = a.published;
                if (a.published > s.range.max) s.range.max = a.published;
            }
        }
    }

    const std::vector<NewsArticle>& articles() const { return articles_; }
    const std::map<std::string, SourceSummary>& sources() const { return sources_; }
    const std::vector<SkippedLine>& skipped() const { return skipped_; }
    std::size_t size() const { return articles_.size(); }
    bool empty() const { return articles_.empty(); }

    /// Range over all articles; nullopt for an empty corpus.
    std::optional<DateRange> date_range() const {
        if (articles_.empty()) return std::nullopt;
        DateRange r{articles_.front().published, articles_.front().published};
        for (const NewsArticle& a : articles_) {
            if (a.published < r.min) r.min = a.published;
            if (a.published > r.max) r.max = a.published;
        }
        return r;
    }

private:
    std::vector<NewsArticle> articles_;
    std::map<std::string, SourceSummary> sources_;
    std::vector<SkippedLine> skipped_;
};

namespace detail {

inline bool trim_is_empty(const std::string& s) {
    for (char c : s)
        if (!is_ascii_space(c)) return false;
    return true;
}

inline NewsArticle parse_article_line(const std::string& line, std::size_t line_number) {
    nlohmann::json rec;
    try {
        rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw DataError("line " + std::to_string(line_number) + ": invalid JSON record: " + e.what());
    }
    if (!rec.is_object())
        throw DataError("line " + std::to_string(line_number) + ": record is not a JSON object");

    auto need_string = [&](const char* key) -> std::string {
        if (!rec.contains(key) || !rec[key].is_string())
            throw DataError("line " + std::to_string(line_number) + ": missing or non-string field '" +
                            key + "'");
        return rec[key].get<std::string>();
    };

    NewsArticle a;
    a.article_id = need_string("article_id");
    a.source = need_string("source");
    std::string published = need_string("published");
    auto date = Date::try_parse(published);
    if (!date)
        throw DataError("line " + std::to_string(line_number) + ": unparseable date '" + published +
                        "'");
    a.published = *date;
    a.headline = need_string("headline");
    a.body = need_string("body");
    if (a.article_id.empty())
        throw DataError("line " + std::to_string(line_number) + ": empty article_id");
    if (trim_is_empty(a.body))
        throw DataError("line " + std::to_string(line_number) + ": empty body");
    if (rec.contains("category")) {
        if (!rec["category"].is_string())
            throw DataError("line " + std::to_string(line_number) + ": non-string field 'category'");
        a.category = rec["category"].get<std::string>();
    }
    return a;
}

}  // namespace detail

/// Loads a line-delimited record file: one JSON object per line with keys
/// article_id, source, published (ISO date), headline, body and optional
/// category. Duplicate article ids are always an error; other malformed
/// lines follow the IngestOptions policy.
inline Corpus ingest_corpus(const std::filesystem::path& path, const IngestOptions& options = {}) {
    std::ifstream in = open_input(path);
    std::vector<NewsArticle> articles;
    std::vector<SkippedLine> skipped;
    std::set<std::string> seen_ids;

    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::string_view sv = chomp_cr(line);
        if (sv.empty()) continue;
        NewsArticle article;
        try {
            article = detail::parse_article_line(std::string(sv), line_number);
        } catch (const DataError& e) {
            if (options.on_malformed == IngestOptions::OnMalformed::Fail)
                throw DataError(path.string() + ": " + e.what());
            skipped.push_back({line_number, e.what()});
            continue;
        }
        if (!seen_ids.insert(article.article_id).second)
            throw DataError(path.string() + ": line " + std::to_string(line_number) +
                            ": duplicate article_id '" + article.article_id + "'");
        articles.push_back(std::move(article));
    }
    return Corpus(std::move(articles), std::move(skipped));
}

struct SourceStats {
    std::size_t article_count = 0;
    DateRange range;
    int month_count = 0;
};

struct CorpusStats {
    std::size_t total_articles = 0;
    std::size_t skipped_lines = 0;
    std::optional<DateRange> range;
    std::map<std::string, SourceStats> per_source;
};

/// Per-source article counts, date ranges and month counts. The month count
/// is the month-index difference across the range, never below one.
inline CorpusStats corpus_stats(const Corpus& corpus) {
    CorpusStats stats;
    stats.total_articles = corpus.size();
    stats.skipped_lines = corpus.skipped().size();
    stats.range = corpus.date_range();
    for (const auto& [source, summary] : corpus.sources()) {
        SourceStats s;
        s.article_count = summary.article_count;
        s.range = summary.range;
        s.month_count = month_span(summary.range.min, summary.range.max);
        stats.per_source[source] = s;
    }
    return stats;
}

inline nlohmann::json stats_to_json(const CorpusStats& stats) {
    nlohmann::json sources = nlohmann::json::object();
    for (const auto& [name, s] : stats.per_source) {
        sources[name] = {{"articles", s.article_count},
                         {"from", s.range.min.to_string()},
                         {"to", s.range.max.to_string()},
                         {"months", s.month_count}};
    }
    nlohmann::json out = {{"articles", stats.total_articles},
                          {"skipped_lines", stats.skipped_lines},
                          {"sources", sources}};
    if (stats.range) {
        out["from"] = stats.range->min.to_string();
        out["to"] = stats.range->max.to_string();
    } else {
        out["from"] = nullptr;
        out["to"] = nullptr;
    }
    return out;
}

inline CorpusStats stats_from_json(const nlohmann::json& j) {
    CorpusStats stats;
    stats.total_articles = j.at("articles").get<std::size_t>();
    stats.skipped_lines = j.at("skipped_lines").get<std::size_t>();
    if (!j.at("from").is_null())
        stats.range = DateRange{Date::parse(j.at("from").get<std::string>()),
                                Date::parse(j.at("to").get<std::string>())};
    for (const auto& [name, s] : j.at("sources").items()) {
        SourceStats ss;
        ss.article_count = s.at("articles").get<std::size_t>();
        ss.range = DateRange{Date::parse(s.at("from").get<std::string>()),
                             Date::parse(s.at("to").get<std::string>())};
        ss.month_count = s.at("months").get<int>();
        stats.per_source[name] = ss;
    }
    return stats;
}

/// Canonical line-delimited serialization; two ingests of the same file
/// serialize identically.
inline std::string corpus_to_jsonl(const Corpus& corpus) {
    std::string out;
    for (const NewsArticle& a : corpus.articles()) {
        nlohmann::json rec = {{"article_id", a.article_id},
                              {"source", a.source},
                              {"published", a.published.to_string()},
                              {"headline", a.headline},
                              {"body", a.body}};
        if (a.category) rec["category"] = *a.category;
        out += rec.dump();
        out += '\n';
    }
    return out;
}

}  // namespace statementnet
