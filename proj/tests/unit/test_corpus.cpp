#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "statementnet/corpus.hpp"

#include "paths.hpp"

using namespace statementnet;

namespace {

std::filesystem::path write_lines(const std::string& name,
                                  const std::vector<std::string>& lines) {
    std::filesystem::path dir = testpaths::fresh_dir("corpus_" + name);
    std::filesystem::path file = dir / "corpus.jsonl";
    std::ofstream out(file);
    for (const std::string& line : lines) out << line << "\n";
    return file;
}

std::string record(const std::string& id, const std::string& source, const std::string& date,
                   const std::string& body = "Something happened.") {
    nlohmann::json j = {{"article_id", id},
                        {"source", source},
                        {"published", date},
                        {"headline", "Headline for " + id},
                        {"body", body}};
    return j.dump();
}

}  // namespace

TEST_CASE("ingest_corpus loads valid records with per-source ranges", "[corpus]") {
    auto path = write_lines("basic", {
                                         record("a1", "The Harbor", "2021-01-05"),
                                         record("a2", "The Harbor", "2021-03-09"),
                                         record("b1", "City Wire", "2021-02-01"),
                                     });
    Corpus corpus = ingest_corpus(path);
    REQUIRE(corpus.size() == 3);
    REQUIRE(corpus.sources().size() == 2);
    const SourceSummary& harbor = corpus.sources().at("The Harbor");
    REQUIRE(harbor.article_count == 2);
    REQUIRE(harbor.range.min == Date(2021, 1, 5));
    REQUIRE(harbor.range.max == Date(2021, 3, 9));
    auto range = corpus.date_range();
    REQUIRE(range);
    REQUIRE(range->min == Date(2021, 1, 5));
    REQUIRE(range->max == Date(2021, 3, 9));
}

TEST_CASE("ingest_corpus orders by published then article_id", "[corpus]") {
    auto path = write_lines("order", {
                                         record("z9", "S", "2021-02-01"),
                                         record("a1", "S", "2021-02-01"),
                                         record("m5", "S", "2021-01-01"),
                                     });
    Corpus corpus = ingest_corpus(path);
    REQUIRE(corpus.articles()[0].article_id == "m5");
    REQUIRE(corpus.articles()[1].article_id == "a1");
    REQUIRE(corpus.articles()[2].article_id == "z9");
}

TEST_CASE("ingest_corpus of an empty file yields an empty corpus", "[corpus]") {
    auto path = write_lines("empty", {});
    Corpus corpus = ingest_corpus(path);
    REQUIRE(corpus.empty());
    REQUIRE(corpus.sources().empty());
    REQUIRE_FALSE(corpus.date_range().has_value());
}

TEST_CASE("malformed lines follow the policy flag", "[corpus]") {
    auto path = write_lines("malformed", {
                                             record("a1", "S", "2021-01-05"),
                                             "{not json",
                                         });
    SECTION("fail-fast names the line") {
        try {
            ingest_corpus(path, {IngestOptions::OnMalformed::Fail});
            FAIL("expected DataError");
        } catch (const DataError& e) {
            REQUIRE(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SECTION("skip policy logs and continues") {
        Corpus corpus = ingest_corpus(path, {IngestOptions::OnMalformed::Skip});
        REQUIRE(corpus.size() == 1);
        REQUIRE(corpus.skipped().size() == 1);
        REQUIRE(corpus.skipped()[0].line_number == 2);
    }
}

TEST_CASE("record-level validation errors", "[corpus]") {
    SECTION("unparseable date") {
        auto path = write_lines("baddate", {record("a1", "S", "not-a-date")});
        REQUIRE_THROWS_AS(ingest_corpus(path), DataError);
    }
    SECTION("missing required field") {
        auto path = write_lines("missing", {R"({"article_id":"a1","source":"S"})"});
        REQUIRE_THROWS_AS(ingest_corpus(path), DataError);
    }
    SECTION("empty body") {
        auto path = write_lines("emptybody", {record("a1", "S", "2021-01-05", "   ")});
        REQUIRE_THROWS_AS(ingest_corpus(path), DataError);
    }
    SECTION("duplicate article_id is an error even under skip policy") {
        auto path = write_lines("dup", {
                                           record("a1", "S", "2021-01-05"),
                                           record("a1", "S", "2021-01-06"),
                                       });
        REQUIRE_THROWS_AS(ingest_corpus(path, {IngestOptions::OnMalformed::Skip}), DataError);
    }
}

TEST_CASE("time-of-day in published is discarded", "[corpus]") {
    auto path = write_lines("time", {record("a1", "S", "2021-01-05T22:10:09")});
    Corpus corpus = ingest_corpus(path);
    REQUIRE(corpus.articles()[0].published == Date(2021, 1, 5));
}

TEST_CASE("optional category is preserved", "[corpus]") {
    nlohmann::json j = {{"article_id", "a1"}, {"source", "S"},
                        {"published", "2021-01-05"}, {"headline", "h"},
                        {"body", "b"},           {"category", "politics"}};
    auto path = write_lines("category", {j.dump()});
    Corpus corpus = ingest_corpus(path);
    REQUIRE(corpus.articles()[0].category == "politics");
}

TEST_CASE("corpus_stats reports spanned months per source", "[corpus]") {
    SECTION("long range") {
        auto path = write_lines("span", {
                                            record("a1", "S", "2008-01-01"),
                                            record("a2", "S", "2017-12-01"),
                                        });
        CorpusStats stats = corpus_stats(ingest_corpus(path));
        REQUIRE(stats.per_source.at("S").month_count == 119);
    }
    SECTION("single article") {
        auto path = write_lines("single", {record("a1", "S", "2021-06-15")});
        CorpusStats stats = corpus_stats(ingest_corpus(path));
        REQUIRE(stats.per_source.at("S").month_count == 1);
        REQUIRE(stats.per_source.at("S").article_count == 1);
    }
    SECTION("two articles on the same day") {
        auto path = write_lines("sameday", {
                                               record("a1", "S", "2021-06-15"),
                                               record("a2", "S", "2021-06-15"),
                                           });
        CorpusStats stats = corpus_stats(ingest_corpus(path));
        REQUIRE(stats.per_source.at("S").article_count == 2);
        REQUIRE(stats.per_source.at("S").range.min == stats.per_source.at("S").range.max);
        REQUIRE(stats.per_source.at("S").month_count == 1);
    }
}

TEST_CASE("stats JSON round-trips", "[corpus]") {
    auto path = write_lines("roundtrip", {
                                             record("a1", "S", "2021-01-05"),
                                             record("b1", "T", "2021-02-05"),
                                         });
    CorpusStats stats = corpus_stats(ingest_corpus(path));
    CorpusStats back = stats_from_json(stats_to_json(stats));
    REQUIRE(back.total_articles == stats.total_articles);
    REQUIRE(back.range->min == stats.range->min);
    REQUIRE(back.range->max == stats.range->max);
    REQUIRE(back.per_source.size() == stats.per_source.size());
    REQUIRE(back.per_source.at("T").month_count == stats.per_source.at("T").month_count);
}

TEST_CASE("re-ingesting the same file serializes identically", "[corpus]") {
    auto path = write_lines("stable", {
                                          record("a2", "S", "2021-01-07"),
                                          record("a1", "S", "2021-01-05"),
                                      });
    std::string first = corpus_to_jsonl(ingest_corpus(path));
    std::string second = corpus_to_jsonl(ingest_corpus(path));
    REQUIRE(first == second);
    REQUIRE_FALSE(first.empty());
}

TEST_CASE("sum of per-source counts equals the total", "[corpus]") {
    auto path = write_lines("sum", {
                                       record("a1", "S", "2021-01-05"),
                                       record("a2", "S", "2021-01-06"),
                                       record("b1", "T", "2021-01-07"),
                                   });
    CorpusStats stats = corpus_stats(ingest_corpus(path));
    std::size_t total = 0;
    for (const auto& [source, s] : stats.per_source) total += s.article_count;
    REQUIRE(total == stats.total_articles);
}

TEST_CASE("missing corpus file raises a data error", "[corpus]") {
    REQUIRE_THROWS_AS(ingest_corpus("/nonexistent/corpus.jsonl"), DataError);
}
