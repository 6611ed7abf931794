#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "statementnet/pipeline.hpp"

#include "cli.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "paths.hpp"

using namespace statementnet;
namespace fs = std::filesystem;

namespace {

class PassFailLine : public Catch::EventListenerBase {
public:
    using Catch::EventListenerBase::EventListenerBase;
    void testCaseEnded(const Catch::TestCaseStats& stats) override {
        std::printf("[%s] %s\n", stats.totals.assertions.allPassed() ? "PASS" : "FAIL",
                    stats.testInfo->name.c_str());
        std::fflush(stdout);
    }
};
CATCH_REGISTER_LISTENER(PassFailLine)

const std::set<std::string> kPlanted = {"Farida Karim", "Nusrat Jahan", "Rafiq Mollah",
                                        "Salma Akter",  "Tanvir Hossain", "Zahid Noor"};

PipelineConfig sample_config(const std::string& scratch_name) {
    PipelineConfig config =
        load_config(testpaths::source_dir() / "data" / "sample" / "config.json");
    config.output_dir = testpaths::fresh_dir(scratch_name) / "out";
    return config;
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& path) {
    std::ifstream in(path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

std::vector<std::string> golden_rows(const fs::path& path) {
    std::ifstream in(path);
    std::vector<std::string> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        rows.push_back(line);
    }
    return rows;
}

std::vector<std::string> extracted_rows(const fs::path& statements_jsonl) {
    std::vector<std::string> rows;
    for (const DatedStatement& ds : statements_from_jsonl(statements_jsonl)) {
        std::string entities;
        for (const std::string& e : ds.stmt.entities) {
            if (!entities.empty()) entities += ';';
            entities += e;
        }
        rows.push_back(ds.stmt.article_id + "\t" + std::to_string(ds.stmt.sentence_index) +
                       "\t" + ds.stmt.trigger + "\t" + entities);
    }
    return rows;
}

}  // namespace

TEST_CASE("core decomposition matches brute-force peeling on 100 random graphs",
          "[acceptance]") {
    auto start = std::chrono::steady_clock::now();
    int graphs = 0;
    std::mt19937 rng(2024);
    for (int n : {50, 100, 200}) {
        for (double p : {0.02, 0.05, 0.1}) {
            for (int trial = 0; trial < 11; ++trial) {
                Adjacency adj = gen::random_graph(rng, n, p);
                REQUIRE(k_core_decompose(adj).core_number == oracle::core_numbers(adj));
                ++graphs;
            }
        }
    }
    Adjacency adj = gen::random_graph(rng, 200, 0.1);
    REQUIRE(k_core_decompose(adj).core_number == oracle::core_numbers(adj));
    ++graphs;
    REQUIRE(graphs == 100);
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    REQUIRE(elapsed.count() < 10000);
}

TEST_CASE("core ranks never decrease across cumulative snapshots", "[acceptance]") {
    std::mt19937 rng(7);
    std::size_t violations = 0;
    for (int stream = 0; stream < 50; ++stream) {
        int n = 20 + int(rng() % 81);
        int events = 100 + int(rng() % 401);
        std::vector<NamePair> pairs = gen::random_edge_stream(rng, n, events);
        Adjacency adj;
        std::map<std::string, int> previous;
        std::size_t checkpoint = pairs.size() / 10 + 1;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            adj[pairs[i].first].insert(pairs[i].second);
            adj[pairs[i].second].insert(pairs[i].first);
            if ((i + 1) % checkpoint == 0 || i + 1 == pairs.size()) {
                CoreDecomposition dec = k_core_decompose(adj);
                for (const auto& [node, core] : dec.core_number) {
                    auto it = previous.find(node);
                    if (it != previous.end() && core < it->second) ++violations;
                    previous[node] = core;
                }
            }
        }
    }
    REQUIRE(violations == 0);
}

TEST_CASE("every statement emits n(n-1)/2 edge events", "[acceptance]") {
    std::mt19937 rng(99);
    std::vector<DatedStatement> statements = gen::random_statements(rng, 200, 30, 10);
    std::size_t expected_total = 0;
    for (const DatedStatement& ds : statements) {
        std::size_t n = ds.stmt.entities.size();
        REQUIRE(n >= 2);
        REQUIRE(n <= 10);
        REQUIRE(pairs_from_statement(ds.stmt.entities).size() == n * (n - 1) / 2);
        expected_total += n * (n - 1) / 2;
    }
    StatementNetwork network = build_network(statements);
    REQUIRE(network.events.size() == expected_total);
}

TEST_CASE("planted clique becomes the top core at its injection period", "[acceptance]") {
    auto start = std::chrono::steady_clock::now();
    PipelineConfig config = sample_config("acceptance_planted");
    RunManifest manifest = run_pipeline(config);

    nlohmann::json golden = nlohmann::json::parse(
        read_file(testpaths::data_dir() / "golden_manifest.json"));
    REQUIRE(manifest.corpus_digest == golden["corpus_digest"]);
    REQUIRE(manifest.counts.articles == golden["counts"]["articles"]);
    REQUIRE(manifest.counts.sentences == golden["counts"]["sentences"]);
    REQUIRE(manifest.counts.statements == golden["counts"]["statements"]);
    REQUIRE(manifest.counts.events == golden["counts"]["events"]);
    REQUIRE(manifest.counts.nodes == golden["counts"]["nodes"]);
    REQUIRE(manifest.counts.simple_edges == golden["counts"]["simple_edges"]);

    std::size_t pair_total = 0;
    for (const DatedStatement& ds :
         statements_from_jsonl(config.output_dir / "statements.jsonl")) {
        std::size_t n = ds.stmt.entities.size();
        pair_total += n * (n - 1) / 2;
    }
    REQUIRE(manifest.counts.events == pair_total);

    nlohmann::json summary =
        nlohmann::json::parse(read_file(config.output_dir / "summary.json"));
    REQUIRE(summary["max_core"] == 5);
    REQUIRE(summary["top_core"].get<std::set<std::string>>() == kPlanted);
    REQUIRE(summary["emergence"]["period"] == "2021-04");
    REQUIRE(summary["emergence"]["period_index"] == 4);
    REQUIRE(summary["emergence"]["only_final"] == false);

    std::map<std::string, std::vector<int>> ranks;
    for (const auto& row : csv_rows(config.output_dir / "trajectories.csv"))
        ranks[row[1]].push_back(std::stoi(row[2]));
    REQUIRE(ranks.size() == kPlanted.size());
    for (const std::string& name : kPlanted) {
        INFO(name);
        const std::vector<int>& r = ranks.at(name);
        REQUIRE(r.size() == 12);
        for (std::size_t i = 1; i < r.size(); ++i) REQUIRE(r[i] >= r[i - 1]);
        REQUIRE(r[2] == 0);
        REQUIRE(r[3] == 5);
        REQUIRE(r[11] == 5);
    }

    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    REQUIRE(elapsed.count() < 5000);
}

TEST_CASE("rotating planted cliques overlap by half period over period", "[acceptance]") {
    auto name = [](int i) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "P%02d", i);
        return std::string(buf);
    };
    std::vector<DatedStatement> statements;
    for (int period = 0; period < 4; ++period) {
        DatedStatement ds;
        ds.stmt.article_id = "rot-" + std::to_string(period + 1);
        ds.stmt.sentence_index = 0;
        ds.stmt.text = "fixture";
        ds.stmt.trigger = "said";
        for (int i = 3 * period + 1; i <= 3 * period + 9; ++i)
            ds.stmt.entities.push_back(name(i));
        ds.date = Date(2020 + (period / 2), period % 2 ? 8 : 2, 15);
        ds.source = "Fixture Wire";
        statements.push_back(std::move(ds));
    }
    DateRange range{Date(2020, 1, 1), Date(2021, 12, 31)};

    std::vector<HierarchyBucket> buckets = hierarchy_buckets(statements, range, 6, 7);
    REQUIRE(buckets.size() == 4);
    for (const HierarchyBucket& b : buckets) REQUIRE(b.members.size() == 9);

    OverlapSeries series = overlap_series(buckets, OverlapMetric::Jaccard);
    REQUIRE(series.points.size() == 3);
    for (const OverlapPoint& p : series.points) {
        REQUIRE_FALSE(p.both_empty);
        REQUIRE(p.percent == Catch::Approx(50.0).margin(0.05));
        REQUIRE(format_percent(p.percent) == "50.0");
    }
}

TEST_CASE("statement filter matches the hand-labeled golden corpus", "[acceptance]") {
    fs::path data = testpaths::data_dir() / "filter";
    fs::path out = testpaths::fresh_dir("acceptance_filter") / "out";
    std::string base =
        "extract --config " + testcli::q(data / "config.json") + " --out " + testcli::q(out);

    testcli::CliResult deflt = testcli::run_cli(base);
    INFO(deflt.output);
    REQUIRE(deflt.exit_code == 0);
    REQUIRE(extracted_rows(out / "statements.jsonl") ==
            golden_rows(data / "golden_default.tsv"));

    testcli::CliResult both = testcli::run_cli(base + " --require-both");
    REQUIRE(both.exit_code == 0);
    REQUIRE(extracted_rows(out / "statements.jsonl") ==
            golden_rows(data / "golden_require_both.tsv"));
}

TEST_CASE("repeated pipeline runs are byte-identical", "[acceptance]") {
    fs::path config_path = testpaths::source_dir() / "data" / "sample" / "config.json";
    fs::path out = testpaths::fresh_dir("acceptance_determinism") / "out";
    std::string args = "run --config " + testcli::q(config_path) + " --out " + testcli::q(out);

    testcli::CliResult first = testcli::run_cli(args);
    INFO(first.output);
    REQUIRE(first.exit_code == 0);
    std::map<std::string, std::string> snapshot;
    for (const auto& entry : fs::directory_iterator(out))
        if (entry.is_regular_file())
            snapshot[entry.path().filename().string()] = testcli::slurp(entry.path());
    REQUIRE(snapshot.count("manifest.json") == 1);

    testcli::CliResult second = testcli::run_cli(args);
    REQUIRE(second.exit_code == 0);
    std::size_t seen = 0;
    for (const auto& entry : fs::directory_iterator(out)) {
        if (!entry.is_regular_file()) continue;
        ++seen;
        INFO(entry.path().filename().string());
        REQUIRE(testcli::slurp(entry.path()) ==
                snapshot.at(entry.path().filename().string()));
    }
    REQUIRE(seen == snapshot.size());
}

TEST_CASE("daily event counts cover the source range and sum to the total", "[acceptance]") {
    PipelineConfig config = sample_config("acceptance_daily");
    run_pipeline(config);

    std::map<std::string, std::size_t> per_source;
    for (const DatedStatement& ds :
         statements_from_jsonl(config.output_dir / "statements.jsonl")) {
        std::size_t n = ds.stmt.entities.size();
        per_source[ds.source] += n * (n - 1) / 2;
    }
    REQUIRE(per_source.size() == 2);

    CorpusStats stats = stats_from_json(
        nlohmann::json::parse(read_file(config.output_dir / "corpus_stats.json")));
    std::map<std::string, std::string> filenames = detail::daily_count_filenames(stats);
    for (const auto& [source, summary] : stats.per_source) {
        INFO(source);
        std::size_t expected_days = 0;
        for (Date d = summary.range.min;; d = d.next_day()) {
            ++expected_days;
            if (d == summary.range.max) break;
        }
        std::size_t total = 0;
        std::size_t zero_days = 0;
        auto rows = csv_rows(config.output_dir / filenames.at(source));
        for (const auto& row : rows) {
            std::size_t c = std::stoul(row[1]);
            total += c;
            if (c == 0) ++zero_days;
        }
        REQUIRE(rows.size() == expected_days);
        REQUIRE(total == per_source.at(source));
        REQUIRE(zero_days > 0);
        REQUIRE(rows.front()[0] == summary.range.min.to_string());
        REQUIRE(rows.back()[0] == summary.range.max.to_string());
    }
}
