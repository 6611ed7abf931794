#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "statementnet/statementnet.hpp"

namespace fs = std::filesystem;
using namespace statementnet;

namespace {

/// Options shared by every subcommand; flag > environment > config > default.
struct CommonArgs {
    std::string config_path;
    std::optional<std::string> output_dir;
    std::optional<std::string> corpus;
    std::optional<std::string> gazetteer;
    std::optional<std::string> external_tags;
    std::optional<std::string> merge_rules;
    std::optional<std::string> lexicon;
    std::optional<int> snapshot_months;
    std::optional<int> bucket_months;
    std::optional<int> bucket_threshold;
    std::optional<std::string> overlap_metric;
    bool require_both = false;
    bool no_quote_trigger = false;
    bool include_headline = false;
    bool skip_malformed = false;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Pipeline config file (JSON)")
        ->required();
    cmd->add_option("--out", args.output_dir, "Output directory (overrides config)");
    cmd->add_option("--corpus", args.corpus, "Corpus file (overrides config)");
    cmd->add_option("--gazetteer", args.gazetteer, "Gazetteer file (overrides config)");
    cmd->add_option("--external-tags", args.external_tags,
                    "External tag sidecar directory (overrides config)");
    cmd->add_option("--merge-rules", args.merge_rules, "Merge rules file (overrides config)");
    cmd->add_option("--lexicon", args.lexicon, "Speech lexicon file (overrides config)");
    cmd->add_option("--snapshot-months", args.snapshot_months,
                    "Months per snapshot period (overrides config)");
    cmd->add_option("--bucket-months", args.bucket_months,
                    "Months per hierarchy bucket period (overrides config)");
    cmd->add_option("--bucket-threshold", args.bucket_threshold,
                    "Core-number bucket threshold (overrides config)");
    cmd->add_option("--overlap-metric", args.overlap_metric,
                    "Overlap metric: jaccard or containment (overrides config)")
        ->check(CLI::IsMember({"jaccard", "containment"}));
    cmd->add_flag("--require-both", args.require_both,
                  "Require both a speech verb and a quotation mark");
    cmd->add_flag("--no-quote-trigger", args.no_quote_trigger,
                  "Do not let quotation marks alone select a sentence");
    cmd->add_flag("--include-headline", args.include_headline,
                  "Search the headline as well as the body");
    cmd->add_flag("--skip-malformed", args.skip_malformed,
                  "Skip malformed corpus lines instead of failing");
}

PipelineConfig effective_config(const CommonArgs& args) {
    PipelineConfig config = load_config(args.config_path);
    if (const char* env = std::getenv("STATEMENT_NET_OUT"); env && *env)
        config.output_dir = env;
    fs::path cwd = fs::current_path();
    auto from_cwd = [&](const std::string& s) { return detail::resolve_path(cwd, s); };
    if (args.output_dir) config.output_dir = from_cwd(*args.output_dir);
    if (args.corpus) config.corpus = from_cwd(*args.corpus);
    if (args.gazetteer) {
        config.gazetteer = from_cwd(*args.gazetteer);
        config.external_tags.reset();
    }
    if (args.external_tags) {
        config.external_tags = from_cwd(*args.external_tags);
        config.gazetteer.reset();
    }
    if (args.merge_rules) config.merge_rules = from_cwd(*args.merge_rules);
    if (args.lexicon) config.lexicon = from_cwd(*args.lexicon);
    if (args.snapshot_months) config.snapshot_months = *args.snapshot_months;
    if (args.bucket_months) config.bucket_months = *args.bucket_months;
    if (args.bucket_threshold) config.bucket_threshold = *args.bucket_threshold;
    if (args.overlap_metric)
        config.overlap_metric = *args.overlap_metric == "containment" ? OverlapMetric::Containment
                                                                      : OverlapMetric::Jaccard;
    if (args.require_both) config.require_both = true;
    if (args.no_quote_trigger) config.quote_trigger = false;
    if (args.include_headline) config.include_headline = true;
    if (args.skip_malformed) config.on_malformed = IngestOptions::OnMalformed::Skip;
    return config;
}

void write_report(const PipelineConfig& config, const std::string& name,
                  const std::string& content) {
    fs::create_directories(config.output_dir);
    atomic_write_file(config.output_dir / name, content);
}

std::vector<DatedStatement> load_statements(const PipelineConfig& config) {
    fs::path path = config.output_dir / "statements.jsonl";
    if (!fs::exists(path))
        throw DataError(path.string() +
                        " not found; run 'statement-net extract --config <path>' first");
    return statements_from_jsonl(path);
}

CorpusStats load_stats(const PipelineConfig& config) {
    fs::path path = config.output_dir / "corpus_stats.json";
    if (!fs::exists(path))
        throw DataError(path.string() +
                        " not found; run 'statement-net extract --config <path>' first");
    try {
        return stats_from_json(nlohmann::json::parse(read_file(path)));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

int cmd_run(const CommonArgs& args) {
    PipelineConfig config = effective_config(args);
    RunManifest manifest = run_pipeline(config);
    std::printf(
        "run: %zu articles, %zu sentences, %zu statements, %zu events, %zu nodes, "
        "%zu edges -> %s\n",
        manifest.counts.articles, manifest.counts.sentences, manifest.counts.statements,
        manifest.counts.events, manifest.counts.nodes, manifest.counts.simple_edges,
        config.output_dir.string().c_str());
    return 0;
}

int cmd_ingest_stats(const CommonArgs& args) {
    PipelineConfig config = effective_config(args);
    validate_config(config);
    Corpus corpus = ingest_corpus(config.corpus, {config.on_malformed});
    CorpusStats stats = corpus_stats(corpus);
    write_report(config, "corpus_stats.json", stats_to_json(stats).dump(2) + "\n");
    std::string range = stats.range
                            ? stats.range->min.to_string() + ".." + stats.range->max.to_string()
                            : "none";
    std::printf("ingest-stats: %zu articles, %zu sources, range %s, %zu skipped lines\n",
                stats.total_articles, stats.per_source.size(), range.c_str(),
                stats.skipped_lines);
    return 0;
}

int cmd_extract(const CommonArgs& args, bool dump_tokens) {
    PipelineConfig config = effective_config(args);
    validate_config(config);
    Corpus corpus = ingest_corpus(config.corpus, {config.on_malformed});
    CorpusStats stats = corpus_stats(corpus);
    std::unique_ptr<EntityTagger> tagger = make_tagger(config);
    SpeechLexicon lexicon = make_lexicon(config);
    std::vector<MergeRule> rules = make_merge_rules(config);
    ExtractResult extraction =
        extract_corpus(corpus, *tagger, lexicon, rules, {config.include_headline});
    write_report(config, "corpus_stats.json", stats_to_json(stats).dump(2) + "\n");
    write_report(config, "statements.jsonl", statements_to_jsonl(extraction.statements));
    if (dump_tokens) {
        fs::path dir = config.output_dir / "tokens";
        fs::create_directories(dir);
        for (const NewsArticle& article : corpus.articles()) {
            std::string out;
            for (const Sentence& s :
                 segment_sentences(searchable_text(article, {config.include_headline}))) {
                for (const Token& t : s.tokens) {
                    out += t.text;
                    out += '\n';
                }
                out += '\n';
            }
            atomic_write_file(dir / (article.article_id + ".tokens"), out);
        }
    }
    std::printf("extract: %zu statements from %zu sentences in %zu articles\n",
                extraction.statements.size(), extraction.sentence_count, corpus.size());
    return 0;
}

int cmd_network(const CommonArgs& args) {
    PipelineConfig config = effective_config(args);
    StatementNetwork network = build_network(load_statements(config));
    write_report(config, "network_edges.tsv", edges_to_tsv(network));
    write_report(config, "network_events.tsv", events_to_tsv(network));
    std::printf("network: %zu nodes, %zu simple edges, %zu events\n", network.nodes.size(),
                network.simple_edges.size(), network.events.size());
    return 0;
}

int cmd_cores(const CommonArgs& args) {
    PipelineConfig config = effective_config(args);
    StatementNetwork network = build_network(load_statements(config));
    CoreDecomposition dec = k_core_decompose(network);
    write_report(config, "cores.tsv", cores_to_tsv(dec));
    std::size_t top_size = dec.core_number.empty() ? 0 : top_core(dec).size();
    int shell_count = 0;
    for (const auto& [k, shell] : dec.shells) {
        (void)shell;
        if (k > 0) ++shell_count;
    }
    std::printf("cores: max_core %d, top-core size %zu, %d non-empty shells\n", dec.max_core,
                top_size, shell_count);
    return 0;
}

std::optional<DateRange> series_range(const CorpusStats& stats) { return stats.range; }

int cmd_trajectories(const CommonArgs& args, const std::string& nodes_arg) {
    PipelineConfig config = effective_config(args);
    std::vector<DatedStatement> statements = load_statements(config);
    CorpusStats stats = load_stats(config);
    auto range = series_range(stats);
    if (!range || statements.empty()) {
        write_report(config, "trajectories.csv", "period,node,core_rank\n");
        std::printf("trajectories: no statements, empty report\n");
        return 0;
    }
    SnapshotSeries series = build_snapshot_series(statements, *range, config.snapshot_months,
                                                  SnapshotMode::Cumulative);
    std::set<std::string> tracked;
    if (!nodes_arg.empty()) {
        std::stringstream ss(nodes_arg);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::string t = trim(item);
            if (!t.empty()) tracked.insert(t);
        }
        if (tracked.empty()) throw ValidationError("--nodes lists no names");
    } else {
        tracked = top_core(k_core_decompose(build_network(statements)));
    }
    write_report(config, "trajectories.csv",
                 trajectories_to_csv(core_rank_trajectories(series, tracked)));
    std::printf("trajectories: %zu nodes over %zu periods\n", tracked.size(),
                series.snapshots.size());
    return 0;
}

int cmd_buckets(const CommonArgs& args) {
    PipelineConfig config = effective_config(args);
    std::vector<DatedStatement> statements = load_statements(config);
    CorpusStats stats = load_stats(config);
    auto range = series_range(stats);
    if (!range || statements.empty()) {
        write_report(config, "buckets.csv", "period,node\n");
        std::printf("buckets: no statements, empty report\n");
        return 0;
    }
    std::vector<HierarchyBucket> buckets =
        hierarchy_buckets(statements, *range, config.bucket_months, config.bucket_threshold);
    write_report(config, "buckets.csv", buckets_to_csv(buckets));
    std::size_t members = 0;
    for (const HierarchyBucket& b : buckets) members += b.members.size();
    std::printf("buckets: %zu periods, %zu members above threshold %d\n", buckets.size(),
                members, config.bucket_threshold);
    return 0;
}

int cmd_overlap(const CommonArgs& args) {
    PipelineConfig config = effective_config(args);
    std::vector<DatedStatement> statements = load_statements(config);
    CorpusStats stats = load_stats(config);
    auto range = series_range(stats);
    if (!range || statements.empty())
        throw DataError("need >= 2 periods to compute overlap; corpus has no statements");
    std::vector<HierarchyBucket> buckets =
        hierarchy_buckets(statements, *range, config.bucket_months, config.bucket_threshold);
    OverlapSeries series = overlap_series(buckets, config.overlap_metric);
    write_report(config, "overlap.csv", overlap_to_csv(series));
    std::printf("overlap: %zu consecutive pairs, metric %s\n", series.points.size(),
                config.overlap_metric == OverlapMetric::Jaccard ? "jaccard" : "containment");
    return 0;
}

int cmd_daily_counts(const CommonArgs& args, const std::string& source_arg) {
    PipelineConfig config = effective_config(args);
    std::vector<DatedStatement> statements = load_statements(config);
    CorpusStats stats = load_stats(config);
    std::vector<std::string> sources;
    if (!source_arg.empty()) {
        if (!stats.per_source.count(source_arg)) {
            std::string known;
            for (const auto& [name, s] : stats.per_source) {
                (void)s;
                if (!known.empty()) known += ", ";
                known += "'" + name + "'";
            }
            throw DataError("unknown source '" + source_arg + "'; corpus has: " +
                            (known.empty() ? "none" : known));
        }
        sources.push_back(source_arg);
    } else {
        for (const auto& [name, s] : stats.per_source) {
            (void)s;
            sources.push_back(name);
        }
    }
    std::map<std::string, std::string> filenames = detail::daily_count_filenames(stats);
    for (const std::string& source : sources) {
        DailyEdgeCounts counts =
            daily_edge_counts(statements, source, stats.per_source.at(source).range);
        DistributionSummary summary = distribution_summary(counts);
        write_report(config, filenames.at(source), daily_counts_to_csv(counts));
        std::printf("daily-counts: %s: %zu days, %zu events, median %zu, max %zu\n",
                    source.c_str(), summary.days, summary.total, summary.median, summary.max);
    }
    if (sources.empty()) std::printf("daily-counts: corpus has no sources\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Build statement networks from news corpora and report their temporal "
                 "core-periphery structure"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

    std::map<std::string, CommonArgs> args;
    auto add = [&](const char* name, const char* help) {
        CLI::App* cmd = app.add_subcommand(name, help);
        add_common_options(cmd, args[name]);
        return cmd;
    };

    add("run", "Run the full pipeline and write the report bundle");
    add("ingest-stats", "Ingest the corpus and write per-source statistics");
    CLI::App* extract_cmd =
        add("extract", "Extract statement sentences to statements.jsonl");
    bool dump_tokens = false;
    extract_cmd->add_flag("--dump-tokens", dump_tokens,
                          "Also write per-article token files for external taggers");
    add("network", "Build the statement network from extracted statements");
    add("cores", "Decompose the network into k-cores");
    CLI::App* trajectories_cmd =
        add("trajectories", "Write core-rank trajectories over cumulative snapshots");
    std::string nodes_arg;
    trajectories_cmd->add_option("--nodes", nodes_arg,
                                 "Comma-separated node names (default: final top core)");
    add("buckets", "Write hierarchy buckets over per-period networks");
    add("overlap", "Write the bucket overlap series");
    CLI::App* daily_cmd = add("daily-counts", "Write daily edge-event counts per source");
    std::string source_arg;
    daily_cmd->add_option("--source", source_arg, "Only this source (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "run") return cmd_run(args[name]);
        if (name == "ingest-stats") return cmd_ingest_stats(args[name]);
        if (name == "extract") return cmd_extract(args[name], dump_tokens);
        if (name == "network") return cmd_network(args[name]);
        if (name == "cores") return cmd_cores(args[name]);
        if (name == "trajectories") return cmd_trajectories(args[name], nodes_arg);
        if (name == "buckets") return cmd_buckets(args[name]);
        if (name == "overlap") return cmd_overlap(args[name]);
        if (name == "daily-counts") return cmd_daily_counts(args[name], source_arg);
        std::fprintf(stderr, "error: unknown subcommand '%s'\n", name.c_str());
        return 1;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const InternalError& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
}
