#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "statementnet/corpus.hpp"
#include "statementnet/errors.hpp"
#include "statementnet/extract.hpp"
#include "statementnet/graph.hpp"
#include "statementnet/io.hpp"
#include "statementnet/lexicon.hpp"
#include "statementnet/tagging.hpp"
#include "statementnet/temporal.hpp"
#include "statementnet/version.hpp"

namespace statementnet {

struct PipelineConfig {
    std::filesystem::path corpus;
    std::optional<std::filesystem::path> gazetteer;
    std::optional<std::filesystem::path> external_tags;
    std::optional<std::filesystem::path> merge_rules;
    std::optional<std::filesystem::path> lexicon;
    bool quote_trigger = true;
    bool require_both = false;
    bool include_headline = false;
    int snapshot_months = 1;
    int bucket_months = 6;
    int bucket_threshold = 7;
    OverlapMetric overlap_metric = OverlapMetric::Jaccard;
    IngestOptions::OnMalformed on_malformed = IngestOptions::OnMalformed::Fail;
    std::filesystem::path output_dir = "out";
};

namespace detail {

inline std::filesystem::path resolve_path(const std::filesystem::path& base,
                                          const std::string& value) {
    std::filesystem::path p(value);
    if (p.is_absolute()) return p;
    return base / p;
}

}  // namespace detail

/// Reads a JSON config file. Relative paths resolve against the config
/// file's directory; unknown keys are rejected.
inline PipelineConfig load_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const DataError& e) {
        throw ValidationError(e.what());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path.string() + ": invalid JSON: " + e.what());
    }
    if (!j.is_object()) throw ValidationError(path.string() + ": config must be a JSON object");

    static const std::set<std::string> known = {
        "corpus",          "gazetteer",      "external_tags", "merge_rules",
        "lexicon",         "quote_trigger",  "require_both",  "include_headline",
        "snapshot_months", "bucket_months",  "bucket_threshold",
        "overlap_metric",  "on_malformed",   "output_dir",
    };
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.count(key))
            throw ValidationError(path.string() + ": unknown config key '" + key + "'");
    }

    const std::filesystem::path base = path.has_parent_path() ? path.parent_path() : ".";
    PipelineConfig config;

    auto path_of = [&](const char* key) -> std::optional<std::filesystem::path> {
        if (!j.contains(key)) return std::nullopt;
        if (!j[key].is_string())
            throw ValidationError(path.string() + ": '" + key + "' must be a string path");
        return detail::resolve_path(base, j[key].get<std::string>());
    };
    auto bool_of = [&](const char* key, bool fallback) {
        if (!j.contains(key)) return fallback;
        if (!j[key].is_boolean())
            throw ValidationError(path.string() + ": '" + key + "' must be a boolean");
        return j[key].get<bool>();
    };
    auto int_of = [&](const char* key, int fallback) {
        if (!j.contains(key)) return fallback;
        if (!j[key].is_number_integer())
            throw ValidationError(path.string() + ": '" + key + "' must be an integer");
        return j[key].get<int>();
    };

    if (auto p = path_of("corpus"))
        config.corpus = *p;
    else
        throw ValidationError(path.string() + ": missing required key 'corpus'");
    config.gazetteer = path_of("gazetteer");
    config.external_tags = path_of("external_tags");
    config.merge_rules = path_of("merge_rules");
    config.lexicon = path_of("lexicon");
    config.quote_trigger = bool_of("quote_trigger", true);
    config.require_both = bool_of("require_both", false);
    config.include_headline = bool_of("include_headline", false);
    config.snapshot_months = int_of("snapshot_months", 1);
    config.bucket_months = int_of("bucket_months", 6);
    config.bucket_threshold = int_of("bucket_threshold", 7);
    if (j.contains("overlap_metric")) {
        std::string m = j["overlap_metric"].is_string() ? j["overlap_metric"].get<std::string>() : "";
        if (m == "jaccard")
            config.overlap_metric = OverlapMetric::Jaccard;
        else if (m == "containment")
            config.overlap_metric = OverlapMetric::Containment;
        else
            throw ValidationError(path.string() +
                                  ": 'overlap_metric' must be \"jaccard\" or \"containment\"");
    }
    if (j.contains("on_malformed")) {
        std::string m = j["on_malformed"].is_string() ? j["on_malformed"].get<std::string>() : "";
        if (m == "fail")
            config.on_malformed = IngestOptions::OnMalformed::Fail;
        else if (m == "skip")
            config.on_malformed = IngestOptions::OnMalformed::Skip;
        else
            throw ValidationError(path.string() + ": 'on_malformed' must be \"fail\" or \"skip\"");
    }
    if (auto p = path_of("output_dir")) config.output_dir = *p;
    return config;
}

/// Checks paths and numeric parameters before any processing starts.
inline void validate_config(const PipelineConfig& config) {
    namespace fs = std::filesystem;
    if (config.corpus.empty() || !fs::is_regular_file(config.corpus))
        throw ValidationError("corpus file not found: " + config.corpus.string());
    if (config.gazetteer && config.external_tags)
        throw ValidationError("set either 'gazetteer' or 'external_tags', not both");
    if (!config.gazetteer && !config.external_tags)
        throw ValidationError("config must set a tagger: 'gazetteer' or 'external_tags'");
    if (config.gazetteer && !fs::is_regular_file(*config.gazetteer))
        throw ValidationError("gazetteer file not found: " + config.gazetteer->string());
    if (config.external_tags && !fs::is_directory(*config.external_tags))
        throw ValidationError("external tags directory not found: " +
                              config.external_tags->string());
    if (config.merge_rules && !fs::is_regular_file(*config.merge_rules))
        throw ValidationError("merge rules file not found: " + config.merge_rules->string());
    if (config.lexicon && !fs::is_regular_file(*config.lexicon))
        throw ValidationError("lexicon file not found: " + config.lexicon->string());
    if (config.snapshot_months < 1) throw ValidationError("snapshot_months must be >= 1");
    if (config.bucket_months < 1) throw ValidationError("bucket_months must be >= 1");
    if (config.bucket_threshold < 0) throw ValidationError("bucket_threshold must be >= 0");
    if (config.output_dir.empty()) throw ValidationError("output_dir must not be empty");
}

inline nlohmann::json config_to_json(const PipelineConfig& config) {
    nlohmann::json j = {
        {"corpus", config.corpus.string()},
        {"quote_trigger", config.quote_trigger},
        {"require_both", config.require_both},
        {"include_headline", config.include_headline},
        {"snapshot_months", config.snapshot_months},
        {"bucket_months", config.bucket_months},
        {"bucket_threshold", config.bucket_threshold},
        {"overlap_metric",
         config.overlap_metric == OverlapMetric::Jaccard ? "jaccard" : "containment"},
        {"on_malformed",
         config.on_malformed == IngestOptions::OnMalformed::Fail ? "fail" : "skip"},
        {"output_dir", config.output_dir.string()},
    };
    if (config.gazetteer) j["gazetteer"] = config.gazetteer->string();
    if (config.external_tags) j["external_tags"] = config.external_tags->string();
    if (config.merge_rules) j["merge_rules"] = config.merge_rules->string();
    if (config.lexicon) j["lexicon"] = config.lexicon->string();
    return j;
}

inline std::unique_ptr<EntityTagger> make_tagger(const PipelineConfig& config) {
    if (config.gazetteer) return std::make_unique<Gazetteer>(load_gazetteer(*config.gazetteer));
    return std::make_unique<ExternalTags>(*config.external_tags);
}

inline SpeechLexicon make_lexicon(const PipelineConfig& config) {
    SpeechLexicon lex = config.lexicon ? load_lexicon(*config.lexicon) : default_lexicon();
    lex.quote_trigger = config.quote_trigger;
    lex.require_both = config.require_both;
    return lex;
}

inline std::vector<MergeRule> make_merge_rules(const PipelineConfig& config) {
    if (!config.merge_rules) return {};
    return load_merge_rules(*config.merge_rules);
}

inline std::string statements_to_jsonl(const std::vector<DatedStatement>& statements) {
    std::string out;
    for (const DatedStatement& ds : statements) {
        nlohmann::json rec = {{"article_id", ds.stmt.article_id},
                              {"sentence_index", ds.stmt.sentence_index},
                              {"text", ds.stmt.text},
                              {"entities", ds.stmt.entities},
                              {"trigger", ds.stmt.trigger},
                              {"date", ds.date.to_string()},
                              {"source", ds.source}};
        out += rec.dump();
        out += '\n';
    }
    return out;
}

inline std::vector<DatedStatement> statements_from_jsonl(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::vector<DatedStatement> out;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::string_view sv = chomp_cr(line);
        if (sv.empty()) continue;
        try {
            nlohmann::json rec = nlohmann::json::parse(sv);
            DatedStatement ds;
            ds.stmt.article_id = rec.at("article_id").get<std::string>();
            ds.stmt.sentence_index = rec.at("sentence_index").get<std::size_t>();
            ds.stmt.text = rec.at("text").get<std::string>();
            ds.stmt.entities = rec.at("entities").get<std::vector<std::string>>();
            ds.stmt.trigger = rec.at("trigger").get<std::string>();
            ds.date = Date::parse(rec.at("date").get<std::string>());
            ds.source = rec.at("source").get<std::string>();
            if (ds.stmt.entities.size() < 2)
                throw DataError("statement has fewer than 2 entities");
            out.push_back(std::move(ds));
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ": line " + std::to_string(line_number) + ": " +
                            e.what());
        } catch (const DataError& e) {
            throw DataError(path.string() + ": line " + std::to_string(line_number) + ": " +
                            e.what());
        }
    }
    return out;
}

struct StageCounts {
    std::size_t articles = 0;
    std::size_t skipped_lines = 0;
    std::size_t sentences = 0;
    std::size_t statements = 0;
    std::size_t events = 0;
    std::size_t nodes = 0;
    std::size_t simple_edges = 0;
};

struct RunManifest {
    std::string tool_name;
    std::string tool_version;
    std::string corpus_digest;
    nlohmann::json config_snapshot;
    StageCounts counts;
    std::vector<std::string> files;
    std::vector<std::string> empty_by_data;
};

inline nlohmann::json manifest_to_json(const RunManifest& m) {
    return nlohmann::json{
        {"tool", {{"name", m.tool_name}, {"version", m.tool_version}}},
        {"corpus_digest", m.corpus_digest},
        {"config", m.config_snapshot},
        {"counts",
         {{"articles", m.counts.articles},
          {"skipped_lines", m.counts.skipped_lines},
          {"sentences", m.counts.sentences},
          {"statements", m.counts.statements},
          {"events", m.counts.events},
          {"nodes", m.counts.nodes},
          {"simple_edges", m.counts.simple_edges}}},
        {"files", m.files},
        {"empty_by_data", m.empty_by_data},
    };
}

namespace detail {

inline std::string slugify(const std::string& s) {
    std::string out;
    bool pending_sep = false;
    for (char c : s) {
        char l = ascii_lower(c);
        if ((l >= 'a' && l <= 'z') || (l >= '0' && l <= '9')) {
            if (pending_sep && !out.empty()) out += '_';
            pending_sep = false;
            out += l;
        } else {
            pending_sep = true;
        }
    }
    if (out.empty()) out = "source";
    return out;
}

/// Unique report filename per source.
inline std::map<std::string, std::string> daily_count_filenames(const CorpusStats& stats) {
    std::map<std::string, std::string> names;
    std::set<std::string> taken;
    for (const auto& [source, s] : stats.per_source) {
        (void)s;
        std::string slug = slugify(source);
        std::string candidate = slug;
        int suffix = 2;
        while (taken.count(candidate)) candidate = slug + "_" + std::to_string(suffix++);
        taken.insert(candidate);
        names[source] = "daily_counts_" + candidate + ".csv";
    }
    return names;
}

template <typename F>
inline void run_stage(const char* stage, F&& body) {
    try {
        body();
    } catch (const ValidationError& e) {
        throw ValidationError(std::string(stage) + ": " + e.what());
    } catch (const DataError& e) {
        throw DataError(std::string(stage) + ": " + e.what());
    } catch (const InternalError& e) {
        throw InternalError(std::string(stage) + ": " + e.what());
    } catch (const std::exception& e) {
        throw InternalError(std::string(stage) + ": " + e.what());
    }
}

}  // namespace detail

inline nlohmann::json summary_to_json(const CoreDecomposition& dec,
                                      const std::optional<Emergence>& emergence,
                                      const std::vector<HierarchyBucket>& buckets,
                                      const std::optional<OverlapSeries>& overlap,
                                      const std::map<std::string, DistributionSummary>& daily,
                                      const PipelineConfig& config,
                                      const std::vector<std::string>& warnings) {
    nlohmann::json j;
    j["max_core"] = dec.max_core;
    int shell_count = 0;
    for (const auto& [k, shell] : dec.shells) {
        (void)shell;
        if (k > 0) ++shell_count;
    }
    j["shell_count"] = shell_count;
    j["top_core"] = dec.core_number.empty() ? std::set<std::string>{} : top_core(dec);
    if (emergence) {
        j["emergence"] = {{"period", emergence->period_label},
                          {"period_index", emergence->period_index},
                          {"only_final", emergence->only_final}};
    } else {
        j["emergence"] = nullptr;
    }
    j["snapshot_months"] = config.snapshot_months;
    j["bucket_months"] = config.bucket_months;
    j["bucket_threshold"] = config.bucket_threshold;
    nlohmann::json bucket_sizes = nlohmann::json::array();
    for (const HierarchyBucket& b : buckets)
        bucket_sizes.push_back({{"period", b.period.label}, {"size", b.members.size()}});
    j["bucket_sizes"] = bucket_sizes;
    j["overlap_metric"] =
        config.overlap_metric == OverlapMetric::Jaccard ? "jaccard" : "containment";
    if (overlap) {
        nlohmann::json points = nlohmann::json::array();
        for (const OverlapPoint& p : overlap->points)
            points.push_back({{"pair", p.pair_label},
                              {"percent", p.percent},
                              {"both_empty", p.both_empty}});
        j["overlap"] = points;
    } else {
        j["overlap"] = nlohmann::json::array();
    }
    nlohmann::json daily_json = nlohmann::json::object();
    for (const auto& [source, s] : daily) {
        daily_json[source] = {{"days", s.days},   {"total", s.total}, {"min", s.min},
                              {"median", s.median}, {"mean", s.mean},   {"p90", s.p90},
                              {"p99", s.p99},     {"max", s.max}};
    }
    j["daily"] = daily_json;
    j["warnings"] = warnings;
    return j;
}

/// node TAB core_number, plus a max_core header line.
inline std::string cores_to_tsv(const CoreDecomposition& dec) {
    std::string out = "# max_core\t" + std::to_string(dec.max_core) + "\n";
    out += "# node\tcore_number\n";
    for (const auto& [node, core] : dec.core_number) {
        out += node;
        out += '\t';
        out += std::to_string(core);
        out += '\n';
    }
    return out;
}

/// Full corpus-to-report run. Writes every report file plus manifest.json
/// (last); on a stage failure all files written so far are removed.
inline RunManifest run_pipeline(const PipelineConfig& config) {
    namespace fs = std::filesystem;
    validate_config(config);

    RunManifest manifest;
    manifest.tool_name = kToolName;
    manifest.tool_version = kToolVersion;
    manifest.config_snapshot = config_to_json(config);

    fs::create_directories(config.output_dir);
    std::vector<fs::path> written;
    auto emit = [&](const std::string& name, const std::string& content) {
        fs::path p = config.output_dir / name;
        atomic_write_file(p, content);
        written.push_back(p);
        manifest.files.push_back(name);
    };

    try {
        Corpus corpus;
        CorpusStats stats;
        detail::run_stage("ingest", [&] {
            manifest.corpus_digest = fnv1a64_file(config.corpus);
            corpus = ingest_corpus(config.corpus, {config.on_malformed});
            stats = corpus_stats(corpus);
            emit("corpus_stats.json", stats_to_json(stats).dump(2) + "\n");
        });

        ExtractResult extraction;
        detail::run_stage("extract", [&] {
            std::unique_ptr<EntityTagger> tagger = make_tagger(config);
            SpeechLexicon lexicon = make_lexicon(config);
            std::vector<MergeRule> rules = make_merge_rules(config);
            extraction = extract_corpus(corpus, *tagger, lexicon, rules,
                                        {config.include_headline});
            emit("statements.jsonl", statements_to_jsonl(extraction.statements));
        });

        StatementNetwork network;
        detail::run_stage("network", [&] {
            network = build_network(extraction.statements);
            emit("network_edges.tsv", edges_to_tsv(network));
            emit("network_events.tsv", events_to_tsv(network));
        });

        CoreDecomposition decomposition;
        detail::run_stage("cores", [&] {
            decomposition = k_core_decompose(network);
            emit("cores.tsv", cores_to_tsv(decomposition));
        });

        detail::run_stage("dynamics", [&] {
            std::vector<std::string> warnings;
            std::optional<Emergence> emergence;
            std::vector<HierarchyBucket> buckets;
            std::optional<OverlapSeries> overlap;
            std::map<std::string, DistributionSummary> daily;

            if (stats.range && !extraction.statements.empty()) {
                SnapshotSeries series =
                    build_snapshot_series(extraction.statements, *stats.range,
                                          config.snapshot_months, SnapshotMode::Cumulative);
                emergence = top_core_emergence_point(series);
                std::set<std::string> tracked = top_core(decomposition);
                emit("trajectories.csv",
                     trajectories_to_csv(core_rank_trajectories(series, tracked)));
                buckets = hierarchy_buckets(extraction.statements, *stats.range,
                                            config.bucket_months, config.bucket_threshold);
                emit("buckets.csv", buckets_to_csv(buckets));
                if (buckets.size() >= 2) {
                    overlap = overlap_series(buckets, config.overlap_metric);
                    for (const OverlapPoint& p : overlap->points)
                        if (p.both_empty)
                            warnings.push_back("overlap " + p.pair_label +
                                               ": both buckets empty, reported as 0");
                    emit("overlap.csv", overlap_to_csv(*overlap));
                } else {
                    emit("overlap.csv", "period_pair,percent\n");
                    manifest.empty_by_data.push_back("overlap.csv");
                    warnings.push_back("overlap needs >= 2 periods; corpus spans too few months");
                }
            } else {
                emit("trajectories.csv", "period,node,core_rank\n");
                manifest.empty_by_data.push_back("trajectories.csv");
                emit("buckets.csv", "period,node\n");
                manifest.empty_by_data.push_back("buckets.csv");
                emit("overlap.csv", "period_pair,percent\n");
                manifest.empty_by_data.push_back("overlap.csv");
            }

            std::map<std::string, std::string> filenames = detail::daily_count_filenames(stats);
            for (const auto& [source, s] : stats.per_source) {
                DailyEdgeCounts counts =
                    daily_edge_counts(extraction.statements, source, s.range);
                daily[source] = distribution_summary(counts);
                emit(filenames.at(source), daily_counts_to_csv(counts));
            }

            emit("summary.json", summary_to_json(decomposition, emergence, buckets, overlap,
                                                 daily, config, warnings)
                                         .dump(2) +
                                     "\n");
        });

        detail::run_stage("manifest", [&] {
            manifest.counts.articles = corpus.size();
            manifest.counts.skipped_lines = corpus.skipped().size();
            manifest.counts.sentences = extraction.sentence_count;
            manifest.counts.statements = extraction.statements.size();
            manifest.counts.events = network.events.size();
            manifest.counts.nodes = network.nodes.size();
            manifest.counts.simple_edges = network.simple_edges.size();

            std::size_t expected_events = 0;
            for (const DatedStatement& ds : extraction.statements) {
                std::size_t n = ds.stmt.entities.size();
                expected_events += n * (n - 1) / 2;
            }
            if (manifest.counts.events != expected_events)
                throw InternalError("event count " + std::to_string(manifest.counts.events) +
                                    " does not match per-statement pair total " +
                                    std::to_string(expected_events));
            if (manifest.counts.statements > manifest.counts.sentences)
                throw InternalError("statement count exceeds sentence count");
            emit("manifest.json", manifest_to_json(manifest).dump(2) + "\n");
        });
    } catch (...) {
        std::error_code ec;
        for (const fs::path& p : written) fs::remove(p, ec);
        throw;
    }
    return manifest;
}

}  // namespace statementnet
