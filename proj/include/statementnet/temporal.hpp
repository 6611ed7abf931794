#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "statementnet/date.hpp"
#include "statementnet/errors.hpp"
#include "statementnet/extract.hpp"
#include "statementnet/graph.hpp"
#include "statementnet/io.hpp"

namespace statementnet {

/// One time slice of a snapshot series: a run of whole calendar months,
/// 1-based index, human-readable label.
struct Period {
    std::size_t index = 0;
    std::string label;
    int first_month = 0;  // month index (year*12 + month-1)
    int month_count = 0;
    bool partial = false;
};

/// Consecutive month blocks covering [range.min, range.max]'s calendar
/// months. A final block truncated by the corpus end is kept and marked.
inline std::vector<Period> make_periods(const DateRange& range, int months_per_period) {
    if (months_per_period < 1) throw ValidationError("months per period must be positive");
    const int base = range.min.month_index();
    const int last = range.max.month_index();
    const int total = last - base + 1;
    const int count = (total + months_per_period - 1) / months_per_period;
    std::vector<Period> periods;
    periods.reserve(std::size_t(count));
    for (int p = 0; p < count; ++p) {
        Period period;
        period.index = std::size_t(p) + 1;
        period.first_month = base + p * months_per_period;
        period.month_count = std::min(months_per_period, total - p * months_per_period);
        period.partial = period.month_count < months_per_period;
        if (months_per_period == 1) {
            period.label = month_label(period.first_month);
        } else {
            period.label = month_label(period.first_month) + ".." +
                           month_label(period.first_month + period.month_count - 1);
            if (period.partial) period.label += " (partial)";
        }
        periods.push_back(std::move(period));
    }
    return periods;
}

enum class SnapshotMode { Cumulative, PerPeriod };

struct Snapshot {
    Period period;
    StatementNetwork network;
};

struct SnapshotSeries {
    int months_per_period = 1;
    SnapshotMode mode = SnapshotMode::Cumulative;
    std::vector<Snapshot> snapshots;

    bool empty() const { return snapshots.empty(); }
};

/// Slices statements into month-block periods over `range` (normally the
/// corpus date range). Cumulative mode folds every earlier period in;
/// per-period mode keeps each block separate.
inline SnapshotSeries build_snapshot_series(const std::vector<DatedStatement>& statements,
                                            const DateRange& range, int months_per_period,
                                            SnapshotMode mode) {
    SnapshotSeries series;
    series.months_per_period = months_per_period;
    series.mode = mode;
    if (statements.empty()) return series;

    std::vector<Period> periods = make_periods(range, months_per_period);
    std::vector<std::vector<const DatedStatement*>> buckets(periods.size());
    const int base = range.min.month_index();
    for (const DatedStatement& ds : statements) {
        int m = ds.date.month_index();
        if (m < base || m > range.max.month_index())
            throw InternalError("statement date " + ds.date.to_string() +
                                " lies outside the series range");
        buckets[std::size_t((m - base) / months_per_period)].push_back(&ds);
    }

    std::vector<const DatedStatement*> running;
    for (std::size_t p = 0; p < periods.size(); ++p) {
        const std::vector<const DatedStatement*>* slice = &buckets[p];
        if (mode == SnapshotMode::Cumulative) {
            running.insert(running.end(), buckets[p].begin(), buckets[p].end());
            slice = &running;
        }
        StatementNetwork net;
        for (const DatedStatement* ds : *slice)
            for (const NamePair& pair : pairs_from_statement(ds->stmt.entities))
                net.add_event({pair, ds->date, ds->stmt.article_id, ds->stmt.sentence_index});
        net.finish();
        series.snapshots.push_back({periods[p], std::move(net)});
    }
    return series;
}

inline std::vector<CoreDecomposition> decompose_series(const SnapshotSeries& series) {
    std::vector<CoreDecomposition> out;
    out.reserve(series.snapshots.size());
    for (const Snapshot& s : series.snapshots) out.push_back(k_core_decompose(s.network));
    return out;
}

struct Trajectory {
    std::string node;
    std::vector<std::pair<std::string, int>> values;  // (period label, core rank)
};

/// Core rank of each requested node in each snapshot; absent nodes rank 0.
inline std::vector<Trajectory> core_rank_trajectories(const SnapshotSeries& series,
                                                      const std::set<std::string>& nodes) {
    std::vector<CoreDecomposition> decs = decompose_series(series);
    std::vector<Trajectory> out;
    out.reserve(nodes.size());
    for (const std::string& node : nodes) {
        Trajectory t;
        t.node = node;
        for (std::size_t i = 0; i < series.snapshots.size(); ++i) {
            auto it = decs[i].core_number.find(node);
            int rank = it == decs[i].core_number.end() ? 0 : it->second;
            t.values.emplace_back(series.snapshots[i].period.label, rank);
        }
        out.push_back(std::move(t));
    }
    return out;
}

struct Emergence {
    std::size_t period_index = 0;
    std::string period_label;
    // True when no period before the final one already contains the final
    // top core (multi-period series only).
    bool only_final = false;
};

/// Earliest period whose top core contains the final snapshot's top core.
inline Emergence top_core_emergence_point(const SnapshotSeries& series) {
    if (series.empty()) throw DataError("emergence of an empty series");
    if (series.mode != SnapshotMode::Cumulative)
        throw ValidationError("emergence requires a cumulative series");
    const Snapshot& last = series.snapshots.back();
    if (last.network.empty()) throw DataError("emergence of an empty final snapshot");

    std::set<std::string> final_top = top_core(k_core_decompose(last.network));
    auto contains_final = [&](const Snapshot& s) {
        if (s.network.empty()) return false;
        std::set<std::string> t = top_core(k_core_decompose(s.network));
        return std::includes(t.begin(), t.end(), final_top.begin(), final_top.end());
    };

    Emergence e;
    for (std::size_t i = 0; i + 1 < series.snapshots.size(); ++i) {
        if (contains_final(series.snapshots[i])) {
            e.period_index = series.snapshots[i].period.index;
            e.period_label = series.snapshots[i].period.label;
            return e;
        }
    }
    e.period_index = last.period.index;
    e.period_label = last.period.label;
    e.only_final = series.snapshots.size() > 1;
    return e;
}

/// Label form: the emergence period, or the sentinel when nothing
/// before the final period qualifies.
inline std::string top_core_emergence(const SnapshotSeries& series) {
    Emergence e = top_core_emergence_point(series);
    return e.only_final ? "never before final" : e.period_label;
}

struct HierarchyBucket {
    Period period;
    int threshold = 0;
    std::set<std::string> members;
};

/// Per-period networks over month blocks; members are nodes whose core
/// number strictly exceeds the threshold.
inline std::vector<HierarchyBucket> hierarchy_buckets(const std::vector<DatedStatement>& statements,
                                                      const DateRange& range, int period_length = 6,
                                                      int threshold = 7) {
    if (threshold < 0) throw ValidationError("bucket threshold must be non-negative");
    SnapshotSeries series =
        build_snapshot_series(statements, range, period_length, SnapshotMode::PerPeriod);
    std::vector<HierarchyBucket> out;
    out.reserve(series.snapshots.size());
    for (const Snapshot& s : series.snapshots) {
        HierarchyBucket b;
        b.period = s.period;
        b.threshold = threshold;
        CoreDecomposition dec = k_core_decompose(s.network);
        for (const auto& [node, core] : dec.core_number)
            if (core > threshold) b.members.insert(node);
        out.push_back(std::move(b));
    }
    return out;
}

enum class OverlapMetric { Jaccard, Containment };

struct OverlapPoint {
    std::string pair_label;
    double percent = 0.0;
    bool both_empty = false;
};

struct OverlapSeries {
    OverlapMetric metric = OverlapMetric::Jaccard;
    std::vector<OverlapPoint> points;
};

/// Percentage overlap of consecutive buckets. Jaccard by default;
/// containment (share of the earlier bucket retained) as an alternative.
/// Two empty buckets give 0, flagged.
inline OverlapSeries overlap_series(const std::vector<HierarchyBucket>& buckets,
                                    OverlapMetric metric = OverlapMetric::Jaccard) {
    if (buckets.size() < 2) throw DataError("need >= 2 periods to compute overlap");
    OverlapSeries series;
    series.metric = metric;
    for (std::size_t i = 0; i + 1 < buckets.size(); ++i) {
        const std::set<std::string>& a = buckets[i].members;
        const std::set<std::string>& b = buckets[i + 1].members;
        OverlapPoint p;
        p.pair_label = buckets[i].period.label + " vs " + buckets[i + 1].period.label;
        std::vector<std::string> inter;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
        if (a.empty() && b.empty()) {
            p.both_empty = true;
            p.percent = 0.0;
        } else if (metric == OverlapMetric::Jaccard) {
            std::size_t uni = a.size() + b.size() - inter.size();
            p.percent = 100.0 * double(inter.size()) / double(uni);
        } else {
            p.percent = a.empty() ? 0.0 : 100.0 * double(inter.size()) / double(a.size());
        }
        series.points.push_back(std::move(p));
    }
    return series;
}

struct DailyEdgeCounts {
    std::string source;
    std::map<Date, std::size_t> counts;

    std::size_t total() const {
        std::size_t t = 0;
        for (const auto& [date, c] : counts) t += c;
        return t;
    }
};

/// Edge events per calendar day for one source, zero-filled across the
/// source's article date range.
inline DailyEdgeCounts daily_edge_counts(const std::vector<DatedStatement>& statements,
                                         const std::string& source, const DateRange& range) {
    DailyEdgeCounts out;
    out.source = source;
    for (Date d = range.min;; d = d.next_day()) {
        out.counts[d] = 0;
        if (d == range.max) break;
    }
    for (const DatedStatement& ds : statements) {
        if (ds.source != source) continue;
        std::size_t n = ds.stmt.entities.size();
        auto it = out.counts.find(ds.date);
        if (it == out.counts.end())
            throw InternalError("statement date " + ds.date.to_string() +
                                " lies outside the range of source '" + source + "'");
        it->second += n * (n - 1) / 2;
    }
    return out;
}

struct DistributionSummary {
    std::size_t days = 0;
    std::size_t total = 0;
    std::size_t min = 0;
    std::size_t max = 0;
    double mean = 0.0;
    std::size_t median = 0;
    std::size_t p90 = 0;
    std::size_t p99 = 0;
    std::map<std::size_t, std::size_t> histogram;  // value -> day count
};

/// Nearest-rank quantile: smallest value with at least p of the mass at or
/// below it.
inline std::size_t nearest_rank(const std::vector<std::size_t>& sorted, double p) {
    if (sorted.empty()) return 0;
    std::size_t rank = std::size_t(std::max(1.0, std::ceil(p * double(sorted.size()))));
    return sorted[rank - 1];
}

inline DistributionSummary distribution_summary(const DailyEdgeCounts& counts) {
    DistributionSummary s;
    s.days = counts.counts.size();
    if (s.days == 0) return s;
    std::vector<std::size_t> values;
    values.reserve(s.days);
    for (const auto& [date, c] : counts.counts) {
        values.push_back(c);
        ++s.histogram[c];
        s.total += c;
    }
    std::sort(values.begin(), values.end());
    s.min = values.front();
    s.max = values.back();
    s.mean = double(s.total) / double(s.days);
    s.median = nearest_rank(values, 0.5);
    s.p90 = nearest_rank(values, 0.9);
    s.p99 = nearest_rank(values, 0.99);
    return s;
}

inline std::string format_percent(double percent) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", percent);
    return buf;
}

/// period,node,core_rank
inline std::string trajectories_to_csv(const std::vector<Trajectory>& trajectories) {
    std::string out = "period,node,core_rank\n";
    if (trajectories.empty()) return out;
    std::size_t periods = trajectories.front().values.size();
    for (std::size_t p = 0; p < periods; ++p) {
        for (const Trajectory& t : trajectories) {
            out += csv_field(t.values[p].first);
            out += ',';
            out += csv_field(t.node);
            out += ',';
            out += std::to_string(t.values[p].second);
            out += '\n';
        }
    }
    return out;
}

/// period,node
inline std::string buckets_to_csv(const std::vector<HierarchyBucket>& buckets) {
    std::string out = "period,node\n";
    for (const HierarchyBucket& b : buckets)
        for (const std::string& node : b.members) {
            out += csv_field(b.period.label);
            out += ',';
            out += csv_field(node);
            out += '\n';
        }
    return out;
}

/// period_pair,percent
inline std::string overlap_to_csv(const OverlapSeries& series) {
    std::string out = "period_pair,percent\n";
    for (const OverlapPoint& p : series.points) {
        out += csv_field(p.pair_label);
        out += ',';
        out += format_percent(p.percent);
        out += '\n';
    }
    return out;
}

/// date,count
inline std::string daily_counts_to_csv(const DailyEdgeCounts& counts) {
    std::string out = "date,count\n";
    for (const auto& [date, c] : counts.counts) {
        out += date.to_string();
        out += ',';
        out += std::to_string(c);
        out += '\n';
    }
    return out;
}

}  // namespace statementnet
