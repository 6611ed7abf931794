#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "statementnet/date.hpp"
#include "statementnet/errors.hpp"
#include "statementnet/extract.hpp"
#include "statementnet/io.hpp"

namespace statementnet {

/// Unordered node pair stored with first < second.
struct NamePair {
    std::string first;
    std::string second;

    NamePair() = default;
    NamePair(std::string a, std::string b) {
        if (a == b) throw InternalError("edge endpoints must be distinct: '" + a + "'");
        if (b < a) std::swap(a, b);
        first = std::move(a);
        second = std::move(b);
    }

    bool operator==(const NamePair&) const = default;
    auto operator<=>(const NamePair&) const = default;
};

struct EdgeEvent {
    NamePair endpoints;
    Date date;
    std::string article_id;
    std::size_t sentence_index = 0;

    bool operator==(const EdgeEvent&) const = default;
};

inline bool event_order(const EdgeEvent& a, const EdgeEvent& b) {
    if (a.date != b.date) return a.date < b.date;
    if (a.article_id != b.article_id) return a.article_id < b.article_id;
    if (a.sentence_index != b.sentence_index) return a.sentence_index < b.sentence_index;
    return a.endpoints < b.endpoints;
}

/// All n(n-1)/2 unordered pairs of the statement's entities.
inline std::set<NamePair> pairs_from_statement(const std::vector<std::string>& entities) {
    if (entities.size() < 2)
        throw InternalError("statement has fewer than 2 entities");
    std::set<NamePair> pairs;
    for (std::size_t i = 0; i < entities.size(); ++i)
        for (std::size_t j = i + 1; j < entities.size(); ++j) {
            if (entities[i] == entities[j])
                throw InternalError("statement entities are not distinct: '" + entities[i] + "'");
            pairs.emplace(entities[i], entities[j]);
        }
    return pairs;
}

/// Undirected simple graph plus the dated edge-event log that produced it.
struct StatementNetwork {
    std::set<std::string> nodes;
    std::map<NamePair, std::size_t> simple_edges;  // pair -> event count
    std::vector<EdgeEvent> events;                 // sorted by event_order

    void add_event(EdgeEvent event) {
        nodes.insert(event.endpoints.first);
        nodes.insert(event.endpoints.second);
        ++simple_edges[event.endpoints];
        events.push_back(std::move(event));
    }

    void finish() { std::sort(events.begin(), events.end(), event_order); }

    bool empty() const { return nodes.empty(); }
};

/// Folds statements into a network. When a window is given only events whose
/// article date falls inside it (inclusive) are included.
inline StatementNetwork build_network(const std::vector<DatedStatement>& statements,
                                      const std::optional<DateRange>& window = std::nullopt) {
    StatementNetwork net;
    for (const DatedStatement& ds : statements) {
        if (window && !window->contains(ds.date)) continue;
        for (const NamePair& pair : pairs_from_statement(ds.stmt.entities))
            net.add_event({pair, ds.date, ds.stmt.article_id, ds.stmt.sentence_index});
    }
    net.finish();
    return net;
}

using Adjacency = std::map<std::string, std::set<std::string>>;

inline Adjacency adjacency_of(const StatementNetwork& net) {
    Adjacency adj;
    for (const std::string& n : net.nodes) adj[n];
    for (const auto& [pair, count] : net.simple_edges) {
        (void)count;
        adj[pair.first].insert(pair.second);
        adj[pair.second].insert(pair.first);
    }
    return adj;
}

struct CoreDecomposition {
    std::map<std::string, int> core_number;
    int max_core = 0;
    std::map<int, std::set<std::string>> shells;
};

/// Minimum-degree peeling (bucketed by degree, O(n + m)). Multiplicity is
/// ignored: cores are computed on the simple graph.
inline CoreDecomposition k_core_decompose(const Adjacency& adj) {
    CoreDecomposition result;
    const std::size_t n = adj.size();
    if (n == 0) return result;

    std::vector<const std::string*> names;
    std::map<std::string, std::size_t> index;
    names.reserve(n);
    for (const auto& [name, nbrs] : adj) {
        (void)nbrs;
        index[name] = names.size();
        names.push_back(&name);
    }

    std::vector<std::size_t> degree(n);
    std::size_t max_degree = 0;
    for (std::size_t v = 0; v < n; ++v) {
        degree[v] = adj.at(*names[v]).size();
        max_degree = std::max(max_degree, degree[v]);
    }

    // vert holds vertices sorted by current degree; pos[v] is v's slot and
    // bin[d] the first slot of degree d.
    std::vector<std::size_t> bin(max_degree + 2, 0);
    for (std::size_t v = 0; v < n; ++v) ++bin[degree[v]];
    std::size_t start = 0;
    for (std::size_t d = 0; d <= max_degree; ++d) {
        std::size_t width = bin[d];
        bin[d] = start;
        start += width;
    }
    std::vector<std::size_t> vert(n), pos(n);
    for (std::size_t v = 0; v < n; ++v) {
        pos[v] = bin[degree[v]];
        vert[pos[v]] = v;
        ++bin[degree[v]];
    }
    for (std::size_t d = max_degree + 1; d > 0; --d) bin[d] = bin[d - 1];
    bin[0] = 0;

    std::vector<int> core(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t v = vert[i];
        core[v] = static_cast<int>(degree[v]);
        for (const std::string& uname : adj.at(*names[v])) {
            std::size_t u = index.at(uname);
            if (degree[u] > degree[v]) {
                std::size_t du = degree[u];
                std::size_t pu = pos[u];
                std::size_t pw = bin[du];
                std::size_t w = vert[pw];
                if (u != w) {
                    pos[u] = pw;
                    vert[pu] = w;
                    pos[w] = pu;
                    vert[pw] = u;
                }
                ++bin[du];
                --degree[u];
            }
        }
    }

    for (std::size_t v = 0; v < n; ++v) {
        result.core_number[*names[v]] = core[v];
        result.max_core = std::max(result.max_core, core[v]);
        result.shells[core[v]].insert(*names[v]);
    }
    return result;
}

inline CoreDecomposition k_core_decompose(const StatementNetwork& net) {
    return k_core_decompose(adjacency_of(net));
}

/// Nodes whose core number equals max_core.
inline std::set<std::string> top_core(const CoreDecomposition& d) {
    if (d.core_number.empty()) throw DataError("top core of an empty network");
    return d.shells.at(d.max_core);
}

/// nodeA TAB nodeB TAB event-count, lexicographic pair order.
inline std::string edges_to_tsv(const StatementNetwork& net) {
    std::string out = "# nodeA\tnodeB\tevents\n";
    for (const auto& [pair, count] : net.simple_edges) {
        out += pair.first;
        out += '\t';
        out += pair.second;
        out += '\t';
        out += std::to_string(count);
        out += '\n';
    }
    return out;
}

/// nodeA TAB nodeB TAB date TAB article_id, event order.
inline std::string events_to_tsv(const StatementNetwork& net) {
    std::string out = "# nodeA\tnodeB\tdate\tarticle_id\n";
    for (const EdgeEvent& e : net.events) {
        out += e.endpoints.first;
        out += '\t';
        out += e.endpoints.second;
        out += '\t';
        out += e.date.to_string();
        out += '\t';
        out += e.article_id;
        out += '\n';
    }
    return out;
}

}  // namespace statementnet
