#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "partgraph/caps.hpp"
#include "partgraph/errors.hpp"
#include "partgraph/partition.hpp"

namespace partgraph {

/// The level graph G_n: vertices are the partitions of n in descending
/// lexicographic order, edges join partitions one elementary unit transfer
/// apart. Immutable once built; safe for concurrent readers.
class LevelGraph {
public:
    /// Edges are produced by enumerating unit transfers per vertex and
    /// resolving ids, which is O(p(n) * n^2); the quadratic all-pairs L1 test
    /// is kept to the test suite as an oracle.
    static LevelGraph build(int n, const Caps& caps = {}) {
        if (n < 1) throw domain_error("build_graph requires n >= 1");
        if (n > caps.graph_cap)
            throw capacity_error("build_graph: n=" + std::to_string(n) +
                                 " exceeds graph cap " + std::to_string(caps.graph_cap));
        LevelGraph g;
        g.n_ = n;
        g.vertices_ = enumerate_partitions(n, std::max(caps.partition_cap, caps.graph_cap));
        g.index_.reserve(g.vertices_.size() * 2);
        for (std::size_t i = 0; i < g.vertices_.size(); ++i)
            g.index_.emplace(g.vertices_[i], static_cast<int>(i));
        g.adjacency_.resize(g.vertices_.size());
        std::int64_t degree_sum = 0;
        for (std::size_t i = 0; i < g.vertices_.size(); ++i) {
            std::vector<int>& row = g.adjacency_[i];
            for (const Partition& q : unit_transfer_neighbors(g.vertices_[i])) {
                auto it = g.index_.find(q);
                if (it == g.index_.end())
                    throw internal_check_error("transfer left the level: " + q.to_string());
                row.push_back(it->second);
            }
            std::sort(row.begin(), row.end());
            degree_sum += static_cast<std::int64_t>(row.size());
        }
        g.edge_count_ = degree_sum / 2;
        return g;
    }

    int n() const { return n_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    std::int64_t edge_count() const { return edge_count_; }
    const std::vector<Partition>& vertices() const { return vertices_; }
    const Partition& vertex(int id) const { return vertices_[static_cast<std::size_t>(id)]; }
    const std::vector<int>& neighbors(int id) const {
        return adjacency_[static_cast<std::size_t>(id)];
    }
    int degree(int id) const {
        return static_cast<int>(adjacency_[static_cast<std::size_t>(id)].size());
    }

    /// Vertex id of a partition of n, or -1 when absent (wrong total).
    int id_of(const Partition& p) const {
        auto it = index_.find(p);
        return it == index_.end() ? -1 : it->second;
    }

    bool adjacent(int a, int b) const {
        const std::vector<int>& row = adjacency_[static_cast<std::size_t>(a)];
        return std::binary_search(row.begin(), row.end(), b);
    }

private:
    int n_ = 0;
    std::vector<Partition> vertices_;
    std::unordered_map<Partition, int, PartitionHash> index_;
    std::vector<std::vector<int>> adjacency_;
    std::int64_t edge_count_ = 0;
};

/// Histogram of vertex degrees; the counts sum to p(n).
inline std::map<int, std::int64_t> degree_spectrum(const LevelGraph& g) {
    std::map<int, std::int64_t> hist;
    for (int v = 0; v < g.vertex_count(); ++v) hist[g.degree(v)] += 1;
    return hist;
}

inline nlohmann::ordered_json graph_to_json(const LevelGraph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.n();
    j["vertex_count"] = g.vertex_count();
    nlohmann::ordered_json verts = nlohmann::ordered_json::array();
    for (const Partition& p : g.vertices()) verts.push_back(p.to_string());
    j["vertices"] = std::move(verts);
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (int a = 0; a < g.vertex_count(); ++a)
        for (int b : g.neighbors(a))
            if (a < b) edges.push_back(nlohmann::ordered_json::array({a, b}));
    j["edges"] = std::move(edges);
    return j;
}

inline std::string graph_to_dot(const LevelGraph& g) {
    std::ostringstream out;
    out << "graph G" << g.n() << " {\n";
    for (int v = 0; v < g.vertex_count(); ++v)
        out << "  v" << v << " [label=\"" << g.vertex(v).to_string() << "\"];\n";
    for (int a = 0; a < g.vertex_count(); ++a)
        for (int b : g.neighbors(a))
            if (a < b) out << "  v" << a << " -- v" << b << ";\n";
    out << "}\n";
    return out.str();
}

/// format is "dot" or "json"; anything else is a usage error.
inline std::string export_graph(const LevelGraph& g, const std::string& format) {
    if (format == "dot") return graph_to_dot(g);
    if (format == "json") return graph_to_json(g).dump(2) + "\n";
    throw domain_error("unknown export format \"" + format + "\" (expected dot or json)");
}

/// Builds levels on demand and keeps them; scans that revisit levels share
/// one instance. Not thread-safe: confine a cache to one thread and hand out
/// const references.
class GraphCache {
public:
    explicit GraphCache(const Caps& caps = {}) : caps_(caps) {}

    const LevelGraph& at(int n) {
        auto it = built_.find(n);
        if (it == built_.end()) {
            auto g = std::make_unique<LevelGraph>(LevelGraph::build(n, caps_));
            it = built_.emplace(n, std::move(g)).first;
        }
        return *it->second;
    }

    const Caps& caps() const { return caps_; }

private:
    Caps caps_;
    std::map<int, std::unique_ptr<LevelGraph>> built_;
};

} // namespace partgraph
