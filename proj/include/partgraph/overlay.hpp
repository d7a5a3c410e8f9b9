#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "partgraph/caps.hpp"
#include "partgraph/errors.hpp"
#include "partgraph/level_graph.hpp"
#include "partgraph/motifs.hpp"
#include "partgraph/partition.hpp"

namespace partgraph {

/// Vertexwise Ferrers translation of a whole level, resolved to target ids.
struct OverlayMap {
    int n_source = 0;
    Partition tau;
    int n_target = 0;
    std::vector<std::pair<int, int>> pairs; // (source id, target id), source id ascending
};

inline OverlayMap overlay_map(const LevelGraph& src, const LevelGraph& dst,
                              const Partition& tau) {
    if (dst.n() != src.n() + tau.total())
        throw domain_error("overlay_map: target level must be source + |tau|");
    OverlayMap map;
    map.n_source = src.n();
    map.tau = tau;
    map.n_target = dst.n();
    map.pairs.reserve(static_cast<std::size_t>(src.vertex_count()));
    for (int v = 0; v < src.vertex_count(); ++v) {
        Partition image = ferrers_translate(src.vertex(v), tau);
        int target = dst.id_of(image);
        if (target < 0)
            throw internal_check_error("overlay image missing from target level: " +
                                       image.to_string());
        map.pairs.emplace_back(v, target);
    }
    return map;
}

inline OverlayMap overlay_map(int n, const Partition& tau, const Caps& caps = {}) {
    LevelGraph src = LevelGraph::build(n, caps);
    LevelGraph dst = LevelGraph::build(n + tau.total(), caps);
    return overlay_map(src, dst, tau);
}

/// Certificate for one (n, tau) pair: injectivity plus edge preservation and
/// non-edge reflection over every source pair. The counters cover all
/// C(p(n),2) pairs; violations hold the first ten offending pairs verbatim.
struct OverlayReport {
    int n_source = 0;
    Partition tau;
    int n_target = 0;
    bool injective = true;
    std::int64_t preserved_edges = 0;
    std::int64_t reflected_nonedges = 0;
    std::vector<std::string> violations;
    std::int64_t violation_count = 0;

    bool pass() const { return injective && violation_count == 0; }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["n"] = n_source;
        j["tau"] = tau.to_string();
        j["n_target"] = n_target;
        j["injective"] = injective;
        j["preserved_edges"] = preserved_edges;
        j["reflected_nonedges"] = reflected_nonedges;
        j["violations"] = violations;
        j["violation_count"] = violation_count;
        j["pass"] = pass();
        return j;
    }
};

inline void record_violation(OverlayReport& report, const std::string& text) {
    report.violation_count += 1;
    if (report.violations.size() < 10) report.violations.push_back(text);
}

/// Brute-force certification that translation by tau embeds G_n into
/// G_{n+|tau|} as an induced subgraph. The theorem guarantees a pass; any
/// violation is an engine bug surfaced through the report.
inline OverlayReport verify_induced_embedding(int n, const Partition& tau,
                                              const Caps& caps = {}) {
    if (n > caps.verify_cap)
        throw capacity_error("verify_induced_embedding: n=" + std::to_string(n) +
                             " exceeds verify cap " + std::to_string(caps.verify_cap));
    LevelGraph src = LevelGraph::build(n, caps);
    LevelGraph dst = LevelGraph::build(n + tau.total(), caps);
    OverlayMap map = overlay_map(src, dst, tau);

    OverlayReport report;
    report.n_source = n;
    report.tau = tau;
    report.n_target = dst.n();

    std::unordered_set<int> seen;
    seen.reserve(map.pairs.size() * 2);
    for (const auto& [source, target] : map.pairs) {
        if (!seen.insert(target).second) {
            report.injective = false;
            record_violation(report, "collision: two sources map to " +
                                         dst.vertex(target).to_string());
        }
        (void)source;
    }

    for (int a = 0; a < src.vertex_count(); ++a) {
        for (int b = a + 1; b < src.vertex_count(); ++b) {
            int ia = map.pairs[static_cast<std::size_t>(a)].second;
            int ib = map.pairs[static_cast<std::size_t>(b)].second;
            bool src_edge = src.adjacent(a, b);
            bool dst_edge = dst.adjacent(ia, ib);
            if (src_edge) {
                report.preserved_edges += 1;
                if (!dst_edge)
                    record_violation(report, "edge not preserved: " +
                                                 src.vertex(a).to_string() + " ~ " +
                                                 src.vertex(b).to_string());
            } else {
                report.reflected_nonedges += 1;
                if (dst_edge)
                    record_violation(report, "non-edge not reflected: " +
                                                 src.vertex(a).to_string() + " !~ " +
                                                 src.vertex(b).to_string());
            }
        }
    }
    return report;
}

struct PersistenceLevel {
    int m = 0;
    bool found = false;
    bool translated_witness_valid = false;
    bool ok() const { return found && translated_witness_valid; }
};

/// Persistence certificate for a fixed rooted template: direct search at
/// every level of the range plus validation of the row-translated witness.
struct PersistenceReport {
    std::string template_name;
    int n_found = 0;
    int n_to = 0;
    Occurrence witness; // at level n_found
    std::vector<PersistenceLevel> levels;
    bool pass = true;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["template"] = template_name;
        j["n_found"] = n_found;
        j["n_to"] = n_to;
        j["pass"] = pass;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const PersistenceLevel& lvl : levels) {
            nlohmann::ordered_json e;
            e["n"] = lvl.m;
            e["found"] = lvl.found;
            e["translated_witness_valid"] = lvl.translated_witness_valid;
            rows.push_back(std::move(e));
        }
        j["levels"] = std::move(rows);
        return j;
    }
};

/// Checks that a template found at n_found occurs at every level up to n_to,
/// and that row-translating one witness lands on an actual occurrence.
/// Requires the template to occur at n_found.
inline PersistenceReport persistence_check(const RootedTemplate& t, int n_found, int n_to,
                                           const Caps& caps = {}) {
    if (n_found < 1 || n_found > n_to)
        throw domain_error("persistence_check requires 1 <= n_found <= n_to");
    LevelGraph base = LevelGraph::build(n_found, caps);
    std::vector<Occurrence> found = find_occurrences(base, t, 1);
    if (found.empty())
        throw domain_error("persistence_check: template \"" + t.name +
                           "\" does not occur at n=" + std::to_string(n_found));

    PersistenceReport report;
    report.template_name = t.name;
    report.n_found = n_found;
    report.n_to = n_to;
    report.witness = found.front();

    for (int m = n_found; m <= n_to; ++m) {
        LevelGraph g = LevelGraph::build(m, caps);
        PersistenceLevel lvl;
        lvl.m = m;
        lvl.found = !find_occurrences(g, t, 1).empty();

        Partition shift = m == n_found ? Partition()
                                       : Partition(std::vector<int>{m - n_found});
        Occurrence moved;
        moved.n = m;
        moved.assignment.reserve(report.witness.assignment.size());
        for (const Partition& p : report.witness.assignment)
            moved.assignment.push_back(ferrers_translate(p, shift));
        lvl.translated_witness_valid = validate_occurrence(g, t, moved);

        report.pass = report.pass && lvl.ok();
        report.levels.push_back(lvl);
    }
    return report;
}

} // namespace partgraph
