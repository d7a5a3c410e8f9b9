#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "partgraph/caps.hpp"
#include "partgraph/errors.hpp"
#include "partgraph/level_graph.hpp"
#include "partgraph/parallel.hpp"
#include "partgraph/partition.hpp"

namespace partgraph {

namespace detail {

/// Fixed-size bitset sized at runtime; just enough surface for the clique
/// solver.
class Bits {
public:
    explicit Bits(int capacity = 0)
        : words_(static_cast<std::size_t>((capacity + 63) / 64), 0) {}

    void set(int i) { words_[static_cast<std::size_t>(i) >> 6] |= 1ull << (i & 63); }
    void reset(int i) { words_[static_cast<std::size_t>(i) >> 6] &= ~(1ull << (i & 63)); }
    bool test(int i) const {
        return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1ull;
    }
    bool any() const {
        for (std::uint64_t w : words_)
            if (w) return true;
        return false;
    }
    int count() const {
        int c = 0;
        for (std::uint64_t w : words_) c += std::popcount(w);
        return c;
    }
    int lowest() const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w]) return static_cast<int>(w * 64) + std::countr_zero(words_[w]);
        return -1;
    }
    Bits& operator&=(const Bits& other) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
        return *this;
    }
    void subtract(const Bits& other) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
    }

private:
    std::vector<std::uint64_t> words_;
};

/// Dense adjacency over a small vertex set, addressed 0..size-1.
class DenseSubgraph {
public:
    explicit DenseSubgraph(int size) : size_(size), rows_(static_cast<std::size_t>(size), Bits(size)) {}

    void add_edge(int a, int b) {
        rows_[static_cast<std::size_t>(a)].set(b);
        rows_[static_cast<std::size_t>(b)].set(a);
    }
    const Bits& row(int v) const { return rows_[static_cast<std::size_t>(v)]; }
    int size() const { return size_; }

private:
    int size_;
    std::vector<Bits> rows_;
};

/// Exact maximum clique by branch and bound with greedy-coloring bounds.
/// All tie-breaking is by ascending vertex index, so results and witnesses
/// are deterministic.
class MaxCliqueSolver {
public:
    explicit MaxCliqueSolver(const DenseSubgraph& g) : g_(g) {}

    int solve() {
        best_ = 0;
        Bits all(g_.size());
        for (int v = 0; v < g_.size(); ++v) all.set(v);
        expand(all, 0);
        return best_;
    }

private:
    void expand(const Bits& candidates, int depth) {
        if (depth > best_) best_ = depth;
        if (!candidates.any()) return;

        // Greedy coloring of the candidate set; the color number of a vertex
        // bounds the largest clique extending the current one through it.
        std::vector<int> order;
        std::vector<int> bound;
        Bits uncolored = candidates;
        int color = 0;
        while (uncolored.any()) {
            ++color;
            Bits cls = uncolored;
            while (cls.any()) {
                int v = cls.lowest();
                cls.reset(v);
                cls.subtract(g_.row(v));
                uncolored.reset(v);
                order.push_back(v);
                bound.push_back(color);
            }
        }

        Bits pool = candidates;
        for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
            if (depth + bound[static_cast<std::size_t>(i)] <= best_) return;
            int v = order[static_cast<std::size_t>(i)];
            Bits next = pool;
            next &= g_.row(v);
            expand(next, depth + 1);
            pool.reset(v);
        }
    }

    const DenseSubgraph& g_;
    int best_ = 0;
};

} // namespace detail

/// Exact maximum size of a clique of g containing vertex v. Every clique
/// through v lives inside its closed neighborhood, so the search runs on the
/// induced open neighborhood and adds one for v itself.
inline int local_clique_number(const LevelGraph& g, int v, const Caps& caps = {}) {
    const std::vector<int>& nbrs = g.neighbors(v);
    int closed = static_cast<int>(nbrs.size()) + 1;
    if (closed > caps.clique_neighborhood_cap)
        throw capacity_error("local_clique_number: closed neighborhood of vertex " +
                             std::to_string(v) + " (" + g.vertex(v).to_string() + ") has " +
                             std::to_string(closed) + " vertices, exceeding neighborhood cap " +
                             std::to_string(caps.clique_neighborhood_cap));
    detail::DenseSubgraph sub(static_cast<int>(nbrs.size()));
    for (std::size_t i = 0; i < nbrs.size(); ++i)
        for (std::size_t j = i + 1; j < nbrs.size(); ++j)
            if (g.adjacent(nbrs[i], nbrs[j])) sub.add_edge(static_cast<int>(i), static_cast<int>(j));
    return 1 + detail::MaxCliqueSolver(sub).solve();
}

struct LocalComplexity {
    int vertex = 0;
    int degree = 0;
    int omega_loc = 1;
    int s_loc = 0; // always omega_loc - 1
};

inline LocalComplexity local_complexity(const LevelGraph& g, int v, const Caps& caps = {}) {
    LocalComplexity lc;
    lc.vertex = v;
    lc.degree = g.degree(v);
    lc.omega_loc = local_clique_number(g, v, caps);
    lc.s_loc = lc.omega_loc - 1;
    return lc;
}

/// Per-level extrema with their first witnesses in vertex order (vertex 0 is
/// the descending-lex greatest partition, so "lowest id" is the canonical
/// tie-break).
struct ExtremalRecord {
    int n = 0;
    int delta = 0;
    int omega = 1;
    int s = 0;
    Partition delta_witness;
    Partition omega_witness;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["n"] = n;
        j["delta"] = delta;
        j["omega"] = omega;
        j["s"] = s;
        j["delta_witness"] = delta_witness.to_string();
        j["omega_witness"] = omega_witness.to_string();
        return j;
    }
};

/// Per-vertex clique numbers for the whole level. Computed in parallel when
/// workers > 1; slot-indexed writes keep the result independent of the
/// worker count.
inline std::vector<int> local_clique_numbers(const LevelGraph& g, const Caps& caps = {},
                                             int workers = 1) {
    if (g.n() > caps.clique_level_cap)
        throw capacity_error("clique computation: n=" + std::to_string(g.n()) +
                             " exceeds clique level cap " + std::to_string(caps.clique_level_cap));
    std::vector<int> omega(static_cast<std::size_t>(g.vertex_count()), 1);
    parallel_for_index(g.vertex_count(), workers,
                       [&](int v) { omega[static_cast<std::size_t>(v)] = local_clique_number(g, v, caps); });
    return omega;
}

inline ExtremalRecord extremal_record_for(const LevelGraph& g, const Caps& caps = {},
                                          int workers = 1) {
    std::vector<int> omega = local_clique_numbers(g, caps, workers);
    ExtremalRecord rec;
    rec.n = g.n();
    int delta_id = 0, omega_id = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) > rec.delta) {
            rec.delta = g.degree(v);
            delta_id = v;
        }
        if (omega[static_cast<std::size_t>(v)] > rec.omega) {
            rec.omega = omega[static_cast<std::size_t>(v)];
            omega_id = v;
        }
    }
    rec.s = rec.omega - 1;
    rec.delta_witness = g.vertex(delta_id);
    rec.omega_witness = g.vertex(omega_id);
    return rec;
}

inline ExtremalRecord extremal_record(int n, const Caps& caps = {}, int workers = 1) {
    return extremal_record_for(LevelGraph::build(n, caps), caps, workers);
}

/// One consecutive-level comparison of the three extremal sequences.
struct MonotonicityStep {
    int n_lo = 0;
    int n_hi = 0;
    bool delta_ok = false;
    bool omega_ok = false;
    bool s_ok = false;
    bool ok() const { return delta_ok && omega_ok && s_ok; }
};

struct MonotonicityReport {
    std::vector<ExtremalRecord> records; // one per level in [n_from, n_to]
    std::vector<MonotonicityStep> steps; // empty when the range has one level
    bool pass = true;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["pass"] = pass;
        nlohmann::ordered_json recs = nlohmann::ordered_json::array();
        for (const ExtremalRecord& r : records) recs.push_back(r.to_json());
        j["records"] = std::move(recs);
        nlohmann::ordered_json cmp = nlohmann::ordered_json::array();
        for (const MonotonicityStep& s : steps) {
            nlohmann::ordered_json e;
            e["n_lo"] = s.n_lo;
            e["n_hi"] = s.n_hi;
            e["delta_ok"] = s.delta_ok;
            e["omega_ok"] = s.omega_ok;
            e["s_ok"] = s.s_ok;
            cmp.push_back(std::move(e));
        }
        j["comparisons"] = std::move(cmp);
        return j;
    }
};

/// Verifies that Delta_n, Omega_n and S_n are nondecreasing across the range.
/// A failed step means a bug in the engine, never a property of the graphs;
/// callers treat pass=false as fatal.
inline MonotonicityReport monotonicity_check(int n_from, int n_to, const Caps& caps = {},
                                             int workers = 1) {
    if (n_from < 1 || n_from > n_to)
        throw domain_error("monotonicity_check requires 1 <= n_from <= n_to");
    MonotonicityReport report;
    for (int n = n_from; n <= n_to; ++n)
        report.records.push_back(extremal_record(n, caps, workers));
    for (std::size_t i = 1; i < report.records.size(); ++i) {
        const ExtremalRecord& lo = report.records[i - 1];
        const ExtremalRecord& hi = report.records[i];
        MonotonicityStep step;
        step.n_lo = lo.n;
        step.n_hi = hi.n;
        step.delta_ok = lo.delta <= hi.delta;
        step.omega_ok = lo.omega <= hi.omega;
        step.s_ok = lo.s <= hi.s;
        report.pass = report.pass && step.ok();
        report.steps.push_back(step);
    }
    return report;
}

/// Margin data for one vertex under a fixed translation.
struct TranslationMargin {
    Partition source;
    Partition image;
    int degree_before = 0;
    int degree_after = 0;
    int omega_before = 0;
    int omega_after = 0;
    bool ok() const { return degree_after >= degree_before && omega_after >= omega_before; }
};

struct TranslationCheckReport {
    int n = 0;
    Partition tau;
    std::vector<TranslationMargin> margins;
    bool pass = true;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["n"] = n;
        j["tau"] = tau.to_string();
        j["pass"] = pass;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const TranslationMargin& m : margins) {
            nlohmann::ordered_json e;
            e["vertex"] = m.source.to_string();
            e["image"] = m.image.to_string();
            e["degree_before"] = m.degree_before;
            e["degree_after"] = m.degree_after;
            e["omega_before"] = m.omega_before;
            e["omega_after"] = m.omega_after;
            rows.push_back(std::move(e));
        }
        j["margins"] = std::move(rows);
        return j;
    }
};

/// For every vertex of G_n checks that translating by tau does not decrease
/// the degree or the local clique number at level n+|tau|.
inline TranslationCheckReport local_translation_check(int n, const Partition& tau,
                                                      const Caps& caps = {}, int workers = 1) {
    if (n + tau.total() > caps.clique_level_cap)
        throw capacity_error("local_translation_check: target level " +
                             std::to_string(n + tau.total()) + " exceeds clique level cap " +
                             std::to_string(caps.clique_level_cap));
    LevelGraph src = LevelGraph::build(n, caps);
    LevelGraph dst = LevelGraph::build(n + tau.total(), caps);
    std::vector<int> omega_src = local_clique_numbers(src, caps, workers);

    TranslationCheckReport report;
    report.n = n;
    report.tau = tau;
    report.margins.resize(static_cast<std::size_t>(src.vertex_count()));
    parallel_for_index(src.vertex_count(), workers, [&](int v) {
        TranslationMargin m;
        m.source = src.vertex(v);
        m.image = ferrers_translate(m.source, tau);
        int image_id = dst.id_of(m.image);
        if (image_id < 0)
            throw internal_check_error("translated vertex missing from target level: " +
                                       m.image.to_string());
        m.degree_before = src.degree(v);
        m.degree_after = dst.degree(image_id);
        m.omega_before = omega_src[static_cast<std::size_t>(v)];
        m.omega_after = local_clique_number(dst, image_id, caps);
        report.margins[static_cast<std::size_t>(v)] = std::move(m);
    });
    for (const TranslationMargin& m : report.margins) report.pass = report.pass && m.ok();
    return report;
}

} // namespace partgraph
