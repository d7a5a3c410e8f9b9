#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "partgraph/caps.hpp"
#include "partgraph/errors.hpp"
#include "partgraph/invariants.hpp"
#include "partgraph/level_graph.hpp"
#include "partgraph/motifs.hpp"
#include "partgraph/parallel.hpp"
#include "partgraph/partition.hpp"
#include "partgraph/thresholds.hpp"

namespace partgraph {

/// Coarse positional label. The rules are an operational stand-in for an
/// informal scheme, and every report that uses them carries the tag
/// "atlas-level heuristic". Precedence: axis > axis_near > boundary_front >
/// rear > interior.
enum class Zone { axis, axis_near, boundary_front, rear, interior };

inline constexpr std::array<Zone, 5> all_zones{Zone::axis, Zone::axis_near, Zone::boundary_front,
                                               Zone::rear, Zone::interior};

inline const char* zone_name(Zone z) {
    switch (z) {
        case Zone::axis: return "axis";
        case Zone::axis_near: return "axis_near";
        case Zone::boundary_front: return "boundary_front";
        case Zone::rear: return "rear";
        default: return "interior";
    }
}

inline constexpr const char* kZoneSchemeTag = "atlas-level heuristic";

/// Total, deterministic classification:
///   axis            self-conjugate
///   axis_near       conjugate distance to own conjugate is 2
///   boundary_front  largest part or part count is at least n-2
///   rear            a rectangle, or conjugate distance <= 2 from one
///   interior        everything else
inline Zone classify_zone(const Partition& p) {
    if (p.empty()) throw domain_error("classify_zone requires a nonempty partition");
    const int n = p.total();
    Partition conj = conjugate(p);
    if (p == conj) return Zone::axis;
    if (l1_conjugate_distance(p, conj) == 2) return Zone::axis_near;
    if (p.largest() >= n - 2 || p.part_count() >= n - 2) return Zone::boundary_front;

    bool rectangle = true;
    for (int part : p.parts()) rectangle = rectangle && part == p.largest();
    if (rectangle) return Zone::rear;
    for (int rows = 1; rows <= n; ++rows) {
        if (n % rows != 0) continue;
        Partition rect(std::vector<int>(static_cast<std::size_t>(rows), n / rows));
        if (l1_conjugate_distance(p, rect) <= 2) return Zone::rear;
    }
    return Zone::interior;
}

using ZoneHistogram = std::array<std::int64_t, 5>;

inline ZoneHistogram zone_histogram(const LevelGraph& g) {
    ZoneHistogram hist{};
    for (const Partition& p : g.vertices())
        hist[static_cast<std::size_t>(classify_zone(p))] += 1;
    return hist;
}

inline nlohmann::ordered_json zone_histogram_to_json(const ZoneHistogram& hist) {
    nlohmann::ordered_json j;
    for (Zone z : all_zones) j[zone_name(z)] = hist[static_cast<std::size_t>(z)];
    return j;
}

/// Exact rational, rendered at six decimal places (round half away from
/// zero) without going through floating point.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    std::string render() const {
        bool negative = (num < 0) != (den < 0) && num != 0;
        std::int64_t n = num < 0 ? -num : num;
        std::int64_t d = den < 0 ? -den : den;
        std::int64_t scaled = (n * 1000000 + d / 2) / d;
        std::ostringstream out;
        if (negative) out << '-';
        out << scaled / 1000000 << '.';
        std::string frac = std::to_string(scaled % 1000000);
        out << std::string(6 - frac.size(), '0') << frac;
        return out.str();
    }
};

/// Carrier feature: a named vertex subset of one level, reported through the
/// zone scheme.
struct CarrierFeature {
    std::string name;
    std::vector<Partition> carriers; // vertex order, deduplicated
    ZoneHistogram zones{};
};

struct CarrierReport {
    int n = 0;
    std::vector<CarrierFeature> features;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["n"] = n;
        j["zone_scheme"] = kZoneSchemeTag;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const CarrierFeature& f : features) {
            nlohmann::ordered_json e;
            e["feature"] = f.name;
            nlohmann::ordered_json cs = nlohmann::ordered_json::array();
            for (const Partition& p : f.carriers) cs.push_back(p.to_string());
            e["carriers"] = std::move(cs);
            e["zones"] = zone_histogram_to_json(f.zones);
            rows.push_back(std::move(e));
        }
        j["features"] = std::move(rows);
        return j;
    }
};

namespace detail {

inline CarrierFeature make_feature(std::string name, const LevelGraph& g,
                                   const std::set<int>& ids) {
    CarrierFeature f;
    f.name = std::move(name);
    for (int id : ids) {
        f.carriers.push_back(g.vertex(id));
        f.zones[static_cast<std::size_t>(classify_zone(g.vertex(id)))] += 1;
    }
    return f;
}

} // namespace detail

/// Zone distribution of the extremal carriers (max degree, max local clique)
/// and of the root vertices of each selected motif.
inline CarrierReport carrier_distribution(const LevelGraph& g,
                                          const std::vector<MotifQuery>& motifs,
                                          const Caps& caps = {}, int workers = 1) {
    CarrierReport report;
    report.n = g.n();

    std::vector<int> omega = local_clique_numbers(g, caps, workers);
    int delta = 0, omega_max = 1;
    for (int v = 0; v < g.vertex_count(); ++v) {
        delta = std::max(delta, g.degree(v));
        omega_max = std::max(omega_max, omega[static_cast<std::size_t>(v)]);
    }
    std::set<int> delta_ids, omega_ids;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) == delta) delta_ids.insert(v);
        if (omega[static_cast<std::size_t>(v)] == omega_max) omega_ids.insert(v);
    }
    report.features.push_back(detail::make_feature("max_degree_vertices", g, delta_ids));
    report.features.push_back(detail::make_feature("max_omega_vertices", g, omega_ids));

    for (const MotifQuery& q : motifs) {
        std::set<int> root_ids;
        if (q.is_family()) {
            if (std::optional<Occurrence> occ = q.first_occurrence(g))
                for (const Partition& p : occ->roots(q.shape())) root_ids.insert(g.id_of(p));
        } else {
            for (const Occurrence& occ : find_occurrences(g, q.shape()))
                for (const Partition& p : occ.roots(q.shape())) root_ids.insert(g.id_of(p));
        }
        report.features.push_back(detail::make_feature("motif_roots:" + q.name(), g, root_ids));
    }
    return report;
}

inline CarrierReport carrier_distribution(int n, const std::vector<MotifQuery>& motifs,
                                          const Caps& caps = {}, int workers = 1) {
    return carrier_distribution(LevelGraph::build(n, caps), motifs, caps, workers);
}

/// Numeric sequence kinds understood by growth_profile.
struct ProfileKind {
    enum class Base { vertices, edges, delta, omega, s, motif };
    Base base = Base::vertices;
    std::string motif_name; // for Base::motif

    static ProfileKind parse(const std::string& text) {
        ProfileKind k;
        if (text == "vertices") k.base = Base::vertices;
        else if (text == "edges") k.base = Base::edges;
        else if (text == "delta") k.base = Base::delta;
        else if (text == "omega") k.base = Base::omega;
        else if (text == "s") k.base = Base::s;
        else if (text.rfind("motif:", 0) == 0 && text.size() > 6) {
            k.base = Base::motif;
            k.motif_name = text.substr(6);
        } else {
            throw domain_error("unknown profile kind \"" + text +
                               "\" (expected vertices, edges, delta, omega, s or motif:<name>)");
        }
        return k;
    }

    std::string to_string() const {
        switch (base) {
            case Base::vertices: return "vertices";
            case Base::edges: return "edges";
            case Base::delta: return "delta";
            case Base::omega: return "omega";
            case Base::s: return "s";
            default: return "motif:" + motif_name;
        }
    }
};

inline std::int64_t profile_value(const ProfileKind& kind, const LevelGraph& g,
                                  const TemplateRegistry& registry, const Caps& caps,
                                  int workers) {
    switch (kind.base) {
        case ProfileKind::Base::vertices: return g.vertex_count();
        case ProfileKind::Base::edges: return g.edge_count();
        case ProfileKind::Base::motif: return registry.require(kind.motif_name).count_occurrences(g);
        default: break;
    }
    ExtremalRecord rec = extremal_record_for(g, caps, workers);
    if (kind.base == ProfileKind::Base::delta) return rec.delta;
    if (kind.base == ProfileKind::Base::omega) return rec.omega;
    return rec.s;
}

/// The sequence a_n over [n_from, n_to].
inline std::vector<std::int64_t> growth_profile(const ProfileKind& kind, int n_from, int n_to,
                                                GraphCache& cache, const TemplateRegistry& registry,
                                                int workers = 1) {
    if (n_from < 1 || n_from > n_to)
        throw domain_error("growth_profile requires 1 <= n_from <= n_to");
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(n_to - n_from + 1));
    for (int n = n_from; n <= n_to; ++n)
        out.push_back(profile_value(kind, cache.at(n), registry, cache.caps(), workers));
    return out;
}

/// Pointwise ratios a_n / b_n as exact rationals. A zero denominator at any
/// level is a domain error naming that level.
inline std::vector<Ratio> normalized_profile(const ProfileKind& a, const ProfileKind& b,
                                             int n_from, int n_to, GraphCache& cache,
                                             const TemplateRegistry& registry, int workers = 1) {
    std::vector<std::int64_t> num = growth_profile(a, n_from, n_to, cache, registry, workers);
    std::vector<std::int64_t> den = growth_profile(b, n_from, n_to, cache, registry, workers);
    std::vector<Ratio> out;
    out.reserve(num.size());
    for (std::size_t i = 0; i < num.size(); ++i) {
        if (den[i] == 0)
            throw domain_error("normalized_profile: denominator " + b.to_string() +
                               " is zero at n=" + std::to_string(n_from + static_cast<int>(i)));
        out.push_back(Ratio{num[i], den[i]});
    }
    return out;
}

/// Everything the atlas knows about one level.
struct AtlasRecord {
    int n = 0;
    int vertex_count = 0;
    std::int64_t edge_count = 0;
    ExtremalRecord extremal;
    std::map<int, std::int64_t> degree_spectrum;
    std::vector<std::pair<std::string, std::int64_t>> motif_counts; // registry order
    ZoneHistogram zones{};
    Zone delta_witness_zone = Zone::interior;
    Zone omega_witness_zone = Zone::interior;
    std::vector<std::pair<std::string, Ratio>> profiles;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["n"] = n;
        j["vertex_count"] = vertex_count;
        j["edge_count"] = edge_count;
        j["extremal"] = extremal.to_json();
        nlohmann::ordered_json spectrum = nlohmann::ordered_json::array();
        for (const auto& [deg, count] : degree_spectrum)
            spectrum.push_back(nlohmann::ordered_json::array({deg, count}));
        j["degree_spectrum"] = std::move(spectrum);
        nlohmann::ordered_json counts;
        for (const auto& [name, count] : motif_counts) counts[name] = count;
        j["motif_counts"] = std::move(counts);
        j["zone_histogram"] = zone_histogram_to_json(zones);
        nlohmann::ordered_json carriers;
        carriers["delta_witness"] = zone_name(delta_witness_zone);
        carriers["omega_witness"] = zone_name(omega_witness_zone);
        j["carrier_zones"] = std::move(carriers);
        nlohmann::ordered_json profs;
        for (const auto& [name, ratio] : profiles) profs[name] = ratio.render();
        j["profiles"] = std::move(profs);
        return j;
    }
};

/// One line of the canonical threshold table. status is one of
/// exact_threshold (proved equality), stable_threshold_bounded (stability
/// proved; paper_bound carries the proved bound, value the level this run
/// computed) and atlas_only (first observed occurrence, no persistence claim
/// attached).
struct ThresholdSummaryEntry {
    std::string name;
    std::string status;
    std::optional<int> value;
    std::optional<int> paper_bound;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["name"] = name;
        j["status"] = status;
        j["value"] = value ? nlohmann::ordered_json(*value) : nlohmann::ordered_json(nullptr);
        j["paper_bound"] =
            paper_bound ? nlohmann::ordered_json(*paper_bound) : nlohmann::ordered_json(nullptr);
        return j;
    }
};

struct Atlas {
    int n_from = 0;
    int n_to = 0;
    std::vector<AtlasRecord> records;
    std::vector<ThresholdSummaryEntry> thresholds;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["range"] = nlohmann::ordered_json::array({n_from, n_to});
        nlohmann::ordered_json recs = nlohmann::ordered_json::array();
        for (const AtlasRecord& r : records) recs.push_back(r.to_json());
        j["records"] = std::move(recs);
        nlohmann::ordered_json summary;
        summary["zone_scheme"] = kZoneSchemeTag;
        nlohmann::ordered_json table = nlohmann::ordered_json::array();
        for (const ThresholdSummaryEntry& e : thresholds) table.push_back(e.to_json());
        summary["thresholds"] = std::move(table);
        j["summary"] = std::move(summary);
        return j;
    }

    /// Long-format companion: one row per (n, metric).
    std::string to_csv() const {
        std::ostringstream out;
        out << "n,metric,value\n";
        for (const AtlasRecord& r : records) {
            out << r.n << ",vertex_count," << r.vertex_count << "\n";
            out << r.n << ",edge_count," << r.edge_count << "\n";
            out << r.n << ",delta," << r.extremal.delta << "\n";
            out << r.n << ",omega," << r.extremal.omega << "\n";
            out << r.n << ",s," << r.extremal.s << "\n";
            for (Zone z : all_zones)
                out << r.n << ",zone_" << zone_name(z) << ","
                    << r.zones[static_cast<std::size_t>(z)] << "\n";
            for (const auto& [name, count] : r.motif_counts)
                out << r.n << ",motif_" << name << "," << count << "\n";
            for (const auto& [name, ratio] : r.profiles)
                out << r.n << "," << name << "," << ratio.render() << "\n";
        }
        return out.str();
    }
};

/// Builds one AtlasRecord per level plus the canonical threshold summary,
/// over the selected motifs (typically the full registry). Levels are
/// independent, so the per-level pass is parallel; the summary scans run
/// afterwards on one shared cache.
inline Atlas build_atlas(int n_from, int n_to, const std::vector<MotifQuery>& motifs,
                         const Caps& caps = {}, int workers = 1) {
    if (n_from < 1 || n_from > n_to)
        throw domain_error("build_atlas requires 1 <= n_from <= n_to");

    Atlas atlas;
    atlas.n_from = n_from;
    atlas.n_to = n_to;
    atlas.records.resize(static_cast<std::size_t>(n_to - n_from + 1));

    parallel_for_index(n_to - n_from + 1, workers, [&](int i) {
        int n = n_from + i;
        LevelGraph g = LevelGraph::build(n, caps);
        AtlasRecord rec;
        rec.n = n;
        rec.vertex_count = g.vertex_count();
        rec.edge_count = g.edge_count();
        rec.extremal = extremal_record_for(g, caps);
        rec.degree_spectrum = degree_spectrum(g);
        for (const MotifQuery& q : motifs)
            rec.motif_counts.emplace_back(q.name(), q.count_occurrences(g));
        rec.zones = zone_histogram(g);
        rec.delta_witness_zone = classify_zone(rec.extremal.delta_witness);
        rec.omega_witness_zone = classify_zone(rec.extremal.omega_witness);
        rec.profiles.emplace_back("edges_per_vertex", Ratio{rec.edge_count, rec.vertex_count});
        rec.profiles.emplace_back("delta_per_vertex",
                                  Ratio{rec.extremal.delta, rec.vertex_count});
        atlas.records[static_cast<std::size_t>(i)] = std::move(rec);
    });

    GraphCache cache(caps);
    for (const MotifQuery& q : motifs) {
        ThresholdResult scan = motif_threshold(q, n_to, n_to, cache);
        ThresholdSummaryEntry entry;
        entry.name = q.name();
        entry.value = scan.first_n;
        if (q.is_family()) {
            entry.status = "exact_threshold";
            entry.paper_bound = 4;
        } else if (q.name() == "p2") {
            entry.status = "stable_threshold_bounded";
            entry.paper_bound = 8;
        } else if (q.name() == "e1") {
            entry.status = "stable_threshold_bounded";
            entry.paper_bound = 6;
        } else if (q.name() == "rsq") {
            entry.status = "stable_threshold_bounded";
            entry.paper_bound = 9;
        } else if (q.name() == "k3" || q.name() == "k4" || q.name() == "k5") {
            entry.status = "stable_threshold_bounded";
        } else {
            entry.status = "atlas_only";
        }
        atlas.thresholds.push_back(std::move(entry));
    }
    return atlas;
}

} // namespace partgraph
