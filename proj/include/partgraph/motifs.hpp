#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "partgraph/errors.hpp"
#include "partgraph/level_graph.hpp"
#include "partgraph/partition.hpp"

namespace partgraph {

/// A finite rooted graph used as an induced-subgraph pattern. The root data
/// is an ordered tuple of template vertices; a single distinguished vertex is
/// a tuple of length one.
struct RootedTemplate {
    std::string name;
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges; // normalized a < b, sorted, unique
    std::vector<int> roots;                 // ordered, distinct, nonempty
    bool induced = true;
    std::optional<int> min_n;

    bool has_edge(int a, int b) const {
        if (a > b) std::swap(a, b);
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
    }

    int degree(int v) const {
        int d = 0;
        for (const auto& [a, b] : edges)
            if (a == v || b == v) ++d;
        return d;
    }

    static RootedTemplate make(std::string name, int vertices,
                               std::vector<std::pair<int, int>> edges, std::vector<int> roots,
                               std::optional<int> min_n = std::nullopt) {
        RootedTemplate t;
        t.name = std::move(name);
        t.vertex_count = vertices;
        t.edges = std::move(edges);
        t.roots = std::move(roots);
        t.min_n = min_n;
        t.normalize_edges();
        t.validate();
        return t;
    }

    void validate() const {
        if (name.empty()) throw parse_error("template name must be nonempty");
        if (vertex_count < 1)
            throw parse_error("template \"" + name + "\": vertex count must be >= 1");
        std::vector<std::pair<int, int>> seen;
        for (const auto& [a, b] : edges) {
            if (a == b)
                throw parse_error("template \"" + name + "\": self-loop at vertex " +
                                  std::to_string(a));
            if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count)
                throw parse_error("template \"" + name + "\": edge [" + std::to_string(a) + "," +
                                  std::to_string(b) + "] references a vertex out of range");
            std::pair<int, int> norm(std::min(a, b), std::max(a, b));
            if (std::find(seen.begin(), seen.end(), norm) != seen.end())
                throw parse_error("template \"" + name + "\": duplicate edge [" +
                                  std::to_string(norm.first) + "," + std::to_string(norm.second) +
                                  "]");
            seen.push_back(norm);
        }
        if (roots.empty()) throw parse_error("template \"" + name + "\": roots must be nonempty");
        std::vector<int> rs = roots;
        std::sort(rs.begin(), rs.end());
        if (std::adjacent_find(rs.begin(), rs.end()) != rs.end())
            throw parse_error("template \"" + name + "\": duplicate root");
        for (int r : roots)
            if (r < 0 || r >= vertex_count)
                throw parse_error("template \"" + name + "\": root " + std::to_string(r) +
                                  " out of range for " + std::to_string(vertex_count) +
                                  " vertices");
    }

    /// Normalizes edge storage (a < b, sorted ascending). Called after raw
    /// field assembly, before validate().
    void normalize_edges() {
        for (auto& e : edges)
            if (e.first > e.second) std::swap(e.first, e.second);
        std::sort(edges.begin(), edges.end());
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["name"] = name;
        j["vertices"] = vertex_count;
        nlohmann::ordered_json es = nlohmann::ordered_json::array();
        for (const auto& [a, b] : edges) es.push_back(nlohmann::ordered_json::array({a, b}));
        j["edges"] = std::move(es);
        j["roots"] = roots;
        j["min_n"] = min_n ? nlohmann::ordered_json(*min_n) : nlohmann::ordered_json(nullptr);
        return j;
    }
};

/// One induced rooted embedding: the i-th entry is the graph vertex playing
/// template vertex i.
struct Occurrence {
    int n = 0;
    std::vector<Partition> assignment;

    /// Root vertices in root-tuple order.
    std::vector<Partition> roots(const RootedTemplate& t) const {
        std::vector<Partition> out;
        out.reserve(t.roots.size());
        for (int r : t.roots) out.push_back(assignment[static_cast<std::size_t>(r)]);
        return out;
    }

    nlohmann::ordered_json to_json(const RootedTemplate& t) const {
        nlohmann::ordered_json j;
        j["n"] = n;
        nlohmann::ordered_json assign = nlohmann::ordered_json::array();
        for (const Partition& p : assignment) assign.push_back(p.to_string());
        j["assignment"] = std::move(assign);
        nlohmann::ordered_json rs = nlohmann::ordered_json::array();
        for (const Partition& p : roots(t)) rs.push_back(p.to_string());
        j["roots"] = std::move(rs);
        return j;
    }
};

/// True when the assignment realizes every template edge as a graph edge and
/// every template non-edge as a graph non-edge, with distinct vertices of the
/// right level.
inline bool validate_occurrence(const LevelGraph& g, const RootedTemplate& t,
                                const Occurrence& occ) {
    if (occ.n != g.n()) return false;
    if (static_cast<int>(occ.assignment.size()) != t.vertex_count) return false;
    std::vector<int> ids;
    ids.reserve(occ.assignment.size());
    for (const Partition& p : occ.assignment) {
        int id = g.id_of(p);
        if (id < 0) return false;
        ids.push_back(id);
    }
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            if (ids[i] == ids[j]) return false;
            bool want = t.has_edge(static_cast<int>(i), static_cast<int>(j));
            if (g.adjacent(ids[i], ids[j]) != want) return false;
        }
    return true;
}

/// Exact backtracking search for induced rooted copies. Slots are filled in
/// root-tuple order followed by the remaining template vertices ascending;
/// candidates are tried in ascending graph-vertex id. Occurrences are raw
/// assignments: two that differ by a template automorphism count separately.
inline std::vector<Occurrence> find_occurrences(const LevelGraph& g, const RootedTemplate& t,
                                                std::optional<std::int64_t> limit = std::nullopt) {
    std::vector<Occurrence> out;
    if (limit && *limit <= 0) return out;
    if (t.min_n && g.n() < *t.min_n) return out;
    if (t.vertex_count > g.vertex_count()) return out;

    // Slot order: roots first (in tuple order), then non-roots ascending.
    std::vector<int> slot_vertex;
    slot_vertex.reserve(static_cast<std::size_t>(t.vertex_count));
    for (int r : t.roots) slot_vertex.push_back(r);
    for (int v = 0; v < t.vertex_count; ++v)
        if (std::find(t.roots.begin(), t.roots.end(), v) == t.roots.end())
            slot_vertex.push_back(v);

    std::vector<int> chosen(static_cast<std::size_t>(t.vertex_count), -1); // slot -> graph id
    std::vector<int> tdeg(static_cast<std::size_t>(t.vertex_count), 0);
    for (int v = 0; v < t.vertex_count; ++v) tdeg[static_cast<std::size_t>(v)] = t.degree(v);

    auto emit = [&] {
        Occurrence occ;
        occ.n = g.n();
        occ.assignment.resize(static_cast<std::size_t>(t.vertex_count));
        for (std::size_t s = 0; s < slot_vertex.size(); ++s)
            occ.assignment[static_cast<std::size_t>(slot_vertex[s])] = g.vertex(chosen[s]);
        out.push_back(std::move(occ));
    };

    // Recursion depth is bounded by the template size.
    auto search = [&](auto&& self, std::size_t slot) -> bool {
        if (slot == slot_vertex.size()) {
            emit();
            return !(limit && static_cast<std::int64_t>(out.size()) >= *limit);
        }
        int tv = slot_vertex[slot];
        for (int cand = 0; cand < g.vertex_count(); ++cand) {
            if (g.degree(cand) < tdeg[static_cast<std::size_t>(tv)]) continue;
            bool consistent = true;
            for (std::size_t prev = 0; prev < slot; ++prev) {
                int pv = slot_vertex[prev];
                int pid = chosen[prev];
                if (pid == cand) {
                    consistent = false;
                    break;
                }
                if (t.has_edge(pv, tv) != g.adjacent(pid, cand)) {
                    consistent = false;
                    break;
                }
            }
            if (!consistent) continue;
            chosen[slot] = cand;
            if (!self(self, slot + 1)) return false;
            chosen[slot] = -1;
        }
        return true;
    };
    search(search, 0);
    return out;
}

/// A canonical level-dependent motif instance: the rooted template together
/// with its defining vertex assignment at the requested level.
struct CanonicalMotif {
    RootedTemplate tmpl;
    Occurrence occurrence;
};

namespace detail {

inline Partition staircase(int head, int ones) {
    std::vector<int> parts{head};
    parts.insert(parts.end(), static_cast<std::size_t>(ones), 1);
    return Partition(std::move(parts));
}

inline RootedTemplate corner_triangle(const std::string& name) {
    return RootedTemplate::make(name, 3, {{0, 1}, {0, 2}, {1, 2}}, {0, 1, 2}, 4);
}

} // namespace detail

/// Left boundary-corner motif: the triangle on (n-1,1), (n-2,1,1), (n-2,2),
/// rooted at the first with the other two as ordered secondaries.
inline CanonicalMotif canonical_bl1(int n) {
    if (n < 4) throw domain_error("canonical BL1 motif requires n >= 4, got " + std::to_string(n));
    CanonicalMotif m;
    m.tmpl = detail::corner_triangle("bl1");
    m.occurrence.n = n;
    m.occurrence.assignment = {Partition({n - 1, 1}), Partition({n - 2, 1, 1}),
                               Partition({n - 2, 2})};
    return m;
}

/// Right boundary-corner motif: the conjugate triangle on (2,1^{n-2}),
/// (3,1^{n-3}), (2,2,1^{n-4}), rooted at the first.
inline CanonicalMotif canonical_br1(int n) {
    if (n < 4) throw domain_error("canonical BR1 motif requires n >= 4, got " + std::to_string(n));
    CanonicalMotif m;
    m.tmpl = detail::corner_triangle("br1");
    m.occurrence.n = n;
    std::vector<int> c2{2, 2};
    c2.insert(c2.end(), static_cast<std::size_t>(n - 4), 1);
    m.occurrence.assignment = {detail::staircase(2, n - 2), detail::staircase(3, n - 3),
                               Partition(std::move(c2))};
    return m;
}

/// The fixed built-in templates: the weak rooted templates p2, e1 and rsq,
/// plus the simplex witnesses k3, k4, k5.
inline const std::vector<RootedTemplate>& builtin_templates() {
    static const std::vector<RootedTemplate> all = [] {
        std::vector<RootedTemplate> ts;
        // Rooted three-vertex path with the two endpoints as ordered roots.
        ts.push_back(RootedTemplate::make("p2", 3, {{0, 1}, {1, 2}}, {0, 2}));
        // Rooted triangle.
        ts.push_back(RootedTemplate::make("e1", 3, {{0, 1}, {0, 2}, {1, 2}}, {0}));
        // Root q adjacent to exactly u and v; {u,v,w1,w2} span a K4.
        ts.push_back(RootedTemplate::make(
            "rsq", 5,
            {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}, {0}));
        for (int k = 3; k <= 5; ++k) {
            std::vector<std::pair<int, int>> edges;
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b) edges.emplace_back(a, b);
            ts.push_back(RootedTemplate::make("k" + std::to_string(k), k, std::move(edges), {0}));
        }
        return ts;
    }();
    return all;
}

/// Parses and validates a template from its JSON form:
///   {"name":str,"vertices":int,"edges":[[a,b]...],"roots":[r...],"min_n":int|null}
/// min_n may be omitted. Unknown keys are rejected.
inline RootedTemplate template_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object()) throw parse_error(where + ": template must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "name" && key != "vertices" && key != "edges" && key != "roots" &&
            key != "min_n")
            throw parse_error(where + ": unknown key \"" + key + "\"");
    }
    for (const char* key : {"name", "vertices", "edges", "roots"})
        if (!j.contains(key)) throw parse_error(where + ": missing key \"" + std::string(key) + "\"");
    RootedTemplate t;
    if (!j["name"].is_string()) throw parse_error(where + ": \"name\" must be a string");
    t.name = j["name"].get<std::string>();
    if (!j["vertices"].is_number_integer())
        throw parse_error(where + ": \"vertices\" must be an integer");
    t.vertex_count = j["vertices"].get<int>();
    if (!j["edges"].is_array()) throw parse_error(where + ": \"edges\" must be an array");
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
        const auto& e = j["edges"][i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw parse_error(where + ": edges[" + std::to_string(i) +
                              "] must be a pair of integers");
        t.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    if (!j["roots"].is_array()) throw parse_error(where + ": \"roots\" must be an array");
    for (std::size_t i = 0; i < j["roots"].size(); ++i) {
        if (!j["roots"][i].is_number_integer())
            throw parse_error(where + ": roots[" + std::to_string(i) + "] must be an integer");
        t.roots.push_back(j["roots"][i].get<int>());
    }
    if (j.contains("min_n") && !j["min_n"].is_null()) {
        if (!j["min_n"].is_number_integer())
            throw parse_error(where + ": \"min_n\" must be an integer or null");
        t.min_n = j["min_n"].get<int>();
    }
    t.normalize_edges();
    t.validate();
    return t;
}

/// Loads a user template file; errors name the file and, for malformed JSON,
/// the byte position.
inline RootedTemplate load_template(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open template file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(path + ": invalid JSON at byte " + std::to_string(e.byte) + ": " +
                          e.what());
    }
    return template_from_json(j, path);
}

/// How a registry name is evaluated at a level: a fixed template searched
/// generically, or one of the canonical boundary-corner families constructed
/// and validated per level.
class MotifQuery {
public:
    enum class Kind { fixed, bl1_family, br1_family };

    static MotifQuery fixed(RootedTemplate t) {
        MotifQuery q;
        q.kind_ = Kind::fixed;
        q.name_ = t.name;
        q.tmpl_ = std::move(t);
        return q;
    }
    static MotifQuery bl1() {
        MotifQuery q;
        q.kind_ = Kind::bl1_family;
        q.name_ = "bl1";
        q.tmpl_ = detail::corner_triangle("bl1");
        return q;
    }
    static MotifQuery br1() {
        MotifQuery q;
        q.kind_ = Kind::br1_family;
        q.name_ = "br1";
        q.tmpl_ = detail::corner_triangle("br1");
        return q;
    }

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const RootedTemplate& shape() const { return tmpl_; }
    bool is_family() const { return kind_ != Kind::fixed; }

    int min_level() const {
        if (is_family()) return 4;
        return tmpl_.min_n.value_or(1);
    }

    /// First occurrence at this level in deterministic search order, if any.
    /// For the canonical families this is the per-level canonical assignment;
    /// its failure to validate would mean an engine bug.
    std::optional<Occurrence> first_occurrence(const LevelGraph& g) const {
        if (is_family()) {
            if (g.n() < 4) return std::nullopt;
            CanonicalMotif m =
                kind_ == Kind::bl1_family ? canonical_bl1(g.n()) : canonical_br1(g.n());
            if (!validate_occurrence(g, m.tmpl, m.occurrence))
                throw internal_check_error("canonical " + name_ + " assignment invalid at n=" +
                                           std::to_string(g.n()));
            return m.occurrence;
        }
        std::vector<Occurrence> found = find_occurrences(g, tmpl_, 1);
        if (found.empty()) return std::nullopt;
        return found.front();
    }

    /// Raw occurrence count for atlas records; families report canonical
    /// presence as 0 or 1.
    std::int64_t count_occurrences(const LevelGraph& g) const {
        if (is_family()) return first_occurrence(g) ? 1 : 0;
        return static_cast<std::int64_t>(find_occurrences(g, tmpl_).size());
    }

private:
    Kind kind_ = Kind::fixed;
    std::string name_;
    RootedTemplate tmpl_;
};

/// Name-keyed registry: the canonical families, the fixed built-ins, and any
/// user-supplied templates. The atlas-primary names a1, a2, p3, e2 and r_rec
/// are reserved with no built-in definition; they become usable only through
/// a user template file.
class TemplateRegistry {
public:
    TemplateRegistry() {
        entries_.push_back(MotifQuery::bl1());
        entries_.push_back(MotifQuery::br1());
        for (const RootedTemplate& t : builtin_templates())
            entries_.push_back(MotifQuery::fixed(t));
    }

    static const std::vector<std::string>& reserved_names() {
        static const std::vector<std::string> names{"a1", "a2", "p3", "e2", "r_rec"};
        return names;
    }

    const MotifQuery* find(const std::string& name) const {
        for (const MotifQuery& q : entries_)
            if (q.name() == name) return &q;
        return nullptr;
    }

    /// Looks a name up, turning reserved atlas-primary names into a
    /// dedicated error.
    const MotifQuery& require(const std::string& name) const {
        if (const MotifQuery* q = find(name)) return *q;
        const auto& reserved = reserved_names();
        if (std::find(reserved.begin(), reserved.end(), name) != reserved.end())
            throw domain_error("motif \"" + name +
                               "\" is a reserved atlas-primary name with no built-in "
                               "definition; supply a template file");
        throw domain_error("unknown motif \"" + name + "\"");
    }

    /// Registers a user template. Built-in names cannot be shadowed; the
    /// reserved atlas-primary names are exactly what user files are for.
    void register_user(RootedTemplate t) {
        for (const MotifQuery& q : entries_)
            if (q.name() == t.name)
                throw domain_error("template name \"" + t.name + "\" is already registered");
        entries_.push_back(MotifQuery::fixed(std::move(t)));
    }

    const std::vector<MotifQuery>& entries() const { return entries_; }

private:
    std::vector<MotifQuery> entries_;
};

} // namespace partgraph
