#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "partgraph/motifs.hpp"

#include "oracles.hpp"

using namespace partgraph;

namespace {

Partition P(const std::string& literal) { return Partition::parse(literal); }

Occurrence occ_of(int n, const std::vector<std::string>& literals) {
    Occurrence occ;
    occ.n = n;
    for (const std::string& s : literals) occ.assignment.push_back(P(s));
    return occ;
}

const RootedTemplate& builtin(const std::string& name) {
    for (const RootedTemplate& t : builtin_templates())
        if (t.name == name) return t;
    throw std::runtime_error("missing builtin " + name);
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    std::filesystem::path path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << text;
    return path;
}

std::vector<std::vector<int>> as_id_tuples(const LevelGraph& g,
                                           const std::vector<Occurrence>& occs) {
    std::vector<std::vector<int>> out;
    for (const Occurrence& occ : occs) {
        std::vector<int> ids;
        for (const Partition& p : occ.assignment) ids.push_back(g.id_of(p));
        out.push_back(std::move(ids));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("canonical boundary corner motifs") {
    CanonicalMotif bl4 = canonical_bl1(4);
    REQUIRE(bl4.occurrence.assignment ==
            std::vector<Partition>{P("3,1"), P("2,1,1"), P("2,2")});
    REQUIRE(bl4.tmpl.roots == std::vector<int>{0, 1, 2});

    CanonicalMotif bl5 = canonical_bl1(5);
    REQUIRE(bl5.occurrence.assignment ==
            std::vector<Partition>{P("4,1"), P("3,1,1"), P("3,2")});

    CanonicalMotif br4 = canonical_br1(4);
    REQUIRE(br4.occurrence.assignment ==
            std::vector<Partition>{P("2,1,1"), P("3,1"), P("2,2")});

    CanonicalMotif br6 = canonical_br1(6);
    REQUIRE(br6.occurrence.assignment ==
            std::vector<Partition>{P("2,1,1,1,1"), P("3,1,1,1"), P("2,2,1,1")});

    REQUIRE_THROWS_AS(canonical_bl1(3), domain_error);
    REQUIRE_THROWS_AS(canonical_br1(3), domain_error);
}

TEST_CASE("BR1 assignments are the conjugates of BL1") {
    for (int n = 4; n <= 20; ++n) {
        CanonicalMotif bl = canonical_bl1(n);
        CanonicalMotif br = canonical_br1(n);
        for (std::size_t i = 0; i < 3; ++i)
            REQUIRE(br.occurrence.assignment[i] == conjugate(bl.occurrence.assignment[i]));
    }
}

TEST_CASE("canonical assignments validate as induced triangles") {
    for (int n = 4; n <= 20; ++n) {
        LevelGraph g = LevelGraph::build(n);
        CanonicalMotif bl = canonical_bl1(n);
        CanonicalMotif br = canonical_br1(n);
        REQUIRE(validate_occurrence(g, bl.tmpl, bl.occurrence));
        REQUIRE(validate_occurrence(g, br.tmpl, br.occurrence));
    }
}

TEST_CASE("builtin template shapes") {
    const RootedTemplate& p2 = builtin("p2");
    REQUIRE(p2.vertex_count == 3);
    REQUIRE(p2.edges.size() == 2);
    REQUIRE(p2.roots == std::vector<int>{0, 2});

    const RootedTemplate& e1 = builtin("e1");
    REQUIRE(e1.vertex_count == 3);
    REQUIRE(e1.edges.size() == 3);
    REQUIRE(e1.roots == std::vector<int>{0});

    const RootedTemplate& rsq = builtin("rsq");
    REQUIRE(rsq.vertex_count == 5);
    REQUIRE(rsq.edges.size() == 8);
    REQUIRE(rsq.roots == std::vector<int>{0});
    // Root adjacent to exactly u and v; the other four span a K4.
    REQUIRE(rsq.degree(0) == 2);
    for (int v = 1; v <= 4; ++v) REQUIRE(rsq.degree(v) >= 3);

    REQUIRE(builtin("k3").edges.size() == 3);
    REQUIRE(builtin("k4").edges.size() == 6);
    REQUIRE(builtin("k5").edges.size() == 10);
}

TEST_CASE("documented realizations are found") {
    LevelGraph g8 = LevelGraph::build(8);
    Occurrence p2_occ = occ_of(8, {"3,3,2", "4,3,1", "4,2,1,1"});
    REQUIRE(validate_occurrence(g8, builtin("p2"), p2_occ));
    auto p2_all = find_occurrences(g8, builtin("p2"));
    bool p2_listed = false;
    for (const Occurrence& occ : p2_all) p2_listed = p2_listed || occ.assignment == p2_occ.assignment;
    REQUIRE(p2_listed);

    LevelGraph g6 = LevelGraph::build(6);
    Occurrence e1_occ = occ_of(6, {"2,2,2", "3,2,1", "2,2,1,1"});
    REQUIRE(validate_occurrence(g6, builtin("e1"), e1_occ));

    LevelGraph g9 = LevelGraph::build(9);
    Occurrence rsq_occ = occ_of(9, {"3,3,3", "4,3,2", "3,3,2,1", "4,3,1,1", "4,2,2,1"});
    REQUIRE(validate_occurrence(g9, builtin("rsq"), rsq_occ));
    auto rsq_all = find_occurrences(g9, builtin("rsq"));
    bool rsq_listed = false;
    for (const Occurrence& occ : rsq_all)
        rsq_listed = rsq_listed || occ.assignment == rsq_occ.assignment;
    REQUIRE(rsq_listed);
}

TEST_CASE("backtracking equals naive tuple enumeration") {
    const RootedTemplate square =
        RootedTemplate::make("square", 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {0});
    for (int n = 1; n <= 8; ++n) {
        LevelGraph g = LevelGraph::build(n);
        for (const RootedTemplate* t : std::initializer_list<const RootedTemplate*>{
                 &builtin("p2"), &builtin("e1"), &builtin("k3"), &builtin("k4"), &square}) {
            auto fast = as_id_tuples(g, find_occurrences(g, *t));
            REQUIRE(fast == oracles::naive_occurrences(g, *t));
        }
    }
}

TEST_CASE("every reported occurrence re-validates") {
    LevelGraph g7 = LevelGraph::build(7);
    for (const RootedTemplate& t : builtin_templates())
        for (const Occurrence& occ : find_occurrences(g7, t))
            REQUIRE(validate_occurrence(g7, t, occ));
}

TEST_CASE("occurrences translate to occurrences") {
    for (int n = 4; n <= 8; ++n) {
        LevelGraph g = LevelGraph::build(n);
        for (const RootedTemplate* t : {&builtin("p2"), &builtin("e1")}) {
            auto occs = find_occurrences(g, *t, 5);
            for (int k = 1; k <= 3; ++k)
                for (const Partition& tau : enumerate_partitions(k)) {
                    LevelGraph target = LevelGraph::build(n + k);
                    for (const Occurrence& occ : occs) {
                        Occurrence moved;
                        moved.n = n + k;
                        for (const Partition& p : occ.assignment)
                            moved.assignment.push_back(ferrers_translate(p, tau));
                        REQUIRE(validate_occurrence(target, *t, moved));
                    }
                }
        }
    }
}

TEST_CASE("search is deterministic and honors limits") {
    LevelGraph g8 = LevelGraph::build(8);
    auto first = find_occurrences(g8, builtin("e1"));
    auto second = find_occurrences(g8, builtin("e1"));
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i)
        REQUIRE(first[i].assignment == second[i].assignment);

    auto limited = find_occurrences(g8, builtin("e1"), 3);
    REQUIRE(limited.size() == 3);
    for (std::size_t i = 0; i < limited.size(); ++i)
        REQUIRE(limited[i].assignment == first[i].assignment);
}

TEST_CASE("template files") {
    auto square = write_temp("partgraph_square.json",
                             R"({"name":"sq","vertices":4,"edges":[[0,1],[1,2],[2,3],[0,3]],)"
                             R"("roots":[0],"min_n":null})");
    RootedTemplate t = load_template(square.string());
    REQUIRE(t.vertex_count == 4);
    REQUIRE(t.edges.size() == 4);
    std::filesystem::remove(square);

    auto self_loop = write_temp("partgraph_loop.json",
                                R"({"name":"bad","vertices":2,"edges":[[0,0]],"roots":[0]})");
    REQUIRE_THROWS_AS(load_template(self_loop.string()), parse_error);
    std::filesystem::remove(self_loop);

    auto root_range = write_temp("partgraph_root.json",
                                 R"({"name":"bad","vertices":3,"edges":[[0,1]],"roots":[5]})");
    REQUIRE_THROWS_WITH(load_template(root_range.string()),
                        Catch::Matchers::ContainsSubstring("out of range"));
    std::filesystem::remove(root_range);

    auto dup_edge = write_temp("partgraph_dup.json",
                               R"({"name":"bad","vertices":3,"edges":[[0,1],[1,0]],"roots":[0]})");
    REQUIRE_THROWS_WITH(load_template(dup_edge.string()),
                        Catch::Matchers::ContainsSubstring("duplicate edge"));
    std::filesystem::remove(dup_edge);

    auto unknown_key = write_temp("partgraph_key.json",
                                  R"({"name":"bad","vertices":2,"edges":[],"roots":[0],"x":1})");
    REQUIRE_THROWS_WITH(load_template(unknown_key.string()),
                        Catch::Matchers::ContainsSubstring("unknown key"));
    std::filesystem::remove(unknown_key);

    auto broken = write_temp("partgraph_broken.json", "{\"name\": ");
    REQUIRE_THROWS_WITH(load_template(broken.string()),
                        Catch::Matchers::ContainsSubstring("byte"));
    std::filesystem::remove(broken);

    REQUIRE_THROWS_AS(load_template("/nonexistent/file.json"), parse_error);
}

TEST_CASE("registry lookup and reserved names") {
    TemplateRegistry registry;
    REQUIRE(registry.find("e1") != nullptr);
    REQUIRE(registry.find("bl1") != nullptr);
    REQUIRE(registry.find("a1") == nullptr);
    REQUIRE_THROWS_WITH(registry.require("p3"),
                        Catch::Matchers::ContainsSubstring("atlas-primary"));
    REQUIRE_THROWS_WITH(registry.require("nope"), Catch::Matchers::ContainsSubstring("unknown"));

    RootedTemplate shadow = RootedTemplate::make("e1", 3, {{0, 1}}, {0});
    REQUIRE_THROWS_AS(registry.register_user(shadow), domain_error);

    RootedTemplate a1 = RootedTemplate::make("a1", 2, {{0, 1}}, {0});
    registry.register_user(a1);
    REQUIRE(registry.require("a1").name() == "a1");
}

TEST_CASE("motif queries for the canonical families") {
    MotifQuery bl1 = MotifQuery::bl1();
    REQUIRE(bl1.min_level() == 4);

    LevelGraph g3 = LevelGraph::build(3);
    REQUIRE_FALSE(bl1.first_occurrence(g3).has_value());
    REQUIRE(bl1.count_occurrences(g3) == 0);

    LevelGraph g4 = LevelGraph::build(4);
    auto occ = bl1.first_occurrence(g4);
    REQUIRE(occ.has_value());
    REQUIRE(occ->assignment == canonical_bl1(4).occurrence.assignment);
    REQUIRE(bl1.count_occurrences(g4) == 1);

    MotifQuery e1 = MotifQuery::fixed(builtin("e1"));
    REQUIRE(e1.min_level() == 1);
    REQUIRE(e1.count_occurrences(g4) > 0);
}
