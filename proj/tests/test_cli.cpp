#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "partgraph/cli.hpp"

using partgraph::cli::run;

namespace {

struct CliResult {
    int status = 0;
    std::string out;
    std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliResult result;
    result.status = run(args, out, err);
    result.out = out.str();
    result.err = err.str();
    return result;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("cli build") {
    CliResult dot = invoke({"build", "--n", "2", "--format", "dot"});
    REQUIRE(dot.status == 0);
    REQUIRE(dot.out ==
            "graph G2 {\n"
            "  v0 [label=\"2\"];\n"
            "  v1 [label=\"1,1\"];\n"
            "  v0 -- v1;\n"
            "}\n");

    CliResult json = invoke({"build", "--n", "4"});
    REQUIRE(json.status == 0);
    REQUIRE(json.out.find("\"vertex_count\": 5") != std::string::npos);

    CliResult bad = invoke({"build", "--n", "4", "--format", "xml"});
    REQUIRE(bad.status == 1);
}

TEST_CASE("cli usage errors") {
    REQUIRE(invoke({"frobnicate"}).status == 1);
    REQUIRE(invoke({"build"}).status == 1);          // missing --n
    REQUIRE(invoke({"build", "--n", "x"}).status == 1);
    REQUIRE(invoke({"--help"}).status == 0);
    REQUIRE(invoke({}).status == 1);
}

TEST_CASE("cli verify overlay") {
    CliResult single = invoke({"verify", "overlay", "--n", "4", "--tau", "1"});
    REQUIRE(single.status == 0);
    REQUIRE(single.out.find("\"pass\": true") != std::string::npos);

    CliResult sweep = invoke({"verify", "overlay", "--n", "3", "--sweep", "2"});
    REQUIRE(sweep.status == 0);
    // p(1) + p(2) = 3 translation types.
    REQUIRE(sweep.out.find("\"sweep\": 2") != std::string::npos);
    std::size_t count = 0, pos = 0;
    while ((pos = sweep.out.find("\"n_target\"", pos)) != std::string::npos) {
        ++count;
        pos += 10;
    }
    REQUIRE(count == 3);

    REQUIRE(invoke({"verify", "overlay", "--n", "4"}).status == 1);
    REQUIRE(invoke({"verify", "overlay", "--n", "4", "--tau", "bogus"}).status == 1);
    REQUIRE(invoke({"verify", "overlay", "--n", "13", "--tau", "1"}).status == 1); // cap
}

TEST_CASE("cli motif find") {
    CliResult e1 = invoke({"motif", "find", "--template", "e1", "--n", "6"});
    REQUIRE(e1.status == 0);
    REQUIRE(e1.out.find("\"2,2,2\"") != std::string::npos);

    CliResult limited = invoke({"motif", "find", "--template", "e1", "--n", "6", "--limit", "2"});
    REQUIRE(limited.status == 0);
    REQUIRE(limited.out.find("\"count\": 2") != std::string::npos);

    CliResult family = invoke({"motif", "find", "--template", "bl1", "--n", "4"});
    REQUIRE(family.status == 0);
    REQUIRE(family.out.find("\"count\": 1") != std::string::npos);
    REQUIRE(family.out.find("\"3,1\"") != std::string::npos);

    REQUIRE(invoke({"motif", "find", "--template", "nosuch", "--n", "4"}).status == 1);
    CliResult reserved = invoke({"motif", "find", "--template", "p3", "--n", "4"});
    REQUIRE(reserved.status == 1);
    REQUIRE(reserved.err.find("atlas-primary") != std::string::npos);
}

TEST_CASE("cli thresholds") {
    CliResult bl1 = invoke({"threshold", "motif", "--template", "bl1", "--max-n", "10"});
    REQUIRE(bl1.status == 0);
    REQUIRE(bl1.out.find("\"first_n\": 4") != std::string::npos);

    CliResult delta = invoke(
        {"threshold", "extremal", "--kind", "delta", "--bound", "3", "--max-n", "10"});
    REQUIRE(delta.status == 0);
    REQUIRE(delta.out.find("\"first_n\": 4") != std::string::npos);

    REQUIRE(invoke({"threshold", "extremal", "--kind", "volume", "--bound", "1", "--max-n", "5"})
                .status == 1);
}

TEST_CASE("cli invariants") {
    CliResult inv = invoke({"invariants", "--from", "1", "--to", "5"});
    REQUIRE(inv.status == 0);
    REQUIRE(inv.out.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("cli atlas writes json and csv") {
    std::filesystem::path json_path =
        std::filesystem::temp_directory_path() / "partgraph_cli_atlas.json";
    std::filesystem::path csv_path =
        std::filesystem::temp_directory_path() / "partgraph_cli_atlas.csv";

    CliResult first = invoke({"atlas", "--from", "4", "--to", "5", "--out", json_path.string()});
    REQUIRE(first.status == 0);
    std::string json_bytes = slurp(json_path);
    std::string csv_bytes = slurp(csv_path);
    REQUIRE(json_bytes.find("\"zone_scheme\": \"atlas-level heuristic\"") != std::string::npos);
    REQUIRE(csv_bytes.rfind("n,metric,value\n", 0) == 0);

    CliResult second = invoke({"atlas", "--from", "4", "--to", "5", "--out", json_path.string()});
    REQUIRE(second.status == 0);
    REQUIRE(slurp(json_path) == json_bytes);
    REQUIRE(slurp(csv_path) == csv_bytes);

    std::filesystem::remove(json_path);
    std::filesystem::remove(csv_path);

    CliResult selected = invoke({"atlas", "--from", "4", "--to", "4", "--templates", "bl1,e1",
                                 "--out", json_path.string()});
    REQUIRE(selected.status == 0);
    std::string selected_bytes = slurp(json_path);
    REQUIRE(selected_bytes.find("\"bl1\"") != std::string::npos);
    REQUIRE(selected_bytes.find("\"rsq\"") == std::string::npos);
    std::filesystem::remove(json_path);
    std::filesystem::remove(csv_path);
}

TEST_CASE("cli user templates") {
    std::filesystem::path tpl = std::filesystem::temp_directory_path() / "partgraph_cli_sq.json";
    {
        std::ofstream out(tpl);
        out << R"({"name":"a1","vertices":2,"edges":[[0,1]],"roots":[0]})";
    }
    CliResult find = invoke({"--template-file", tpl.string(), "motif", "find", "--template", "a1",
                             "--n", "3"});
    REQUIRE(find.status == 0);
    REQUIRE(find.out.find("\"template\": \"a1\"") != std::string::npos);

    CliResult direct = invoke({"motif", "find", "--template", tpl.string(), "--n", "3"});
    REQUIRE(direct.status == 0);

    std::filesystem::remove(tpl);
    REQUIRE(invoke({"--template-file", tpl.string(), "build", "--n", "2"}).status == 1);
}

TEST_CASE("cli atlas with a user template") {
    std::filesystem::path tpl = std::filesystem::temp_directory_path() / "partgraph_cli_p3.json";
    {
        std::ofstream out(tpl);
        out << R"({"name":"p3","vertices":4,"edges":[[0,1],[1,2],[2,3]],"roots":[0,3]})";
    }
    std::filesystem::path json_path =
        std::filesystem::temp_directory_path() / "partgraph_cli_user_atlas.json";
    std::filesystem::path csv_path =
        std::filesystem::temp_directory_path() / "partgraph_cli_user_atlas.csv";

    CliResult r = invoke({"--template-file", tpl.string(), "atlas", "--from", "4", "--to", "4",
                          "--templates", "bl1,p3", "--out", json_path.string()});
    REQUIRE(r.status == 0);
    std::string json_bytes = slurp(json_path);
    REQUIRE(json_bytes.find("\"status\": \"atlas_only\"") != std::string::npos);
    // G_4 has exactly one induced four-vertex path, counted in both root orders.
    REQUIRE(slurp(csv_path).find("4,motif_p3,2\n") != std::string::npos);

    std::filesystem::remove(tpl);
    std::filesystem::remove(json_path);
    std::filesystem::remove(csv_path);
}

TEST_CASE("cli caps and env precedence") {
    REQUIRE(invoke({"build", "--n", "41"}).status == 1);
    REQUIRE(invoke({"build", "--n", "12", "--graph-cap", "11"}).status == 1);

    ::setenv("PGATLAS_GRAPH_CAP", "5", 1);
    REQUIRE(invoke({"build", "--n", "6"}).status == 1);
    // Flags beat the environment.
    REQUIRE(invoke({"build", "--n", "6", "--graph-cap", "10"}).status == 0);
    ::unsetenv("PGATLAS_GRAPH_CAP");
    REQUIRE(invoke({"build", "--n", "6"}).status == 0);
}

TEST_CASE("cli output is deterministic") {
    REQUIRE(invoke({"atlas", "--from", "1", "--to", "3", "--out", ""}).status == 1);
    CliResult b = invoke({"motif", "find", "--template", "rsq", "--n", "9"});
    CliResult c = invoke({"motif", "find", "--template", "rsq", "--n", "9"});
    REQUIRE(b.status == 0);
    REQUIRE(b.out == c.out);

    CliResult w1 = invoke({"invariants", "--from", "1", "--to", "8", "--workers", "1"});
    CliResult w4 = invoke({"invariants", "--from", "1", "--to", "8", "--workers", "4"});
    REQUIRE(w1.status == 0);
    REQUIRE(w1.out == w4.out);
}
