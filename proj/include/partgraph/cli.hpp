#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "partgraph/atlas.hpp"
#include "partgraph/caps.hpp"
#include "partgraph/errors.hpp"
#include "partgraph/invariants.hpp"
#include "partgraph/level_graph.hpp"
#include "partgraph/motifs.hpp"
#include "partgraph/overlay.hpp"
#include "partgraph/partition.hpp"
#include "partgraph/thresholds.hpp"

namespace partgraph::cli {

/// Exit statuses: 0 success, 1 usage or domain error, 2 a theorem-backed
/// check failed (an engine bug, never bad input).
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;

namespace detail {

inline void write_output(const std::string& text, const std::string& out_path,
                         std::ostream& stdout_stream) {
    if (out_path.empty()) {
        stdout_stream << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw domain_error("cannot open output file " + out_path);
    file << text;
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

/// CSV path derived from the atlas JSON path: swap a .json suffix, otherwise
/// append .csv.
inline std::string csv_sibling(const std::string& json_path) {
    const std::string suffix = ".json";
    if (json_path.size() > suffix.size() &&
        json_path.compare(json_path.size() - suffix.size(), suffix.size(), suffix) == 0)
        return json_path.substr(0, json_path.size() - suffix.size()) + ".csv";
    return json_path + ".csv";
}

/// Resolves --template arguments: a registry name first, then a file path.
inline MotifQuery resolve_motif(const TemplateRegistry& registry, const std::string& selector) {
    if (const MotifQuery* q = registry.find(selector)) return *q;
    std::ifstream probe(selector);
    if (probe.good()) return MotifQuery::fixed(load_template(selector));
    // Not a file: let require() produce the right name-based error.
    return registry.require(selector);
}

inline std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(text.substr(pos));
            break;
        }
        out.push_back(text.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

} // namespace detail

/// Runs one command. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"partition level-graph engine: builds G_n, certifies translation "
                 "overlays, searches rooted motifs, scans thresholds and emits the atlas"};
    app.require_subcommand(1);
    app.fallthrough(); // global cap/worker flags may follow the subcommand

    Caps caps;
    int workers = 1;
    std::vector<std::string> template_files;
    app.add_option("--partition-cap", caps.partition_cap, "largest n for partition enumeration")
        ->envname("PGATLAS_PARTITION_CAP");
    app.add_option("--graph-cap", caps.graph_cap, "largest level graph to build")
        ->envname("PGATLAS_GRAPH_CAP");
    app.add_option("--clique-cap", caps.clique_level_cap, "largest level for clique computation")
        ->envname("PGATLAS_CLIQUE_CAP");
    app.add_option("--neighborhood-cap", caps.clique_neighborhood_cap,
                   "largest closed neighborhood for the clique solver")
        ->envname("PGATLAS_NEIGHBORHOOD_CAP");
    app.add_option("--verify-cap", caps.verify_cap,
                   "largest source level for all-pairs overlay verification")
        ->envname("PGATLAS_VERIFY_CAP");
    app.add_option("--workers", workers, "worker threads (output is identical for any count)")
        ->check(CLI::PositiveNumber);
    app.add_option("--template-file", template_files,
                   "user template JSON file to register (repeatable)");

    // build
    auto* build_cmd = app.add_subcommand("build", "build G_n and export it");
    int build_n = 0;
    std::string build_format = "json";
    std::string build_out;
    build_cmd->add_option("--n", build_n, "level")->required();
    build_cmd->add_option("--format", build_format, "dot or json");
    build_cmd->add_option("--out", build_out, "output path (default stdout)");

    // invariants
    auto* inv_cmd = app.add_subcommand("invariants", "extremal records and monotonicity");
    int inv_from = 0, inv_to = 0;
    std::string inv_out;
    inv_cmd->add_option("--from", inv_from, "first level")->required();
    inv_cmd->add_option("--to", inv_to, "last level")->required();
    inv_cmd->add_option("--out", inv_out, "output path (default stdout)");

    // verify overlay
    auto* verify_cmd = app.add_subcommand("verify", "certify theorem-backed properties");
    verify_cmd->require_subcommand(1);
    auto* overlay_cmd = verify_cmd->add_subcommand(
        "overlay", "brute-force check that translation embeds G_n into G_{n+|tau|}");
    int overlay_n = 0;
    std::string overlay_tau;
    int overlay_sweep = 0;
    std::string overlay_out;
    overlay_cmd->add_option("--n", overlay_n, "source level")->required();
    auto* tau_opt = overlay_cmd->add_option("--tau", overlay_tau,
                                            "translation type as a partition literal");
    auto* sweep_opt = overlay_cmd->add_option(
        "--sweep", overlay_sweep, "check every tau with 1 <= |tau| <= K");
    tau_opt->excludes(sweep_opt);
    overlay_cmd->add_option("--out", overlay_out, "output path (default stdout)");

    // motif find
    auto* motif_cmd = app.add_subcommand("motif", "rooted motif operations");
    motif_cmd->require_subcommand(1);
    auto* find_cmd = motif_cmd->add_subcommand("find", "search induced rooted occurrences");
    std::string find_template;
    int find_n = 0;
    std::int64_t find_limit = 0;
    std::string find_out;
    find_cmd->add_option("--template", find_template, "registry name or template file")
        ->required();
    find_cmd->add_option("--n", find_n, "level")->required();
    find_cmd->add_option("--limit", find_limit, "stop after this many occurrences")
        ->check(CLI::PositiveNumber);
    find_cmd->add_option("--out", find_out, "output path (default stdout)");

    // threshold motif | extremal
    auto* threshold_cmd = app.add_subcommand("threshold", "first-appearance scans");
    threshold_cmd->require_subcommand(1);
    auto* tmotif_cmd = threshold_cmd->add_subcommand("motif", "first level containing a motif");
    std::string tmotif_template;
    int tmotif_max = 0;
    int tmotif_verify_to = -1;
    std::string tmotif_out;
    tmotif_cmd->add_option("--template", tmotif_template, "registry name or template file")
        ->required();
    tmotif_cmd->add_option("--max-n", tmotif_max, "scan levels 1..max-n")->required();
    tmotif_cmd->add_option("--verify-to", tmotif_verify_to,
                           "confirm occurrence up to this level (default max-n)");
    tmotif_cmd->add_option("--out", tmotif_out, "output path (default stdout)");

    auto* textremal_cmd =
        threshold_cmd->add_subcommand("extremal", "first level with an extremal bound");
    std::string textremal_kind;
    int textremal_bound = 0;
    int textremal_max = 0;
    std::string textremal_out;
    textremal_cmd->add_option("--kind", textremal_kind, "delta, omega or s")->required();
    textremal_cmd->add_option("--bound", textremal_bound, "lower bound to reach")->required();
    textremal_cmd->add_option("--max-n", textremal_max, "scan levels 1..max-n")->required();
    textremal_cmd->add_option("--out", textremal_out, "output path (default stdout)");

    // atlas
    auto* atlas_cmd = app.add_subcommand("atlas", "per-level records plus threshold summary");
    int atlas_from = 0, atlas_to = 0;
    std::string atlas_templates;
    std::string atlas_out;
    atlas_cmd->add_option("--from", atlas_from, "first level")->required();
    atlas_cmd->add_option("--to", atlas_to, "last level")->required();
    atlas_cmd->add_option("--templates", atlas_templates,
                          "comma-separated registry names (default: all registered)");
    atlas_cmd->add_option("--out", atlas_out, "JSON output path; CSV goes next to it")
        ->required();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("pgatlas");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
            out << app.help();
            return kExitOk;
        } catch (const CLI::ParseError& e) {
            err << "usage error: " << e.what() << "\n";
            return kExitUsage;
        }

        TemplateRegistry registry;
        for (const std::string& path : template_files) registry.register_user(load_template(path));

        if (*build_cmd) {
            LevelGraph g = LevelGraph::build(build_n, caps);
            detail::write_output(export_graph(g, build_format), build_out, out);
            return kExitOk;
        }

        if (*inv_cmd) {
            MonotonicityReport report = monotonicity_check(inv_from, inv_to, caps, workers);
            detail::write_output(detail::dump(report.to_json()), inv_out, out);
            if (!report.pass) {
                err << "internal check failed: extremal sequence decreased\n";
                return kExitInternal;
            }
            return kExitOk;
        }

        if (*overlay_cmd) {
            if (tau_opt->count() == 0 && sweep_opt->count() == 0)
                throw domain_error("verify overlay requires --tau or --sweep");
            bool pass = true;
            nlohmann::ordered_json payload;
            if (sweep_opt->count() > 0) {
                if (overlay_sweep < 1) throw domain_error("--sweep must be >= 1");
                nlohmann::ordered_json reports = nlohmann::ordered_json::array();
                for (int k = 1; k <= overlay_sweep; ++k) {
                    for (const Partition& tau : enumerate_partitions(k, caps.partition_cap)) {
                        OverlayReport report = verify_induced_embedding(overlay_n, tau, caps);
                        pass = pass && report.pass();
                        reports.push_back(report.to_json());
                    }
                }
                payload["n"] = overlay_n;
                payload["sweep"] = overlay_sweep;
                payload["pass"] = pass;
                payload["reports"] = std::move(reports);
            } else {
                OverlayReport report =
                    verify_induced_embedding(overlay_n, Partition::parse(overlay_tau), caps);
                pass = report.pass();
                payload = report.to_json();
            }
            detail::write_output(detail::dump(payload), overlay_out, out);
            if (!pass) {
                err << "internal check failed: translation overlay violated\n";
                return kExitInternal;
            }
            return kExitOk;
        }

        if (*find_cmd) {
            MotifQuery query = detail::resolve_motif(registry, find_template);
            LevelGraph g = LevelGraph::build(find_n, caps);
            nlohmann::ordered_json payload;
            payload["template"] = query.name();
            payload["n"] = find_n;
            std::optional<std::int64_t> limit;
            if (find_cmd->count("--limit") > 0) limit = find_limit;
            nlohmann::ordered_json occs = nlohmann::ordered_json::array();
            if (query.is_family()) {
                if (std::optional<Occurrence> occ = query.first_occurrence(g))
                    occs.push_back(occ->to_json(query.shape()));
            } else {
                for (const Occurrence& occ : find_occurrences(g, query.shape(), limit))
                    occs.push_back(occ.to_json(query.shape()));
            }
            payload["count"] = occs.size();
            payload["occurrences"] = std::move(occs);
            detail::write_output(detail::dump(payload), find_out, out);
            return kExitOk;
        }

        if (*tmotif_cmd) {
            MotifQuery query = detail::resolve_motif(registry, tmotif_template);
            GraphCache cache(caps);
            std::optional<int> verify_to;
            if (tmotif_verify_to >= 0) verify_to = tmotif_verify_to;
            ThresholdResult result = motif_threshold(query, tmotif_max, verify_to, cache);
            detail::write_output(detail::dump(result.to_json()), tmotif_out, out);
            return kExitOk;
        }

        if (*textremal_cmd) {
            GraphCache cache(caps);
            ThresholdResult result = extremal_threshold(
                extremal_kind_from_string(textremal_kind), textremal_bound, textremal_max, cache,
                workers);
            detail::write_output(detail::dump(result.to_json()), textremal_out, out);
            return kExitOk;
        }

        if (*atlas_cmd) {
            if (atlas_out.empty()) throw domain_error("atlas requires a nonempty --out path");
            std::vector<MotifQuery> selection;
            if (atlas_templates.empty()) {
                selection = registry.entries();
            } else {
                for (const std::string& name : detail::split_csv(atlas_templates))
                    selection.push_back(registry.require(name));
            }
            Atlas atlas = build_atlas(atlas_from, atlas_to, selection, caps, workers);
            detail::write_output(detail::dump(atlas.to_json()), atlas_out, out);
            detail::write_output(atlas.to_csv(), detail::csv_sibling(atlas_out), out);
            return kExitOk;
        }

        err << "usage error: no command\n";
        return kExitUsage;
    } catch (const internal_check_error& e) {
        err << "internal check failed: " << e.what() << "\n";
        return kExitInternal;
    } catch (const capacity_error& e) {
        err << "capacity error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "unexpected error: " << e.what() << "\n";
        return kExitInternal;
    }
}

} // namespace partgraph::cli
