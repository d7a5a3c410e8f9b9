#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "partgraph/errors.hpp"
#include "partgraph/invariants.hpp"
#include "partgraph/level_graph.hpp"
#include "partgraph/motifs.hpp"

namespace partgraph {

/// Outcome of a first-appearance scan. An absent first_n means "not found up
/// to scanned_to", never nonexistence.
struct ThresholdResult {
    std::string descriptor;
    std::optional<int> first_n;
    int scanned_to = 0;
    std::optional<int> stability_verified_to;
    std::optional<Occurrence> motif_witness;
    std::optional<RootedTemplate> witness_shape; // accompanies motif_witness
    std::optional<ExtremalRecord> extremal_witness;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["descriptor"] = descriptor;
        j["first_n"] = first_n ? nlohmann::ordered_json(*first_n) : nlohmann::ordered_json(nullptr);
        j["scanned_to"] = scanned_to;
        j["stability_verified_to"] = stability_verified_to
                                         ? nlohmann::ordered_json(*stability_verified_to)
                                         : nlohmann::ordered_json(nullptr);
        if (motif_witness && witness_shape)
            j["witness"] = motif_witness->to_json(*witness_shape);
        else if (extremal_witness)
            j["witness"] = extremal_witness->to_json();
        else
            j["witness"] = nullptr;
        return j;
    }
};

/// Scans n = 1..n_max for the first level containing the motif, then
/// confirms occurrence at every level up to verify_to (default n_max). The
/// overlay theorem guarantees the confirmation for any motif found; a level
/// where it goes missing again means an engine bug and throws.
inline ThresholdResult motif_threshold(const MotifQuery& q, int n_max,
                                       std::optional<int> verify_to, GraphCache& cache) {
    if (n_max < 1) throw domain_error("motif_threshold requires n_max >= 1");
    ThresholdResult result;
    result.descriptor = q.name();
    result.scanned_to = n_max;
    result.witness_shape = q.shape();

    for (int n = 1; n <= n_max; ++n) {
        if (n < q.min_level()) continue;
        if (std::optional<Occurrence> occ = q.first_occurrence(cache.at(n))) {
            result.first_n = n;
            result.motif_witness = std::move(occ);
            break;
        }
    }
    if (!result.first_n) return result;

    int confirm_to = verify_to.value_or(n_max);
    if (confirm_to < *result.first_n) confirm_to = *result.first_n;
    for (int m = *result.first_n; m <= confirm_to; ++m) {
        if (!q.first_occurrence(cache.at(m)))
            throw internal_check_error("motif \"" + q.name() + "\" found at n=" +
                                       std::to_string(*result.first_n) +
                                       " but absent at n=" + std::to_string(m));
    }
    result.stability_verified_to = confirm_to;
    return result;
}

enum class ExtremalKind { delta, omega, s };

inline std::string to_string(ExtremalKind kind) {
    switch (kind) {
        case ExtremalKind::delta: return "delta";
        case ExtremalKind::omega: return "omega";
        default: return "s";
    }
}

inline ExtremalKind extremal_kind_from_string(const std::string& text) {
    if (text == "delta") return ExtremalKind::delta;
    if (text == "omega") return ExtremalKind::omega;
    if (text == "s") return ExtremalKind::s;
    throw domain_error("unknown extremal kind \"" + text + "\" (expected delta, omega or s)");
}

/// Smallest n <= n_max with the extremal quantity >= bound. Monotonicity
/// makes the threshold stable; the scan re-verifies nondecrease of the
/// quantity as it goes and treats a decrease as fatal.
inline ThresholdResult extremal_threshold(ExtremalKind kind, int bound, int n_max,
                                          GraphCache& cache, int workers = 1) {
    if (bound < 0) throw domain_error("extremal_threshold requires bound >= 0");
    if (n_max < 1) throw domain_error("extremal_threshold requires n_max >= 1");
    ThresholdResult result;
    result.descriptor = to_string(kind) + ">=" + std::to_string(bound);
    result.scanned_to = n_max;

    int previous = -1;
    for (int n = 1; n <= n_max; ++n) {
        ExtremalRecord rec = extremal_record_for(cache.at(n), cache.caps(), workers);
        int value = kind == ExtremalKind::delta ? rec.delta
                    : kind == ExtremalKind::omega ? rec.omega
                                                  : rec.s;
        if (value < previous)
            throw internal_check_error("extremal sequence " + to_string(kind) +
                                       " decreased between n=" + std::to_string(n - 1) +
                                       " and n=" + std::to_string(n));
        previous = value;
        if (value >= bound) {
            result.first_n = n;
            result.scanned_to = n;
            result.extremal_witness = rec;
            // Nondecrease of the sequence makes the lower bound persist.
            result.stability_verified_to = n;
            break;
        }
    }
    return result;
}

} // namespace partgraph
