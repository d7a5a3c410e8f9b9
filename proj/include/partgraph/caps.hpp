#pragma once

namespace partgraph {

/// Resource limits for the expensive operations. Every limit can be raised
/// explicitly; the defaults keep casual runs inside sane memory and time.
struct Caps {
    /// Largest n accepted by enumerate_partitions (p(60) = 966,467).
    int partition_cap = 60;
    /// Largest level for which a full level graph is built.
    int graph_cap = 40;
    /// Largest level for which per-vertex clique numbers are computed.
    int clique_level_cap = 25;
    /// Largest closed neighborhood handed to the exact clique solver.
    int clique_neighborhood_cap = 64;
    /// Largest source level for all-pairs embedding verification.
    int verify_cap = 12;
};

} // namespace partgraph
