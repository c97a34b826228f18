#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmgeo/graph.hpp"

namespace mmgeo {

/// Connected loopless circulant on Z/s with generators {+-1, ..., +-r/2}.
/// Requires s even >= 4 and r even with 2 <= r <= s-2.
Graph circulant_regular(int s, int r);

/// One gadget graph to be glued at a base vertex. Vertex 0 of `graph` is the
/// base vertex itself; the rest are fresh.
struct SpikeSpec {
    Graph graph;
};

/// Disjoint union of a base graph with per-vertex gadgets. Union vertex ids:
/// 0..n_base-1 are the base vertices; gadget-private vertices follow, grouped
/// by base vertex.
struct SpikedGraph {
    Graph base;
    Graph unioned;
    std::vector<PointId> base_projection;       // union vertex -> base vertex
    std::vector<std::int64_t> spike_edge_count; // per base vertex
    std::vector<std::int64_t> spike_size;       // gadget vertex count incl. base
};

SpikedGraph spike_union(const Graph& base, const std::vector<SpikeSpec>& spikes);

struct RegularizationResult {
    SpikedGraph spiked;
    int k = 0;
    int target_degree = 0;  // k + 1
    std::vector<std::int64_t> gadget_sizes;
    std::vector<PointId> parity_fixes;  // base vertices that needed the odd-s gadget
    // Auxiliary pairing edges between odd-s gadgets (see regularize_degrees);
    // these are union edges on top of base + spike edges.
    std::vector<std::pair<PointId, PointId>> pairing_edges;
};

/// Attaches per-vertex gadgets so the union is exactly (k+1)-regular with
/// every gadget vertex within union distance 2 of its base vertex.
///
/// Even s = k+1-deg(x): the size-(k+3) gadget {x} u A u B with the circulant
/// on A (degree s-2), complete B, and the forced complete bipartite A-B
/// matching of dangling half-edges.
///
/// Odd s (odd base degree; the even-s gadget cannot exist, by handshake): a
/// size-(k+4) gadget with one auxiliary vertex adjacent to all of A plus
/// deg-1 B-vertices, which lands at degree k; auxiliaries of odd-degree base
/// vertices (always an even count) are then paired across gadgets to reach
/// k+1. Pairings are recorded, never silent.
RegularizationResult regularize_degrees(const Graph& base, int k);

/// Smallest odd k >= 3 + max degree.
int default_regularization_k(const Graph& base);

struct RegularizationCheck {
    bool degree_ok = true;
    bool loopless_ok = true;
    bool spikes_connected = true;
    bool distance2_ok = true;
    bool projection_ok = true;
    PointId witness = -1;
    std::string detail;
    bool all_ok() const {
        return degree_ok && loopless_ok && spikes_connected && distance2_ok &&
               projection_ok;
    }
};

/// Exhaustive re-verification of a regularization output: uniform degree
/// k+1, looplessness, per-gadget connectivity, every gadget vertex within
/// union distance 2 of its base vertex, and projection well-formedness.
RegularizationCheck verify_regularization(const RegularizationResult& result);

std::string regularization_to_string(const RegularizationResult& result);

/// Parses the serialized form back (union edge list + projection + k +
/// parity fixes); enough to re-run verification on stored outputs.
RegularizationResult regularization_from_string(const std::string& text);

}  // namespace mmgeo
