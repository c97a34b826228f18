#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mmgeo {

using PointId = std::int32_t;

/// Undirected loopless graph with sorted per-vertex neighbor lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(PointId n) : adj_(static_cast<std::size_t>(n)) {}

    PointId n_vertices() const { return static_cast<PointId>(adj_.size()); }
    std::int64_t n_edges() const;

    /// Adds the undirected edge {u, v}. Self-loops are rejected; duplicate
    /// edges are coalesced by finalize().
    void add_edge(PointId u, PointId v);

    /// Sorts and dedupes neighbor lists. Must be called after the last
    /// add_edge and before queries.
    void finalize();

    const std::vector<PointId>& neighbors(PointId v) const {
        return adj_[static_cast<std::size_t>(v)];
    }
    PointId degree(PointId v) const {
        return static_cast<PointId>(adj_[static_cast<std::size_t>(v)].size());
    }
    PointId max_degree() const;
    bool has_edge(PointId u, PointId v) const;

    /// Sorted list of edges as (u, v) with u < v.
    std::vector<std::pair<PointId, PointId>> edge_list() const;

private:
    std::vector<std::vector<PointId>> adj_;
    bool finalized_ = false;
};

constexpr std::int32_t kUnreachable = -1;

/// BFS hop counts from a single source; kUnreachable marks other components.
std::vector<std::int32_t> bfs_distances(const Graph& g, PointId source);

/// BFS truncated at hop_cap; entries beyond the cap stay kUnreachable.
std::vector<std::int32_t> bfs_distances_capped(const Graph& g, PointId source,
                                               std::int32_t hop_cap);

/// Min hop count to the nearest of several sources.
std::vector<std::int32_t> bfs_multi_source(const Graph& g,
                                           const std::vector<PointId>& sources);

/// Parent array of a BFS tree (parent[source] = source, kUnreachable if not
/// reached); used to extract explicit shortest paths.
std::vector<PointId> bfs_parents(const Graph& g, PointId source);

bool is_connected(const Graph& g);

/// Edge list format: one "u v" line per edge, u < v, sorted.
std::string graph_to_edge_list(const Graph& g);
Graph graph_from_edge_list(const std::string& text);

}  // namespace mmgeo
