#pragma once

// Test-only oracles, independent of the library's query paths: plain
// distance-loop ball counting, L1 arithmetic on lattice coordinates, and a
// reference BFS. These stay deliberately naive.

#include <cstdint>
#include <queue>
#include <vector>

#include "mmgeo/space.hpp"

namespace oracle {

/// Ball count by scanning every point through the distance oracle.
inline std::int64_t ball_card(const mmgeo::Space& space, mmgeo::PointId center,
                              const mmgeo::Rat& radius, mmgeo::BallKind kind) {
    std::int64_t count = 0;
    for (mmgeo::PointId y = 0; y < space.n_points(); ++y) {
        mmgeo::Rat d = space.distance(center, y);
        bool in = kind == mmgeo::BallKind::Open ? d < radius : d <= radius;
        if (in) ++count;
    }
    return count;
}

/// Closed L1 ball cardinality in the infinite 2-D lattice: 2r^2 + 2r + 1.
inline std::int64_t l1_ball_closed_z2(std::int64_t r) {
    return 2 * r * r + 2 * r + 1;
}

/// Reference BFS with an adjacency-matrix walk (O(n^2) per level).
inline std::vector<std::int32_t> slow_bfs(const mmgeo::Graph& g, mmgeo::PointId s) {
    std::vector<std::int32_t> dist(static_cast<std::size_t>(g.n_vertices()), -1);
    std::queue<mmgeo::PointId> q;
    dist[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
        auto u = q.front();
        q.pop();
        for (mmgeo::PointId v = 0; v < g.n_vertices(); ++v) {
            if (!g.has_edge(u, v)) continue;
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                q.push(v);
            }
        }
    }
    return dist;
}

}  // namespace oracle
