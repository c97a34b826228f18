#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmgeo/space.hpp"

namespace mmgeo {

enum class NetOrder { Index, FarthestPoint, Shuffle };

/// Maximal delta-separated subset with its delta-graph.
struct Net {
    Rat delta;
    std::vector<PointId> carrier;  // sorted
    Rat covering_radius;           // max_x d(x, carrier); < delta by maximality
    Graph net_graph;               // edges between carrier positions at d <= delta
};

/// Greedy maximal delta-separated set. Deterministic given (space, delta,
/// order, seed); the scan order is the only degree of freedom of the
/// construction.
Net greedy_net(const Space& space, const Rat& delta, NetOrder order = NetOrder::Index,
               std::uint64_t seed = 0);

/// Graph on `carrier` with an edge exactly when 0 < d(x,y) <= delta.
/// Vertices are positions into the (sorted) carrier vector.
Graph delta_graph(const Space& space, const std::vector<PointId>& carrier,
                  const Rat& delta);

/// BFS hop metric on a graph (re-exported next to the net machinery).
inline std::vector<std::int32_t> graph_distances(const Graph& g, PointId source) {
    return bfs_distances(g, source);
}

struct ChainResult {
    PointId x = 0, y = 0;
    Rat dist_xy;
    std::int64_t steps = -1;  // minimal n with a <=delta chain; -1 if unreachable
    double ratio = 0;         // n*delta / d(x,y)
    bool reachable() const { return steps >= 0; }
};

struct ConnectivityReport {
    Rat delta;
    std::vector<ChainResult> pairs;
    double max_ratio = 0;  // over reachable pairs
    std::int64_t unreachable = 0;
    bool all_reachable() const { return unreachable == 0; }
};

/// For each pair (d(x,y) >= delta required), finds the minimal-step chain
/// x = x0, ..., xn = y with steps <= delta and reports n*delta / d(x,y).
/// Chains run inside `within` when given (positions refer to space points),
/// otherwise through the whole space.
ConnectivityReport delta_connectivity_report(
    const Space& space, const Rat& delta,
    const std::vector<std::pair<PointId, PointId>>& pairs,
    const std::vector<PointId>* within = nullptr);

struct SandwichReport {
    Rat delta;
    double c_min = 1;  // min d(x,y) / (delta * dist(x,y))
    PointId argmin_x = 0, argmin_y = 0;
    std::int64_t pairs_checked = 0;
    std::int64_t skipped_close = 0;         // pairs with d < delta (excluded)
    std::int64_t cross_component = 0;       // pairs unreachable in the net graph
    std::int64_t upper_violations = 0;      // must stay 0: d <= delta*dist exactly
    std::vector<double> ratio_quantiles;    // min, p25, p50, p75, max
    bool exhaustive = false;
};

/// Checks d(x,y) <= delta*dist(x,y) exactly for carrier pairs with
/// d >= delta and measures c_min = min d/(delta*dist). Exhaustive for small
/// carriers, seeded sampling above `max_pairs`.
SandwichReport lipschitz_sandwich(const Space& space, const Net& net, const Rat& delta,
                                  std::int64_t max_pairs = 20000,
                                  std::uint64_t seed = 1);

/// Directed gap d(A, B) = max_{x in A} min_{y in B} d(x, y). Asymmetric.
/// An empty A stands for the whole space; B must be nonempty.
Rat directed_gap(const Space& space, const std::vector<PointId>& a,
                 const std::vector<PointId>& b);

/// Exhaustive net invariant checks: pairwise separation >= delta on the
/// carrier and covering d(x, carrier) < delta for every point.
struct NetCheck {
    bool separated = true;
    bool covering = true;
    PointId witness_a = -1, witness_b = -1;
};
NetCheck check_net(const Space& space, const Net& net);

std::string net_to_string(const Net& net);
Net net_from_string(const std::string& text);

std::string sandwich_report_to_string(const SandwichReport& r);
std::string connectivity_report_to_string(const ConnectivityReport& r);

}  // namespace mmgeo
