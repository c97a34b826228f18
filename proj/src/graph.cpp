#include "mmgeo/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace mmgeo {

std::int64_t Graph::n_edges() const {
    std::int64_t half = 0;
    for (const auto& nb : adj_) half += static_cast<std::int64_t>(nb.size());
    return half / 2;
}

void Graph::add_edge(PointId u, PointId v) {
    if (u == v) throw std::invalid_argument("Graph: self-loop rejected");
    if (u < 0 || v < 0 || u >= n_vertices() || v >= n_vertices())
        throw std::out_of_range("Graph: vertex out of range");
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
    finalized_ = false;
}

void Graph::finalize() {
    for (auto& nb : adj_) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    finalized_ = true;
}

PointId Graph::max_degree() const {
    PointId m = 0;
    for (PointId v = 0; v < n_vertices(); ++v) m = std::max(m, degree(v));
    return m;
}

bool Graph::has_edge(PointId u, PointId v) const {
    const auto& nb = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<PointId, PointId>> Graph::edge_list() const {
    std::vector<std::pair<PointId, PointId>> edges;
    for (PointId u = 0; u < n_vertices(); ++u)
        for (PointId v : neighbors(u))
            if (u < v) edges.emplace_back(u, v);
    std::sort(edges.begin(), edges.end());
    return edges;
}

std::vector<std::int32_t> bfs_distances(const Graph& g, PointId source) {
    return bfs_distances_capped(g, source, -1);
}

std::vector<std::int32_t> bfs_distances_capped(const Graph& g, PointId source,
                                               std::int32_t hop_cap) {
    if (source < 0 || source >= g.n_vertices())
        throw std::out_of_range("bfs: source out of range");
    std::vector<std::int32_t> dist(static_cast<std::size_t>(g.n_vertices()),
                                   kUnreachable);
    std::vector<PointId> frontier{source}, next;
    dist[static_cast<std::size_t>(source)] = 0;
    std::int32_t level = 0;
    while (!frontier.empty() && (hop_cap < 0 || level < hop_cap)) {
        ++level;
        next.clear();
        for (PointId u : frontier) {
            for (PointId v : g.neighbors(u)) {
                auto& d = dist[static_cast<std::size_t>(v)];
                if (d == kUnreachable) {
                    d = level;
                    next.push_back(v);
                }
            }
        }
        frontier.swap(next);
    }
    return dist;
}

std::vector<std::int32_t> bfs_multi_source(const Graph& g,
                                           const std::vector<PointId>& sources) {
    std::vector<std::int32_t> dist(static_cast<std::size_t>(g.n_vertices()),
                                   kUnreachable);
    std::vector<PointId> frontier, next;
    for (PointId s : sources) {
        auto& d = dist[static_cast<std::size_t>(s)];
        if (d == kUnreachable) {
            d = 0;
            frontier.push_back(s);
        }
    }
    std::int32_t level = 0;
    while (!frontier.empty()) {
        ++level;
        next.clear();
        for (PointId u : frontier) {
            for (PointId v : g.neighbors(u)) {
                auto& d = dist[static_cast<std::size_t>(v)];
                if (d == kUnreachable) {
                    d = level;
                    next.push_back(v);
                }
            }
        }
        frontier.swap(next);
    }
    return dist;
}

std::vector<PointId> bfs_parents(const Graph& g, PointId source) {
    std::vector<PointId> parent(static_cast<std::size_t>(g.n_vertices()),
                                kUnreachable);
    std::queue<PointId> q;
    parent[static_cast<std::size_t>(source)] = source;
    q.push(source);
    while (!q.empty()) {
        PointId u = q.front();
        q.pop();
        for (PointId v : g.neighbors(u)) {
            if (parent[static_cast<std::size_t>(v)] == kUnreachable) {
                parent[static_cast<std::size_t>(v)] = u;
                q.push(v);
            }
        }
    }
    return parent;
}

bool is_connected(const Graph& g) {
    if (g.n_vertices() == 0) return true;
    auto dist = bfs_distances(g, 0);
    return std::find(dist.begin(), dist.end(), kUnreachable) == dist.end();
}

std::string graph_to_edge_list(const Graph& g) {
    std::ostringstream out;
    for (const auto& [u, v] : g.edge_list()) out << u << " " << v << "\n";
    return out.str();
}

Graph graph_from_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::pair<PointId, PointId>> edges;
    PointId max_v = -1;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u >> v)) throw std::invalid_argument("edge list: bad line: " + line);
        edges.emplace_back(static_cast<PointId>(u), static_cast<PointId>(v));
        max_v = std::max<PointId>(max_v, static_cast<PointId>(std::max(u, v)));
    }
    Graph g(max_v + 1);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    g.finalize();
    return g;
}

}  // namespace mmgeo
