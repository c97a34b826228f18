#include "mmgeo/net.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "mmgeo/rng.hpp"
#include "mmgeo/util.hpp"

namespace mmgeo {

namespace {

// Tracks d(x, carrier) for every x below the delta threshold. Exact values
// are all that separation (>= delta) and covering (< delta) need.
class MinDist {
public:
    MinDist(const Space& space, const Rat& delta, bool full_rows)
        : space_(space), delta_(delta), full_rows_(full_rows) {
        have_.assign(static_cast<std::size_t>(space.n_points()), false);
        dist_.assign(static_cast<std::size_t>(space.n_points()), Rat(0));
    }

    // Inserts a carrier point and relaxes distances around it.
    void insert(PointId z) {
        if (full_rows_) {
            auto row = space_.distances_from(z);
            for (PointId y = 0; y < space_.n_points(); ++y) relax(y, row[static_cast<std::size_t>(y)]);
            return;
        }
        // Only values < delta matter: enumerate the open delta-ball. The
        // graph backend exposes exact hop distances through distances_from
        // of members; recompute d(z, y) per member instead.
        const Graph* g = space_.graph();
        if (g != nullptr) {
            Rat step = space_.grid_step();
            Rat q = delta_ / step;
            std::int64_t cap = q.is_integer() ? q.num() - 1 : q.floor();
            if (cap < 0) cap = 0;
            cap = std::min<std::int64_t>(cap, space_.n_points());
            auto hops = bfs_distances_capped(*g, z, static_cast<std::int32_t>(cap));
            for (PointId y = 0; y < space_.n_points(); ++y) {
                auto h = hops[static_cast<std::size_t>(y)];
                if (h != kUnreachable) relax(y, (step * Rat(h)));
            }
            return;
        }
        for (PointId y = 0; y < space_.n_points(); ++y) relax(y, space_.distance(z, y));
    }

    bool covered_strict(PointId x) const {
        return have_[static_cast<std::size_t>(x)] && dist_[static_cast<std::size_t>(x)] < delta_;
    }

    // Valid after construction finishes (every point then sits < delta).
    Rat value(PointId x) const {
        if (!have_[static_cast<std::size_t>(x)])
            throw std::logic_error("MinDist: value not available");
        return dist_[static_cast<std::size_t>(x)];
    }
    bool known(PointId x) const { return have_[static_cast<std::size_t>(x)]; }

    // Farthest uncovered point, smallest id on ties. Needs full_rows mode.
    std::optional<PointId> argmax() const {
        std::optional<PointId> best;
        for (PointId x = 0; x < space_.n_points(); ++x) {
            if (!have_[static_cast<std::size_t>(x)]) return x;  // infinite distance
            if (!best || dist_[static_cast<std::size_t>(*best)] < dist_[static_cast<std::size_t>(x)])
                best = x;
        }
        return best;
    }

private:
    void relax(PointId y, const Rat& d) {
        auto i = static_cast<std::size_t>(y);
        if (!have_[i] || d < dist_[i]) {
            have_[i] = true;
            dist_[i] = d;
        }
    }

    const Space& space_;
    Rat delta_;
    bool full_rows_;
    std::vector<bool> have_;
    std::vector<Rat> dist_;
};

}  // namespace

Net greedy_net(const Space& space, const Rat& delta, NetOrder order, std::uint64_t seed) {
    if (!(delta > Rat(0))) throw std::invalid_argument("greedy_net: delta must be positive");
    const PointId n = space.n_points();
    Net net;
    net.delta = delta;

    if (order == NetOrder::FarthestPoint) {
        MinDist md(space, delta, /*full_rows=*/true);
        net.carrier.push_back(0);
        md.insert(0);
        while (true) {
            auto far = md.argmax();
            if (!far || md.covered_strict(*far)) break;
            net.carrier.push_back(*far);
            md.insert(*far);
        }
    } else {
        std::vector<PointId> scan(static_cast<std::size_t>(n));
        for (PointId i = 0; i < n; ++i) scan[static_cast<std::size_t>(i)] = i;
        if (order == NetOrder::Shuffle) {
            Rng rng(seed);
            rng.shuffle(scan);
        }
        MinDist md(space, delta, /*full_rows=*/false);
        for (PointId x : scan) {
            if (!md.covered_strict(x)) {
                net.carrier.push_back(x);
                md.insert(x);
            }
        }
    }

    std::sort(net.carrier.begin(), net.carrier.end());

    // Covering radius: exact max over points of d(x, carrier). Maximality
    // guarantees it is < delta; assert rather than assume.
    net.covering_radius = directed_gap(space, {}, net.carrier);
    if (!(net.covering_radius < delta))
        throw std::logic_error("greedy_net: covering radius >= delta (not maximal?)");

    net.net_graph = delta_graph(space, net.carrier, delta);
    return net;
}

Graph delta_graph(const Space& space, const std::vector<PointId>& carrier,
                  const Rat& delta) {
    if (carrier.empty()) throw std::invalid_argument("delta_graph: empty carrier");
    const PointId k = static_cast<PointId>(carrier.size());
    Graph g(k);
    // Closed threshold per the delta-graph definition: edge iff 0 < d <= delta.
    const Graph* base = space.graph();
    if (base != nullptr) {
        std::vector<PointId> pos(static_cast<std::size_t>(space.n_points()), -1);
        for (PointId i = 0; i < k; ++i)
            pos[static_cast<std::size_t>(carrier[static_cast<std::size_t>(i)])] = i;
        Rat step = space.grid_step();
        Rat q = delta / step;
        std::int64_t cap = q.floor();
        cap = std::min<std::int64_t>(std::max<std::int64_t>(cap, 0), space.n_points());
        std::vector<std::vector<std::pair<PointId, PointId>>> found(
            static_cast<std::size_t>(k));
        parallel_for(k, [&](std::int64_t i) {
            PointId src = carrier[static_cast<std::size_t>(i)];
            auto hops = bfs_distances_capped(*base, src, static_cast<std::int32_t>(cap));
            for (PointId y = 0; y < space.n_points(); ++y) {
                PointId j = pos[static_cast<std::size_t>(y)];
                if (j < 0 || j <= i) continue;
                auto h = hops[static_cast<std::size_t>(y)];
                if (h != kUnreachable && h > 0)
                    found[static_cast<std::size_t>(i)].emplace_back(static_cast<PointId>(i), j);
            }
        });
        for (const auto& part : found)
            for (const auto& [u, v] : part) g.add_edge(u, v);
    } else {
        for (PointId i = 0; i < k; ++i)
            for (PointId j = static_cast<PointId>(i + 1); j < k; ++j) {
                Rat d = space.distance(carrier[static_cast<std::size_t>(i)],
                                       carrier[static_cast<std::size_t>(j)]);
                if (Rat(0) < d && d <= delta) g.add_edge(i, j);
            }
    }
    g.finalize();
    return g;
}

ConnectivityReport delta_connectivity_report(
    const Space& space, const Rat& delta,
    const std::vector<std::pair<PointId, PointId>>& pairs,
    const std::vector<PointId>* within) {
    ConnectivityReport report;
    report.delta = delta;

    std::vector<PointId> nodes;
    if (within != nullptr) {
        nodes = *within;
        std::sort(nodes.begin(), nodes.end());
    } else {
        nodes.resize(static_cast<std::size_t>(space.n_points()));
        for (PointId i = 0; i < space.n_points(); ++i) nodes[static_cast<std::size_t>(i)] = i;
    }
    Graph chain_graph = delta_graph(space, nodes, delta);
    std::vector<PointId> pos(static_cast<std::size_t>(space.n_points()), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        pos[static_cast<std::size_t>(nodes[i])] = static_cast<PointId>(i);

    for (const auto& [x, y] : pairs) {
        Rat d = space.distance(x, y);
        if (d < delta)
            throw std::invalid_argument("delta_connectivity_report: pair with d < delta");
        PointId px = pos[static_cast<std::size_t>(x)], py = pos[static_cast<std::size_t>(y)];
        if (px < 0 || py < 0)
            throw std::invalid_argument("delta_connectivity_report: pair outside node set");
        auto hops = bfs_distances(chain_graph, px);
        ChainResult res;
        res.x = x;
        res.y = y;
        res.dist_xy = d;
        auto h = hops[static_cast<std::size_t>(py)];
        if (h == kUnreachable) {
            ++report.unreachable;
        } else {
            res.steps = h;
            res.ratio = (delta * Rat(h)).to_double() / d.to_double();
            report.max_ratio = std::max(report.max_ratio, res.ratio);
        }
        report.pairs.push_back(res);
    }
    return report;
}

SandwichReport lipschitz_sandwich(const Space& space, const Net& net, const Rat& delta,
                                  std::int64_t max_pairs, std::uint64_t seed) {
    SandwichReport report;
    report.delta = delta;
    const auto& carrier = net.carrier;
    const PointId k = static_cast<PointId>(carrier.size());

    std::int64_t all_pairs = static_cast<std::int64_t>(k) * (k - 1) / 2;
    report.exhaustive = all_pairs <= max_pairs;

    std::vector<double> ratios;
    bool have_min = false;
    Rat best_num(0), best_den(1);  // c_min as d/(delta*dist), kept exact for argmin

    auto consider = [&](PointId i, PointId j, const std::vector<std::int32_t>& hops_i,
                        const std::vector<Rat>& row_i) {
        const Rat& d = row_i[static_cast<std::size_t>(carrier[static_cast<std::size_t>(j)])];
        if (d < delta) {
            ++report.skipped_close;
            return;
        }
        auto h = hops_i[static_cast<std::size_t>(j)];
        if (h == kUnreachable) {
            ++report.cross_component;
            return;
        }
        ++report.pairs_checked;
        Rat bound = delta * Rat(h);
        if (d > bound) ++report.upper_violations;  // chain triangle inequality
        double ratio = d.to_double() / bound.to_double();
        ratios.push_back(ratio);
        Rat num = d, den = bound;
        // exact comparison num/den < best: num*best_den < best_num*den
        if (!have_min || num * best_den < best_num * den) {
            have_min = true;
            best_num = num;
            best_den = den;
            report.argmin_x = carrier[static_cast<std::size_t>(i)];
            report.argmin_y = carrier[static_cast<std::size_t>(j)];
        }
    };

    if (report.exhaustive) {
        for (PointId i = 0; i < k; ++i) {
            auto hops = bfs_distances(net.net_graph, i);
            auto row = space.distances_from(carrier[static_cast<std::size_t>(i)]);
            for (PointId j = static_cast<PointId>(i + 1); j < k; ++j) consider(i, j, hops, row);
        }
    } else {
        // Sample sources; for each source check against sampled partners.
        Rng rng(seed);
        std::int64_t sources = std::max<std::int64_t>(1, max_pairs / std::max<PointId>(1, k));
        sources = std::min<std::int64_t>(sources, k);
        for (std::int64_t s = 0; s < sources; ++s) {
            PointId i = static_cast<PointId>(rng.uniform(static_cast<std::uint64_t>(k)));
            auto hops = bfs_distances(net.net_graph, i);
            auto row = space.distances_from(carrier[static_cast<std::size_t>(i)]);
            for (PointId j = 0; j < k; ++j)
                if (j != i) consider(i, j, hops, row);
        }
    }

    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        auto q = [&](double p) {
            std::size_t idx = static_cast<std::size_t>(p * (ratios.size() - 1));
            return ratios[idx];
        };
        report.ratio_quantiles = {ratios.front(), q(0.25), q(0.5), q(0.75), ratios.back()};
        report.c_min = ratios.front();
    }
    return report;
}

Rat directed_gap(const Space& space, const std::vector<PointId>& a,
                 const std::vector<PointId>& b) {
    if (b.empty()) throw std::invalid_argument("directed_gap: B must be nonempty");
    std::vector<PointId> from = a;
    if (from.empty()) {
        from.resize(static_cast<std::size_t>(space.n_points()));
        for (PointId i = 0; i < space.n_points(); ++i) from[static_cast<std::size_t>(i)] = i;
    }
    const Graph* g = space.graph();
    if (g != nullptr) {
        auto hops = bfs_multi_source(*g, b);
        std::int32_t worst = 0;
        for (PointId x : from) {
            auto h = hops[static_cast<std::size_t>(x)];
            if (h == kUnreachable)
                throw std::domain_error("directed_gap: unreachable target set");
            worst = std::max(worst, h);
        }
        return (space.grid_step() * Rat(worst));
    }
    Rat worst(0);
    for (PointId x : from) {
        bool first = true;
        Rat best(0);
        for (PointId y : b) {
            Rat d = space.distance(x, y);
            if (first || d < best) {
                best = d;
                first = false;
            }
            if (best.is_zero()) break;
        }
        if (worst < best) worst = best;
    }
    return worst;
}

NetCheck check_net(const Space& space, const Net& net) {
    NetCheck out;
    const auto& c = net.carrier;
    for (std::size_t i = 0; i < c.size() && out.separated; ++i) {
        auto row = space.distances_from(c[i]);
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            if (row[static_cast<std::size_t>(c[j])] < net.delta) {
                out.separated = false;
                out.witness_a = c[i];
                out.witness_b = c[j];
                break;
            }
        }
    }
    Rat gap = directed_gap(space, {}, c);
    if (!(gap < net.delta)) out.covering = false;
    return out;
}

std::string net_to_string(const Net& net) {
    std::ostringstream out;
    out << "delta " << net.delta.to_string() << "\n";
    out << "covering_radius " << net.covering_radius.to_string() << "\n";
    out << "carrier_size " << net.carrier.size() << "\n";
    out << "carrier\n";
    for (PointId p : net.carrier) out << p << "\n";
    out << "edges\n";
    out << graph_to_edge_list(net.net_graph);
    return out.str();
}

Net net_from_string(const std::string& text) {
    std::istringstream in(text);
    Net net;
    std::string key;
    std::string value;
    in >> key >> value;
    if (key != "delta") throw std::invalid_argument("net: expected delta");
    net.delta = Rat::parse(value);
    in >> key >> value;
    if (key != "covering_radius") throw std::invalid_argument("net: expected covering_radius");
    net.covering_radius = Rat::parse(value);
    std::int64_t size = 0;
    in >> key >> size;
    if (key != "carrier_size") throw std::invalid_argument("net: expected carrier_size");
    in >> key;
    if (key != "carrier") throw std::invalid_argument("net: expected carrier");
    for (std::int64_t i = 0; i < size; ++i) {
        long long p;
        in >> p;
        net.carrier.push_back(static_cast<PointId>(p));
    }
    in >> key;
    if (key != "edges") throw std::invalid_argument("net: expected edges");
    std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (trim(rest).empty()) {
        net.net_graph = Graph(static_cast<PointId>(net.carrier.size()));
        net.net_graph.finalize();
    } else {
        Graph g = graph_from_edge_list(rest);
        // edge list may omit trailing isolated vertices
        Graph full(static_cast<PointId>(net.carrier.size()));
        for (const auto& [u, v] : g.edge_list()) full.add_edge(u, v);
        full.finalize();
        net.net_graph = std::move(full);
    }
    return net;
}

std::string sandwich_report_to_string(const SandwichReport& r) {
    std::ostringstream out;
    out << "delta " << r.delta.to_string() << "\n";
    out << "c_min " << fmt_double(r.c_min) << "\n";
    out << "argmin " << r.argmin_x << " " << r.argmin_y << "\n";
    out << "pairs_checked " << r.pairs_checked << "\n";
    out << "skipped_close " << r.skipped_close << "\n";
    out << "cross_component " << r.cross_component << "\n";
    out << "upper_violations " << r.upper_violations << "\n";
    out << "exhaustive " << (r.exhaustive ? 1 : 0) << "\n";
    out << "ratio_quantiles";
    for (double q : r.ratio_quantiles) out << " " << fmt_double(q);
    out << "\n";
    return out.str();
}

std::string connectivity_report_to_string(const ConnectivityReport& r) {
    std::ostringstream out;
    out << "delta " << r.delta.to_string() << "\n";
    out << "pairs " << r.pairs.size() << "\n";
    out << "unreachable " << r.unreachable << "\n";
    out << "max_ratio " << fmt_double(r.max_ratio) << "\n";
    for (const auto& p : r.pairs) {
        out << "pair " << p.x << " " << p.y << " d=" << p.dist_xy.to_string();
        if (p.reachable())
            out << " steps=" << p.steps << " ratio=" << fmt_double(p.ratio) << "\n";
        else
            out << " unreachable\n";
    }
    return out.str();
}

}  // namespace mmgeo
