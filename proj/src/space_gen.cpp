#include "mmgeo/space_gen.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "mmgeo/util.hpp"

namespace mmgeo {

namespace {

bool hole_contains(const GridHole& h, const std::vector<std::int64_t>& coord) {
    for (std::size_t a = 0; a < coord.size(); ++a)
        if (coord[a] < h.lo[a] || coord[a] > h.hi[a]) return false;
    return true;
}

bool holes_overlap(const GridHole& a, const GridHole& b) {
    for (std::size_t ax = 0; ax < a.lo.size(); ++ax)
        if (a.hi[ax] < b.lo[ax] || b.hi[ax] < a.lo[ax]) return false;
    return true;
}

}  // namespace

std::vector<std::vector<std::int64_t>> grid_coordinates(const GridSpec& spec) {
    std::int64_t total = 1;
    for (auto d : spec.dims) {
        if (d < 1) throw std::invalid_argument("grid: axis sizes must be >= 1");
        total *= d;
        if (total > 50'000'000) throw std::invalid_argument("grid: too many points");
    }
    for (const auto& h : spec.holes)
        if (h.lo.size() != spec.dims.size() || h.hi.size() != spec.dims.size())
            throw std::invalid_argument("grid: hole dimension mismatch");
    for (std::size_t i = 0; i < spec.holes.size(); ++i)
        for (std::size_t j = i + 1; j < spec.holes.size(); ++j)
            if (holes_overlap(spec.holes[i], spec.holes[j]))
                throw std::invalid_argument("grid: holes must be disjoint");

    std::vector<std::vector<std::int64_t>> coords;
    std::vector<std::int64_t> c(spec.dims.size(), 0);
    for (std::int64_t flat = 0; flat < total; ++flat) {
        std::int64_t rest = flat;
        for (std::size_t a = 0; a < spec.dims.size(); ++a) {
            c[a] = rest % spec.dims[a];
            rest /= spec.dims[a];
        }
        bool removed = false;
        for (const auto& h : spec.holes)
            if (hole_contains(h, c)) { removed = true; break; }
        if (!removed) coords.push_back(c);
    }
    return coords;
}

Space taxicab_grid(const GridSpec& spec) {
    if (!(spec.spacing > Rat(0)))
        throw std::invalid_argument("grid: spacing must be positive");
    auto coords = grid_coordinates(spec);
    if (coords.empty()) throw std::invalid_argument("grid: no surviving points");

    // flat index -> surviving point id
    std::unordered_map<std::int64_t, PointId> id_of;
    std::vector<std::int64_t> strides(spec.dims.size(), 1);
    for (std::size_t a = 1; a < spec.dims.size(); ++a)
        strides[a] = strides[a - 1] * spec.dims[a - 1];
    auto flatten = [&](const std::vector<std::int64_t>& c) {
        std::int64_t f = 0;
        for (std::size_t a = 0; a < c.size(); ++a) f += c[a] * strides[a];
        return f;
    };
    for (std::size_t i = 0; i < coords.size(); ++i)
        id_of[flatten(coords[i])] = static_cast<PointId>(i);

    Graph g(static_cast<PointId>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) {
        for (std::size_t a = 0; a < spec.dims.size(); ++a) {
            if (coords[i][a] + 1 >= spec.dims[a]) continue;
            auto c = coords[i];
            ++c[a];
            auto it = id_of.find(flatten(c));
            if (it != id_of.end()) g.add_edge(static_cast<PointId>(i), it->second);
        }
    }
    g.finalize();

    // Margin = lattice steps to the nearest outer face or hole face.
    std::vector<std::int32_t> margins(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        std::int64_t m = std::numeric_limits<std::int64_t>::max();
        for (std::size_t a = 0; a < spec.dims.size(); ++a) {
            m = std::min(m, coords[i][a]);
            m = std::min(m, spec.dims[a] - 1 - coords[i][a]);
        }
        for (const auto& h : spec.holes) {
            // L1 distance from the point to the hole box
            std::int64_t dist = 0;
            for (std::size_t a = 0; a < spec.dims.size(); ++a) {
                if (coords[i][a] < h.lo[a]) dist += h.lo[a] - coords[i][a];
                else if (coords[i][a] > h.hi[a]) dist += coords[i][a] - h.hi[a];
            }
            m = std::min(m, dist - 1);
        }
        margins[i] = static_cast<std::int32_t>(std::max<std::int64_t>(0, m));
    }

    std::ostringstream sp;
    sp << "grid dims=";
    for (std::size_t a = 0; a < spec.dims.size(); ++a)
        sp << (a ? "," : "") << spec.dims[a];
    sp << " h=" << spec.spacing.to_string();
    for (const auto& h : spec.holes) {
        sp << " hole=";
        for (std::size_t a = 0; a < h.lo.size(); ++a)
            sp << (a ? "," : "") << h.lo[a] << ".." << h.hi[a];
    }
    try {
        return Space::make_graph(std::move(g), spec.spacing, sp.str(), std::move(margins));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("grid: holes disconnect the surviving points");
    }
}

Space cantor_tree(const TreeSpec& spec) {
    std::ostringstream sp;
    sp << "tree N=" << spec.depth << " n=" << spec.branching << " m=" << spec.base;
    return Space::make_cantor_tree(spec.depth, spec.branching, spec.base, sp.str());
}

std::int64_t tree_ball_card(const TreeSpec& spec, const Rat& r) {
    const int N = spec.depth;
    const std::int64_t n = spec.branching, m = spec.base;
    // Validity range ]m^-(N+1), 1]: floor(-ln r / ln m) is only meaningful
    // there. The floor is evaluated by exact comparison against powers of m,
    // never by floating logs.
    Rat lo(1, Rat::ipow(m, N + 1));
    if (!(r > lo && r <= Rat(1)))
        throw std::invalid_argument("tree_ball_card: radius outside ]m^-(N+1), 1]");
    // j = floor(-ln r/ln m) is the unique j in 0..N with m^-(j+1) < r <= m^-j.
    int j = 0;
    for (; j <= N; ++j) {
        Rat upper(1, Rat::ipow(m, j));
        Rat lower(1, Rat::ipow(m, j + 1));
        if (lower < r && r <= upper) break;
    }
    return Rat::ipow(n, N - j);
}

namespace {

struct VecKey {
    std::array<std::int64_t, 3> v;
    bool operator==(const VecKey& o) const { return v == o.v; }
};
struct VecKeyHash {
    std::size_t operator()(const VecKey& k) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (auto x : k.v) {
            h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL;
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

/// BFS over an implicitly generated group; elements are identified by an
/// integer-triple key (unused coordinates are zero for abelian rank <= 3).
template <typename Mul>
Graph cayley_bfs(const std::vector<VecKey>& gens, int radius_cap, Mul mul,
                 std::vector<std::int32_t>* word_len_out) {
    VecKey e{{0, 0, 0}};
    std::unordered_map<VecKey, PointId, VecKeyHash> ids;
    std::vector<VecKey> elems{e};
    std::vector<std::int32_t> depth{0};
    ids.emplace(e, 0);
    std::size_t head = 0;
    while (head < elems.size()) {
        VecKey cur = elems[head];
        std::int32_t d = depth[head];
        ++head;
        if (d == radius_cap) continue;
        for (const auto& s : gens) {
            VecKey nxt = mul(cur, s);
            if (ids.emplace(nxt, static_cast<PointId>(elems.size())).second) {
                elems.push_back(nxt);
                depth.push_back(d + 1);
            }
        }
    }
    Graph g(static_cast<PointId>(elems.size()));
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& s : gens) {
            auto it = ids.find(mul(elems[i], s));
            if (it != ids.end() && static_cast<std::size_t>(it->second) > i)
                g.add_edge(static_cast<PointId>(i), it->second);
        }
    }
    g.finalize();
    if (word_len_out) *word_len_out = std::move(depth);
    return g;
}

Graph cayley_graph_impl(const GroupSpec& spec, int radius_cap,
                        std::vector<std::int32_t>* word_len_out) {
    if (radius_cap < 0) throw std::invalid_argument("cayley: radius_cap must be >= 0");
    switch (spec.kind) {
        case GroupKind::FreeAbelian: {
            if (spec.rank < 1 || spec.rank > 3)
                throw std::invalid_argument("cayley: abelian rank must be 1..3");
            std::vector<VecKey> gens;
            for (int a = 0; a < spec.rank; ++a) {
                VecKey p{{0, 0, 0}}, q{{0, 0, 0}};
                p.v[static_cast<std::size_t>(a)] = 1;
                q.v[static_cast<std::size_t>(a)] = -1;
                gens.push_back(p);
                gens.push_back(q);
            }
            auto mul = [](const VecKey& a, const VecKey& b) {
                return VecKey{{a.v[0] + b.v[0], a.v[1] + b.v[1], a.v[2] + b.v[2]}};
            };
            return cayley_bfs(gens, radius_cap, mul, word_len_out);
        }
        case GroupKind::Heisenberg3: {
            // (a,b,c)*(a',b',c') = (a+a', b+b', c+c'+a*b')
            std::vector<VecKey> gens = {VecKey{{1, 0, 0}}, VecKey{{-1, 0, 0}},
                                        VecKey{{0, 1, 0}}, VecKey{{0, -1, 0}}};
            auto mul = [](const VecKey& a, const VecKey& b) {
                return VecKey{{a.v[0] + b.v[0], a.v[1] + b.v[1],
                               a.v[2] + b.v[2] + a.v[0] * b.v[1]}};
            };
            return cayley_bfs(gens, radius_cap, mul, word_len_out);
        }
        case GroupKind::ExplicitTable: {
            const auto& t = spec.table;
            int order = static_cast<int>(t.size());
            if (order == 0) throw std::invalid_argument("cayley: empty table");
            for (const auto& row : t)
                if (static_cast<int>(row.size()) != order)
                    throw std::invalid_argument("cayley: table must be square");
            // Validate V = V^-1 and e not in V.
            for (int v : spec.generators) {
                if (v < 0 || v >= order) throw std::invalid_argument("cayley: bad generator");
                if (v == spec.identity)
                    throw std::invalid_argument("cayley: identity in generating set");
                bool has_inverse = false;
                for (int w : spec.generators)
                    if (t[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] ==
                        spec.identity) {
                        has_inverse = true;
                        break;
                    }
                if (!has_inverse)
                    throw std::invalid_argument("cayley: generating set is not symmetric");
            }
            // BFS from identity through the table.
            std::vector<PointId> id_of(static_cast<std::size_t>(order), -1);
            std::vector<int> elems;
            std::vector<std::int32_t> depth;
            elems.push_back(spec.identity);
            depth.push_back(0);
            id_of[static_cast<std::size_t>(spec.identity)] = 0;
            std::size_t head = 0;
            while (head < elems.size()) {
                int cur = elems[head];
                std::int32_t d = depth[head];
                ++head;
                if (d == radius_cap) continue;
                for (int s : spec.generators) {
                    int nxt = t[static_cast<std::size_t>(cur)][static_cast<std::size_t>(s)];
                    if (id_of[static_cast<std::size_t>(nxt)] < 0) {
                        id_of[static_cast<std::size_t>(nxt)] =
                            static_cast<PointId>(elems.size());
                        elems.push_back(nxt);
                        depth.push_back(d + 1);
                    }
                }
            }
            Graph g(static_cast<PointId>(elems.size()));
            for (std::size_t i = 0; i < elems.size(); ++i)
                for (int s : spec.generators) {
                    int nxt = t[static_cast<std::size_t>(elems[i])][static_cast<std::size_t>(s)];
                    PointId j = id_of[static_cast<std::size_t>(nxt)];
                    if (j >= 0 && static_cast<std::size_t>(j) > i)
                        g.add_edge(static_cast<PointId>(i), j);
                }
            g.finalize();
            if (word_len_out) *word_len_out = std::move(depth);
            return g;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Graph cayley_graph(const GroupSpec& spec, int radius_cap) {
    return cayley_graph_impl(spec, radius_cap, nullptr);
}

Space cayley_space(const GroupSpec& spec, int radius_cap) {
    std::vector<std::int32_t> word_len;
    Graph g = cayley_graph_impl(spec, radius_cap, &word_len);
    std::vector<std::int32_t> margins(word_len.size());
    for (std::size_t i = 0; i < word_len.size(); ++i)
        margins[i] = radius_cap - word_len[i];
    std::ostringstream sp;
    switch (spec.kind) {
        case GroupKind::FreeAbelian:
            sp << "cayley kind=abelian rank=" << spec.rank << " cap=" << radius_cap;
            break;
        case GroupKind::Heisenberg3:
            sp << "cayley kind=heisenberg cap=" << radius_cap;
            break;
        case GroupKind::ExplicitTable:
            sp << "cayley kind=table order=" << spec.table.size() << " cap=" << radius_cap;
            break;
    }
    return Space::make_graph(std::move(g), Rat(1), sp.str(), std::move(margins));
}

GroupSpec cyclic_group(int n) {
    if (n < 3) throw std::invalid_argument("cyclic_group: need n >= 3");
    GroupSpec spec;
    spec.kind = GroupKind::ExplicitTable;
    spec.identity = 0;
    spec.table.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            spec.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
    spec.generators = {1, n - 1};
    return spec;
}

Graph sierpinski_graph(int level) {
    if (level < 0) throw std::invalid_argument("sierpinski: level must be >= 0");
    // Vertices are kept as exact rational plane coordinates scaled by 2^level
    // so corner identification is exact integer matching.
    struct P {
        std::int64_t x, y;
        bool operator<(const P& o) const { return x < o.x || (x == o.x && y < o.y); }
    };
    std::int64_t side = 1;
    for (int i = 0; i < level; ++i) side *= 2;
    // Corner identification is exact integer matching in doubled-x
    // coordinates (the apex stays integral under halving).
    P c0{0, 0}, c1{2 * side, 0}, c2{side, side};
    std::vector<std::pair<P, P>> edges;
    std::vector<std::tuple<P, P, P, std::int64_t>> stack{{c0, c1, c2, side}};
    while (!stack.empty()) {
        auto [a, b, c, s] = stack.back();
        stack.pop_back();
        if (s == 1) {
            edges.push_back({a, b});
            edges.push_back({b, c});
            edges.push_back({a, c});
            continue;
        }
        P ab{(a.x + b.x) / 2, (a.y + b.y) / 2};
        P ac{(a.x + c.x) / 2, (a.y + c.y) / 2};
        P bc{(b.x + c.x) / 2, (b.y + c.y) / 2};
        stack.push_back({a, ab, ac, s / 2});
        stack.push_back({ab, b, bc, s / 2});
        stack.push_back({ac, bc, c, s / 2});
    }
    // Deterministic ids: the three outer corners first, then coordinate order.
    std::map<P, PointId> ids;
    ids[c0] = 0;
    ids[c1] = 1;
    ids[c2] = 2;
    std::map<P, int> seen;
    for (const auto& [u, v] : edges) {
        seen[u] = 1;
        seen[v] = 1;
    }
    for (const auto& [p, unused] : seen) {
        (void)unused;
        if (ids.count(p) == 0) ids[p] = static_cast<PointId>(ids.size());
    }
    Graph g(static_cast<PointId>(ids.size()));
    for (const auto& [u, v] : edges) g.add_edge(ids[u], ids[v]);
    g.finalize();
    return g;
}

Space sierpinski_space(int level) {
    Graph g = sierpinski_graph(level);
    std::ostringstream sp;
    sp << "sierpinski level=" << level;
    return Space::make_graph(std::move(g), Rat(1), sp.str());
}

// ---------------------------------------------------------------------------
// Inline spec parsing

namespace {

std::map<std::string, std::string> kv_args(const std::vector<std::string>& parts,
                                           std::size_t from) {
    std::map<std::string, std::string> kv;
    for (std::size_t i = from; i < parts.size(); ++i) {
        if (parts[i].empty()) continue;
        auto eq = parts[i].find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("space spec: expected key=value, got: " + parts[i]);
        // repeated keys (holes) are collected with an index suffix
        std::string key = parts[i].substr(0, eq);
        std::string val = parts[i].substr(eq + 1);
        int n = 0;
        std::string k = key;
        while (kv.count(k)) k = key + "#" + std::to_string(++n);
        kv[k] = val;
    }
    return kv;
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
    std::vector<std::int64_t> out;
    for (const auto& tok : split(s, ',')) out.push_back(std::stoll(tok));
    return out;
}

}  // namespace

Space space_from_spec(const std::string& spec) {
    std::vector<std::string> parts;
    for (const auto& p : split(trim(spec), ' '))
        if (!p.empty()) parts.push_back(p);
    if (parts.empty()) throw std::invalid_argument("space spec: empty");
    const std::string& kind = parts[0];
    auto kv = kv_args(parts, 1);
    auto need = [&](const std::string& k) -> std::string {
        auto it = kv.find(k);
        if (it == kv.end())
            throw std::invalid_argument("space spec: missing " + k + " for " + kind);
        return it->second;
    };
    auto opt = [&](const std::string& k, const std::string& dflt) {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : it->second;
    };

    if (kind == "grid" || kind == "path") {
        GridSpec g;
        if (kind == "path") {
            g.dims = {std::stoll(need("n"))};
        } else {
            g.dims = parse_int_list(need("dims"));
        }
        g.spacing = Rat::parse(opt("h", "1"));
        for (const auto& [k, v] : kv) {
            if (k.rfind("hole", 0) != 0) continue;
            GridHole hole;
            for (const auto& range : split(v, ',')) {
                auto dots = range.find("..");
                if (dots == std::string::npos)
                    throw std::invalid_argument("space spec: hole range needs a..b");
                hole.lo.push_back(std::stoll(range.substr(0, dots)));
                hole.hi.push_back(std::stoll(range.substr(dots + 2)));
            }
            g.holes.push_back(hole);
        }
        return taxicab_grid(g);
    }
    if (kind == "tree") {
        TreeSpec t;
        t.depth = std::stoi(need("N"));
        t.branching = std::stoi(need("n"));
        t.base = std::stoi(need("m"));
        return cantor_tree(t);
    }
    if (kind == "cayley") {
        std::string gk = need("kind");
        int cap = std::stoi(opt("cap", "8"));
        if (gk == "abelian") {
            GroupSpec gs;
            gs.kind = GroupKind::FreeAbelian;
            gs.rank = std::stoi(opt("rank", "2"));
            return cayley_space(gs, cap);
        }
        if (gk == "heisenberg") {
            GroupSpec gs;
            gs.kind = GroupKind::Heisenberg3;
            return cayley_space(gs, cap);
        }
        if (gk == "cyclic") {
            int order = std::stoi(need("order"));
            return cayley_space(cyclic_group(order), std::stoi(opt("cap", std::to_string(order))));
        }
        throw std::invalid_argument("space spec: unknown cayley kind: " + gk);
    }
    if (kind == "sierpinski") {
        return sierpinski_space(std::stoi(need("level")));
    }
    throw std::invalid_argument("space spec: unknown kind: " + kind);
}

}  // namespace mmgeo
