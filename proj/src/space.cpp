#include "mmgeo/space.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "mmgeo/rng.hpp"

namespace mmgeo {

struct Space::Backing {
    BackendKind kind;
    std::string spec;
    PointId n = 0;

    // Explicit: lower-triangular matrix, row i holds d(i, 0..i-1).
    std::vector<Rat> tri;

    // GraphBfs: raw distance = step * hop count.
    Graph graph;
    Rat step{1};
    std::vector<std::int32_t> margins;

    // CantorTree: n_branch^depth leaves, d = base^-v.
    int depth = 0, n_branch = 0, tree_base = 0;
    std::vector<std::int64_t> branch_pow;  // n_branch^i
    std::vector<Rat> level_dist;           // level_dist[v] = base^-v, v in 0..depth
};

namespace {

std::size_t tri_index(PointId i, PointId j) {
    // requires i > j
    return static_cast<std::size_t>(i) * (static_cast<std::size_t>(i) - 1) / 2 +
           static_cast<std::size_t>(j);
}

}  // namespace

PointId Space::n_points() const { return backing_->n; }
BackendKind Space::backend() const { return backing_->kind; }
const std::string& Space::spec_string() const { return backing_->spec; }

const Graph* Space::graph() const {
    return backing_->kind == BackendKind::GraphBfs ? &backing_->graph : nullptr;
}

const std::vector<Rat>* Space::explicit_matrix() const {
    return backing_->kind == BackendKind::Explicit ? &backing_->tri : nullptr;
}

static void check_point(PointId x, PointId n) {
    if (x < 0 || x >= n) throw std::out_of_range("Space: point id out of range");
}

Rat Space::distance(PointId x, PointId y) const {
    const auto& b = *backing_;
    check_point(x, b.n);
    check_point(y, b.n);
    if (x == y) return Rat(0);
    Rat raw;
    switch (b.kind) {
        case BackendKind::Explicit:
            raw = x > y ? b.tri[tri_index(x, y)] : b.tri[tri_index(y, x)];
            break;
        case BackendKind::GraphBfs: {
            auto d = bfs_distances(b.graph, x);
            auto h = d[static_cast<std::size_t>(y)];
            if (h == kUnreachable)
                throw std::domain_error("Space: points in different graph components");
            raw = b.step * Rat(h);
            break;
        }
        case BackendKind::CantorTree: {
            std::int64_t ix = x, iy = y;
            int v = 0;
            for (int i = 1; i <= b.depth; ++i) {
                std::int64_t p = b.branch_pow[static_cast<std::size_t>(b.depth - i)];
                if (ix / p != iy / p) { v = i; break; }
                ix %= p;
                iy %= p;
            }
            raw = b.level_dist[static_cast<std::size_t>(v)];
            break;
        }
    }
    return raw / gamma_;
}

// Raw-threshold form of the ball predicate: d_gamma(x,y) (<|<=) r  iff
// raw(x,y) (<|<=) gamma*r.
void Space::for_each_member(const BallSpec& ball,
                            const std::function<void(PointId)>& fn) const {
    const auto& b = *backing_;
    check_point(ball.center, b.n);
    if (ball.radius.is_negative()) return;
    if (ball.kind == BallKind::Open && ball.radius.is_zero()) return;
    Rat raw_r = gamma_ * ball.radius;

    switch (b.kind) {
        case BackendKind::Explicit: {
            for (PointId y = 0; y < b.n; ++y) {
                Rat d = y == ball.center
                            ? Rat(0)
                            : (y > ball.center ? b.tri[tri_index(y, ball.center)]
                                               : b.tri[tri_index(ball.center, y)]);
                bool in = ball.kind == BallKind::Open ? d < raw_r : d <= raw_r;
                if (in) fn(y);
            }
            return;
        }
        case BackendKind::GraphBfs: {
            // hops h is a member iff step*h (<|<=) raw_r.
            Rat q = raw_r / b.step;
            std::int64_t cap;
            if (ball.kind == BallKind::Closed) {
                cap = q.floor();
            } else {
                cap = q.is_integer() ? q.num() - 1 : q.floor();
            }
            if (cap < 0) return;
            cap = std::min<std::int64_t>(cap, b.n);  // hops never exceed n-1
            auto dist = bfs_distances_capped(b.graph, ball.center,
                                             static_cast<std::int32_t>(cap));
            for (PointId y = 0; y < b.n; ++y) {
                auto h = dist[static_cast<std::size_t>(y)];
                if (h != kUnreachable && h <= cap) fn(y);
            }
            return;
        }
        case BackendKind::CantorTree: {
            // Membership depends only on the first index where paths differ:
            // the ball is the block of leaves sharing the first (vmin-1)
            // branches with the center, where vmin is the smallest level
            // whose distance base^-vmin passes the threshold.
            int vmin = b.depth + 1;
            for (int v = 1; v <= b.depth; ++v) {
                const Rat& d = b.level_dist[static_cast<std::size_t>(v)];
                bool in = ball.kind == BallKind::Open ? d < raw_r : d <= raw_r;
                if (in) { vmin = v; break; }
            }
            int shared = vmin - 1;  // agreed prefix length
            std::int64_t block =
                b.branch_pow[static_cast<std::size_t>(b.depth - shared)];
            std::int64_t base_id = (static_cast<std::int64_t>(ball.center) / block) * block;
            for (std::int64_t y = base_id; y < base_id + block; ++y)
                fn(static_cast<PointId>(y));
            return;
        }
    }
}

std::vector<PointId> Space::ball_members(const BallSpec& ball) const {
    std::vector<PointId> out;
    for_each_member(ball, [&](PointId y) { out.push_back(y); });
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t Space::ball_card(const BallSpec& ball) const {
    const auto& b = *backing_;
    check_point(ball.center, b.n);
    if (ball.radius.is_negative()) return 0;
    if (ball.kind == BallKind::Open && ball.radius.is_zero()) return 0;
    if (b.kind == BackendKind::CantorTree) {
        Rat raw_r = gamma_ * ball.radius;
        int vmin = b.depth + 1;
        for (int v = 1; v <= b.depth; ++v) {
            const Rat& d = b.level_dist[static_cast<std::size_t>(v)];
            bool in = ball.kind == BallKind::Open ? d < raw_r : d <= raw_r;
            if (in) { vmin = v; break; }
        }
        return b.branch_pow[static_cast<std::size_t>(b.depth - (vmin - 1))];
    }
    std::int64_t count = 0;
    for_each_member(ball, [&](PointId) { ++count; });
    return count;
}

std::vector<std::int64_t> Space::ball_counts(PointId center,
                                             const std::vector<Rat>& radii,
                                             BallKind kind) const {
    const auto& b = *backing_;
    check_point(center, b.n);
    std::vector<std::int64_t> out(radii.size(), 0);
    if (b.kind == BackendKind::GraphBfs) {
        // One truncated BFS; bucket counts by hop, then prefix-sum against
        // the per-radius hop caps.
        std::vector<std::int64_t> caps(radii.size());
        std::int64_t max_cap = -1;
        for (std::size_t i = 0; i < radii.size(); ++i) {
            if (radii[i].is_negative() ||
                (kind == BallKind::Open && radii[i].is_zero())) {
                caps[i] = -1;
                continue;
            }
            Rat q = (gamma_ * radii[i]) / b.step;
            caps[i] = kind == BallKind::Closed
                          ? q.floor()
                          : (q.is_integer() ? q.num() - 1 : q.floor());
            caps[i] = std::min<std::int64_t>(caps[i], b.n);
            max_cap = std::max(max_cap, caps[i]);
        }
        if (max_cap < 0) return out;
        auto dist = bfs_distances_capped(b.graph, center,
                                         static_cast<std::int32_t>(max_cap));
        std::vector<std::int64_t> hist(static_cast<std::size_t>(max_cap) + 1, 0);
        for (auto h : dist)
            if (h != kUnreachable && h <= max_cap) ++hist[static_cast<std::size_t>(h)];
        for (std::size_t i = 1; i < hist.size(); ++i) hist[i] += hist[i - 1];
        for (std::size_t i = 0; i < radii.size(); ++i)
            out[i] = caps[i] < 0 ? 0 : hist[static_cast<std::size_t>(caps[i])];
        return out;
    }
    for (std::size_t i = 0; i < radii.size(); ++i)
        out[i] = ball_card({center, radii[i], kind});
    return out;
}

std::vector<Rat> Space::ball_masses(PointId center, const std::vector<Rat>& radii,
                                    BallKind kind,
                                    const std::vector<Rat>& masses) const {
    if (static_cast<PointId>(masses.size()) != n_points())
        throw std::invalid_argument("ball_masses: mass vector size mismatch");
    std::vector<Rat> out(radii.size(), Rat(0));
    for (std::size_t i = 0; i < radii.size(); ++i) {
        Rat total(0);
        for_each_member({center, radii[i], kind},
                        [&](PointId y) { total = total + masses[static_cast<std::size_t>(y)]; });
        out[i] = total;
    }
    return out;
}

std::vector<Rat> Space::distances_from(PointId x) const {
    const auto& b = *backing_;
    check_point(x, b.n);
    std::vector<Rat> row(static_cast<std::size_t>(b.n), Rat(0));
    if (b.kind == BackendKind::GraphBfs) {
        auto dist = bfs_distances(b.graph, x);
        for (PointId y = 0; y < b.n; ++y) {
            auto h = dist[static_cast<std::size_t>(y)];
            if (h == kUnreachable)
                throw std::domain_error("Space: points in different graph components");
            row[static_cast<std::size_t>(y)] = (b.step * Rat(h)) / gamma_;
        }
        return row;
    }
    for (PointId y = 0; y < b.n; ++y) row[static_cast<std::size_t>(y)] = distance(x, y);
    return row;
}

Space Space::rescaled(const Rat& gamma) const {
    if (!(gamma > Rat(0)))
        throw std::invalid_argument("rescale: gamma must be positive");
    Space s = *this;
    s.gamma_ = gamma_ * gamma;
    return s;
}

std::int32_t Space::margin(PointId x) const {
    const auto& b = *backing_;
    check_point(x, b.n);
    if (b.kind == BackendKind::GraphBfs && !b.margins.empty())
        return b.margins[static_cast<std::size_t>(x)];
    return std::numeric_limits<std::int32_t>::max();
}

Rat Space::min_positive_distance() const {
    const auto& b = *backing_;
    switch (b.kind) {
        case BackendKind::GraphBfs:
            return b.step / gamma_;
        case BackendKind::CantorTree:
            return b.level_dist[static_cast<std::size_t>(b.depth)] / gamma_;
        case BackendKind::Explicit: {
            bool found = false;
            Rat best(0);
            for (const Rat& d : b.tri) {
                if (d > Rat(0) && (!found || d < best)) {
                    best = d;
                    found = true;
                }
            }
            if (!found) throw std::domain_error("Space: no positive distances");
            return best / gamma_;
        }
    }
    throw std::logic_error("unreachable");
}

Rat Space::diameter_upper_bound() const {
    const auto& b = *backing_;
    switch (b.kind) {
        case BackendKind::GraphBfs:
            return (b.step * Rat(b.n)) / gamma_;
        case BackendKind::CantorTree:
            return b.level_dist[1] / gamma_;
        case BackendKind::Explicit: {
            Rat best(0);
            for (const Rat& d : b.tri)
                if (best < d) best = d;
            return best / gamma_;
        }
    }
    throw std::logic_error("unreachable");
}

Rat Space::grid_step() const { return min_positive_distance(); }

Space Space::make_explicit(PointId n, std::vector<Rat> lower_triangular,
                           std::string spec) {
    if (n < 1) throw std::invalid_argument("make_explicit: need n >= 1");
    std::size_t expect = static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) - 1) / 2;
    if (lower_triangular.size() != expect)
        throw std::invalid_argument("make_explicit: matrix size mismatch");
    auto b = std::make_shared<Backing>();
    b->kind = BackendKind::Explicit;
    b->n = n;
    b->tri = std::move(lower_triangular);
    b->spec = std::move(spec);
    Space s;
    s.backing_ = std::move(b);
    return s;
}

Space Space::make_graph(Graph g, Rat step, std::string spec,
                        std::vector<std::int32_t> margins) {
    if (!(step > Rat(0))) throw std::invalid_argument("make_graph: step must be positive");
    if (g.n_vertices() == 0) throw std::invalid_argument("make_graph: empty graph");
    if (!is_connected(g))
        throw std::invalid_argument("make_graph: graph must be connected");
    if (!margins.empty() && margins.size() != static_cast<std::size_t>(g.n_vertices()))
        throw std::invalid_argument("make_graph: margin vector size mismatch");
    auto b = std::make_shared<Backing>();
    b->kind = BackendKind::GraphBfs;
    b->n = g.n_vertices();
    b->graph = std::move(g);
    b->step = step;
    b->spec = std::move(spec);
    b->margins = std::move(margins);
    Space s;
    s.backing_ = std::move(b);
    return s;
}

Space Space::make_cantor_tree(int depth, int branching, int base, std::string spec) {
    if (depth < 1 || branching < 2 || base < 2)
        throw std::invalid_argument("make_cantor_tree: need depth>=1, n>=2, m>=2");
    auto b = std::make_shared<Backing>();
    b->kind = BackendKind::CantorTree;
    b->depth = depth;
    b->n_branch = branching;
    b->tree_base = base;
    b->branch_pow.resize(static_cast<std::size_t>(depth) + 1);
    for (int i = 0; i <= depth; ++i)
        b->branch_pow[static_cast<std::size_t>(i)] = Rat::ipow(branching, i);
    std::int64_t leaves = b->branch_pow[static_cast<std::size_t>(depth)];
    if (leaves > std::numeric_limits<PointId>::max())
        throw std::overflow_error("make_cantor_tree: leaf count exceeds point range");
    b->n = static_cast<PointId>(leaves);
    b->level_dist.resize(static_cast<std::size_t>(depth) + 1);
    b->level_dist[0] = Rat(2);  // sentinel above every realizable distance
    for (int v = 1; v <= depth; ++v)
        b->level_dist[static_cast<std::size_t>(v)] = Rat(1, Rat::ipow(base, v));
    b->spec = std::move(spec);
    Space s;
    s.backing_ = std::move(b);
    return s;
}

// ---------------------------------------------------------------------------

namespace {

void record(MetricReport& report, MetricViolation v) {
    if (report.violations.size() < 100) report.violations.push_back(std::move(v));
}

void check_triple(MetricReport& report, PointId x, PointId y, PointId z,
                  const Rat& dxy, const Rat& dyz, const Rat& dxz) {
    if (dxz > dxy + dyz) {
        record(report, {"triangle", x, y, z,
                        "d(x,z)=" + dxz.to_string() + " > " + (dxy + dyz).to_string()});
    }
    if (report.ultrametric_mode) {
        Rat mx = dxy < dyz ? dyz : dxy;
        if (dxz > mx)
            record(report, {"ultrametric", x, y, z,
                            "d(x,z)=" + dxz.to_string() + " > max=" + mx.to_string()});
    }
}

}  // namespace

MetricReport verify_metric(const Space& space, std::int64_t sample_size,
                           std::uint64_t seed, bool ultrametric) {
    if (sample_size < 1) throw std::invalid_argument("verify_metric: sample_size >= 1");
    MetricReport report;
    report.seed = seed;
    report.ultrametric_mode = ultrametric;
    const PointId n = space.n_points();
    Rng rng(seed);

    // Symmetry and identity over pairs; exhaustive when the space is small
    // and the oracle is O(1).
    bool cheap = space.backend() != BackendKind::GraphBfs;
    if (cheap && n <= 1000) {
        report.exhaustive_pairs = true;
        for (PointId x = 0; x < n; ++x) {
            if (space.distance(x, x) != Rat(0))
                record(report, {"identity", x, x, x, "d(x,x) != 0"});
            for (PointId y = static_cast<PointId>(x + 1); y < n; ++y) {
                Rat dxy = space.distance(x, y);
                Rat dyx = space.distance(y, x);
                ++report.pairs_checked;
                if (dxy != dyx)
                    record(report, {"symmetry", x, y, y, dxy.to_string() + " vs " + dyx.to_string()});
                if (dxy == Rat(0))
                    record(report, {"identity", x, y, y, "d(x,y)=0 for x != y"});
            }
        }
    }

    // Triangle (and ultrametric) checks on sampled triples. Triples are
    // grouped by shared distance rows so graph backends pay one BFS per row.
    std::int64_t rows = std::max<std::int64_t>(2, std::min<std::int64_t>(n, 48));
    std::vector<PointId> sources;
    for (std::int64_t i = 0; i < rows; ++i)
        sources.push_back(static_cast<PointId>(rng.uniform(static_cast<std::uint64_t>(n))));
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());

    std::vector<std::vector<Rat>> row_cache;
    row_cache.reserve(sources.size());
    for (PointId s : sources) row_cache.push_back(space.distances_from(s));

    bool all_triples = cheap && n <= 60;
    if (all_triples) {
        report.exhaustive_triples = true;
        for (PointId x = 0; x < n; ++x)
            for (PointId y = 0; y < n; ++y)
                for (PointId z = 0; z < n; ++z) {
                    check_triple(report, x, y, z, space.distance(x, y),
                                 space.distance(y, z), space.distance(x, z));
                    ++report.triples_checked;
                }
    } else {
        for (std::int64_t t = 0; t < sample_size; ++t) {
            std::size_t ix = static_cast<std::size_t>(rng.uniform(sources.size()));
            std::size_t iy = static_cast<std::size_t>(rng.uniform(sources.size()));
            PointId z = static_cast<PointId>(rng.uniform(static_cast<std::uint64_t>(n)));
            PointId x = sources[ix], y = sources[iy];
            const Rat& dxy = row_cache[ix][static_cast<std::size_t>(y)];
            const Rat& dyz = row_cache[iy][static_cast<std::size_t>(z)];
            const Rat& dxz = row_cache[ix][static_cast<std::size_t>(z)];
            check_triple(report, x, y, z, dxy, dyz, dxz);
            // symmetry spot check rides along
            if (row_cache[iy][static_cast<std::size_t>(x)] != dxy)
                record(report, {"symmetry", x, y, y, "row mismatch"});
            ++report.triples_checked;
            ++report.pairs_checked;
        }
    }
    return report;
}

std::string metric_report_to_string(const MetricReport& r) {
    std::ostringstream out;
    out << "pairs_checked " << r.pairs_checked << "\n";
    out << "triples_checked " << r.triples_checked << "\n";
    out << "seed " << r.seed << "\n";
    out << "ultrametric_mode " << (r.ultrametric_mode ? 1 : 0) << "\n";
    out << "exhaustive_pairs " << (r.exhaustive_pairs ? 1 : 0) << "\n";
    out << "exhaustive_triples " << (r.exhaustive_triples ? 1 : 0) << "\n";
    out << "violations " << r.violations.size() << "\n";
    for (const auto& v : r.violations)
        out << "violation " << v.kind << " " << v.x << " " << v.y << " " << v.z
            << " " << v.detail << "\n";
    return out.str();
}

}  // namespace mmgeo
