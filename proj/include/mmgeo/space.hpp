#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mmgeo/graph.hpp"
#include "mmgeo/rat.hpp"

namespace mmgeo {

enum class BallKind { Open, Closed };

struct BallSpec {
    PointId center = 0;
    Rat radius;
    BallKind kind = BallKind::Open;
};

enum class BackendKind { Explicit, GraphBfs, CantorTree };

/// Finite metric space with an exact-rational distance oracle.
///
/// The effective metric is d(x,y) = raw(x,y) / gamma, so rescaling by gamma
/// turns the ball of radius r into the raw ball of radius gamma*r exactly.
/// Copies are cheap: backends are shared immutable state.
class Space {
public:
    PointId n_points() const;
    Rat distance(PointId x, PointId y) const;

    std::vector<PointId> ball_members(const BallSpec& ball) const;
    std::int64_t ball_card(const BallSpec& ball) const;

    /// Visits every member of the ball (order unspecified); cheaper than
    /// materializing the member set on graph backends.
    void for_each_member(const BallSpec& ball,
                         const std::function<void(PointId)>& fn) const;

    /// Exact ball counts for a sorted ascending radius ladder, computed with
    /// a single sweep per center.
    std::vector<std::int64_t> ball_counts(PointId center,
                                          const std::vector<Rat>& radii,
                                          BallKind kind) const;

    /// Like ball_counts but accumulating per-point masses instead of counts.
    std::vector<Rat> ball_masses(PointId center, const std::vector<Rat>& radii,
                                 BallKind kind,
                                 const std::vector<Rat>& masses) const;

    /// Full distance row from one point (one BFS on graph backends).
    std::vector<Rat> distances_from(PointId x) const;

    Space rescaled(const Rat& gamma) const;
    const Rat& gamma() const { return gamma_; }

    BackendKind backend() const;
    /// Generator expression that reproduces this space ("grid dims=5,5 h=1"),
    /// empty for explicit-matrix spaces.
    const std::string& spec_string() const;

    /// Steps-to-boundary surrogate used by bulk center filters: lattice
    /// margin on grids, cap minus word length on Cayley balls, unbounded on
    /// boundaryless backends.
    std::int32_t margin(PointId x) const;

    Rat min_positive_distance() const;
    Rat diameter_upper_bound() const;

    /// Smallest positive distance quantum (grid step, m^-N on trees); used as
    /// the discreteness slack in geodesic witness searches.
    Rat grid_step() const;

    // Constructors (see space_gen.hpp for the generator front ends).
    static Space make_explicit(PointId n, std::vector<Rat> lower_triangular,
                               std::string spec = "");
    static Space make_graph(Graph g, Rat step, std::string spec = "",
                            std::vector<std::int32_t> margins = {});
    static Space make_cantor_tree(int depth, int branching, int base,
                                  std::string spec = "");

    const Graph* graph() const;  // null unless GraphBfs backend
    const std::vector<Rat>* explicit_matrix() const;

private:
    struct Backing;
    std::shared_ptr<const Backing> backing_;
    Rat gamma_{1};
};

struct MetricViolation {
    std::string kind;  // "identity", "symmetry", "triangle", "ultrametric"
    PointId x = 0, y = 0, z = 0;
    std::string detail;
};

struct MetricReport {
    std::int64_t pairs_checked = 0;
    std::int64_t triples_checked = 0;
    std::uint64_t seed = 0;
    bool ultrametric_mode = false;
    bool exhaustive_pairs = false;
    bool exhaustive_triples = false;
    std::vector<MetricViolation> violations;  // capped at 100 entries
    bool ok() const { return violations.empty(); }
};

/// Samples symmetry/identity/triangle checks (ultrametric inequality too when
/// requested). Exhaustive on small spaces, seeded sampling above that.
MetricReport verify_metric(const Space& space, std::int64_t sample_size,
                           std::uint64_t seed, bool ultrametric = false);

std::string metric_report_to_string(const MetricReport& report);

}  // namespace mmgeo
