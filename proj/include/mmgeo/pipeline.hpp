#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mmgeo/growth.hpp"
#include "mmgeo/measure.hpp"
#include "mmgeo/net.hpp"

namespace mmgeo {

/// End-to-end plan: generate a space, build the delta-net and delta-graph,
/// check the Lipschitz sandwich, quantize the measure, fit growth of the
/// delta-graph under delta*dist, and certify the Ahlfors band.
struct PipelinePlan {
    std::string space;            // generator expression or file:/graphfile: ref
    Rat delta{1};
    std::vector<Rat> radii;       // ladder for growth/ahlfors
    RadiusInterval interval;      // fit interval
    std::optional<double> lambda_target;
    double lambda_tol = 0.05;
    std::string measure = "counting:1";  // counting:M or file:path
    std::int64_t quantize_m = 0;         // 0 = 10 * n_points
    BallKind growth_ball = BallKind::Open;
    BallKind ahlfors_ball = BallKind::Closed;
    std::string centers = "all";  // all | bulk:<margin> | sample:<n>
    std::uint64_t seed = 0;

    /// Canonical serialized form; also the content that gets hashed.
    std::string to_string() const;
    static PipelinePlan parse(const std::string& text);
    std::string content_hash() const;
};

struct StageError {
    std::string stage;
    std::string message;
};

struct RepresentationReport {
    PipelinePlan plan;
    std::string plan_hash;
    // stage outputs (filled as far as the run progressed)
    std::optional<Net> net;
    std::optional<SandwichReport> sandwich;
    std::optional<QuantizedMeasure> quantized;
    std::optional<GrowthReport> growth;
    std::optional<AhlforsReport> ahlfors;
    std::int64_t nest_witness_ok = 0;
    std::int64_t nest_witness_fail = 0;
    std::optional<StageError> error;
    bool pass = false;

    std::string to_string() const;
};

/// Runs all stages; writes per-stage artifacts under out_dir/<plan hash>/
/// when out_dir is nonempty. Reruns never overwrite existing artifacts.
RepresentationReport run_pipeline(const PipelinePlan& plan, const std::string& out_dir);

/// Centers policy shared by the CLI and the pipeline.
std::vector<PointId> resolve_centers(const Space& space, const std::string& policy,
                                     std::uint64_t seed);

/// Radii argument: "geometric:a,b,ratio" or a comma-separated list.
std::vector<Rat> resolve_radii(const std::string& arg);

}  // namespace mmgeo
