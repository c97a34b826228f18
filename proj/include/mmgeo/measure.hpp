#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmgeo/net.hpp"
#include "mmgeo/space.hpp"

namespace mmgeo {

/// Finitely additive atomic measure: exact rational mass per point.
struct AtomicMeasure {
    std::vector<Rat> masses;
    Rat total{0};

    Rat mass_of(const std::vector<PointId>& subset) const;
    static AtomicMeasure from_masses(std::vector<Rat> masses);
};

/// nu with every mass 1/M, so nu(A) = |A| / M.
AtomicMeasure normalized_counting_measure(const Space& space, const Rat& M);

/// Uniform-density quantization: k_i = floor(M * nu_i), mass k_i/M per atom,
/// realized on a carrier of k_i-point blocks projecting to atom i.
struct QuantizedMeasure {
    std::int64_t M = 1;                       // density is 1/M
    std::vector<std::int64_t> multiplicity;   // k_i
    std::int64_t carrier_size = 0;            // sum k_i
    Rat total{0};                             // sum k_i / M <= nu total
    // Materialized carrier (opt-in): block_start[i] gives the first carrier
    // index of atom i's block; projection maps carrier index -> atom.
    bool materialized = false;
    std::vector<std::int64_t> block_start;
    std::vector<PointId> projection;

    Rat pushforward_mass(const std::vector<PointId>& subset) const;
};

QuantizedMeasure quantize_measure(const AtomicMeasure& nu, std::int64_t M,
                                  bool materialize = false);

/// Covering sums sum (2*delta)^lambda over greedy delta-nets of the target,
/// one entry per ladder delta (descending). The finite-scale Hausdorff
/// surrogate: stable in delta near the true dimension, divergent below it,
/// vanishing above it.
struct HausdorffEstimate {
    double lambda = 0;
    std::vector<Rat> deltas;
    std::vector<std::int64_t> net_sizes;
    std::vector<double> sums;  // net_size * (2 delta)^lambda
};

HausdorffEstimate hausdorff_estimate(const Space& space, double lambda,
                                     const std::vector<Rat>& delta_ladder,
                                     const std::vector<PointId>& target);

/// Greedy Vitali packing of U by disjoint closed balls under the half-maximal
/// radius rule: each pick has r > R/2 where R is the exact sup of radii of
/// closed balls still fitting inside U minus what is already packed.
struct VitaliBall {
    PointId center = 0;
    Rat radius{0};
    Rat sup_at_pick{0};  // R_{m+1} at the time of the pick
    std::vector<PointId> members;
};

struct VitaliPacking {
    std::vector<VitaliBall> balls;
    double sum_r_lambda = 0;
    Rat residual_mass{0};  // nu(U \ union of balls)
    std::vector<PointId> uncovered;
};

VitaliPacking vitali_pack(const Space& space, const AtomicMeasure& nu,
                          const std::vector<PointId>& target, const Rat& rho,
                          double lambda, std::int64_t max_balls = -1);

/// Ahlfors band k r^lambda <= nu(B(x,r)) <= K r^lambda over a (centers,
/// radii) grid with radii below R.
struct AhlforsReport {
    double lambda = 0;
    Rat R{0};
    double k = 0, K = 0;
    PointId witness_k_center = 0, witness_K_center = 0;
    Rat witness_k_r{0}, witness_K_r{0};
    BallKind kind = BallKind::Closed;
    std::vector<std::tuple<PointId, Rat, Rat, double>> per_ball;  // center, r, nu(B), ratio
    bool pass = true;  // meaningful when targets supplied
};

AhlforsReport ahlfors_check(const Space& space, const AtomicMeasure& nu, double lambda,
                            const Rat& R, const std::vector<PointId>& centers,
                            const std::vector<Rat>& radii, BallKind kind = BallKind::Closed,
                            const double* k_target = nullptr,
                            const double* K_target = nullptr);

/// Net-count band: with nu Ahlfors-certified by (k, K, lambda), the count of
/// net points in B(a, r) normalized by (r/delta)^lambda must lie within
/// [2^-lambda K^-1 k, 4^lambda K k^-1] whenever 2*delta <= r.
struct NetCountBound {
    Rat r{0};
    double D = 0;
    double lower = 0, upper = 0;
    bool pass = true;
};

std::vector<NetCountBound> net_count_bounds(const Space& space, const Net& net,
                                            double lambda, double k, double K,
                                            PointId a, const std::vector<Rat>& radii);

/// Ball-nesting witness for the length-space property: a point c with
/// B(c, r/2 - eps_grid) inside B(a, rho) and B(x, r), where eps_grid is one
/// discreteness step. Follows the two-case geodesic construction; returns
/// nothing when no candidate passes (ultrametric spaces at small r).
std::optional<PointId> ball_nest_witness(const Space& space, PointId a, PointId x,
                                         const Rat& r, const Rat& rho);

struct IntersectionBound {
    Rat measured{0};  // nu(B(x,r) n B(a,rho))
    double required = 0;  // k' * r^lambda
    bool pass = false;
};

/// Length-space intersection lower bound nu(B(x,r) n B(a,rho)) >= k' r^lambda
/// with k' = 2^-lambda k.
IntersectionBound intersection_bound_check(const Space& space, const AtomicMeasure& nu,
                                           double lambda, double k_prime, PointId a,
                                           PointId x, const Rat& r, const Rat& rho);

std::string measure_to_string(const AtomicMeasure& nu);
AtomicMeasure measure_from_string(const std::string& text);
std::string quantized_to_string(const QuantizedMeasure& q);
std::string ahlfors_report_to_string(const AhlforsReport& report);
std::string ahlfors_per_ball_csv(const AhlforsReport& report);
std::string hausdorff_estimate_to_csv(const HausdorffEstimate& est);

}  // namespace mmgeo
