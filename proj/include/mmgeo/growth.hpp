#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmgeo/space.hpp"

namespace mmgeo {

/// Ball counts card B(x, r) on a (centers x radii) grid.
struct CountTable {
    std::vector<Rat> radii;  // sorted ascending
    std::vector<PointId> centers;
    std::vector<std::vector<std::int64_t>> counts;  // counts[center][radius]
    BallKind kind = BallKind::Open;
};

struct RadiusInterval {
    Rat lo;
    Rat hi;
    bool contains(const Rat& r) const { return lo <= r && r <= hi; }
    bool operator==(const RadiusInterval& o) const { return lo == o.lo && hi == o.hi; }
};

/// Power-law fit card B(x,r) ~ sigma * r^lambda over an interval, with the
/// band constants c, C absorbing all deviation:
///   c*sigma*r^lambda <= count <= C*sigma*r^lambda at every in-interval sample.
struct GrowthReport {
    RadiusInterval interval;
    double lambda = 0;
    double sigma = 1;
    double c = 1;  // min count / (sigma r^lambda), <= 1 by least-squares centering
    double C = 1;  // max count / (sigma r^lambda), >= 1
    std::int64_t n_samples = 0;
    double max_abs_residual = 0;  // max |ln count - (ln sigma + lambda ln r)|
    Rat r_lo{0};                  // extreme sampled radii inside the interval
    Rat r_hi{0};
    BallKind kind = BallKind::Open;
};

CountTable ball_count_table(const Space& space, const std::vector<PointId>& centers,
                            const std::vector<Rat>& radii, BallKind kind);

/// Log-log least squares of count against radius over in-interval samples,
/// then extremal band constants. Throws if fewer than two distinct radii
/// fall in the interval or any in-interval count is zero.
GrowthReport fit_growth(const CountTable& table, const RadiusInterval& interval);

struct BoundsCheck {
    double c = 0, C = 0;
    PointId witness_lo_center = 0, witness_hi_center = 0;
    Rat witness_lo_r{0}, witness_hi_r{0};
    bool pass = true;  // only meaningful when targets were supplied
};

/// Extremal ratios count/(sigma r^lambda) over in-interval samples for a
/// caller-supplied (lambda, sigma); optional (c, C) targets give pass/fail.
BoundsCheck check_growth_bounds(const CountTable& table, double lambda, double sigma,
                                const RadiusInterval& interval,
                                const double* c_target = nullptr,
                                const double* C_target = nullptr);

struct UniquenessDiag {
    double lambda_diff = 0;
    double bound = 0;  // ln(C1 C2 / (c1 c2)) / ln(I+ / I-)
    bool respected = false;
};

/// Finite growth-order uniqueness: two band fits over the same interval can
/// only disagree in lambda by the band slack divided by the interval's log
/// length. Throws on mismatched intervals.
UniquenessDiag growth_uniqueness_diag(const GrowthReport& a, const GrowthReport& b);

struct HomogeneityReport {
    double ratio = 1;  // max count / min count over the (center, radius) grid
    PointId argmax_center = 0, argmin_center = 0;
    Rat argmax_r{0}, argmin_r{0};
    std::vector<std::pair<std::int64_t, std::int64_t>> per_radius_min_max;
};

/// Near-homogeneity surrogate: extremal ratio of ball counts across all
/// centers and all radii in the set. Throws if a count is zero.
HomogeneityReport homogeneity_ratio(const Space& space, const std::vector<Rat>& radii,
                                    const std::vector<PointId>& centers,
                                    BallKind kind = BallKind::Open);

/// Geometric radius ladder a, a*ratio, ... capped at b (exact rationals).
std::vector<Rat> geometric_radii(const Rat& a, const Rat& b, const Rat& ratio);

/// Centers with margin >= the given number of lattice/word steps.
std::vector<PointId> bulk_centers(const Space& space, std::int32_t margin);
std::vector<PointId> all_centers(const Space& space);
std::vector<PointId> sample_centers(const Space& space, std::int64_t count,
                                    std::uint64_t seed);

std::string count_table_to_csv(const CountTable& table);
CountTable count_table_from_csv(const std::string& csv);
std::string growth_report_to_string(const GrowthReport& report);

/// Two-column (ln r, ln count) data with the fit in a comment header;
/// gnuplot-compatible.
std::string growth_plot_data(const CountTable& table, const GrowthReport& report);

}  // namespace mmgeo
