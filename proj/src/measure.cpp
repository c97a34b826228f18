#include "mmgeo/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mmgeo/util.hpp"

namespace mmgeo {

Rat AtomicMeasure::mass_of(const std::vector<PointId>& subset) const {
    Rat total(0);
    for (PointId i : subset) total = total + masses.at(static_cast<std::size_t>(i));
    return total;
}

AtomicMeasure AtomicMeasure::from_masses(std::vector<Rat> masses) {
    AtomicMeasure nu;
    nu.total = Rat(0);
    for (const Rat& m : masses) {
        if (m.is_negative())
            throw std::invalid_argument("AtomicMeasure: masses must be nonnegative");
        nu.total = nu.total + m;
    }
    nu.masses = std::move(masses);
    return nu;
}

AtomicMeasure normalized_counting_measure(const Space& space, const Rat& M) {
    if (!(M > Rat(0)))
        throw std::invalid_argument("normalized_counting_measure: M must be positive");
    Rat unit = Rat(1) / M;
    std::vector<Rat> masses(static_cast<std::size_t>(space.n_points()), unit);
    return AtomicMeasure::from_masses(std::move(masses));
}

Rat QuantizedMeasure::pushforward_mass(const std::vector<PointId>& subset) const {
    std::int64_t k_sum = 0;
    for (PointId i : subset) k_sum += multiplicity.at(static_cast<std::size_t>(i));
    return Rat(k_sum, M);
}

QuantizedMeasure quantize_measure(const AtomicMeasure& nu, std::int64_t M,
                                  bool materialize) {
    if (M < 1) throw std::invalid_argument("quantize_measure: M must be >= 1");
    QuantizedMeasure q;
    q.M = M;
    q.multiplicity.resize(nu.masses.size());
    for (std::size_t i = 0; i < nu.masses.size(); ++i) {
        // k_i = floor(M * nu_i), so k_i/M <= nu_i < (k_i+1)/M exactly.
        q.multiplicity[i] = (Rat(M) * nu.masses[i]).floor();
        q.carrier_size += q.multiplicity[i];
    }
    q.total = Rat(q.carrier_size, M);
    if (materialize) {
        q.materialized = true;
        q.block_start.resize(nu.masses.size() + 1, 0);
        for (std::size_t i = 0; i < nu.masses.size(); ++i)
            q.block_start[i + 1] = q.block_start[i] + q.multiplicity[i];
        q.projection.resize(static_cast<std::size_t>(q.carrier_size));
        for (std::size_t i = 0; i < nu.masses.size(); ++i)
            for (std::int64_t b = q.block_start[i]; b < q.block_start[i + 1]; ++b)
                q.projection[static_cast<std::size_t>(b)] = static_cast<PointId>(i);
    }
    return q;
}

HausdorffEstimate hausdorff_estimate(const Space& space, double lambda,
                                     const std::vector<Rat>& delta_ladder,
                                     const std::vector<PointId>& target) {
    for (std::size_t i = 1; i < delta_ladder.size(); ++i)
        if (!(delta_ladder[i] < delta_ladder[i - 1]))
            throw std::invalid_argument("hausdorff_estimate: ladder must descend");
    HausdorffEstimate est;
    est.lambda = lambda;
    est.deltas = delta_ladder;
    if (target.empty()) {
        est.net_sizes.assign(delta_ladder.size(), 0);
        est.sums.assign(delta_ladder.size(), 0.0);
        return est;
    }
    for (const Rat& delta : delta_ladder) {
        // Greedy maximal delta-separated subset of the target (index order):
        // the balls B(z, delta) around its points cover the target, each of
        // diameter <= 2*delta.
        std::vector<PointId> net;
        for (PointId x : target) {
            bool close = false;
            for (PointId z : net) {
                if (space.distance(x, z) < delta) {
                    close = true;
                    break;
                }
            }
            if (!close) net.push_back(x);
        }
        est.net_sizes.push_back(static_cast<std::int64_t>(net.size()));
        double diam = 2.0 * delta.to_double();
        est.sums.push_back(static_cast<double>(net.size()) * std::pow(diam, lambda));
    }
    return est;
}

namespace {

/// Exact sup of radii r <= rho such that some closed ball B(x, r) fits in
/// the remaining set, together with a witness pick achieving r > sup/2.
/// The sup over real radii is determined by realized distances: for each
/// admissible center x, the closed ball grows only at distances from x.
struct SupScan {
    bool any = false;
    Rat sup{0};        // sup of fitting radii (may be unattained)
    bool attained = false;
    PointId center = 0;
    Rat pick_radius{0};  // concrete rule-satisfying radius for `center`
};

SupScan vitali_sup_scan(const Space& space, const std::vector<PointId>& target_sorted,
                        const std::vector<bool>& in_target,
                        const std::vector<bool>& packed, const Rat& rho) {
    SupScan best;
    for (PointId x : target_sorted) {
        if (packed[static_cast<std::size_t>(x)]) continue;
        // d_out(x): distance to the nearest point outside the remaining set;
        // closed balls B(x, r) fit exactly for r < d_out(x), and for r <= rho
        // when d_out(x) > rho.
        auto row = space.distances_from(x);
        bool blocked = false;
        Rat d_out(0);
        for (PointId y = 0; y < space.n_points(); ++y) {
            bool remaining = in_target[static_cast<std::size_t>(y)] &&
                             !packed[static_cast<std::size_t>(y)];
            if (remaining) continue;
            const Rat& d = row[static_cast<std::size_t>(y)];
            if (!blocked || d < d_out) {
                d_out = d;
                blocked = true;
            }
        }
        Rat sup_x;
        bool attained_x;
        if (!blocked || d_out > rho) {
            sup_x = rho;
            attained_x = true;
        } else {
            sup_x = d_out;  // supremum, not attained
            attained_x = false;
        }
        if (!best.any || best.sup < sup_x ||
            (best.sup == sup_x && !best.attained && attained_x)) {
            best.any = true;
            best.sup = sup_x;
            best.attained = attained_x;
            best.center = x;
            if (attained_x) {
                best.pick_radius = sup_x;
            } else {
                // Any radius in [t, sup[ yields the same ball, where t is the
                // largest realized distance from x below sup; choose a value
                // > sup/2 in that window.
                Rat t(0);
                for (PointId y = 0; y < space.n_points(); ++y) {
                    const Rat& d = row[static_cast<std::size_t>(y)];
                    if (d < sup_x && t < d) t = d;
                }
                Rat three_quarters = sup_x * Rat(3, 4);
                best.pick_radius = t < three_quarters ? three_quarters
                                                      : (t + sup_x) * Rat(1, 2);
            }
        }
    }
    return best;
}

}  // namespace

VitaliPacking vitali_pack(const Space& space, const AtomicMeasure& nu,
                          const std::vector<PointId>& target, const Rat& rho,
                          double lambda, std::int64_t max_balls) {
    if (!(rho > Rat(0))) throw std::invalid_argument("vitali_pack: rho must be positive");
    if (target.empty()) throw std::invalid_argument("vitali_pack: empty target");
    if (static_cast<PointId>(nu.masses.size()) != space.n_points())
        throw std::invalid_argument("vitali_pack: measure size mismatch");

    std::vector<PointId> target_sorted = target;
    std::sort(target_sorted.begin(), target_sorted.end());
    std::vector<bool> in_target(static_cast<std::size_t>(space.n_points()), false);
    for (PointId x : target_sorted) in_target[static_cast<std::size_t>(x)] = true;
    std::vector<bool> packed(static_cast<std::size_t>(space.n_points()), false);

    VitaliPacking out;
    while (max_balls < 0 ||
           static_cast<std::int64_t>(out.balls.size()) < max_balls) {
        SupScan scan = vitali_sup_scan(space, target_sorted, in_target, packed, rho);
        if (!scan.any || !(scan.sup > Rat(0))) break;  // no positive-radius ball fits
        VitaliBall ball;
        ball.center = scan.center;
        ball.radius = scan.pick_radius;
        ball.sup_at_pick = scan.sup;
        space.for_each_member({scan.center, scan.pick_radius, BallKind::Closed},
                              [&](PointId y) {
                                  ball.members.push_back(y);
                                  packed[static_cast<std::size_t>(y)] = true;
                              });
        std::sort(ball.members.begin(), ball.members.end());
        out.sum_r_lambda += std::pow(ball.radius.to_double(), lambda);
        out.balls.push_back(std::move(ball));
    }
    for (PointId x : target_sorted)
        if (!packed[static_cast<std::size_t>(x)]) {
            out.uncovered.push_back(x);
            out.residual_mass = out.residual_mass + nu.masses[static_cast<std::size_t>(x)];
        }
    return out;
}

AhlforsReport ahlfors_check(const Space& space, const AtomicMeasure& nu, double lambda,
                            const Rat& R, const std::vector<PointId>& centers,
                            const std::vector<Rat>& radii, BallKind kind,
                            const double* k_target, const double* K_target) {
    if (static_cast<PointId>(nu.masses.size()) != space.n_points())
        throw std::invalid_argument("ahlfors_check: measure size mismatch");
    for (const Rat& r : radii)
        if (!(Rat(0) < r && r < R))
            throw std::invalid_argument("ahlfors_check: radii must lie in ]0, R[");
    AhlforsReport report;
    report.lambda = lambda;
    report.R = R;
    report.kind = kind;

    std::vector<Rat> sorted = radii;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::vector<Rat>> mass_rows(centers.size());
    parallel_for(static_cast<std::int64_t>(centers.size()), [&](std::int64_t i) {
        mass_rows[static_cast<std::size_t>(i)] = space.ball_masses(
            centers[static_cast<std::size_t>(i)], sorted, kind, nu.masses);
    });

    bool first = true;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        for (std::size_t j = 0; j < sorted.size(); ++j) {
            const Rat& mass = mass_rows[i][j];
            if (!(mass > Rat(0)))
                throw std::invalid_argument("ahlfors_check: zero-mass ball");
            double ratio = mass.to_double() / std::pow(sorted[j].to_double(), lambda);
            report.per_ball.emplace_back(centers[i], sorted[j], mass, ratio);
            if (first || ratio < report.k) {
                report.k = ratio;
                report.witness_k_center = centers[i];
                report.witness_k_r = sorted[j];
            }
            if (first || ratio > report.K) {
                report.K = ratio;
                report.witness_K_center = centers[i];
                report.witness_K_r = sorted[j];
            }
            first = false;
        }
    }
    if (first) throw std::invalid_argument("ahlfors_check: no (center, radius) samples");
    if (k_target != nullptr && report.k < *k_target) report.pass = false;
    if (K_target != nullptr && report.K > *K_target) report.pass = false;
    return report;
}

std::vector<NetCountBound> net_count_bounds(const Space& space, const Net& net,
                                            double lambda, double k, double K,
                                            PointId a, const std::vector<Rat>& radii) {
    std::vector<NetCountBound> out;
    double lower = std::pow(2.0, -lambda) * k / K;
    double upper = std::pow(4.0, lambda) * K / k;
    Rat two_delta = net.delta * Rat(2);
    auto row = space.distances_from(a);
    for (const Rat& r : radii) {
        if (!(two_delta <= r))
            throw std::invalid_argument("net_count_bounds: need 2*delta <= r");
        std::int64_t count = 0;
        for (PointId z : net.carrier)
            if (row[static_cast<std::size_t>(z)] < r) ++count;  // open ball
        NetCountBound b;
        b.r = r;
        b.D = static_cast<double>(count) /
              std::pow(r.to_double() / net.delta.to_double(), lambda);
        b.lower = lower;
        b.upper = upper;
        b.pass = b.D >= lower && b.D <= upper;
        out.push_back(b);
    }
    return out;
}

std::optional<PointId> ball_nest_witness(const Space& space, PointId a, PointId x,
                                         const Rat& r, const Rat& rho) {
    if (!(Rat(0) < r && r <= rho))
        throw std::invalid_argument("ball_nest_witness: need 0 < r <= rho");
    auto row_a = space.distances_from(a);
    auto row_x = space.distances_from(x);
    const Rat& dax = row_a[static_cast<std::size_t>(x)];
    if (dax > rho) throw std::invalid_argument("ball_nest_witness: need d(a,x) <= rho");

    Rat half_r = r * Rat(1, 2);
    Rat eps = space.grid_step();
    Rat probe = half_r - eps;  // open ball B(c, r/2 - eps) must nest

    auto verify = [&](PointId c) {
        bool ok = true;
        space.for_each_member({c, probe, BallKind::Open}, [&](PointId y) {
            if (!ok) return;
            if (!(row_a[static_cast<std::size_t>(y)] < rho) ||
                !(row_x[static_cast<std::size_t>(y)] < r))
                ok = false;
        });
        return ok;
    };

    if (dax < half_r) {
        // First proof case: the smaller ball already sits inside both.
        if (verify(x)) return x;
        return std::nullopt;
    }
    // Geodesic case: c with d(a,c) + d(c,x) = d(a,x) and d(c,x) within one
    // discreteness step of r/2. Spaces without approximate geodesic midpoints
    // (ultrametrics) simply have no candidate, which is the failure signal.
    std::optional<PointId> best;
    Rat best_gap(0);
    for (PointId c = 0; c < space.n_points(); ++c) {
        const Rat& dac = row_a[static_cast<std::size_t>(c)];
        const Rat& dcx = row_x[static_cast<std::size_t>(c)];
        if (dac + dcx != dax) continue;  // not on a geodesic
        Rat gap = dcx <= half_r ? half_r - dcx : dcx - half_r;
        if (gap > eps) continue;
        if (!best || gap < best_gap) {
            best = c;
            best_gap = gap;
        }
    }
    if (best && verify(*best)) return best;
    return std::nullopt;
}

IntersectionBound intersection_bound_check(const Space& space, const AtomicMeasure& nu,
                                           double lambda, double k_prime, PointId a,
                                           PointId x, const Rat& r, const Rat& rho) {
    if (!(Rat(0) < r && r <= rho))
        throw std::invalid_argument("intersection_bound_check: need 0 < r <= rho");
    auto row_a = space.distances_from(a);
    if (row_a[static_cast<std::size_t>(x)] > rho)
        throw std::invalid_argument("intersection_bound_check: need d(a,x) <= rho");
    IntersectionBound out;
    space.for_each_member({x, r, BallKind::Open}, [&](PointId y) {
        if (row_a[static_cast<std::size_t>(y)] < rho)
            out.measured = out.measured + nu.masses[static_cast<std::size_t>(y)];
    });
    out.required = k_prime * std::pow(r.to_double(), lambda);
    out.pass = out.measured.to_double() >= out.required;
    return out;
}

// ---------------------------------------------------------------------------

std::string measure_to_string(const AtomicMeasure& nu) {
    std::ostringstream out;
    for (std::size_t i = 0; i < nu.masses.size(); ++i)
        out << i << " " << nu.masses[i].to_string() << "\n";
    return out.str();
}

AtomicMeasure measure_from_string(const std::string& text) {
    std::istringstream in(text);
    std::map<std::int64_t, Rat> entries;
    std::string line;
    std::int64_t max_idx = -1;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::int64_t idx;
        std::string mass;
        if (!(ls >> idx >> mass))
            throw std::invalid_argument("measure: bad line: " + line);
        entries[idx] = Rat::parse(mass);
        max_idx = std::max(max_idx, idx);
    }
    std::vector<Rat> masses(static_cast<std::size_t>(max_idx + 1), Rat(0));
    for (const auto& [i, m] : entries) masses[static_cast<std::size_t>(i)] = m;
    return AtomicMeasure::from_masses(std::move(masses));
}

std::string quantized_to_string(const QuantizedMeasure& q) {
    std::ostringstream out;
    out << "M " << q.M << "\n";
    out << "carrier_size " << q.carrier_size << "\n";
    out << "total " << q.total.to_string() << "\n";
    out << "multiplicities\n";
    for (std::size_t i = 0; i < q.multiplicity.size(); ++i)
        out << i << " " << q.multiplicity[i] << "\n";
    return out.str();
}

std::string ahlfors_report_to_string(const AhlforsReport& r) {
    std::ostringstream out;
    out << "lambda " << fmt_double(r.lambda) << "\n";
    out << "R " << r.R.to_string() << "\n";
    out << "k " << fmt_double(r.k) << "\n";
    out << "K " << fmt_double(r.K) << "\n";
    out << "K_over_k " << fmt_double(r.K / r.k) << "\n";
    out << "witness_k " << r.witness_k_center << " " << r.witness_k_r.to_string() << "\n";
    out << "witness_K " << r.witness_K_center << " " << r.witness_K_r.to_string() << "\n";
    out << "ball " << (r.kind == BallKind::Open ? "open" : "closed") << "\n";
    out << "n_balls " << r.per_ball.size() << "\n";
    out << "pass " << (r.pass ? 1 : 0) << "\n";
    return out.str();
}

std::string ahlfors_per_ball_csv(const AhlforsReport& report) {
    std::ostringstream out;
    out << "center,r,nu,ratio\n";
    for (const auto& [center, r, mass, ratio] : report.per_ball)
        out << center << "," << r.to_string() << "," << mass.to_string() << ","
            << fmt_double(ratio) << "\n";
    return out.str();
}

std::string hausdorff_estimate_to_csv(const HausdorffEstimate& est) {
    std::ostringstream out;
    out << "delta,net_size,sum\n";
    for (std::size_t i = 0; i < est.deltas.size(); ++i)
        out << est.deltas[i].to_string() << "," << est.net_sizes[i] << ","
            << fmt_double(est.sums[i]) << "\n";
    return out.str();
}

}  // namespace mmgeo
