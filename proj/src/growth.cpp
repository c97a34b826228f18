#include "mmgeo/growth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mmgeo/rng.hpp"
#include "mmgeo/util.hpp"

namespace mmgeo {

CountTable ball_count_table(const Space& space, const std::vector<PointId>& centers,
                            const std::vector<Rat>& radii, BallKind kind) {
    if (!std::is_sorted(radii.begin(), radii.end()))
        throw std::invalid_argument("ball_count_table: radii must be sorted ascending");
    CountTable table;
    table.radii = radii;
    table.centers = centers;
    table.kind = kind;
    table.counts.resize(centers.size());
    parallel_for(static_cast<std::int64_t>(centers.size()), [&](std::int64_t i) {
        table.counts[static_cast<std::size_t>(i)] =
            space.ball_counts(centers[static_cast<std::size_t>(i)], radii, kind);
    });
    return table;
}

GrowthReport fit_growth(const CountTable& table, const RadiusInterval& interval) {
    GrowthReport report;
    report.interval = interval;
    report.kind = table.kind;

    // Collect in-interval samples.
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < table.radii.size(); ++j)
        if (interval.contains(table.radii[j])) cols.push_back(j);
    std::vector<Rat> distinct;
    for (auto j : cols) distinct.push_back(table.radii[j]);
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2)
        throw std::invalid_argument("fit_growth: need >= 2 distinct radii in the interval");
    report.r_lo = distinct.front();
    report.r_hi = distinct.back();

    double sum_x = 0, sum_y = 0, sum_xx = 0, sum_xy = 0;
    std::int64_t n = 0;
    for (std::size_t i = 0; i < table.centers.size(); ++i) {
        for (auto j : cols) {
            std::int64_t count = table.counts[i][j];
            if (count <= 0)
                throw std::invalid_argument("fit_growth: zero ball count inside interval");
            double x = std::log(table.radii[j].to_double());
            double y = std::log(static_cast<double>(count));
            sum_x += x;
            sum_y += y;
            sum_xx += x * x;
            sum_xy += x * y;
            ++n;
        }
    }
    report.n_samples = n;
    double denom = static_cast<double>(n) * sum_xx - sum_x * sum_x;
    if (denom == 0) throw std::invalid_argument("fit_growth: degenerate radius set");
    report.lambda = (static_cast<double>(n) * sum_xy - sum_x * sum_y) / denom;
    double intercept = (sum_y - report.lambda * sum_x) / static_cast<double>(n);
    report.sigma = std::exp(intercept);

    // Band constants absorb every deviation: the Eq-band holds at all
    // in-interval samples by construction of (c, C) as extremal ratios.
    double cmin = 0, cmax = 0;
    bool first = true;
    for (std::size_t i = 0; i < table.centers.size(); ++i) {
        for (auto j : cols) {
            double model = report.sigma *
                           std::pow(table.radii[j].to_double(), report.lambda);
            double ratio = static_cast<double>(table.counts[i][j]) / model;
            double resid = std::log(ratio);
            report.max_abs_residual = std::max(report.max_abs_residual, std::abs(resid));
            if (first) {
                cmin = cmax = ratio;
                first = false;
            } else {
                cmin = std::min(cmin, ratio);
                cmax = std::max(cmax, ratio);
            }
        }
    }
    report.c = cmin;
    report.C = cmax;
    return report;
}

BoundsCheck check_growth_bounds(const CountTable& table, double lambda, double sigma,
                                const RadiusInterval& interval, const double* c_target,
                                const double* C_target) {
    if (!(sigma > 0)) throw std::invalid_argument("check_growth_bounds: sigma must be > 0");
    BoundsCheck out;
    bool first = true;
    for (std::size_t i = 0; i < table.centers.size(); ++i) {
        for (std::size_t j = 0; j < table.radii.size(); ++j) {
            if (!interval.contains(table.radii[j])) continue;
            double model = sigma * std::pow(table.radii[j].to_double(), lambda);
            double ratio = static_cast<double>(table.counts[i][j]) / model;
            if (first || ratio < out.c) {
                out.c = ratio;
                out.witness_lo_center = table.centers[i];
                out.witness_lo_r = table.radii[j];
            }
            if (first || ratio > out.C) {
                out.C = ratio;
                out.witness_hi_center = table.centers[i];
                out.witness_hi_r = table.radii[j];
            }
            first = false;
        }
    }
    if (first) throw std::invalid_argument("check_growth_bounds: no samples in interval");
    if (c_target != nullptr && out.c < *c_target) out.pass = false;
    if (C_target != nullptr && out.C > *C_target) out.pass = false;
    return out;
}

UniquenessDiag growth_uniqueness_diag(const GrowthReport& a, const GrowthReport& b) {
    if (!(a.interval == b.interval))
        throw std::invalid_argument("growth_uniqueness_diag: fits cover different intervals");
    UniquenessDiag diag;
    diag.lambda_diff = std::abs(a.lambda - b.lambda);
    double span = std::log(a.interval.hi.to_double() / a.interval.lo.to_double());
    if (!(span > 0))
        throw std::invalid_argument("growth_uniqueness_diag: empty interval");
    diag.bound = std::log((a.C * b.C) / (a.c * b.c)) / span;
    diag.respected = diag.lambda_diff <= diag.bound + 1e-9;
    return diag;
}

HomogeneityReport homogeneity_ratio(const Space& space, const std::vector<Rat>& radii,
                                    const std::vector<PointId>& centers, BallKind kind) {
    for (const Rat& r : radii)
        if (!(r > Rat(0)))
            throw std::invalid_argument("homogeneity_ratio: radii must be positive");
    std::vector<Rat> sorted = radii;
    std::sort(sorted.begin(), sorted.end());
    CountTable table = ball_count_table(space, centers, sorted, kind);
    HomogeneityReport out;
    std::int64_t vmin = 0, vmax = 0;
    bool first = true;
    out.per_radius_min_max.resize(sorted.size(), {0, 0});
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        std::int64_t rmin = 0, rmax = 0;
        for (std::size_t i = 0; i < centers.size(); ++i) {
            std::int64_t v = table.counts[i][j];
            if (v <= 0)
                throw std::invalid_argument("homogeneity_ratio: zero ball count");
            if (i == 0 || v < rmin) rmin = v;
            if (i == 0 || v > rmax) rmax = v;
            if (first || v < vmin) {
                vmin = v;
                out.argmin_center = centers[i];
                out.argmin_r = sorted[j];
            }
            if (first || v > vmax) {
                vmax = v;
                out.argmax_center = centers[i];
                out.argmax_r = sorted[j];
            }
            first = false;
        }
        out.per_radius_min_max[j] = {rmin, rmax};
    }
    out.ratio = static_cast<double>(vmax) / static_cast<double>(vmin);
    return out;
}

std::vector<Rat> geometric_radii(const Rat& a, const Rat& b, const Rat& ratio) {
    if (!(a > Rat(0)) || !(b >= a) || !(ratio > Rat(1)))
        throw std::invalid_argument("geometric_radii: need 0 < a <= b, ratio > 1");
    std::vector<Rat> out;
    Rat r = a;
    while (r <= b) {
        out.push_back(r);
        r = r * ratio;
        if (out.size() > 10000) throw std::invalid_argument("geometric_radii: too many radii");
    }
    return out;
}

std::vector<PointId> bulk_centers(const Space& space, std::int32_t margin) {
    std::vector<PointId> out;
    for (PointId i = 0; i < space.n_points(); ++i)
        if (space.margin(i) >= margin) out.push_back(i);
    return out;
}

std::vector<PointId> all_centers(const Space& space) {
    std::vector<PointId> out(static_cast<std::size_t>(space.n_points()));
    for (PointId i = 0; i < space.n_points(); ++i) out[static_cast<std::size_t>(i)] = i;
    return out;
}

std::vector<PointId> sample_centers(const Space& space, std::int64_t count,
                                    std::uint64_t seed) {
    Rng rng(seed);
    std::vector<PointId> all = all_centers(space);
    if (count >= static_cast<std::int64_t>(all.size())) return all;
    rng.shuffle(all);
    all.resize(static_cast<std::size_t>(count));
    std::sort(all.begin(), all.end());
    return all;
}

std::string count_table_to_csv(const CountTable& table) {
    std::ostringstream out;
    out << "center";
    for (const Rat& r : table.radii) out << ",r=" << r.to_string();
    out << "\n";
    for (std::size_t i = 0; i < table.centers.size(); ++i) {
        out << table.centers[i];
        for (auto v : table.counts[i]) out << "," << v;
        out << "\n";
    }
    return out.str();
}

CountTable count_table_from_csv(const std::string& csv) {
    CountTable table;
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("count table: empty csv");
    auto header = split(trim(line), ',');
    if (header.empty() || header[0] != "center")
        throw std::invalid_argument("count table: header must start with 'center'");
    for (std::size_t j = 1; j < header.size(); ++j) {
        std::string h = header[j];
        if (h.rfind("r=", 0) != 0)
            throw std::invalid_argument("count table: radius columns must be r=<value>");
        table.radii.push_back(Rat::parse(h.substr(2)));
    }
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto cells = split(line, ',');
        if (cells.size() != header.size())
            throw std::invalid_argument("count table: ragged row");
        table.centers.push_back(static_cast<PointId>(std::stoll(cells[0])));
        std::vector<std::int64_t> row;
        for (std::size_t j = 1; j < cells.size(); ++j) row.push_back(std::stoll(cells[j]));
        table.counts.push_back(std::move(row));
    }
    return table;
}

std::string growth_report_to_string(const GrowthReport& r) {
    std::ostringstream out;
    out << "lambda " << fmt_double(r.lambda) << "\n";
    out << "sigma " << fmt_double(r.sigma) << "\n";
    out << "c " << fmt_double(r.c) << "\n";
    out << "C " << fmt_double(r.C) << "\n";
    out << "I_minus " << r.interval.lo.to_string() << "\n";
    out << "I_plus " << r.interval.hi.to_string() << "\n";
    out << "n_samples " << r.n_samples << "\n";
    out << "max_abs_residual " << fmt_double(r.max_abs_residual) << "\n";
    out << "r_lo " << r.r_lo.to_string() << "\n";
    out << "r_hi " << r.r_hi.to_string() << "\n";
    out << "ball " << (r.kind == BallKind::Open ? "open" : "closed") << "\n";
    return out.str();
}

std::string growth_plot_data(const CountTable& table, const GrowthReport& report) {
    std::ostringstream out;
    out << "# fit lambda=" << fmt_double(report.lambda)
        << " sigma=" << fmt_double(report.sigma) << " c=" << fmt_double(report.c)
        << " C=" << fmt_double(report.C) << "\n";
    out << "# ln_r ln_count\n";
    for (std::size_t i = 0; i < table.centers.size(); ++i)
        for (std::size_t j = 0; j < table.radii.size(); ++j) {
            if (table.counts[i][j] <= 0) continue;
            out << fmt_double(std::log(table.radii[j].to_double())) << " "
                << fmt_double(std::log(static_cast<double>(table.counts[i][j]))) << "\n";
        }
    return out.str();
}

}  // namespace mmgeo
