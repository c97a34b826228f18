#include "mmgeo/pipeline.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mmgeo/io.hpp"
#include "mmgeo/rng.hpp"
#include "mmgeo/space_gen.hpp"
#include "mmgeo/util.hpp"

namespace mmgeo {

std::string PipelinePlan::to_string() const {
    std::ostringstream out;
    out << "space " << space << "\n";
    out << "delta " << delta.to_string() << "\n";
    out << "radii ";
    for (std::size_t i = 0; i < radii.size(); ++i)
        out << (i ? "," : "") << radii[i].to_string();
    out << "\n";
    out << "interval " << interval.lo.to_string() << "," << interval.hi.to_string() << "\n";
    if (lambda_target) out << "lambda " << fmt_double(*lambda_target) << "\n";
    out << "lambda_tol " << fmt_double(lambda_tol) << "\n";
    out << "measure " << measure << "\n";
    out << "quantize_m " << quantize_m << "\n";
    out << "ball " << (growth_ball == BallKind::Open ? "open" : "closed") << "\n";
    out << "centers " << centers << "\n";
    out << "seed " << seed << "\n";
    return out.str();
}

PipelinePlan PipelinePlan::parse(const std::string& text) {
    PipelinePlan plan;
    bool have_space = false, have_radii = false, have_interval = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto sp = line.find(' ');
        std::string key = sp == std::string::npos ? line : line.substr(0, sp);
        std::string value = sp == std::string::npos ? "" : trim(line.substr(sp + 1));
        if (key == "space") {
            plan.space = value;
            have_space = true;
        } else if (key == "delta") {
            plan.delta = Rat::parse(value);
        } else if (key == "radii") {
            plan.radii = resolve_radii(value);
            have_radii = true;
        } else if (key == "interval") {
            auto parts = split(value, ',');
            if (parts.size() != 2)
                throw std::invalid_argument("plan: interval needs lo,hi");
            plan.interval = {Rat::parse(parts[0]), Rat::parse(parts[1])};
            have_interval = true;
        } else if (key == "lambda") {
            plan.lambda_target = std::stod(value);
        } else if (key == "lambda_tol") {
            plan.lambda_tol = std::stod(value);
        } else if (key == "measure") {
            plan.measure = value;
        } else if (key == "quantize_m") {
            plan.quantize_m = std::stoll(value);
        } else if (key == "ball") {
            if (value != "open" && value != "closed")
                throw std::invalid_argument("plan: ball must be open or closed");
            plan.growth_ball = value == "open" ? BallKind::Open : BallKind::Closed;
        } else if (key == "centers") {
            plan.centers = value;
        } else if (key == "seed") {
            plan.seed = static_cast<std::uint64_t>(std::stoull(value));
        } else {
            throw std::invalid_argument("plan: unknown key: " + key);
        }
    }
    if (!have_space) throw std::invalid_argument("plan: missing space");
    if (!have_radii) throw std::invalid_argument("plan: missing radii");
    if (!have_interval) {
        if (!have_radii || plan.radii.empty())
            throw std::invalid_argument("plan: missing interval");
        plan.interval = {plan.radii.front(), plan.radii.back()};
    }
    if (!(plan.delta > Rat(0))) throw std::invalid_argument("plan: delta must be positive");
    return plan;
}

std::string PipelinePlan::content_hash() const { return to_hex16(fnv1a64(to_string())); }

std::vector<PointId> resolve_centers(const Space& space, const std::string& policy,
                                     std::uint64_t seed) {
    if (policy == "all") return all_centers(space);
    if (policy.rfind("bulk:", 0) == 0)
        return bulk_centers(space, static_cast<std::int32_t>(std::stol(policy.substr(5))));
    if (policy == "bulk") return bulk_centers(space, 1);
    if (policy.rfind("sample:", 0) == 0)
        return sample_centers(space, std::stoll(policy.substr(7)), seed);
    throw std::invalid_argument("centers: expected all, bulk[:m] or sample:n");
}

std::vector<Rat> resolve_radii(const std::string& arg) {
    if (arg.rfind("geometric:", 0) == 0) {
        auto parts = split(arg.substr(10), ',');
        if (parts.size() != 3)
            throw std::invalid_argument("radii: geometric:a,b,ratio");
        return geometric_radii(Rat::parse(parts[0]), Rat::parse(parts[1]),
                               Rat::parse(parts[2]));
    }
    std::vector<Rat> out;
    for (const auto& tok : split(arg, ','))
        if (!trim(tok).empty()) out.push_back(Rat::parse(trim(tok)));
    if (out.empty()) throw std::invalid_argument("radii: empty list");
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

AtomicMeasure resolve_measure(const Space& space, const std::string& arg) {
    if (arg.rfind("counting:", 0) == 0)
        return normalized_counting_measure(space, Rat::parse(arg.substr(9)));
    if (arg.rfind("file:", 0) == 0) {
        AtomicMeasure nu = measure_from_string(read_file(arg.substr(5)));
        if (static_cast<PointId>(nu.masses.size()) != space.n_points())
            throw std::invalid_argument("measure file does not match space size");
        return nu;
    }
    throw std::invalid_argument("measure: expected counting:M or file:path");
}

void emit(const std::string& dir, const std::string& name, const std::string& content) {
    if (dir.empty()) return;
    std::string path = dir + "/" + name;
    if (file_exists(path)) return;  // append-only artifact store
    write_file(path, content);
}

}  // namespace

RepresentationReport run_pipeline(const PipelinePlan& plan, const std::string& out_dir) {
    RepresentationReport report;
    report.plan = plan;
    report.plan_hash = plan.content_hash();
    std::string dir = out_dir.empty() ? "" : out_dir + "/" + report.plan_hash;
    emit(dir, "plan.txt", plan.to_string());

    std::string stage = "generate";
    try {
        Space space = resolve_space(plan.space);
        emit(dir, "space.txt", space_to_string(space));

        stage = "net";
        Net net = greedy_net(space, plan.delta, NetOrder::Index, plan.seed);
        report.net = net;
        emit(dir, "net.txt", net_to_string(net));

        stage = "sandwich";
        SandwichReport sandwich = lipschitz_sandwich(space, net, plan.delta, 20000, plan.seed);
        report.sandwich = sandwich;
        emit(dir, "sandwich.txt", sandwich_report_to_string(sandwich));
        if (sandwich.upper_violations > 0)
            throw std::logic_error("sandwich upper bound violated");

        stage = "quantize";
        AtomicMeasure nu = resolve_measure(space, plan.measure);
        std::int64_t M = plan.quantize_m > 0 ? plan.quantize_m
                                             : 10 * static_cast<std::int64_t>(space.n_points());
        QuantizedMeasure q = quantize_measure(nu, M);
        report.quantized = q;
        emit(dir, "measure.txt", measure_to_string(nu));
        emit(dir, "quantized.txt", quantized_to_string(q));

        stage = "growth";
        // delta-graph under delta * dist: carrier points inherit the base
        // margins so bulk-center policies carry over.
        std::vector<std::int32_t> net_margins;
        net_margins.reserve(net.carrier.size());
        for (PointId p : net.carrier) {
            std::int32_t m = space.margin(p);
            net_margins.push_back(m);
        }
        Space net_space = Space::make_graph(net.net_graph, plan.delta, "", net_margins);
        std::vector<PointId> net_centers = resolve_centers(net_space, plan.centers, plan.seed);
        if (net_centers.empty())
            throw std::invalid_argument("no centers matched the policy on the net");
        CountTable table =
            ball_count_table(net_space, net_centers, plan.radii, plan.growth_ball);
        GrowthReport growth = fit_growth(table, plan.interval);
        report.growth = growth;
        emit(dir, "table.csv", count_table_to_csv(table));
        emit(dir, "growth.txt", growth_report_to_string(growth));
        emit(dir, "plot.dat", growth_plot_data(table, growth));

        stage = "ahlfors";
        // Quantized masses k_i/M live on the base points through the carrier
        // projection; the band is certified for that pushforward measure.
        std::vector<Rat> qmasses(static_cast<std::size_t>(space.n_points()));
        for (PointId i = 0; i < space.n_points(); ++i)
            qmasses[static_cast<std::size_t>(i)] =
                Rat(q.multiplicity[static_cast<std::size_t>(i)], q.M);
        AtomicMeasure qnu = AtomicMeasure::from_masses(std::move(qmasses));
        double lambda = plan.lambda_target ? *plan.lambda_target : growth.lambda;
        Rat R = plan.interval.hi * Rat(2);
        std::vector<PointId> centers = resolve_centers(space, plan.centers, plan.seed);
        if (centers.empty())
            throw std::invalid_argument("no centers matched the policy on the space");
        AhlforsReport ahlfors = ahlfors_check(space, qnu, lambda, R, centers, plan.radii,
                                              plan.ahlfors_ball);
        report.ahlfors = ahlfors;
        emit(dir, "ahlfors.txt", ahlfors_report_to_string(ahlfors));
        emit(dir, "ahlfors_balls.csv", ahlfors_per_ball_csv(ahlfors));

        stage = "nest_witness";
        // Length-space probe: sampled (a, x, r, rho) witnesses; informational.
        Rng rng(plan.seed + 1);
        std::int64_t probes = std::min<std::int64_t>(32, space.n_points());
        for (std::int64_t t = 0; t < probes; ++t) {
            PointId a = static_cast<PointId>(rng.uniform(static_cast<std::uint64_t>(space.n_points())));
            PointId x = static_cast<PointId>(rng.uniform(static_cast<std::uint64_t>(space.n_points())));
            if (a == x) continue;
            Rat dax = space.distance(a, x);
            if (dax.is_zero()) continue;
            Rat rho = dax;
            Rat r = dax * Rat(1, 2);
            if (!(r > Rat(0))) continue;
            if (ball_nest_witness(space, a, x, r, rho))
                ++report.nest_witness_ok;
            else
                ++report.nest_witness_fail;
        }

        bool lambda_ok = true;
        if (plan.lambda_target)
            lambda_ok = std::abs(growth.lambda - *plan.lambda_target) <= plan.lambda_tol;
        report.pass = sandwich.c_min > 0 && sandwich.upper_violations == 0 &&
                      growth.c > 0 && growth.C < std::numeric_limits<double>::infinity() &&
                      ahlfors.k > 0 && ahlfors.K < std::numeric_limits<double>::infinity() &&
                      lambda_ok;
    } catch (const std::exception& e) {
        report.error = StageError{stage, e.what()};
        report.pass = false;
    }

    emit(dir, "report.txt", report.to_string());
    return report;
}

std::string RepresentationReport::to_string() const {
    std::ostringstream out;
    out << "plan_hash " << plan_hash << "\n";
    out << "pass " << (pass ? 1 : 0) << "\n";
    if (error) out << "error_stage " << error->stage << "\nerror " << error->message << "\n";
    if (net) {
        out << "net_carrier_size " << net->carrier.size() << "\n";
        out << "net_covering_radius " << net->covering_radius.to_string() << "\n";
        out << "net_edges " << net->net_graph.n_edges() << "\n";
    }
    if (sandwich) {
        out << "sandwich_c_min " << fmt_double(sandwich->c_min) << "\n";
        out << "sandwich_upper_violations " << sandwich->upper_violations << "\n";
    }
    if (quantized) {
        out << "quantize_M " << quantized->M << "\n";
        out << "quantize_carrier " << quantized->carrier_size << "\n";
        out << "quantize_total " << quantized->total.to_string() << "\n";
    }
    if (growth) {
        out << "growth_lambda " << fmt_double(growth->lambda) << "\n";
        out << "growth_sigma " << fmt_double(growth->sigma) << "\n";
        out << "growth_c " << fmt_double(growth->c) << "\n";
        out << "growth_C " << fmt_double(growth->C) << "\n";
    }
    if (ahlfors) {
        out << "ahlfors_k " << fmt_double(ahlfors->k) << "\n";
        out << "ahlfors_K " << fmt_double(ahlfors->K) << "\n";
    }
    out << "nest_witness_ok " << nest_witness_ok << "\n";
    out << "nest_witness_fail " << nest_witness_fail << "\n";
    return out.str();
}

}  // namespace mmgeo
