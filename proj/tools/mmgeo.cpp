// mmgeo: discrete metric-measure geometry toolkit.
//
// Subcommands: gen, net, growth, ahlfors, quantize, regularize, hausdorff,
// verify, pipeline. Exit codes: 0 = all checks passed, 1 = checks ran and
// failed, 2 = invalid invocation.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mmgeo/growth.hpp"
#include "mmgeo/io.hpp"
#include "mmgeo/measure.hpp"
#include "mmgeo/net.hpp"
#include "mmgeo/pipeline.hpp"
#include "mmgeo/regularize.hpp"
#include "mmgeo/space_gen.hpp"
#include "mmgeo/util.hpp"

using namespace mmgeo;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

void write_or_print(const std::string& out_dir, const std::string& name,
                    const std::string& content) {
    if (out_dir.empty()) {
        std::cout << content;
    } else {
        write_file(out_dir + "/" + name, content);
        std::cout << "wrote " << out_dir << "/" << name << "\n";
    }
}

int cmd_gen(const std::string& space_arg, const std::string& out_dir) {
    Space space = resolve_space(space_arg);
    write_or_print(out_dir, "space.txt", space_to_string(space));
    if (const Graph* g = space.graph())
        if (!out_dir.empty()) write_file(out_dir + "/space.edges", graph_to_edge_list(*g));
    return kPass;
}

int cmd_net(const std::string& space_arg, const std::string& delta,
            const std::string& order, std::uint64_t seed, const std::string& out_dir) {
    Space space = resolve_space(space_arg);
    NetOrder ord = NetOrder::Index;
    if (order == "farthest") ord = NetOrder::FarthestPoint;
    else if (order == "shuffle") ord = NetOrder::Shuffle;
    else if (order != "index") throw CLI::ValidationError("--order must be index|farthest|shuffle");
    Net net = greedy_net(space, Rat::parse(delta), ord, seed);
    NetCheck check = check_net(space, net);
    write_or_print(out_dir, "net.txt", net_to_string(net));
    std::ostringstream report;
    report << "carrier_size " << net.carrier.size() << "\n";
    report << "covering_radius " << net.covering_radius.to_string() << "\n";
    report << "separated " << (check.separated ? 1 : 0) << "\n";
    report << "covering " << (check.covering ? 1 : 0) << "\n";
    write_or_print(out_dir, "net_report.txt", report.str());
    return check.separated && check.covering ? kPass : kFail;
}

int cmd_growth(const std::string& space_arg, const std::string& table_file,
               const std::string& radii_arg, const std::string& interval_arg,
               const std::string& centers_arg, const std::string& ball,
               std::uint64_t seed, const std::string& out_dir) {
    CountTable table;
    if (!table_file.empty()) {
        table = count_table_from_csv(read_file(table_file));
    } else {
        if (space_arg.empty())
            throw CLI::ValidationError("growth needs --space or --table");
        Space space = resolve_space(space_arg);
        auto radii = resolve_radii(radii_arg);
        auto centers = resolve_centers(space, centers_arg, seed);
        if (centers.empty()) throw CLI::ValidationError("no centers matched the policy");
        BallKind kind = ball == "closed" ? BallKind::Closed : BallKind::Open;
        table = ball_count_table(space, centers, radii, kind);
    }
    RadiusInterval interval{table.radii.front(), table.radii.back()};
    if (!interval_arg.empty()) {
        auto parts = split(interval_arg, ',');
        if (parts.size() != 2) throw CLI::ValidationError("--interval lo,hi");
        interval = {Rat::parse(parts[0]), Rat::parse(parts[1])};
    }
    GrowthReport report = fit_growth(table, interval);
    write_or_print(out_dir, "table.csv", count_table_to_csv(table));
    write_or_print(out_dir, "growth.txt", growth_report_to_string(report));
    if (!out_dir.empty()) write_file(out_dir + "/plot.dat", growth_plot_data(table, report));
    return kPass;
}

int cmd_ahlfors(const std::string& space_arg, const std::string& measure_arg,
                double lambda, const std::string& radii_arg, const std::string& R_arg,
                const std::string& centers_arg, const std::string& ball,
                std::uint64_t seed, const std::string& out_dir, double k_target,
                double K_ratio_max) {
    Space space = resolve_space(space_arg);
    AtomicMeasure nu = measure_arg.rfind("counting:", 0) == 0
                           ? normalized_counting_measure(space, Rat::parse(measure_arg.substr(9)))
                           : measure_from_string(read_file(measure_arg.substr(
                                 measure_arg.rfind("file:", 0) == 0 ? 5 : 0)));
    auto radii = resolve_radii(radii_arg);
    Rat R = R_arg.empty() ? radii.back() * Rat(2) : Rat::parse(R_arg);
    auto centers = resolve_centers(space, centers_arg, seed);
    if (centers.empty()) throw CLI::ValidationError("no centers matched the policy");
    BallKind kind = ball == "open" ? BallKind::Open : BallKind::Closed;
    AhlforsReport report = ahlfors_check(space, nu, lambda, R, centers, radii, kind);
    write_or_print(out_dir, "ahlfors.txt", ahlfors_report_to_string(report));
    if (!out_dir.empty())
        write_file(out_dir + "/ahlfors_balls.csv", ahlfors_per_ball_csv(report));
    bool ok = true;
    if (k_target > 0 && report.k < k_target) ok = false;
    if (K_ratio_max > 0 && report.K / report.k > K_ratio_max) ok = false;
    return ok ? kPass : kFail;
}

int cmd_quantize(const std::string& measure_file, std::int64_t M, bool materialize,
                 const std::string& out_dir) {
    AtomicMeasure nu = measure_from_string(read_file(measure_file));
    QuantizedMeasure q = quantize_measure(nu, M, materialize);
    write_or_print(out_dir, "quantized.txt", quantized_to_string(q));
    // Contract re-check on the way out.
    for (std::size_t i = 0; i < nu.masses.size(); ++i) {
        Rat lo(q.multiplicity[i], q.M);
        Rat hi(q.multiplicity[i] + 1, q.M);
        if (!(lo <= nu.masses[i] && nu.masses[i] < hi)) return kFail;
    }
    return q.total <= nu.total ? kPass : kFail;
}

int cmd_regularize(const std::string& graph_file, int k, const std::string& out_dir) {
    Graph base = graph_from_edge_list(read_file(graph_file));
    if (k <= 0) k = default_regularization_k(base);
    RegularizationResult result = regularize_degrees(base, k);
    RegularizationCheck check = verify_regularization(result);
    write_or_print(out_dir, "regularization.txt", regularization_to_string(result));
    std::ostringstream report;
    report << "k " << result.k << "\n";
    report << "target_degree " << result.target_degree << "\n";
    report << "n_union " << result.spiked.unioned.n_vertices() << "\n";
    report << "parity_fixes " << result.parity_fixes.size() << "\n";
    report << "all_ok " << (check.all_ok() ? 1 : 0) << "\n";
    write_or_print(out_dir, "regularize_report.txt", report.str());
    return check.all_ok() ? kPass : kFail;
}

int cmd_hausdorff(const std::string& space_arg, double lambda,
                  const std::string& ladder_arg, const std::string& out_dir) {
    Space space = resolve_space(space_arg);
    auto ladder = resolve_radii(ladder_arg);
    std::reverse(ladder.begin(), ladder.end());  // descending
    HausdorffEstimate est = hausdorff_estimate(space, lambda, ladder, all_centers(space));
    write_or_print(out_dir, "hausdorff.csv", hausdorff_estimate_to_csv(est));
    return kPass;
}

int cmd_verify(const std::string& space_arg, const std::string& net_file,
               const std::string& reg_file, std::int64_t samples, std::uint64_t seed,
               bool ultrametric) {
    if (!reg_file.empty()) {
        RegularizationResult r = regularization_from_string(read_file(reg_file));
        RegularizationCheck check = verify_regularization(r);
        std::cout << "degree_ok " << check.degree_ok << "\n"
                  << "loopless_ok " << check.loopless_ok << "\n"
                  << "spikes_connected " << check.spikes_connected << "\n"
                  << "distance2_ok " << check.distance2_ok << "\n"
                  << "projection_ok " << check.projection_ok << "\n";
        if (!check.all_ok() && check.witness >= 0)
            std::cout << "witness " << check.witness << "\n" << check.detail << "\n";
        return check.all_ok() ? kPass : kFail;
    }
    if (!net_file.empty()) {
        if (space_arg.empty()) throw CLI::ValidationError("verify --net needs --space");
        Space space = resolve_space(space_arg);
        Net net = net_from_string(read_file(net_file));
        NetCheck check = check_net(space, net);
        std::cout << "separated " << check.separated << "\n"
                  << "covering " << check.covering << "\n";
        return check.separated && check.covering ? kPass : kFail;
    }
    if (!space_arg.empty()) {
        Space space = resolve_space(space_arg);
        MetricReport report = verify_metric(space, samples, seed, ultrametric);
        std::cout << metric_report_to_string(report);
        return report.ok() ? kPass : kFail;
    }
    throw CLI::ValidationError("verify needs --space, --net or --regularization");
}

int cmd_pipeline(const std::string& plan_file, const std::string& space_arg,
                 const std::string& delta, const std::string& radii_arg,
                 const std::string& interval_arg, double lambda, bool have_lambda,
                 const std::string& measure_arg, const std::string& centers_arg,
                 std::uint64_t seed, const std::string& out_dir) {
    PipelinePlan plan;
    if (!plan_file.empty()) {
        plan = PipelinePlan::parse(read_file(plan_file));
    } else {
        if (space_arg.empty()) throw CLI::ValidationError("pipeline needs --plan or --space");
        std::ostringstream text;
        text << "space " << space_arg << "\n";
        text << "delta " << delta << "\n";
        text << "radii " << radii_arg << "\n";
        if (!interval_arg.empty()) text << "interval " << interval_arg << "\n";
        if (have_lambda) text << "lambda " << lambda << "\n";
        text << "measure " << measure_arg << "\n";
        text << "centers " << centers_arg << "\n";
        text << "seed " << seed << "\n";
        plan = PipelinePlan::parse(text.str());
    }
    RepresentationReport report = run_pipeline(plan, out_dir);
    std::cout << report.to_string();
    return report.pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete metric-measure geometry toolkit"};
    app.require_subcommand(1);

    std::string space_arg, out_dir, delta = "1", radii_arg, interval_arg;
    std::string centers_arg = "all", ball = "open", ahlfors_ball = "closed";
    std::string measure_arg = "counting:1", measure_file, graph_file;
    std::string order = "index", table_file, net_file, reg_file, plan_file, R_arg, ladder_arg;
    std::uint64_t seed = 0;
    double lambda = 0;
    std::int64_t M = 1, samples = 10000;
    int k_arg = 0;
    bool materialize = false, ultrametric = false;
    double k_target = 0, K_ratio_max = 0;

    auto* gen = app.add_subcommand("gen", "generate a space and write its file form");
    gen->add_option("--space", space_arg)->required();
    gen->add_option("--out", out_dir);

    auto* net = app.add_subcommand("net", "greedy maximal separated net + delta-graph");
    net->add_option("--space", space_arg)->required();
    net->add_option("--delta", delta)->required();
    net->add_option("--order", order);
    net->add_option("--seed", seed);
    net->add_option("--out", out_dir);

    auto* growth = app.add_subcommand("growth", "ball-count table and power-law fit");
    growth->add_option("--space", space_arg);
    growth->add_option("--table", table_file);
    growth->add_option("--radii", radii_arg);
    growth->add_option("--interval", interval_arg);
    growth->add_option("--centers", centers_arg);
    growth->add_option("--ball", ball);
    growth->add_option("--seed", seed);
    growth->add_option("--out", out_dir);

    auto* ahlfors = app.add_subcommand("ahlfors", "Ahlfors regularity band check");
    ahlfors->add_option("--space", space_arg)->required();
    ahlfors->add_option("--measure", measure_arg);
    ahlfors->add_option("--lambda", lambda)->required();
    ahlfors->add_option("--radii", radii_arg)->required();
    ahlfors->add_option("--R", R_arg);
    ahlfors->add_option("--centers", centers_arg);
    ahlfors->add_option("--ball", ahlfors_ball);
    ahlfors->add_option("--seed", seed);
    ahlfors->add_option("--out", out_dir);
    ahlfors->add_option("--k-min", k_target);
    ahlfors->add_option("--K-over-k-max", K_ratio_max);

    auto* quantize = app.add_subcommand("quantize", "uniform-density measure quantization");
    quantize->add_option("--measure", measure_file)->required();
    quantize->add_option("--M", M)->required();
    quantize->add_flag("--materialize", materialize);
    quantize->add_option("--out", out_dir);

    auto* regularize = app.add_subcommand("regularize", "spiked-graph degree regularization");
    regularize->add_option("--graph", graph_file)->required();
    regularize->add_option("--k", k_arg);
    regularize->add_option("--out", out_dir);

    auto* hausdorff = app.add_subcommand("hausdorff", "covering-sum ladder estimates");
    hausdorff->add_option("--space", space_arg)->required();
    hausdorff->add_option("--lambda", lambda)->required();
    hausdorff->add_option("--ladder", ladder_arg)->required();
    hausdorff->add_option("--out", out_dir);

    auto* verify = app.add_subcommand("verify", "re-check stored artifacts or metric axioms");
    verify->add_option("--space", space_arg);
    verify->add_option("--net", net_file);
    verify->add_option("--regularization", reg_file);
    verify->add_option("--samples", samples);
    verify->add_option("--seed", seed);
    verify->add_flag("--ultrametric", ultrametric);

    auto* pipeline = app.add_subcommand("pipeline", "end-to-end representation pipeline");
    pipeline->add_option("--plan", plan_file);
    pipeline->add_option("--space", space_arg);
    pipeline->add_option("--delta", delta);
    pipeline->add_option("--radii", radii_arg);
    pipeline->add_option("--interval", interval_arg);
    auto* lambda_opt = pipeline->add_option("--lambda", lambda);
    pipeline->add_option("--measure", measure_arg);
    pipeline->add_option("--centers", centers_arg);
    pipeline->add_option("--seed", seed);
    pipeline->add_option("--out", out_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(space_arg, out_dir);
        if (net->parsed()) return cmd_net(space_arg, delta, order, seed, out_dir);
        if (growth->parsed())
            return cmd_growth(space_arg, table_file, radii_arg, interval_arg, centers_arg,
                              ball, seed, out_dir);
        if (ahlfors->parsed())
            return cmd_ahlfors(space_arg, measure_arg, lambda, radii_arg, R_arg,
                               centers_arg, ahlfors_ball, seed, out_dir, k_target,
                               K_ratio_max);
        if (quantize->parsed()) return cmd_quantize(measure_file, M, materialize, out_dir);
        if (regularize->parsed()) return cmd_regularize(graph_file, k_arg, out_dir);
        if (hausdorff->parsed()) return cmd_hausdorff(space_arg, lambda, ladder_arg, out_dir);
        if (verify->parsed())
            return cmd_verify(space_arg, net_file, reg_file, samples, seed, ultrametric);
        if (pipeline->parsed())
            return cmd_pipeline(plan_file, space_arg, delta, radii_arg, interval_arg,
                                lambda, lambda_opt->count() > 0, measure_arg, centers_arg,
                                seed, out_dir);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
