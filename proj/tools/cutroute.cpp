// cutroute: generate instances, run prediction sessions, sweep grids,
// re-verify exported runs and calibrate the congestion constant.
//
// Exit codes: 0 success, 1 bound violation, 2 input error,
// 3 internal invariant failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <cutroute/cutroute.hpp>

#ifndef CUTROUTE_DEFAULT_CONFIG
#define CUTROUTE_DEFAULT_CONFIG "config/cutroute.json"
#endif

namespace {

using namespace cutroute;
using nlohmann::json;

enum Exit : int { kOk = 0, kBoundViolation = 1, kInputError = 2, kInternalError = 3 };

// Flags that override config fields. Unset optionals leave the config alone.
struct Overrides {
    std::string config_path;
    std::optional<std::string> graph, labels, order, tree, out, fallback, first_prediction;
    std::optional<Vertex> root;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> jobs;
    std::optional<double> c_cal;

    // gen
    std::optional<std::string> family, labeling;
    std::optional<std::size_t> n, width, height, k, target_cut, arity;
    std::optional<double> p;

    // sweep
    std::vector<std::string> families, orders;
    std::vector<std::size_t> ns;
    std::optional<std::size_t> seeds;
    std::optional<std::uint64_t> first_seed;

    // verify
    std::string transcript, paths, report;
};

template <class T>
void override_with(const std::optional<T> &src, T &dst) {
    if (src)
        dst = *src;
}

RunConfig resolve(const Overrides &o) {
    RunConfig c;
    if (!o.config_path.empty()) {
        c = load_config_file(o.config_path);
    } else if (std::filesystem::exists(CUTROUTE_DEFAULT_CONFIG)) {
        // only the calibrated constant is inherited from the checked-in file
        c.c_cal = load_config_file(CUTROUTE_DEFAULT_CONFIG).c_cal;
    }
    override_with(o.graph, c.graph);
    override_with(o.labels, c.labels);
    override_with(o.order, c.order);
    override_with(o.tree, c.tree);
    override_with(o.out, c.out);
    override_with(o.root, c.root);
    override_with(o.seed, c.seed);
    override_with(o.jobs, c.jobs);
    override_with(o.c_cal, c.c_cal);
    if (o.fallback)
        c.fallback = o.fallback;
    if (o.first_prediction)
        c.first_prediction = o.first_prediction;

    if (o.family)
        c.instance.family = parse_family(*o.family);
    if (o.labeling) {
        c.instance.labeling = parse_labeling_rule(*o.labeling);
        c.sweep.labeling = c.instance.labeling;
    }
    override_with(o.n, c.instance.n);
    override_with(o.width, c.instance.width);
    override_with(o.height, c.instance.height);
    override_with(o.k, c.instance.k);
    override_with(o.target_cut, c.instance.target_cut);
    override_with(o.arity, c.instance.arity);
    override_with(o.p, c.instance.p);
    if (o.seed)
        c.instance.seed = *o.seed;

    if (!o.families.empty()) {
        c.sweep.families.clear();
        for (const auto &f : o.families)
            c.sweep.families.push_back(parse_family(f));
    }
    if (!o.orders.empty()) {
        c.sweep.orders.clear();
        for (const auto &k : o.orders)
            c.sweep.orders.push_back(parse_order_kind(k));
    }
    if (!o.ns.empty())
        c.sweep.ns = o.ns;
    override_with(o.seeds, c.sweep.seeds);
    override_with(o.first_seed, c.sweep.first_seed);
    if (o.arity)
        c.sweep.arity = *o.arity;
    if (o.k)
        c.sweep.k = *o.k;
    if (o.target_cut)
        c.sweep.target_cut = *o.target_cut;
    if (o.p)
        c.sweep.p = *o.p;
    if (o.tree)
        c.sweep.tree = parse_tree_strategy(*o.tree);

    parse_tree_strategy(c.tree);
    parse_order_kind(c.order);
    return c;
}

void write_file(const std::string &path, const std::string &content) {
    if (path.empty())
        throw InputError("missing output path");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write " + path);
    out << content;
    if (!out)
        throw InputError("write failed for " + path);
}

std::string read_text(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

double c_cal_threshold(double c_cal, std::size_t n, std::size_t cut) {
    return c_cal * (1.0 + std::log2(static_cast<double>(n))) * static_cast<double>(cut);
}

int cmd_gen(const RunConfig &c) {
    if (c.graph.empty() || c.labels.empty())
        throw InputError("gen needs --graph and --labels output paths");
    const Instance inst = generate_instance(c.instance);
    json echo{{"generator", "cutroute gen"}, {"instance", to_json(c.instance)}, {"describe", c.instance.describe()}};
    const std::string comment = "config: " + echo.dump();
    write_file(c.graph, serialize_graph(inst.graph, comment));
    write_file(c.labels, serialize_labels(inst.labeling, comment));
    std::cout << c.instance.describe() << ": n=" << inst.graph.num_vertices() << " m=" << inst.graph.num_edges()
              << " cut=" << cut_size(inst.graph, inst.labeling).size() << '\n';
    return kOk;
}

QueryOrder order_for(const RunConfig &c, const Graph &g, const Labeling &l) {
    if (c.order.starts_with("file:"))
        return custom_order(parse_order_text(read_text(c.order.substr(5))), g.num_vertices());
    return make_order(parse_order_kind(c.order), g, l, derive_seed(c.seed, "order"));
}

int cmd_run(const RunConfig &c) {
    if (c.graph.empty() || c.labels.empty())
        throw InputError("run needs --graph and --labels");
    if (c.out.empty())
        throw InputError("run needs --out for the report");
    const Graph g = load_graph_file(c.graph);
    const Labeling l = load_labels_file(c.labels, g.num_vertices());
    const QueryOrder order = order_for(c, g, l);

    RunOptions opt;
    opt.order = order.kind;
    opt.tree = parse_tree_strategy(c.tree);
    opt.root = c.root;
    opt.seed = c.seed;
    opt.first_prediction = c.first_prediction;
    SessionResult res = run_session(g, l, order, opt, c.graph, "file");

    const std::string transcript_path = c.out + ".transcript.jsonl";
    const std::string paths_path = c.out + ".paths.jsonl";
    write_file(transcript_path, transcript_jsonl(res.session.transcript(), res.tokens));
    write_file(paths_path, path_log_jsonl(res.session.routing().path_log()));

    const ExperimentReport &r = res.report;
    const double threshold = c_cal_threshold(c.c_cal, r.n, r.cut_size);
    json report = to_json(r);
    report["config"] = to_json(c);
    report["transcript"] = transcript_path;
    report["path_log"] = paths_path;
    report["c_cal_threshold"] = threshold;
    report["within_c_cal"] = static_cast<double>(r.mistakes) <= threshold;
    write_file(c.out, report.dump(2) + "\n");

    std::cout << "n=" << r.n << " m=" << r.m << " cut=" << r.cut_size << " mistakes=" << r.mistakes
              << " max_congestion=" << r.max_congestion << " bound=" << r.bound
              << (r.satisfied() ? " satisfied" : " VIOLATED") << '\n';
    for (const auto &p : r.problems)
        std::cerr << "problem: " << p << '\n';
    if (!r.oracle_equivalent)
        return kInternalError;
    return r.satisfied() ? kOk : kBoundViolation;
}

int cmd_sweep(const RunConfig &c) {
    const auto points = expand_grid(c.sweep);
    const auto outcomes = run_sweep(points, c.jobs);

    std::ostringstream csv;
    csv << kCsvHeader << '\n';
    double worst_ratio = 0.0;
    std::size_t failed = 0, violations = 0;
    json failures = json::array();
    for (const auto &o : outcomes) {
        csv << csv_row(o.report) << '\n';
        if (o.failed) {
            ++failed;
            if (o.error == "bound or charging witness failed")
                ++violations;
            failures.push_back({{"family", o.report.family},
                                {"n", o.report.n},
                                {"order_kind", o.report.order_kind},
                                {"seed", o.report.seed},
                                {"error", o.error}});
            continue;
        }
        worst_ratio = std::max(worst_ratio, log_ratio(o.report.mistakes, o.report.cut_size, o.report.n));
    }
    json summary{{"config", to_json(c)},
                 {"runs", outcomes.size()},
                 {"failed", failed},
                 {"max_mistake_ratio", worst_ratio},
                 {"c_cal", c.c_cal},
                 {"within_c_cal", worst_ratio <= c.c_cal},
                 {"failures", failures}};
    if (c.out.empty()) {
        std::cout << csv.str();
    } else {
        write_file(c.out, csv.str());
        write_file(c.out + ".summary.json", summary.dump(2) + "\n");
    }
    std::cerr << "runs=" << outcomes.size() << " failed=" << failed
              << " max mistakes/(cut*(1+log2 n))=" << worst_ratio << " (C_cal " << c.c_cal << ")\n";
    for (const auto &f : failures)
        std::cerr << "failed: " << f.dump() << '\n';
    if (violations > 0)
        return kBoundViolation;
    return failed > 0 ? kInputError : kOk;
}

int cmd_verify(const RunConfig &c, const Overrides &o) {
    if (c.graph.empty() || c.labels.empty() || o.transcript.empty() || o.paths.empty())
        throw InputError("verify needs --graph, --labels, --transcript and --paths");
    const Graph g = load_graph_file(c.graph);
    const Labeling l = load_labels_file(c.labels, g.num_vertices());
    const auto transcript = parse_transcript_jsonl(read_text(o.transcript));
    const auto log = parse_path_log_jsonl(read_text(o.paths));
    const CutSet cut = cut_size(g, l);

    bool invariant_ok = true;
    auto report_check = [](const char *name, bool ok, const std::string &detail) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : ": " + detail) << '\n';
    };

    for (std::size_t i = 0; i < transcript.size(); ++i)
        if (transcript[i].index != i || transcript[i].counted != (i > 0)) {
            invariant_ok = false;
            report_check("transcript-order", false, "entry " + std::to_string(i) + " has a bad index or counted flag");
        }

    const auto problems = audit_artifacts(g, [&l](Vertex v) { return l.token(v); }, transcript, log);
    for (const auto &p : problems)
        report_check(p.substr(0, p.find(':')).c_str(), false, p.substr(p.find(':') + 2));
    invariant_ok = invariant_ok && problems.empty();

    const MistakeBoundCheck check = verify_mistake_bound(transcript, log, cut);
    if (!o.report.empty()) {
        const json rep = json::parse(read_text(o.report));
        const bool same = rep.at("max_congestion").get<std::uint32_t>() == check.recounted_max_congestion &&
                          rep.at("mistakes").get<std::size_t>() == check.mistakes &&
                          rep.at("cut_size").get<std::size_t>() == check.cut_size;
        report_check("report-recount", same, "report vs recount of mistakes/congestion/cut");
        invariant_ok = invariant_ok && same;
    }
    report_check("recount", true,
                 "max congestion " + std::to_string(check.recounted_max_congestion) + " over " +
                     std::to_string(log.size()) + " paths");
    report_check("bound", check.bound_satisfied,
                 std::to_string(check.mistakes) + " mistakes <= " + std::to_string(check.recounted_max_congestion) +
                     " * " + std::to_string(check.cut_size));
    report_check("charging-witness", check.charging_witness_found,
                 "max charges per cut edge " + std::to_string(check.max_charges));
    for (const auto &p : check.problems)
        std::cout << "  " << p << '\n';

    if (!check.ok())
        return kBoundViolation;
    return invariant_ok ? kOk : kInternalError;
}

int cmd_calibrate(RunConfig c, const std::string &config_path) {
    const auto points = calibration_points();
    const auto outcomes = run_sweep(points, c.jobs);
    std::vector<ExperimentReport> reports;
    for (const auto &o : outcomes) {
        if (o.failed) {
            std::cerr << "calibration run failed: " << o.error << '\n';
            return o.error == "bound or charging witness failed" ? kBoundViolation : kInternalError;
        }
        reports.push_back(o.report);
    }
    const CongestionScaling s = congestion_scaling(reports);
    // stored constant: measured max ratio rounded up to a quarter
    const double c_cal = std::ceil(s.max_ratio * 4.0) / 4.0;

    json worst = json::object();
    for (std::size_t i = 0; i < s.ns.size(); ++i)
        worst[std::to_string(s.ns[i])] = s.worst_congestion[i];
    c.c_cal = c_cal;
    c.calibration = {{"grid",
                      {{"line", {{"orders", {"random", "midpoint"}}}},
                       {"random_tree", {{"orders", {"random", "natural"}}}},
                       {"ns", {64, 256, 1024, 4096}},
                       {"seeds", 20},
                       {"first_seed", 1},
                       {"labeling", "half_split"},
                       {"tree", "bfs"}}},
                     {"runs", reports.size()},
                     {"measured_max_ratio", s.max_ratio},
                     {"rounding", "ceil to 0.25"},
                     {"growth_exponent", s.growth_exponent},
                     {"worst_growth_exponent", s.worst_growth_exponent},
                     {"worst_congestion_by_n", worst}};
    write_file(config_path, to_json(c).dump(2) + "\n");
    std::cout << "measured max congestion/(1+log2 n) = " << s.max_ratio << " -> C_cal = " << c_cal << '\n'
              << "growth exponent (all runs) = " << s.growth_exponent
              << ", through per-n worst = " << s.worst_growth_exponent << '\n'
              << "wrote " << config_path << '\n';
    return kOk;
}

void add_common(CLI::App *cmd, Overrides &o) {
    cmd->add_option("--config", o.config_path, "JSON config file (same schema as the report's \"config\")");
    cmd->add_option("--graph", o.graph, "graph edge-list file");
    cmd->add_option("--labels", o.labels, "labels file");
    cmd->add_option("--order", o.order, "natural | random | midpoint | odd-first | file:PATH");
    cmd->add_option("--tree", o.tree, "bfs | dfs | random");
    cmd->add_option("--root", o.root, "spanning tree root");
    cmd->add_option("--seed", o.seed, "run seed");
    cmd->add_option("--out", o.out, "output path");
    cmd->add_option("--jobs", o.jobs, "parallel runs")->check(CLI::PositiveNumber);
    cmd->add_option("--c-cal", o.c_cal, "override the calibrated congestion constant");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Online graph label prediction by low-congestion tree routing"};
    app.require_subcommand(1);
    Overrides o;

    auto *gen = app.add_subcommand("gen", "write a synthetic graph + labels pair");
    add_common(gen, o);
    gen->add_option("--family", o.family, "line | cycle | grid | random_tree | gnp");
    gen->add_option("--n", o.n, "vertex count");
    gen->add_option("--width", o.width, "grid width");
    gen->add_option("--height", o.height, "grid height");
    gen->add_option("--p", o.p, "gnp edge probability");
    gen->add_option("--labeling", o.labeling, "half_split | k_blocks | random_cut | constant");
    gen->add_option("--k", o.k, "blocks for k_blocks");
    gen->add_option("--target-cut", o.target_cut, "target cut for random_cut");
    gen->add_option("--arity", o.arity, "number of label tokens");

    auto *run = app.add_subcommand("run", "run one prediction session and write a report");
    add_common(run, o);
    run->add_option("--first-prediction", o.first_prediction, "token to emit for the (uncounted) first query");

    auto *sweep = app.add_subcommand("sweep", "run a family x n x order x seed grid, CSV out");
    add_common(sweep, o);
    sweep->add_option("--families", o.families, "families to sweep");
    sweep->add_option("--ns", o.ns, "vertex counts");
    sweep->add_option("--orders", o.orders, "query orders");
    sweep->add_option("--seeds", o.seeds, "seeds per cell");
    sweep->add_option("--first-seed", o.first_seed, "first seed");
    sweep->add_option("--labeling", o.labeling, "labeling rule");
    sweep->add_option("--arity", o.arity, "label arity");
    sweep->add_option("--k", o.k, "blocks for k_blocks");
    sweep->add_option("--target-cut", o.target_cut, "target cut for random_cut");
    sweep->add_option("--p", o.p, "gnp edge probability (default 2 ln n / n)");

    auto *verify = app.add_subcommand("verify", "re-verify a run from its exported artifacts");
    add_common(verify, o);
    verify->add_option("--transcript", o.transcript, "transcript JSON lines")->required();
    verify->add_option("--paths", o.paths, "path log JSON lines")->required();
    verify->add_option("--report", o.report, "report JSON to cross-check");

    auto *calibrate = app.add_subcommand("calibrate", "measure C_cal and store it in the config file");
    add_common(calibrate, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        const RunConfig config = resolve(o);
        if (gen->parsed())
            return cmd_gen(config);
        if (run->parsed())
            return cmd_run(config);
        if (sweep->parsed())
            return cmd_sweep(config);
        if (verify->parsed())
            return cmd_verify(config, o);
        if (calibrate->parsed()) {
            const std::string path = o.config_path.empty() ? std::string(CUTROUTE_DEFAULT_CONFIG) : o.config_path;
            RunConfig base = std::filesystem::exists(path) ? load_config_file(path) : RunConfig{};
            override_with(o.jobs, base.jobs);
            return cmd_calibrate(base, path);
        }
    } catch (const InputError &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const ProtocolError &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternalError;
    } catch (const InvariantError &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kOk;
}
