#ifndef CUTROUTE_EXPERIMENT_HPP
#define CUTROUTE_EXPERIMENT_HPP

/**
 * End-to-end runs: build the tree, play a query order against the predictor,
 * verify the mistake bound, and summarize everything in an ExperimentReport.
 *
 * A run is a pure function of (graph, labeling, order, tree strategy, root,
 * seed); only runtime_ms varies between repetitions.
 */

#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "instances.hpp"
#include "orders.hpp"
#include "predictor.hpp"
#include "random.hpp"
#include "spanning_tree.hpp"
#include "verify.hpp"

namespace cutroute {

struct RunOptions {
    OrderKind order = OrderKind::natural;
    TreeStrategy tree = TreeStrategy::bfs;
    Vertex root = 0;
    std::uint64_t seed = 1;
    std::vector<Vertex> custom_order;              // OrderKind::custom only
    std::optional<std::string> first_prediction;   // emitted (uncounted) for query 0
};

struct ExperimentReport {
    std::string instance;
    std::string family;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t arity = 0;
    std::size_t cut_size = 0;
    std::size_t queries = 0;
    std::size_t mistakes = 0;
    std::uint32_t max_congestion = 0;           // from the routing ledger
    std::uint32_t recounted_max_congestion = 0; // from the path log
    std::size_t bound = 0;                      // max_congestion * cut_size
    bool bound_satisfied = false;
    bool charging_witness_found = false;
    bool prefix_bound_held = false; // bound held after every single query
    bool oracle_equivalent = false; // ledger == recount
    std::uint32_t max_charges = 0;
    double runtime_ms = 0.0;
    std::uint64_t seed = 0;
    std::string order_kind;
    std::string tree;
    Vertex root = 0;
    std::vector<std::string> problems;

    [[nodiscard]] bool satisfied() const { return bound_satisfied && charging_witness_found; }
};

/// Label ids of a session mapped back to tokens. Ids past the label set
/// stand for the forced first prediction, which need not be a real label.
struct TokenTable {
    std::vector<std::string> tokens;

    [[nodiscard]] const std::string &operator()(LabelId id) const { return tokens.at(id); }
};

struct SessionResult {
    ExperimentReport report;
    QueryOrder order;
    std::shared_ptr<const SpanningTree> tree;
    PredictionSession<LabelId> session;
    TokenTable tokens;
};

inline SessionResult run_session(const Graph &g, const Labeling &l, const QueryOrder &order, const RunOptions &opt,
                                 std::string instance_name = {}, std::string family = {}) {
    if (l.size() != g.num_vertices())
        throw InputError("labeling size does not match the graph");
    validate_order(order.sequence, g.num_vertices());
    const auto start = std::chrono::steady_clock::now();

    auto tree = std::make_shared<const SpanningTree>(
        build_spanning_tree(g, opt.tree, opt.root, derive_seed(opt.seed, "tree")));
    const CutSet cut = cut_size(g, l);

    TokenTable tokens{l.label_set().tokens()};
    std::optional<LabelId> first;
    if (opt.first_prediction) {
        auto id = l.label_set().find(*opt.first_prediction);
        if (!id) {
            id = static_cast<LabelId>(tokens.tokens.size());
            tokens.tokens.push_back(*opt.first_prediction);
        }
        first = id;
    }

    PredictionSession<LabelId> session(tree, first);
    bool prefix_ok = true;
    bool monotone = true;
    std::size_t last_mistakes = 0;
    std::uint32_t last_congestion = 0;
    for (Vertex v : order.sequence) {
        session.predict(v);
        session.reveal(v, l.label(v));
        const std::uint32_t cong = session.routing().max_congestion();
        if (session.mistakes() > static_cast<std::size_t>(cong) * cut.size())
            prefix_ok = false;
        if (session.mistakes() < last_mistakes || cong < last_congestion)
            monotone = false;
        last_mistakes = session.mistakes();
        last_congestion = cong;
    }

    const MistakeBoundCheck check = verify_mistake_bound(session.transcript(), session.routing().path_log(), cut);
    const auto stop = std::chrono::steady_clock::now();

    ExperimentReport r;
    r.instance = std::move(instance_name);
    r.family = std::move(family);
    r.n = g.num_vertices();
    r.m = g.num_edges();
    r.arity = l.arity();
    r.cut_size = cut.size();
    r.queries = order.sequence.size();
    r.mistakes = session.mistakes();
    r.max_congestion = session.routing().max_congestion();
    r.recounted_max_congestion = check.recounted_max_congestion;
    r.bound = static_cast<std::size_t>(r.max_congestion) * r.cut_size;
    r.bound_satisfied = check.bound_satisfied && prefix_ok && r.mistakes <= r.bound;
    r.charging_witness_found = check.charging_witness_found;
    r.prefix_bound_held = prefix_ok;
    r.oracle_equivalent = r.max_congestion == r.recounted_max_congestion && check.mistakes == r.mistakes;
    r.max_charges = check.max_charges;
    r.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    r.seed = opt.seed;
    r.order_kind = std::string(to_string(order.kind));
    r.tree = std::string(to_string(opt.tree));
    r.root = opt.root;
    r.problems = check.problems;
    if (!prefix_ok)
        r.problems.push_back("bound failed on a prefix of the session");
    if (!monotone)
        r.problems.push_back("mistakes or congestion decreased during the session");
    if (!r.oracle_equivalent)
        r.problems.push_back("routing ledger disagrees with the path-log recount");
    return SessionResult{std::move(r), order, std::move(tree), std::move(session), std::move(tokens)};
}

inline SessionResult run_experiment(const InstanceSpec &spec, const RunOptions &opt) {
    Instance inst = generate_instance(spec);
    QueryOrder order = make_order(opt.order, inst.graph, inst.labeling, derive_seed(opt.seed, "order"),
                                  opt.custom_order);
    return run_session(inst.graph, inst.labeling, order, opt, spec.describe(), std::string(to_string(spec.family)));
}

struct BaselineComparison {
    std::size_t n = 0;
    std::size_t cut_size = 0;
    std::string fallback;
    std::size_t baseline_mistakes = 0;
    std::size_t predictor_mistakes = 0;
    ExperimentReport predictor;
};

/// Neighbor-majority baseline against the routing predictor on a line, both
/// facing the odd-first order. The default fallback is a label other than
/// vertex 0's (the first half's), which is what the odd-first order exploits.
inline BaselineComparison run_baseline_comparison(std::size_t n, LabelingRule labeling = LabelingRule::half_split,
                                                  std::optional<std::string> fallback = std::nullopt,
                                                  TreeStrategy tree = TreeStrategy::bfs) {
    if (labeling != LabelingRule::half_split && labeling != LabelingRule::constant)
        throw InputError("baseline comparison expects a half_split or constant line");
    InstanceSpec spec;
    spec.family = Family::line;
    spec.n = n;
    spec.labeling = labeling;
    const Instance inst = generate_instance(spec);
    const Labeling &l = inst.labeling;
    const QueryOrder order = odd_first_order(n);

    if (!fallback) {
        fallback = l.label_set().token(0);
        for (const auto &t : l.label_set().tokens())
            if (t != l.token(0)) {
                fallback = t;
                break;
            }
    }

    BaselineSession<std::string> baseline(inst.graph, *fallback);
    for (Vertex v : order.sequence) {
        baseline.predict(v);
        baseline.reveal(v, l.token(v));
    }

    RunOptions opt;
    opt.order = OrderKind::odd_first;
    opt.tree = tree;
    SessionResult ours = run_session(inst.graph, l, order, opt, spec.describe(), "line");

    BaselineComparison out;
    out.n = n;
    out.cut_size = ours.report.cut_size;
    out.fallback = *fallback;
    out.baseline_mistakes = baseline.mistakes();
    out.predictor_mistakes = ours.report.mistakes;
    out.predictor = std::move(ours.report);
    return out;
}

/// mistakes / (cut * (1 + log2 n)); 0 when the cut is empty.
inline double log_ratio(std::size_t value, std::size_t cut, std::size_t n) {
    if (cut == 0)
        return 0.0;
    return static_cast<double>(value) / (static_cast<double>(cut) * (1.0 + std::log2(static_cast<double>(n))));
}

} // namespace cutroute

#endif // CUTROUTE_EXPERIMENT_HPP
