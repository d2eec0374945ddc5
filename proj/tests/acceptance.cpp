// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "test_support.hpp"

using namespace cutroute;
namespace tst = cutroute::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string &why) {
        if (!ok && pass) {
            pass = false;
            detail << "first failure: " << why << "; ";
        }
    }
};

std::size_t jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

double threshold(double c_cal, std::size_t n) { return c_cal * (1.0 + std::log2(static_cast<double>(n))); }

std::string describe(const SweepOutcome &o) {
    return o.point.spec.describe() + " order=" + std::string(to_string(o.point.options.order)) +
           " seed=" + std::to_string(o.point.options.seed);
}

// Oracle checks shared by every run: ledger against the independent recount.
void check_ledger(Verdict &v7, const std::vector<SweepOutcome> &outs) {
    for (const auto &o : outs) {
        v7.require(!o.failed || o.error == "bound or charging witness failed", describe(o) + ": " + o.error);
        v7.require(o.report.max_congestion == o.report.recounted_max_congestion,
                   describe(o) + ": ledger differs from recount");
        v7.require(o.report.oracle_equivalent, describe(o) + ": oracle mismatch");
    }
}

// Sessions for criteria 1 and 6: every family, sizes up to 1024, arity 2 and
// 3, random order plus the adversarial orders the family admits.
std::vector<SweepPoint> mixed_suite(std::size_t arity) {
    std::vector<SweepPoint> points;
    const std::vector<Family> families{Family::line, Family::cycle, Family::grid, Family::random_tree, Family::gnp};
    const std::vector<std::size_t> ns{16, 64, 256, 1024};
    for (Family f : families)
        for (std::size_t n : ns)
            for (std::uint64_t seed = 1; seed <= 7; ++seed) {
                std::vector<OrderKind> orders{OrderKind::random, OrderKind::odd_first};
                if (f == Family::line)
                    orders.push_back(OrderKind::midpoint);
                for (OrderKind k : orders) {
                    SweepGrid g;
                    g.arity = arity;
                    g.k = 2 + seed % 5;
                    g.target_cut = 1 + seed * 2;
                    const LabelingRule rules[] = {LabelingRule::half_split, LabelingRule::k_blocks,
                                                  LabelingRule::random_cut};
                    g.labeling = rules[(seed + (arity == 3 ? 1 : 0)) % 3];
                    if (arity == 3 && g.labeling == LabelingRule::half_split)
                        g.labeling = LabelingRule::k_blocks;
                    SweepPoint p;
                    p.spec = sized_spec(f, n, g, seed);
                    p.options.order = k;
                    p.options.seed = seed;
                    p.options.tree = static_cast<TreeStrategy>(seed % 3);
                    points.push_back(p);
                }
            }
    return points;
}

Verdict criterion_mistake_bound(const std::vector<SweepOutcome> &outs, std::size_t &sessions) {
    Verdict v;
    std::size_t witnessed = 0, bounded = 0;
    for (const auto &o : outs) {
        v.require(!o.failed, describe(o) + ": " + o.error);
        const auto &r = o.report;
        bounded += r.mistakes <= static_cast<std::size_t>(r.recounted_max_congestion) * r.cut_size;
        witnessed += r.charging_witness_found;
        v.require(r.bound_satisfied && r.prefix_bound_held, describe(o) + ": bound violated");
        v.require(r.charging_witness_found, describe(o) + ": no charging witness");
    }
    sessions = outs.size();
    v.detail << sessions << " sessions, bound held " << bounded << "/" << sessions << ", witness " << witnessed << "/"
             << sessions;
    return v;
}

Verdict criterion_calibration(double c_cal, Verdict &v7) {
    Verdict v;
    const auto outs = run_sweep(calibration_points(), jobs());
    check_ledger(v7, outs);
    std::vector<ExperimentReport> reports;
    for (const auto &o : outs) {
        v.require(!o.failed, describe(o) + ": " + o.error);
        v.require(o.report.max_congestion <= threshold(c_cal, o.report.n),
                  describe(o) + ": congestion " + std::to_string(o.report.max_congestion));
        reports.push_back(o.report);
    }
    const CongestionScaling s = congestion_scaling(reports);
    v.require(s.growth_exponent <= 1.25, "growth exponent " + std::to_string(s.growth_exponent));
    v.detail << outs.size() << " runs, max congestion/(1+log2 n) = " << s.max_ratio << " <= C_cal " << c_cal
             << ", growth exponent " << s.growth_exponent << " <= 1.25";
    return v;
}

Verdict criterion_line_scaling(double c_cal, Verdict &v7) {
    Verdict v;
    SweepGrid g;
    g.families = {Family::line};
    g.orders = {OrderKind::natural, OrderKind::random, OrderKind::midpoint, OrderKind::odd_first};
    g.seeds = 20;
    const auto outs = run_sweep(expand_grid(g), jobs());
    check_ledger(v7, outs);
    double worst = 0.0;
    for (const auto &o : outs) {
        v.require(!o.failed, describe(o) + ": " + o.error);
        v.require(o.report.cut_size == 1, describe(o) + ": cut is not 1");
        v.require(static_cast<double>(o.report.mistakes) <= threshold(c_cal, o.report.n),
                  describe(o) + ": " + std::to_string(o.report.mistakes) + " mistakes");
        worst = std::max(worst, log_ratio(o.report.mistakes, o.report.cut_size, o.report.n));
    }
    v.detail << outs.size() << " runs, max mistakes/(1+log2 n) = " << worst << " <= C_cal " << c_cal;
    return v;
}

Verdict criterion_midpoint_lower_bound(Verdict &v7) {
    Verdict v;
    for (std::size_t n : {256u, 1024u, 4096u}) {
        InstanceSpec s;
        s.family = Family::line;
        s.n = n;
        RunOptions opt;
        opt.order = OrderKind::midpoint;
        const ExperimentReport r = run_experiment(s, opt).report;
        v7.require(r.max_congestion == r.recounted_max_congestion, "midpoint n=" + std::to_string(n));
        const auto floor_log = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(n))));
        v.require(r.mistakes + 2 >= floor_log, "n=" + std::to_string(n) + ": " + std::to_string(r.mistakes));
        v.detail << "n=" << n << ": " << r.mistakes << " >= " << floor_log - 2 << "; ";
    }
    return v;
}

Verdict criterion_baseline(double c_cal, Verdict &v7) {
    Verdict v;
    const BaselineComparison c = run_baseline_comparison(1024);
    v7.require(c.predictor.max_congestion == c.predictor.recounted_max_congestion, "baseline comparison run");
    v.require(c.cut_size == 1, "cut is not 1");
    v.require(c.baseline_mistakes >= 255, "baseline made only " + std::to_string(c.baseline_mistakes));
    v.require(static_cast<double>(c.predictor_mistakes) <= c_cal * 11,
              "predictor made " + std::to_string(c.predictor_mistakes));
    v.detail << "baseline " << c.baseline_mistakes << " >= 255, predictor " << c.predictor_mistakes
             << " <= " << c_cal * 11;
    return v;
}

Verdict criterion_multilabel(const std::vector<SweepOutcome> &outs) {
    Verdict v;
    std::size_t sessions = 0;
    Verdict bound = criterion_mistake_bound(outs, sessions);
    v.require(bound.pass, bound.detail.str());
    std::size_t relabeled = 0;
    for (const auto &o : outs) {
        const Instance inst = generate_instance(o.point.spec);
        const SessionResult base = run_experiment(o.point.spec, o.point.options);
        std::vector<std::string> from = inst.labeling.label_set().tokens(), to = from;
        std::rotate(to.begin(), to.begin() + 1, to.end());
        std::map<std::string, std::string> f;
        for (std::size_t i = 0; i < from.size(); ++i)
            f[from[i]] = "r" + to[i];
        const Labeling renamed = relabel(inst.labeling, f);
        const SessionResult again = run_session(inst.graph, renamed, base.order, o.point.options);
        v.require(again.report.mistakes == o.report.mistakes, describe(o) + ": relabeled mistake count differs");
        ++relabeled;
    }
    v.detail << sessions << " arity-3 sessions certified, " << relabeled << " relabelings reproduced";
    return v;
}

void check_tree_paths(Verdict &v7) {
    Rng rng(2024);
    std::size_t pairs = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(10);
        const SpanningTree t = tst::random_tree(n, rng, static_cast<Vertex>(rng.below(n)));
        const auto adj = tst::tree_adjacency(t);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex w = 0; w < n; ++w, ++pairs) {
                const auto paths = tst::all_simple_paths(adj, u, w);
                v7.require(paths.size() == 1 && tree_path(t, u, w) == paths[0],
                           "tree_path mismatch on trial " + std::to_string(trial));
            }
    }
    v7.detail << "tree_path matched exhaustive search on 100 trees (" << pairs << " pairs)";
}

void print(int id, const char *name, const Verdict &v, Clock::time_point start) {
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.str().c_str(),
                secs);
    std::fflush(stdout);
}

} // namespace

int main() {
    const double c_cal = tst::stored_c_cal();
    std::printf("C_cal = %g (from %s)\n", c_cal, CUTROUTE_DEFAULT_CONFIG);
    bool all = true;
    Verdict v7;

    auto t = Clock::now();
    const auto binary = run_sweep(mixed_suite(2), jobs());
    const auto ternary = run_sweep(mixed_suite(3), jobs());
    std::vector<SweepOutcome> both = binary;
    both.insert(both.end(), ternary.begin(), ternary.end());
    check_ledger(v7, both);
    std::size_t sessions = 0;
    Verdict v1 = criterion_mistake_bound(both, sessions);
    v1.require(sessions >= 500, "only " + std::to_string(sessions) + " sessions");
    print(1, "mistakes <= max congestion x cut", v1, t);
    all &= v1.pass;

    t = Clock::now();
    Verdict v2 = criterion_calibration(c_cal, v7);
    print(2, "logarithmic congestion", v2, t);
    all &= v2.pass;

    t = Clock::now();
    Verdict v3 = criterion_line_scaling(c_cal, v7);
    print(3, "end-to-end mistakes on half-split lines", v3, t);
    all &= v3.pass;

    t = Clock::now();
    Verdict v4 = criterion_midpoint_lower_bound(v7);
    print(4, "midpoint adversary lower bound", v4, t);
    all &= v4.pass;

    t = Clock::now();
    Verdict v5 = criterion_baseline(c_cal, v7);
    print(5, "baseline separation", v5, t);
    all &= v5.pass;

    t = Clock::now();
    Verdict v6 = criterion_multilabel(ternary);
    print(6, "multi-label generalization", v6, t);
    all &= v6.pass;

    t = Clock::now();
    check_tree_paths(v7);
    print(7, "oracle equivalence", v7, t);
    all &= v7.pass;

    return all ? 0 : 1;
}
