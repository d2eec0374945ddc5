#ifndef CUTROUTE_SWEEP_HPP
#define CUTROUTE_SWEEP_HPP

// Grids of runs, executed on a small thread pool. Results come back in grid
// order regardless of completion order.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "experiment.hpp"
#include "instances.hpp"
#include "orders.hpp"

namespace cutroute {

struct SweepGrid {
    std::vector<Family> families{Family::line};
    std::vector<std::size_t> ns{64, 256, 1024, 4096};
    std::vector<OrderKind> orders{OrderKind::random};
    std::size_t seeds = 20;          // seeds first_seed .. first_seed + seeds - 1
    std::uint64_t first_seed = 1;
    LabelingRule labeling = LabelingRule::half_split;
    std::size_t arity = 2;
    std::size_t k = 4;
    std::size_t target_cut = 5;
    double p = 0.0; // gnp edge probability; <= 0 picks min(1, 2 ln n / n)
    TreeStrategy tree = TreeStrategy::bfs;
};

struct SweepPoint {
    InstanceSpec spec;
    RunOptions options;
};

struct SweepOutcome {
    SweepPoint point;
    ExperimentReport report;
    bool failed = false;
    std::string error;
};

/// Instance spec for `family` at roughly n vertices. Grids are the largest
/// square with at most n vertices.
inline InstanceSpec sized_spec(Family family, std::size_t n, const SweepGrid &grid, std::uint64_t seed) {
    InstanceSpec s;
    s.family = family;
    s.n = n;
    s.seed = seed;
    s.labeling = grid.labeling;
    s.arity = grid.arity;
    s.k = grid.k;
    s.target_cut = grid.target_cut;
    if (family == Family::grid) {
        auto side = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
        while ((side + 1) * (side + 1) <= n)
            ++side;
        s.width = s.height = std::max<std::size_t>(side, 1);
        s.n = s.width * s.height;
    }
    if (family == Family::gnp)
        s.p = grid.p > 0.0 ? grid.p : std::min(1.0, 2.0 * std::log(static_cast<double>(n)) / static_cast<double>(n));
    return s;
}

/// Sorted by (family, n, order, seed).
inline std::vector<SweepPoint> expand_grid(const SweepGrid &grid) {
    std::vector<SweepPoint> points;
    for (Family f : grid.families)
        for (std::size_t n : grid.ns)
            for (OrderKind o : grid.orders)
                for (std::size_t i = 0; i < grid.seeds; ++i) {
                    const std::uint64_t seed = grid.first_seed + i;
                    SweepPoint p;
                    p.spec = sized_spec(f, n, grid, seed);
                    p.options.order = o;
                    p.options.tree = grid.tree;
                    p.options.seed = seed;
                    points.push_back(std::move(p));
                }
    return points;
}

/// Failures (bad specs, unattainable gnp, midpoint on a non-line) become
/// failed outcomes; the rest of the sweep still runs.
inline std::vector<SweepOutcome> run_sweep(const std::vector<SweepPoint> &points, std::size_t jobs = 1) {
    std::vector<SweepOutcome> out(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            out[i].point = points[i];
            try {
                out[i].report = run_experiment(points[i].spec, points[i].options).report;
                out[i].failed = !out[i].report.satisfied();
                if (out[i].failed)
                    out[i].error = "bound or charging witness failed";
            } catch (const std::exception &ex) {
                out[i].failed = true;
                out[i].error = ex.what();
                out[i].report.family = std::string(to_string(points[i].spec.family));
                out[i].report.n = points[i].spec.vertex_count();
                out[i].report.seed = points[i].options.seed;
                out[i].report.order_kind = std::string(to_string(points[i].options.order));
            }
        }
    };
    jobs = std::max<std::size_t>(1, std::min(jobs, points.size()));
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < jobs; ++j)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();
    return out;
}

/// Least-squares slope of log(y) against log(x). Needs two distinct x and
/// positive values.
inline double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    const std::size_t k = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = static_cast<double>(k) * sxx - sx * sx;
    return (static_cast<double>(k) * sxy - sx * sy) / denom;
}

struct CongestionScaling {
    std::vector<std::size_t> ns;
    std::vector<std::uint32_t> worst_congestion; // per n, over every run
    double max_ratio = 0.0;                      // max_congestion / (1 + log2 n)
    double growth_exponent = 0.0;       // slope of log(max_congestion) vs log(log2 n), one point per run
    double worst_growth_exponent = 0.0; // same slope through the per-n worst values
};

inline CongestionScaling congestion_scaling(const std::vector<ExperimentReport> &reports) {
    CongestionScaling s;
    std::vector<double> x, y;
    for (const auto &r : reports) {
        auto it = std::find(s.ns.begin(), s.ns.end(), r.n);
        if (it == s.ns.end()) {
            s.ns.push_back(r.n);
            s.worst_congestion.push_back(0);
            it = s.ns.end() - 1;
        }
        auto &worst = s.worst_congestion[static_cast<std::size_t>(it - s.ns.begin())];
        worst = std::max(worst, r.max_congestion);
        const double log_n = std::log2(static_cast<double>(r.n));
        s.max_ratio = std::max(s.max_ratio, static_cast<double>(r.max_congestion) / (1.0 + log_n));
        // log(0) is undefined; runs that routed nothing carry no scaling signal
        if (r.n >= 2 && r.max_congestion > 0) {
            x.push_back(log_n);
            y.push_back(static_cast<double>(r.max_congestion));
        }
    }
    auto distinct = [](const std::vector<double> &v) {
        return std::any_of(v.begin(), v.end(), [&v](double a) { return a != v.front(); });
    };
    if (!x.empty() && distinct(x))
        s.growth_exponent = loglog_slope(x, y);

    std::vector<double> wx, wy;
    for (std::size_t i = 0; i < s.ns.size(); ++i) {
        if (s.ns[i] < 2 || s.worst_congestion[i] == 0)
            continue;
        wx.push_back(std::log2(static_cast<double>(s.ns[i])));
        wy.push_back(static_cast<double>(s.worst_congestion[i]));
    }
    if (wx.size() >= 2)
        s.worst_growth_exponent = loglog_slope(wx, wy);
    return s;
}

/// The grid C_cal is measured on: lines under random and midpoint orders,
/// random trees under random and natural orders (midpoint is line-only),
/// n in {64, 256, 1024, 4096}, 20 seeds each.
inline std::vector<SweepPoint> calibration_points(std::size_t seeds = 20) {
    SweepGrid lines;
    lines.families = {Family::line};
    lines.orders = {OrderKind::random, OrderKind::midpoint};
    lines.seeds = seeds;
    SweepGrid trees = lines;
    trees.families = {Family::random_tree};
    trees.orders = {OrderKind::random, OrderKind::natural};
    std::vector<SweepPoint> points = expand_grid(lines);
    for (auto &p : expand_grid(trees))
        points.push_back(std::move(p));
    return points;
}

} // namespace cutroute

#endif // CUTROUTE_SWEEP_HPP
