#ifndef CUTROUTE_INSTANCES_HPP
#define CUTROUTE_INSTANCES_HPP

// Synthetic graph/labeling families for experiments.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "random.hpp"

namespace cutroute {

enum class Family { line, cycle, grid, random_tree, gnp };
enum class LabelingRule { half_split, k_blocks, random_cut, constant };

inline std::string_view to_string(Family f) {
    switch (f) {
    case Family::line: return "line";
    case Family::cycle: return "cycle";
    case Family::grid: return "grid";
    case Family::random_tree: return "random_tree";
    case Family::gnp: return "gnp";
    }
    return "?";
}

inline std::string_view to_string(LabelingRule r) {
    switch (r) {
    case LabelingRule::half_split: return "half_split";
    case LabelingRule::k_blocks: return "k_blocks";
    case LabelingRule::random_cut: return "random_cut";
    case LabelingRule::constant: return "constant";
    }
    return "?";
}

inline Family parse_family(std::string_view s) {
    for (Family f : {Family::line, Family::cycle, Family::grid, Family::random_tree, Family::gnp})
        if (to_string(f) == s)
            return f;
    if (s == "gnp_connected")
        return Family::gnp;
    throw InputError("unknown family '" + std::string(s) + "'");
}

inline LabelingRule parse_labeling_rule(std::string_view s) {
    for (LabelingRule r :
         {LabelingRule::half_split, LabelingRule::k_blocks, LabelingRule::random_cut, LabelingRule::constant})
        if (to_string(r) == s)
            return r;
    throw InputError("unknown labeling rule '" + std::string(s) + "'");
}

struct InstanceSpec {
    Family family = Family::line;
    std::size_t n = 8;       // ignored for grids (n = width * height)
    std::size_t width = 0;   // grid only
    std::size_t height = 0;  // grid only
    double p = 0.1;          // gnp only
    std::uint64_t seed = 1;  // random_tree, gnp, random_cut
    LabelingRule labeling = LabelingRule::half_split;
    std::size_t k = 2;          // k_blocks
    std::size_t target_cut = 1; // random_cut
    std::size_t arity = 2;

    [[nodiscard]] std::size_t vertex_count() const { return family == Family::grid ? width * height : n; }

    [[nodiscard]] std::string describe() const {
        std::ostringstream out;
        out << to_string(family) << '(';
        if (family == Family::grid)
            out << width << 'x' << height;
        else
            out << "n=" << n;
        if (family == Family::gnp)
            out << ",p=" << p;
        if (family == Family::random_tree || family == Family::gnp)
            out << ",seed=" << seed;
        out << ")/" << to_string(labeling);
        if (labeling == LabelingRule::k_blocks)
            out << '(' << k << ')';
        if (labeling == LabelingRule::random_cut)
            out << "(target=" << target_cut << ",seed=" << seed << ')';
        out << "/arity=" << arity;
        return out.str();
    }
};

struct Instance {
    Graph graph;
    Labeling labeling;
};

/// "+1", "-1" for binary labels, "L0", "L1", ... otherwise.
inline std::vector<std::string> label_tokens(std::size_t arity) {
    if (arity == 0)
        throw InputError("label arity must be at least 1");
    if (arity == 1)
        return {"+1"};
    if (arity == 2)
        return {"+1", "-1"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arity; ++i)
        out.push_back("L" + std::to_string(i));
    return out;
}

namespace detail {

inline bool is_connected(std::size_t n, const std::vector<Edge> &edges) {
    std::vector<Vertex> uf(n);
    std::iota(uf.begin(), uf.end(), Vertex{0});
    auto find = [&uf](Vertex x) {
        while (uf[x] != x)
            x = uf[x] = uf[uf[x]];
        return x;
    };
    std::size_t components = n;
    for (const Edge &e : edges) {
        const Vertex a = find(e.u), b = find(e.v);
        if (a != b) {
            uf[a] = b;
            --components;
        }
    }
    return components == 1;
}

// Uniform labeled tree via Pruefer decoding.
inline std::vector<Edge> random_tree_edges(std::size_t n, Rng &rng) {
    if (n == 1)
        return {};
    if (n == 2)
        return {Edge{0, 1}};
    std::vector<Vertex> code(n - 2);
    for (auto &c : code)
        c = static_cast<Vertex>(rng.below(n));
    std::vector<std::size_t> degree(n, 1);
    for (Vertex c : code)
        ++degree[c];
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
    for (Vertex v = 0; v < n; ++v)
        if (degree[v] == 1)
            leaves.push(v);
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (Vertex c : code) {
        const Vertex leaf = leaves.top();
        leaves.pop();
        edges.push_back(Edge{leaf, c}.normalized());
        if (--degree[c] == 1)
            leaves.push(c);
    }
    const Vertex a = leaves.top();
    leaves.pop();
    edges.push_back(Edge{a, leaves.top()}.normalized());
    return edges;
}

constexpr int kGnpRetryCap = 1000;

inline std::vector<Edge> family_edges(const InstanceSpec &spec) {
    const std::size_t n = spec.vertex_count();
    if (n == 0)
        throw InputError("instance must have at least one vertex");
    std::vector<Edge> edges;
    switch (spec.family) {
    case Family::line:
        for (Vertex v = 0; v + 1 < n; ++v)
            edges.push_back({v, v + 1});
        break;
    case Family::cycle:
        if (n < 3)
            throw InputError("cycle needs n >= 3");
        for (Vertex v = 0; v + 1 < n; ++v)
            edges.push_back({v, v + 1});
        edges.push_back({0, static_cast<Vertex>(n - 1)});
        break;
    case Family::grid:
        for (std::size_t y = 0; y < spec.height; ++y)
            for (std::size_t x = 0; x < spec.width; ++x) {
                const auto v = static_cast<Vertex>(y * spec.width + x);
                if (x + 1 < spec.width)
                    edges.push_back({v, v + 1});
                if (y + 1 < spec.height)
                    edges.push_back({v, static_cast<Vertex>(v + spec.width)});
            }
        break;
    case Family::random_tree: {
        Rng rng(derive_seed(spec.seed, "graph"));
        edges = random_tree_edges(n, rng);
        break;
    }
    case Family::gnp: {
        if (!(spec.p >= 0.0 && spec.p <= 1.0))
            throw InputError("gnp: p must lie in [0, 1]");
        Rng rng(derive_seed(spec.seed, "graph"));
        for (int attempt = 0; attempt < kGnpRetryCap; ++attempt) {
            edges.clear();
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v)
                    if (rng.unit() < spec.p)
                        edges.push_back({u, v});
            if (is_connected(n, edges))
                return edges;
        }
        std::ostringstream msg;
        msg << "gnp_connected: no connected sample in " << kGnpRetryCap << " attempts (n=" << n << ", p=" << spec.p
            << "); raise p";
        throw InputError(msg.str());
    }
    }
    return edges;
}

// Cut `target` random edges of the graph's BFS tree and give each resulting
// component a label different from the component it was cut from.
inline std::vector<std::string> random_cut_labels(const Graph &g, const InstanceSpec &spec,
                                                  const std::vector<std::string> &tokens) {
    const std::size_t n = g.num_vertices();
    std::vector<Vertex> parent(n, UINT32_MAX), order;
    order.reserve(n);
    parent[0] = 0;
    order.push_back(0);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Vertex w : g.neighbors(order[i]))
            if (parent[w] == UINT32_MAX) {
                parent[w] = order[i];
                order.push_back(w);
            }

    Rng rng(derive_seed(spec.seed, "labels"));
    std::vector<Vertex> children(order.begin() + 1, order.end());
    rng.shuffle(std::span<Vertex>(children));
    std::vector<char> severed(n, 0);
    const std::size_t cuts = std::min(spec.target_cut, children.size());
    for (std::size_t i = 0; i < cuts; ++i)
        severed[children[i]] = 1;

    std::vector<std::size_t> label(n, 0);
    label[0] = rng.below(tokens.size());
    for (std::size_t i = 1; i < order.size(); ++i) {
        const Vertex v = order[i];
        if (!severed[v]) {
            label[v] = label[parent[v]];
            continue;
        }
        // uniform over the other labels
        const std::size_t pick = rng.below(tokens.size() - 1);
        label[v] = pick >= label[parent[v]] ? pick + 1 : pick;
    }
    std::vector<std::string> out(n);
    for (Vertex v = 0; v < n; ++v)
        out[v] = tokens[label[v]];
    return out;
}

} // namespace detail

/// Deterministic in the spec (including its seed).
inline Instance generate_instance(const InstanceSpec &spec) {
    const std::size_t n = spec.vertex_count();
    Graph g(n, detail::family_edges(spec));
    const auto tokens = label_tokens(spec.arity);

    std::vector<std::string> labels(n, tokens[0]);
    if (tokens.size() > 1) {
        switch (spec.labeling) {
        case LabelingRule::constant: break;
        case LabelingRule::half_split:
            for (std::size_t v = (n + 1) / 2; v < n; ++v)
                labels[v] = tokens[1];
            break;
        case LabelingRule::k_blocks: {
            if (spec.k == 0)
                throw InputError("k_blocks needs k >= 1");
            for (std::size_t v = 0; v < n; ++v)
                labels[v] = tokens[(v * spec.k / n) % tokens.size()];
            break;
        }
        case LabelingRule::random_cut: labels = detail::random_cut_labels(g, spec, tokens); break;
        }
    }
    return Instance{std::move(g), Labeling(labels)};
}

} // namespace cutroute

#endif // CUTROUTE_INSTANCES_HPP
