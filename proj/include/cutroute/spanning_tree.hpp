#ifndef CUTROUTE_SPANNING_TREE_HPP
#define CUTROUTE_SPANNING_TREE_HPP

/**
 * Rooted spanning trees with exact path queries.
 *
 * Lowest common ancestors use binary lifting: up_[k][v] is the 2^k-th
 * ancestor of v (the root is its own ancestor). Construction is
 * O(n log n), lca/distance O(log n), path extraction O(log n + length).
 *
 * A tree edge is identified by its child endpoint, so per-edge arrays are
 * indexed by vertex id; the root's slot is unused.
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "random.hpp"

namespace cutroute {

enum class TreeStrategy { bfs, dfs, random };

inline std::string_view to_string(TreeStrategy s) {
    switch (s) {
    case TreeStrategy::bfs: return "bfs";
    case TreeStrategy::dfs: return "dfs";
    case TreeStrategy::random: return "random";
    }
    return "?";
}

inline TreeStrategy parse_tree_strategy(std::string_view s) {
    if (s == "bfs") return TreeStrategy::bfs;
    if (s == "dfs") return TreeStrategy::dfs;
    if (s == "random") return TreeStrategy::random;
    throw InputError("unknown tree strategy '" + std::string(s) + "' (expected bfs, dfs or random)");
}

class SpanningTree {
public:
    SpanningTree() = default;

    /// Builds from a parent array; parent[root] == root. Throws InputError
    /// if the array does not describe a single tree rooted at `root`.
    SpanningTree(Vertex root, std::vector<Vertex> parent) : root_(root), parent_(std::move(parent)) {
        const std::size_t n = parent_.size();
        if (root_ >= n || parent_[root_] != root_)
            throw InputError("parent array: root must be its own parent");
        children_.assign(n, {});
        for (Vertex v = 0; v < n; ++v) {
            if (parent_[v] >= n)
                throw InputError("parent array: parent of " + std::to_string(v) + " out of range");
            if (v != root_) {
                if (parent_[v] == v)
                    throw InputError("parent array: second root at " + std::to_string(v));
                children_[parent_[v]].push_back(v);
            }
        }
        // depth by BFS from the root also proves every vertex hangs off it
        depth_.assign(n, kUnset);
        order_.reserve(n);
        order_.push_back(root_);
        depth_[root_] = 0;
        for (std::size_t i = 0; i < order_.size(); ++i) {
            const Vertex u = order_[i];
            for (Vertex c : children_[u]) {
                depth_[c] = depth_[u] + 1;
                order_.push_back(c);
            }
        }
        if (order_.size() != n)
            throw InputError("parent array contains a cycle or is disconnected from the root");

        tree_edges_.reserve(n ? n - 1 : 0);
        for (Vertex v : order_)
            if (v != root_)
                tree_edges_.push_back(Edge{parent_[v], v}.normalized());

        std::size_t levels = 1;
        while ((std::size_t{1} << levels) < n)
            ++levels;
        up_.assign(levels, parent_);
        for (std::size_t k = 1; k < levels; ++k)
            for (Vertex v = 0; v < n; ++v)
                up_[k][v] = up_[k - 1][up_[k - 1][v]];
    }

    [[nodiscard]] std::size_t num_vertices() const { return parent_.size(); }
    [[nodiscard]] Vertex root() const { return root_; }
    [[nodiscard]] Vertex parent(Vertex v) const { return parent_.at(v); }
    [[nodiscard]] std::uint32_t depth(Vertex v) const { return depth_.at(v); }
    [[nodiscard]] const std::vector<Vertex> &parents() const { return parent_; }
    [[nodiscard]] const std::vector<Vertex> &children(Vertex v) const { return children_.at(v); }
    /// Normalized edges in BFS order from the root.
    [[nodiscard]] const std::vector<Edge> &tree_edges() const { return tree_edges_; }

    /// The child endpoint of a tree edge, or nullopt if `e` is not in the tree.
    [[nodiscard]] std::optional<Vertex> edge_slot(const Edge &e) const {
        if (e.u >= num_vertices() || e.v >= num_vertices() || e.u == e.v)
            return std::nullopt;
        if (e.v != root_ && parent_[e.v] == e.u)
            return e.v;
        if (e.u != root_ && parent_[e.u] == e.v)
            return e.u;
        return std::nullopt;
    }

    [[nodiscard]] Vertex lca(Vertex u, Vertex v) const {
        check(u);
        check(v);
        if (depth_[u] < depth_[v])
            std::swap(u, v);
        u = ancestor(u, depth_[u] - depth_[v]);
        if (u == v)
            return u;
        for (std::size_t k = up_.size(); k-- > 0;) {
            if (up_[k][u] != up_[k][v]) {
                u = up_[k][u];
                v = up_[k][v];
            }
        }
        return parent_[u];
    }

    [[nodiscard]] std::uint32_t distance(Vertex u, Vertex v) const {
        return depth_[u] + depth_[v] - 2 * depth_[lca(u, v)];
    }

    /// The unique simple u-v path as directed edges, u first.
    [[nodiscard]] std::vector<Edge> path(Vertex u, Vertex v) const {
        const Vertex top = lca(u, v);
        std::vector<Edge> out;
        out.reserve(depth_[u] + depth_[v] - 2 * depth_[top]);
        for (Vertex x = u; x != top; x = parent_[x])
            out.push_back(Edge{x, parent_[x]});
        const std::size_t split = out.size();
        for (Vertex x = v; x != top; x = parent_[x])
            out.push_back(Edge{parent_[x], x});
        std::reverse(out.begin() + static_cast<std::ptrdiff_t>(split), out.end());
        return out;
    }

private:
    static constexpr std::uint32_t kUnset = UINT32_MAX;

    void check(Vertex v) const {
        if (v >= num_vertices())
            throw InputError("vertex " + std::to_string(v) + " out of range");
    }

    [[nodiscard]] Vertex ancestor(Vertex v, std::uint32_t steps) const {
        for (std::size_t k = 0; steps != 0; ++k, steps >>= 1)
            if (steps & 1U)
                v = up_[k][v];
        return v;
    }

    Vertex root_ = 0;
    std::vector<Vertex> parent_;
    std::vector<std::uint32_t> depth_;
    std::vector<std::vector<Vertex>> children_;
    std::vector<Vertex> order_;
    std::vector<Edge> tree_edges_;
    std::vector<std::vector<Vertex>> up_;
};

namespace detail {

inline std::vector<Vertex> bfs_parents(const Graph &g, Vertex root) {
    std::vector<Vertex> parent(g.num_vertices(), UINT32_MAX);
    std::queue<Vertex> queue;
    parent[root] = root;
    queue.push(root);
    while (!queue.empty()) {
        const Vertex u = queue.front();
        queue.pop();
        for (Vertex w : g.neighbors(u)) {
            if (parent[w] == UINT32_MAX) {
                parent[w] = u;
                queue.push(w);
            }
        }
    }
    return parent;
}

// Iterative, but visits in the same order as a recursive DFS that scans
// neighbors in ascending order.
inline std::vector<Vertex> dfs_parents(const Graph &g, Vertex root) {
    std::vector<Vertex> parent(g.num_vertices(), UINT32_MAX);
    std::vector<std::pair<Vertex, std::size_t>> stack;
    parent[root] = root;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
        auto &[u, next] = stack.back();
        const auto &nbrs = g.neighbors(u);
        if (next == nbrs.size()) {
            stack.pop_back();
            continue;
        }
        const Vertex w = nbrs[next++];
        if (parent[w] == UINT32_MAX) {
            parent[w] = u;
            stack.emplace_back(w, 0);
        }
    }
    return parent;
}

// Kruskal over a seeded random edge order, then oriented from the root.
inline std::vector<Vertex> random_parents(const Graph &g, Vertex root, std::uint64_t seed) {
    const std::size_t n = g.num_vertices();
    std::vector<Edge> edges = g.edges();
    Rng rng(seed);
    rng.shuffle(std::span<Edge>(edges));

    std::vector<Vertex> uf(n);
    std::iota(uf.begin(), uf.end(), Vertex{0});
    auto find = [&uf](Vertex x) {
        while (uf[x] != x) {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        return x;
    };
    std::vector<std::vector<Vertex>> adj(n);
    for (const Edge &e : edges) {
        const Vertex a = find(e.u), b = find(e.v);
        if (a == b)
            continue;
        uf[a] = b;
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<Vertex> parent(n, UINT32_MAX);
    std::vector<Vertex> stack{root};
    parent[root] = root;
    while (!stack.empty()) {
        const Vertex u = stack.back();
        stack.pop_back();
        for (Vertex w : adj[u]) {
            if (parent[w] == UINT32_MAX) {
                parent[w] = u;
                stack.push_back(w);
            }
        }
    }
    return parent;
}

} // namespace detail

/// Deterministic in (strategy, root, seed); `seed` only matters for random.
inline SpanningTree build_spanning_tree(const Graph &g, TreeStrategy strategy, Vertex root = 0,
                                        std::uint64_t seed = 0) {
    if (root >= g.num_vertices())
        throw InputError("tree root " + std::to_string(root) + " out of range");
    std::vector<Vertex> parent;
    switch (strategy) {
    case TreeStrategy::bfs: parent = detail::bfs_parents(g, root); break;
    case TreeStrategy::dfs: parent = detail::dfs_parents(g, root); break;
    case TreeStrategy::random: parent = detail::random_parents(g, root, seed); break;
    }
    return SpanningTree(root, std::move(parent));
}

inline std::vector<Edge> tree_path(const SpanningTree &t, Vertex u, Vertex v) { return t.path(u, v); }

inline std::uint32_t tree_distance(const SpanningTree &t, Vertex u, Vertex v) { return t.distance(u, v); }

} // namespace cutroute

#endif // CUTROUTE_SPANNING_TREE_HPP
