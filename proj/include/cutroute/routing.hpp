#ifndef CUTROUTE_ROUTING_HPP
#define CUTROUTE_ROUTING_HPP

/**
 * Online low-congestion routing on a spanning tree.
 *
 * Each request is connected to the nearest earlier terminal in tree
 * distance; ties go to the terminal that arrived first. Every routed path is
 * appended to an append-only log and the congestion counter of each tree
 * edge it uses is incremented.
 *
 * The nearest-terminal lookup is O(1): every vertex caches its current best
 * terminal (distance, arrival). Adding terminal t runs a pruned BFS from t
 * that only enters vertices t strictly improves. Pruning is exact on a tree:
 * if t does not strictly beat the cached terminal s at x, it cannot beat it
 * anywhere behind x either, since d(t,y) = d(t,x) + d(x,y) >= d(s,y).
 */

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "spanning_tree.hpp"

namespace cutroute {

struct PathRecord {
    Vertex request = 0;
    Vertex target = 0;
    std::vector<Edge> edges; // directed, request side first

    friend bool operator==(const PathRecord &, const PathRecord &) = default;
};

struct RouteResult {
    Vertex target = 0;
    std::vector<Edge> path;
    std::size_t path_length = 0;
    std::size_t log_index = 0; // position in RoutingState::path_log()
};

class RoutingState {
public:
    explicit RoutingState(std::shared_ptr<const SpanningTree> tree)
        : tree_(std::move(tree)), arrival_(tree_->num_vertices(), kNone),
          best_dist_(tree_->num_vertices(), kNone), best_terminal_(tree_->num_vertices(), kNone),
          congestion_(tree_->num_vertices(), 0) {}

    [[nodiscard]] const SpanningTree &tree() const { return *tree_; }
    [[nodiscard]] const std::shared_ptr<const SpanningTree> &tree_ptr() const { return tree_; }
    [[nodiscard]] const std::vector<Vertex> &terminals() const { return terminals_; }
    [[nodiscard]] const std::vector<PathRecord> &path_log() const { return log_; }
    [[nodiscard]] bool is_terminal(Vertex v) const { return arrival_.at(v) != kNone; }
    [[nodiscard]] std::uint32_t max_congestion() const { return max_congestion_; }

    /// Congestion of a tree edge; throws if `e` is not a tree edge.
    [[nodiscard]] std::uint32_t congestion(const Edge &e) const {
        auto slot = tree_->edge_slot(e);
        if (!slot)
            throw InputError("not a tree edge");
        return congestion_[*slot];
    }

    /// The terminal route_request would pick for `r`, without routing.
    [[nodiscard]] Vertex nearest_terminal(Vertex r) const {
        check(r);
        if (terminals_.empty())
            throw ProtocolError("no terminals yet");
        return best_terminal_[r];
    }

    void add_terminal(Vertex t) {
        check(t);
        if (is_terminal(t))
            return;
        const auto order = static_cast<std::uint32_t>(terminals_.size());
        arrival_[t] = order;
        terminals_.push_back(t);

        const SpanningTree &tree = *tree_;
        // (vertex, came-from) pairs; a tree has no other cycles to guard against
        std::vector<std::pair<Vertex, Vertex>> frontier{{t, t}};
        std::vector<std::pair<Vertex, Vertex>> next;
        for (std::uint32_t d = 0; !frontier.empty(); ++d) {
            next.clear();
            for (auto [x, from] : frontier) {
                if (!improves(x, d))
                    continue;
                best_dist_[x] = d;
                best_terminal_[x] = t;
                if (x != tree.root() && tree.parent(x) != from)
                    next.emplace_back(tree.parent(x), x);
                for (Vertex c : tree.children(x))
                    if (c != from)
                        next.emplace_back(c, x);
            }
            frontier.swap(next);
        }
    }

    /// Routes `r` to the nearest earlier terminal and logs the path. Does not
    /// make `r` a terminal; call add_terminal once its label is known.
    RouteResult route_request(Vertex r) {
        check(r);
        if (terminals_.empty())
            throw ProtocolError("route_request before any terminal exists");
        RouteResult result;
        result.target = is_terminal(r) ? r : best_terminal_[r];
        result.path = tree_->path(r, result.target);
        result.path_length = result.path.size();
        for (const Edge &e : result.path) {
            const Vertex slot = *tree_->edge_slot(e);
            max_congestion_ = std::max(max_congestion_, ++congestion_[slot]);
        }
        result.log_index = log_.size();
        log_.push_back(PathRecord{r, result.target, result.path});
        return result;
    }

    /// Route then add as terminal: one step of the plain online routing game.
    RouteResult serve(Vertex r) {
        RouteResult res = route_request(r);
        add_terminal(r);
        return res;
    }

private:
    static constexpr std::uint32_t kNone = UINT32_MAX;

    void check(Vertex v) const {
        if (v >= arrival_.size())
            throw InputError("vertex " + std::to_string(v) + " out of range");
    }

    // New terminals arrive last, so they only win on strictly shorter distance.
    [[nodiscard]] bool improves(Vertex x, std::uint32_t d) const {
        return best_dist_[x] == kNone || d < best_dist_[x];
    }

    std::shared_ptr<const SpanningTree> tree_;
    std::vector<Vertex> terminals_;
    std::vector<std::uint32_t> arrival_;
    std::vector<std::uint32_t> best_dist_;
    std::vector<Vertex> best_terminal_;
    std::vector<std::uint32_t> congestion_; // indexed by child endpoint
    std::uint32_t max_congestion_ = 0;
    std::vector<PathRecord> log_;
};

inline RoutingState init_routing(std::shared_ptr<const SpanningTree> tree, Vertex first) {
    RoutingState s(std::move(tree));
    s.add_terminal(first);
    return s;
}

inline RouteResult route_request(RoutingState &s, Vertex r) { return s.route_request(r); }

inline std::uint32_t max_congestion(const RoutingState &s) { return s.max_congestion(); }

} // namespace cutroute

#endif // CUTROUTE_ROUTING_HPP
