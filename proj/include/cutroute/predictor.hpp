#ifndef CUTROUTE_PREDICTOR_HPP
#define CUTROUTE_PREDICTOR_HPP

/**
 * Online label predictors.
 *
 * PredictionSession answers a query by routing it to an earlier terminal
 * (a vertex whose label is known) and returning that terminal's label. A
 * counted mistake therefore has a routed path whose endpoints carry
 * different labels, and that path must cross a cut edge; with per-edge
 * congestion at most alpha this caps mistakes at alpha * |cut|.
 *
 * BaselineSession is the neighbor-majority rule: it only looks at labeled
 * neighbors of the query vertex.
 *
 * Both sessions are strict predict/reveal alternations and never count the
 * answer to the first query. Labels are compared with ==, so any label type
 * and any number of distinct labels work.
 */

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "routing.hpp"
#include "spanning_tree.hpp"

namespace cutroute {

template <class Label>
struct TranscriptEntry {
    std::size_t index = 0;
    Vertex vertex = 0;
    std::optional<Label> predicted;
    Label revealed{};
    bool counted = false;
    bool mistake = false;
    std::optional<std::size_t> path_index; // into the routing path log
    std::optional<Vertex> path_target;
    std::optional<std::size_t> path_length;

    friend bool operator==(const TranscriptEntry &, const TranscriptEntry &) = default;
};

template <class Label = LabelId>
class PredictionSession {
public:
    using Entry = TranscriptEntry<Label>;

    /// `first_prediction` is emitted for the very first query instead of
    /// nothing; it is never counted either way.
    explicit PredictionSession(std::shared_ptr<const SpanningTree> tree,
                               std::optional<Label> first_prediction = std::nullopt)
        : routing_(std::move(tree)), known_(routing_.tree().num_vertices()),
          first_prediction_(std::move(first_prediction)) {}

    std::optional<Label> predict(Vertex v) {
        if (pending_)
            throw ProtocolError("predict(" + std::to_string(v) + ") while query " + std::to_string(pending_->vertex) +
                                " awaits its reveal");
        if (v >= known_.size())
            throw InputError("vertex " + std::to_string(v) + " out of range");

        Entry e;
        e.index = transcript_.size();
        e.vertex = v;
        e.counted = !transcript_.empty();
        if (known_[v]) {
            e.predicted = known_[v];
        } else if (transcript_.empty()) {
            e.predicted = first_prediction_;
        } else {
            RouteResult r = routing_.route_request(v);
            e.predicted = known_[r.target];
            e.path_index = r.log_index;
            e.path_target = r.target;
            e.path_length = r.path_length;
        }
        pending_ = std::move(e);
        return pending_->predicted;
    }

    /// Returns true iff the pending prediction was a counted mistake.
    bool reveal(Vertex v, const Label &truth) {
        if (!pending_)
            throw ProtocolError("reveal(" + std::to_string(v) + ") without a pending query");
        if (pending_->vertex != v)
            throw ProtocolError("reveal(" + std::to_string(v) + ") but the pending query is " +
                                std::to_string(pending_->vertex));
        if (known_[v] && !(*known_[v] == truth))
            throw ProtocolError("vertex " + std::to_string(v) + " revealed with a different label than before");

        Entry e = std::move(*pending_);
        pending_.reset();
        e.revealed = truth;
        e.mistake = e.counted && !(e.predicted && *e.predicted == truth);
        if (e.mistake)
            ++mistakes_;
        known_[v] = truth;
        routing_.add_terminal(v);
        transcript_.push_back(std::move(e));
        return transcript_.back().mistake;
    }

    [[nodiscard]] std::size_t mistakes() const { return mistakes_; }
    [[nodiscard]] const std::vector<Entry> &transcript() const { return transcript_; }
    [[nodiscard]] const RoutingState &routing() const { return routing_; }
    [[nodiscard]] bool has_pending() const { return pending_.has_value(); }
    [[nodiscard]] const std::optional<Label> &known(Vertex v) const { return known_.at(v); }

private:
    RoutingState routing_;
    std::vector<std::optional<Label>> known_;
    std::optional<Label> first_prediction_;
    std::optional<Entry> pending_;
    std::vector<Entry> transcript_;
    std::size_t mistakes_ = 0;
};

template <class Label = LabelId>
class BaselineSession {
public:
    BaselineSession(const Graph &g, Label fallback) : graph_(&g), known_(g.num_vertices()), fallback_(fallback) {}

    /// Strict majority among labeled neighbors, else the fallback.
    Label predict(Vertex v) {
        if (pending_)
            throw ProtocolError("predict(" + std::to_string(v) + ") while a query awaits its reveal");
        if (v >= known_.size())
            throw InputError("vertex " + std::to_string(v) + " out of range");
        std::unordered_map<Label, std::size_t> votes;
        for (Vertex w : graph_->neighbors(v))
            if (known_[w])
                ++votes[*known_[w]];
        const Label *best = nullptr;
        std::size_t best_votes = 0;
        bool tied = false;
        for (const auto &[label, count] : votes) {
            if (count > best_votes) {
                best = &label;
                best_votes = count;
                tied = false;
            } else if (count == best_votes) {
                tied = true;
            }
        }
        Label guess = (best && !tied) ? *best : fallback_;
        pending_ = Pending{v, guess};
        return guess;
    }

    bool reveal(Vertex v, const Label &truth) {
        if (!pending_ || pending_->vertex != v)
            throw ProtocolError("reveal(" + std::to_string(v) + ") does not match the pending query");
        const bool mistake = queries_ > 0 && !(pending_->guess == truth);
        pending_.reset();
        ++queries_;
        if (mistake)
            ++mistakes_;
        known_[v] = truth;
        return mistake;
    }

    [[nodiscard]] std::size_t mistakes() const { return mistakes_; }
    [[nodiscard]] std::size_t queries() const { return queries_; }
    [[nodiscard]] const Label &fallback() const { return fallback_; }

private:
    struct Pending {
        Vertex vertex;
        Label guess;
    };

    const Graph *graph_;
    std::vector<std::optional<Label>> known_;
    Label fallback_;
    std::optional<Pending> pending_;
    std::size_t queries_ = 0;
    std::size_t mistakes_ = 0;
};

} // namespace cutroute

#endif // CUTROUTE_PREDICTOR_HPP
