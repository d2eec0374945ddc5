#ifndef CUTROUTE_VERIFY_HPP
#define CUTROUTE_VERIFY_HPP

/**
 * Independent re-verification of a finished prediction session.
 *
 * Nothing here trusts the routing ledger. Congestion is recounted from the
 * path log keyed by undirected edge, mistakes are recounted from the
 * transcript, and every mistake is charged to the first cut edge on its path
 * (request side first). The run is certified when
 *
 *   mistakes <= recounted max congestion * |cut|
 *
 * and every mistake found a cut edge, with no cut edge charged more often
 * than the recounted max congestion.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "graph.hpp"
#include "predictor.hpp"
#include "routing.hpp"

namespace cutroute {

struct CongestionRecount {
    std::unordered_map<std::uint64_t, std::uint32_t> per_edge; // keyed by edge_key
    std::uint32_t max = 0;
};

inline CongestionRecount recount_congestion(const std::vector<PathRecord> &log) {
    CongestionRecount rc;
    for (const PathRecord &p : log)
        for (const Edge &e : p.edges)
            rc.max = std::max(rc.max, ++rc.per_edge[edge_key(e)]);
    return rc;
}

struct MistakeBoundCheck {
    bool bound_satisfied = false;
    bool charging_witness_found = false;
    std::size_t mistakes = 0;
    std::uint32_t recounted_max_congestion = 0;
    std::size_t cut_size = 0;
    std::size_t bound = 0;
    std::uint32_t max_charges = 0; // most mistakes charged to a single cut edge
    std::vector<std::string> problems;

    [[nodiscard]] bool ok() const { return bound_satisfied && charging_witness_found; }
};

template <class Label>
MistakeBoundCheck verify_mistake_bound(const std::vector<TranscriptEntry<Label>> &transcript,
                              const std::vector<PathRecord> &log, const CutSet &cut) {
    MistakeBoundCheck out;
    const CongestionRecount rc = recount_congestion(log);
    out.recounted_max_congestion = rc.max;
    out.cut_size = cut.size();

    std::unordered_map<std::uint64_t, std::uint32_t> charges;
    bool witness = true;
    for (const auto &e : transcript) {
        const bool wrong = !(e.predicted && *e.predicted == e.revealed);
        const bool mistake = e.counted && wrong;
        if (mistake != e.mistake) {
            std::ostringstream msg;
            msg << "query " << e.index << ": mistake flag says " << e.mistake << " but prediction vs truth says "
                << mistake;
            out.problems.push_back(msg.str());
        }
        if (!mistake)
            continue;
        ++out.mistakes;
        if (!e.path_index || *e.path_index >= log.size()) {
            out.problems.push_back("query " + std::to_string(e.index) + ": counted mistake has no routed path");
            witness = false;
            continue;
        }
        const PathRecord &path = log[*e.path_index];
        auto hit = std::find_if(path.edges.begin(), path.edges.end(),
                                [&cut](const Edge &edge) { return cut.contains(edge); });
        if (hit == path.edges.end()) {
            out.problems.push_back("query " + std::to_string(e.index) +
                                   ": mistake path crosses no cut edge (routing or labels are inconsistent)");
            witness = false;
            continue;
        }
        out.max_charges = std::max(out.max_charges, ++charges[edge_key(*hit)]);
    }
    if (witness && out.max_charges > out.recounted_max_congestion) {
        out.problems.push_back("a cut edge is charged " + std::to_string(out.max_charges) +
                               " times, above the recounted congestion " +
                               std::to_string(out.recounted_max_congestion));
        witness = false;
    }
    out.charging_witness_found = witness;
    out.bound = static_cast<std::size_t>(out.recounted_max_congestion) * out.cut_size;
    out.bound_satisfied = out.mistakes <= out.bound;
    if (!out.bound_satisfied)
        out.problems.push_back("mistakes " + std::to_string(out.mistakes) + " exceed bound " +
                               std::to_string(out.bound));
    return out;
}

/**
 * Structural audit of exported artifacts against the instance they claim to
 * come from. Each failed check adds a line naming it:
 *  - revealed-label: revealed labels match the labeling,
 *  - path-shape: paths are contiguous graph walks from request to target,
 *  - path-causality: targets were revealed before the request,
 *  - prediction-source: routed predictions equal the target's revealed label,
 *  - path-index: path indices are in range and each path is used once.
 */
template <class Label, class LabelOf>
std::vector<std::string> audit_artifacts(const Graph &g, LabelOf label_of,
                                         const std::vector<TranscriptEntry<Label>> &transcript,
                                         const std::vector<PathRecord> &log) {
    std::vector<std::string> problems;
    auto fail = [&problems](const std::string &check, std::size_t index, const std::string &what) {
        problems.push_back(check + ": query " + std::to_string(index) + ": " + what);
    };
    std::unordered_map<Vertex, Label> revealed;
    std::vector<char> used(log.size(), 0);
    for (const auto &e : transcript) {
        if (e.vertex >= g.num_vertices()) {
            fail("revealed-label", e.index, "vertex out of range");
            continue;
        }
        if (!(e.revealed == label_of(e.vertex)))
            fail("revealed-label", e.index, "revealed label differs from the labels file");
        if (e.path_index) {
            const std::size_t pi = *e.path_index;
            if (pi >= log.size() || used[pi]) {
                fail("path-index", e.index, "path index missing or reused");
            } else {
                used[pi] = 1;
                const PathRecord &p = log[pi];
                if (p.request != e.vertex || (e.path_target && p.target != *e.path_target) ||
                    (e.path_length && p.edges.size() != *e.path_length))
                    fail("path-index", e.index, "path record does not match the transcript entry");
                Vertex at = p.request;
                bool walk = true;
                for (const Edge &edge : p.edges) {
                    if (edge.u != at || !g.has_edge(edge.u, edge.v)) {
                        walk = false;
                        break;
                    }
                    at = edge.v;
                }
                if (!walk || at != p.target)
                    fail("path-shape", e.index, "path is not a walk over graph edges ending at its target");
                auto src = revealed.find(p.target);
                if (src == revealed.end())
                    fail("path-causality", e.index, "target " + std::to_string(p.target) + " was not revealed earlier");
                else if (!(e.predicted && *e.predicted == src->second))
                    fail("prediction-source", e.index, "prediction is not the target's revealed label");
            }
        }
        revealed.emplace(e.vertex, e.revealed);
    }
    return problems;
}

} // namespace cutroute

#endif // CUTROUTE_VERIFY_HPP
