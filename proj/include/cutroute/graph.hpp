#ifndef CUTROUTE_GRAPH_HPP
#define CUTROUTE_GRAPH_HPP

/**
 * Graphs, labelings and cuts.
 *
 * A Graph is an undirected, connected, simple graph over dense vertex ids
 * 0..n-1. A Labeling assigns every vertex an opaque string token; tokens are
 * interned to LabelId in order of first appearance (vertex 0 first), which is
 * also the "label-set order" used for defaults such as the baseline fallback.
 *
 * Both types are immutable after construction.
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "errors.hpp"

namespace cutroute {

using Vertex = std::uint32_t;
using LabelId = std::uint32_t;

struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    [[nodiscard]] Edge normalized() const { return u < v ? Edge{u, v} : Edge{v, u}; }
    [[nodiscard]] Edge reversed() const { return Edge{v, u}; }
    [[nodiscard]] bool same_undirected(const Edge &o) const { return normalized() == o.normalized(); }

    friend bool operator==(const Edge &, const Edge &) = default;
    friend auto operator<=>(const Edge &, const Edge &) = default;
};

inline std::ostream &operator<<(std::ostream &os, const Edge &e) {
    return os << '(' << e.u << ',' << e.v << ')';
}

// Key for an undirected edge, usable in hash containers.
inline std::uint64_t edge_key(const Edge &e) {
    const Edge n = e.normalized();
    return (static_cast<std::uint64_t>(n.u) << 32) | n.v;
}

class Graph {
public:
    Graph() = default;

    /// Validates and builds. Throws InputError on self-loops, duplicate
    /// edges, out-of-range endpoints or a disconnected result.
    Graph(std::size_t n, const std::vector<Edge> &edges) : n_(n), adjacency_(n) {
        if (n == 0)
            throw InputError("graph must have at least one vertex");
        if (n > std::numeric_limits<Vertex>::max())
            throw InputError("too many vertices");
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(edges.size() * 2);
        edges_.reserve(edges.size());
        for (const Edge &raw : edges) {
            if (raw.u >= n || raw.v >= n) {
                std::ostringstream msg;
                msg << "edge " << raw << " has an endpoint outside 0.." << n - 1;
                throw InputError(msg.str());
            }
            if (raw.u == raw.v)
                throw InputError("self-loop at vertex " + std::to_string(raw.u));
            const Edge e = raw.normalized();
            if (!seen.insert(edge_key(e)).second) {
                std::ostringstream msg;
                msg << "duplicate edge " << e;
                throw InputError(msg.str());
            }
            edges_.push_back(e);
            adjacency_[e.u].push_back(e.v);
            adjacency_[e.v].push_back(e.u);
        }
        for (auto &nbrs : adjacency_)
            std::sort(nbrs.begin(), nbrs.end());
        if (auto stray = first_unreachable())
            throw InputError("graph is disconnected: vertex " + std::to_string(*stray) +
                             " is unreachable from vertex 0");
    }

    [[nodiscard]] std::size_t num_vertices() const { return n_; }
    [[nodiscard]] std::size_t num_edges() const { return edges_.size(); }
    [[nodiscard]] const std::vector<Edge> &edges() const { return edges_; }

    /// Neighbors in ascending id order.
    [[nodiscard]] const std::vector<Vertex> &neighbors(Vertex v) const { return adjacency_.at(v); }

    [[nodiscard]] bool has_edge(Vertex u, Vertex v) const {
        if (u >= n_ || v >= n_)
            return false;
        const auto &nbrs = adjacency_[u];
        return std::binary_search(nbrs.begin(), nbrs.end(), v);
    }

    friend bool operator==(const Graph &a, const Graph &b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::optional<Vertex> first_unreachable() const {
        std::vector<char> seen(n_, 0);
        std::vector<Vertex> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : adjacency_[u]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        for (Vertex v = 0; v < n_; ++v)
            if (!seen[v])
                return v;
        return std::nullopt;
    }

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
};

/// Interned label tokens, in order of first appearance.
class LabelSet {
public:
    LabelId intern(const std::string &token) {
        auto [it, inserted] = ids_.try_emplace(token, static_cast<LabelId>(tokens_.size()));
        if (inserted)
            tokens_.push_back(token);
        return it->second;
    }

    [[nodiscard]] std::optional<LabelId> find(const std::string &token) const {
        auto it = ids_.find(token);
        if (it == ids_.end())
            return std::nullopt;
        return it->second;
    }

    [[nodiscard]] const std::string &token(LabelId id) const { return tokens_.at(id); }
    [[nodiscard]] const std::vector<std::string> &tokens() const { return tokens_; }
    [[nodiscard]] std::size_t size() const { return tokens_.size(); }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, LabelId> ids_;
};

class Labeling {
public:
    Labeling() = default;

    explicit Labeling(const std::vector<std::string> &tokens) {
        ids_.reserve(tokens.size());
        for (std::size_t v = 0; v < tokens.size(); ++v) {
            const std::string &t = tokens[v];
            // '#' would read back as a comment line
            if (t.empty() || t.front() == '#' || t.find_first_of(" \t\r\n") != std::string::npos)
                throw InputError("invalid label token for vertex " + std::to_string(v) +
                                 ": tokens must be non-empty, whitespace-free and not start with '#'");
            ids_.push_back(set_.intern(t));
        }
    }

    [[nodiscard]] std::size_t size() const { return ids_.size(); }
    [[nodiscard]] LabelId label(Vertex v) const { return ids_.at(v); }
    [[nodiscard]] const std::string &token(Vertex v) const { return set_.token(ids_.at(v)); }
    [[nodiscard]] const std::vector<LabelId> &ids() const { return ids_; }
    [[nodiscard]] const LabelSet &label_set() const { return set_; }
    [[nodiscard]] std::size_t arity() const { return set_.size(); }

    [[nodiscard]] std::vector<std::string> tokens() const {
        std::vector<std::string> out;
        out.reserve(ids_.size());
        for (LabelId id : ids_)
            out.push_back(set_.token(id));
        return out;
    }

    friend bool operator==(const Labeling &a, const Labeling &b) { return a.tokens() == b.tokens(); }

private:
    std::vector<LabelId> ids_;
    LabelSet set_;
};

/// The edges whose endpoints carry different labels.
class CutSet {
public:
    CutSet() = default;
    explicit CutSet(std::vector<Edge> edges) : edges_(std::move(edges)) {
        keys_.reserve(edges_.size() * 2);
        for (const Edge &e : edges_)
            keys_.insert(edge_key(e));
    }

    [[nodiscard]] std::size_t size() const { return edges_.size(); }
    [[nodiscard]] const std::vector<Edge> &edges() const { return edges_; }
    [[nodiscard]] bool contains(const Edge &e) const { return keys_.count(edge_key(e)) != 0; }

private:
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> keys_;
};

inline CutSet cut_size(const Graph &g, const Labeling &l) {
    if (l.size() != g.num_vertices())
        throw InputError("labeling covers " + std::to_string(l.size()) + " vertices, graph has " +
                         std::to_string(g.num_vertices()));
    std::vector<Edge> cut;
    for (const Edge &e : g.edges())
        if (l.label(e.u) != l.label(e.v))
            cut.push_back(e);
    return CutSet(std::move(cut));
}

/// Renames every token through `rename`, which must be a bijection on the
/// labeling's label set.
inline Labeling relabel(const Labeling &l, const std::map<std::string, std::string> &rename) {
    std::unordered_set<std::string> images;
    for (const std::string &t : l.label_set().tokens()) {
        auto it = rename.find(t);
        if (it == rename.end())
            throw InputError("relabel map has no image for token '" + t + "'");
        if (!images.insert(it->second).second)
            throw InputError("relabel map is not injective: '" + it->second + "' is hit twice");
    }
    std::vector<std::string> renamed;
    renamed.reserve(l.size());
    for (Vertex v = 0; v < l.size(); ++v)
        renamed.push_back(rename.at(l.token(v)));
    return Labeling(renamed);
}

namespace detail {

inline bool is_skippable(std::string_view line) {
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string_view::npos || line[first] == '#';
}

inline std::string line_context(std::size_t lineno) { return "line " + std::to_string(lineno) + ": "; }

// Reads exactly `count` unsigned integers from `line`; nullopt on junk.
inline std::optional<std::vector<std::uint64_t>> parse_uints(const std::string &line, std::size_t count) {
    std::istringstream in(line);
    std::vector<std::uint64_t> out;
    std::string word;
    while (in >> word) {
        if (word.find_first_not_of("0123456789") != std::string::npos || word.size() > 19)
            return std::nullopt;
        out.push_back(std::stoull(word));
    }
    if (out.size() != count)
        return std::nullopt;
    return out;
}

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace detail

/// Parses the edge-list format: header "n m", then m lines "u v" with
/// 0 <= u < v < n. Lines starting with '#' and blank lines are skipped.
inline Graph load_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> n, m;
    std::vector<Edge> edges;
    std::unordered_set<std::uint64_t> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::is_skippable(line))
            continue;
        const auto nums = detail::parse_uints(line, 2);
        if (!nums)
            throw InputError(detail::line_context(lineno) + "expected two non-negative integers, got '" + line + "'");
        if (!n) {
            n = (*nums)[0];
            m = (*nums)[1];
            continue;
        }
        if (edges.size() == *m)
            throw InputError(detail::line_context(lineno) + "more edge lines than the declared m = " + std::to_string(*m));
        const auto u = (*nums)[0], v = (*nums)[1];
        if (u >= *n || v >= *n)
            throw InputError(detail::line_context(lineno) + "vertex out of range 0.." + std::to_string(*n - 1));
        if (u == v)
            throw InputError(detail::line_context(lineno) + "self-loop at vertex " + std::to_string(u));
        if (u > v)
            throw InputError(detail::line_context(lineno) + "edge endpoints must satisfy u < v");
        const Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
        if (!seen.insert(edge_key(e)).second)
            throw InputError(detail::line_context(lineno) + "duplicate edge (" + std::to_string(u) + "," +
                             std::to_string(v) + ")");
        edges.push_back(e);
    }
    if (!n)
        throw InputError("missing header line 'n m'");
    if (edges.size() != *m)
        throw InputError("declared " + std::to_string(*m) + " edges but found " + std::to_string(edges.size()));
    return Graph(*n, edges);
}

inline Graph load_graph_file(const std::string &path) { return load_graph(detail::read_file(path)); }

/// Writes the edge-list format. Each line of `comment` becomes a '#' line.
inline std::string serialize_graph(const Graph &g, const std::string &comment = {}) {
    std::ostringstream out;
    if (!comment.empty()) {
        std::istringstream lines(comment);
        std::string line;
        while (std::getline(lines, line))
            out << "# " << line << '\n';
    }
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const Edge &e : g.edges())
        out << e.u << ' ' << e.v << '\n';
    return out.str();
}

/// One token per line, vertex i on the i-th non-comment line.
inline Labeling load_labels(std::string_view text, std::size_t n) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string> tokens;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::is_skippable(line))
            continue;
        std::istringstream words(line);
        std::string token, extra;
        words >> token;
        if (words >> extra)
            throw InputError(detail::line_context(lineno) + "expected a single label token, got '" + line + "'");
        tokens.push_back(token);
    }
    if (tokens.size() != n)
        throw InputError("labels file has " + std::to_string(tokens.size()) + " labels, graph has " +
                         std::to_string(n) + " vertices");
    return Labeling(tokens);
}

inline Labeling load_labels_file(const std::string &path, std::size_t n) {
    return load_labels(detail::read_file(path), n);
}

inline std::string serialize_labels(const Labeling &l, const std::string &comment = {}) {
    std::ostringstream out;
    if (!comment.empty()) {
        std::istringstream lines(comment);
        std::string line;
        while (std::getline(lines, line))
            out << "# " << line << '\n';
    }
    for (Vertex v = 0; v < l.size(); ++v)
        out << l.token(v) << '\n';
    return out.str();
}

} // namespace cutroute

#endif // CUTROUTE_GRAPH_HPP
