#ifndef CUTROUTE_ORDERS_HPP
#define CUTROUTE_ORDERS_HPP

// Query orders, including the two adversarial ones: the halving adversary on
// lines and odd-first (every other vertex before the rest).

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "random.hpp"

namespace cutroute {

enum class OrderKind { natural, random, midpoint, odd_first, custom };

inline std::string_view to_string(OrderKind k) {
    switch (k) {
    case OrderKind::natural: return "natural";
    case OrderKind::random: return "random";
    case OrderKind::midpoint: return "midpoint";
    case OrderKind::odd_first: return "odd-first";
    case OrderKind::custom: return "custom";
    }
    return "?";
}

inline OrderKind parse_order_kind(std::string_view s) {
    if (s == "natural") return OrderKind::natural;
    if (s == "random") return OrderKind::random;
    if (s == "midpoint") return OrderKind::midpoint;
    if (s == "odd-first" || s == "odd_first") return OrderKind::odd_first;
    if (s == "custom" || s.starts_with("file:")) return OrderKind::custom;
    throw InputError("unknown order '" + std::string(s) + "' (expected natural, random, midpoint, odd-first or file:PATH)");
}

struct QueryOrder {
    OrderKind kind = OrderKind::natural;
    std::vector<Vertex> sequence; // a permutation of the vertices, or a prefix of one
};

/// Throws InputError if a vertex repeats or is out of range.
inline void validate_order(const std::vector<Vertex> &seq, std::size_t n) {
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const Vertex v = seq[i];
        if (v >= n)
            throw InputError("query order: vertex " + std::to_string(v) + " at position " + std::to_string(i) +
                             " is out of range");
        if (seen[v])
            throw InputError("query order: vertex " + std::to_string(v) + " appears twice");
        seen[v] = 1;
    }
}

inline QueryOrder natural_order(std::size_t n) {
    QueryOrder o{OrderKind::natural, std::vector<Vertex>(n)};
    std::iota(o.sequence.begin(), o.sequence.end(), Vertex{0});
    return o;
}

inline QueryOrder random_order(std::size_t n, std::uint64_t seed) {
    QueryOrder o = natural_order(n);
    o.kind = OrderKind::random;
    Rng rng(seed);
    rng.shuffle(std::span<Vertex>(o.sequence));
    return o;
}

/// 1, 3, 5, ... then 0, 2, 4, ...
inline QueryOrder odd_first_order(std::size_t n) {
    QueryOrder o{OrderKind::odd_first, {}};
    o.sequence.reserve(n);
    for (std::size_t v = 1; v < n; v += 2)
        o.sequence.push_back(static_cast<Vertex>(v));
    for (std::size_t v = 0; v < n; v += 2)
        o.sequence.push_back(static_cast<Vertex>(v));
    return o;
}

inline bool is_line(const Graph &g) {
    const std::size_t n = g.num_vertices();
    if (g.num_edges() + 1 != n)
        return false;
    for (Vertex v = 0; v + 1 < n; ++v)
        if (!g.has_edge(v, v + 1))
            return false;
    return true;
}

/// The halving adversary on the line 0-1-...-(n-1): both endpoints, then
/// repeatedly the midpoint of the interval whose end labels (as revealed so
/// far) differ. It stops once that interval is a single edge or its ends
/// agree, so the result is usually a prefix, not a permutation.
inline QueryOrder midpoint_attack_order(const Graph &g, const Labeling &l) {
    if (!is_line(g))
        throw InputError("midpoint order needs a line instance with edges (i, i+1)");
    const std::size_t n = g.num_vertices();
    QueryOrder o{OrderKind::midpoint, {0}};
    if (n == 1)
        return o;
    Vertex lo = 0, hi = static_cast<Vertex>(n - 1);
    o.sequence.push_back(hi);
    while (hi - lo > 1 && l.label(lo) != l.label(hi)) {
        const Vertex mid = lo + (hi - lo) / 2;
        o.sequence.push_back(mid);
        if (l.label(mid) == l.label(lo))
            lo = mid;
        else
            hi = mid;
    }
    return o;
}

inline QueryOrder custom_order(std::vector<Vertex> seq, std::size_t n) {
    validate_order(seq, n);
    return QueryOrder{OrderKind::custom, std::move(seq)};
}

/// Whitespace-separated vertex ids; '#' starts a comment line.
inline std::vector<Vertex> parse_order_text(std::string_view text) {
    std::vector<Vertex> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                ++i;
        } else if (c >= '0' && c <= '9') {
            std::uint64_t v = 0;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
                if (v > UINT32_MAX)
                    throw InputError("query order: vertex id too large");
                ++i;
            }
            out.push_back(static_cast<Vertex>(v));
        } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',') {
            ++i;
        } else {
            throw InputError(std::string("query order: unexpected character '") + c + "'");
        }
    }
    return out;
}

/// Builds the order of a given kind. `custom` must be supplied for
/// OrderKind::custom and is ignored otherwise.
inline QueryOrder make_order(OrderKind kind, const Graph &g, const Labeling &l, std::uint64_t seed,
                             const std::vector<Vertex> &custom = {}) {
    const std::size_t n = g.num_vertices();
    switch (kind) {
    case OrderKind::natural: return natural_order(n);
    case OrderKind::random: return random_order(n, seed);
    case OrderKind::midpoint: return midpoint_attack_order(g, l);
    case OrderKind::odd_first: return odd_first_order(n);
    case OrderKind::custom: return custom_order(custom, n);
    }
    throw InputError("unknown order kind");
}

} // namespace cutroute

#endif // CUTROUTE_ORDERS_HPP
