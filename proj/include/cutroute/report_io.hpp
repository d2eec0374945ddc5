#ifndef CUTROUTE_REPORT_IO_HPP
#define CUTROUTE_REPORT_IO_HPP

// JSON / JSON-lines / CSV serialization of reports, transcripts and path logs.

#include <cstdio>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "experiment.hpp"
#include "predictor.hpp"
#include "routing.hpp"

namespace cutroute {

using nlohmann::json;

inline json to_json(const ExperimentReport &r) {
    return json{
        {"instance", r.instance},
        {"family", r.family},
        {"n", r.n},
        {"m", r.m},
        {"arity", r.arity},
        {"cut_size", r.cut_size},
        {"queries", r.queries},
        {"mistakes", r.mistakes},
        {"max_congestion", r.max_congestion},
        {"recounted_max_congestion", r.recounted_max_congestion},
        {"bound", r.bound},
        {"bound_satisfied", r.bound_satisfied},
        {"charging_witness_found", r.charging_witness_found},
        {"prefix_bound_held", r.prefix_bound_held},
        {"oracle_equivalent", r.oracle_equivalent},
        {"max_charges", r.max_charges},
        {"runtime_ms", r.runtime_ms},
        {"seed", r.seed},
        {"order_kind", r.order_kind},
        {"tree", r.tree},
        {"root", r.root},
        {"problems", r.problems},
    };
}

template <class Label, class TokenOf>
json transcript_record(const TranscriptEntry<Label> &e, TokenOf token_of) {
    json j{{"index", e.index},
           {"vertex", e.vertex},
           {"predicted", nullptr},
           {"revealed", token_of(e.revealed)},
           {"counted", e.counted},
           {"mistake", e.mistake},
           {"path_target", nullptr},
           {"path_length", nullptr},
           {"path_index", nullptr}};
    if (e.predicted)
        j["predicted"] = token_of(*e.predicted);
    if (e.path_target)
        j["path_target"] = *e.path_target;
    if (e.path_length)
        j["path_length"] = *e.path_length;
    if (e.path_index)
        j["path_index"] = *e.path_index;
    return j;
}

/// One JSON object per line, in query order.
template <class Label, class TokenOf>
std::string transcript_jsonl(const std::vector<TranscriptEntry<Label>> &transcript, TokenOf token_of) {
    std::string out;
    for (const auto &e : transcript) {
        out += transcript_record(e, token_of).dump();
        out += '\n';
    }
    return out;
}

inline std::string path_log_jsonl(const std::vector<PathRecord> &log) {
    std::string out;
    for (std::size_t i = 0; i < log.size(); ++i) {
        json edges = json::array();
        for (const Edge &e : log[i].edges)
            edges.push_back({e.u, e.v});
        out += json{{"index", i}, {"request", log[i].request}, {"target", log[i].target}, {"edges", edges}}.dump();
        out += '\n';
    }
    return out;
}

namespace detail {

template <class F>
void for_each_json_line(std::string_view text, const char *what, F f) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            f(json::parse(line));
        } catch (const json::exception &ex) {
            throw InputError(std::string(what) + " line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
}

template <class T>
std::optional<T> opt_field(const json &j, const char *key) {
    if (!j.contains(key) || j.at(key).is_null())
        return std::nullopt;
    return j.at(key).get<T>();
}

} // namespace detail

inline std::vector<TranscriptEntry<std::string>> parse_transcript_jsonl(std::string_view text) {
    std::vector<TranscriptEntry<std::string>> out;
    detail::for_each_json_line(text, "transcript", [&out](const json &j) {
        TranscriptEntry<std::string> e;
        e.index = j.at("index").get<std::size_t>();
        e.vertex = j.at("vertex").get<Vertex>();
        e.predicted = detail::opt_field<std::string>(j, "predicted");
        e.revealed = j.at("revealed").get<std::string>();
        e.counted = j.at("counted").get<bool>();
        e.mistake = j.at("mistake").get<bool>();
        e.path_target = detail::opt_field<Vertex>(j, "path_target");
        e.path_length = detail::opt_field<std::size_t>(j, "path_length");
        e.path_index = detail::opt_field<std::size_t>(j, "path_index");
        out.push_back(std::move(e));
    });
    return out;
}

inline std::vector<PathRecord> parse_path_log_jsonl(std::string_view text) {
    std::vector<PathRecord> out;
    detail::for_each_json_line(text, "path log", [&out](const json &j) {
        if (j.at("index").get<std::size_t>() != out.size())
            throw InputError("path log: records must be numbered 0, 1, 2, ... in order");
        PathRecord p;
        p.request = j.at("request").get<Vertex>();
        p.target = j.at("target").get<Vertex>();
        for (const auto &e : j.at("edges"))
            p.edges.push_back(Edge{e.at(0).get<Vertex>(), e.at(1).get<Vertex>()});
        out.push_back(std::move(p));
    });
    return out;
}

inline constexpr std::string_view kCsvHeader =
    "family,n,m,cut,mistakes,max_congestion,bound,satisfied,seed,order_kind,runtime_ms";

inline std::string csv_row(const ExperimentReport &r) {
    std::ostringstream out;
    out << r.family << ',' << r.n << ',' << r.m << ',' << r.cut_size << ',' << r.mistakes << ',' << r.max_congestion
        << ',' << r.bound << ',' << (r.satisfied() ? "true" : "false") << ',' << r.seed << ',' << r.order_kind << ','
        << std::fixed << std::setprecision(3) << r.runtime_ms;
    return out.str();
}

} // namespace cutroute

#endif // CUTROUTE_REPORT_IO_HPP
