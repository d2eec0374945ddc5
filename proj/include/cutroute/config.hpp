#ifndef CUTROUTE_CONFIG_HPP
#define CUTROUTE_CONFIG_HPP

// The run configuration shared by every CLI subcommand. A config file uses
// the same JSON schema that reports embed under "config"; missing fields keep
// their defaults and CLI flags override fields one-for-one.

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "instances.hpp"
#include "orders.hpp"
#include "spanning_tree.hpp"
#include "sweep.hpp"

namespace cutroute {

struct RunConfig {
    std::string graph;
    std::string labels;
    std::string order = "natural"; // natural | random | midpoint | odd-first | file:PATH
    std::string tree = "bfs";
    Vertex root = 0;
    std::uint64_t seed = 1;
    std::string out;
    std::size_t jobs = 1;
    double c_cal = 4.0;
    std::optional<std::string> fallback;
    std::optional<std::string> first_prediction;
    InstanceSpec instance;
    SweepGrid sweep;
    nlohmann::json calibration = nullptr; // written by `calibrate`, echoed untouched
};

namespace detail {

template <class T>
void read_field(const nlohmann::json &j, const char *key, T &dst) {
    if (j.contains(key) && !j.at(key).is_null())
        dst = j.at(key).get<T>();
}

template <class T>
void read_optional(const nlohmann::json &j, const char *key, std::optional<T> &dst) {
    if (j.contains(key))
        dst = j.at(key).is_null() ? std::nullopt : std::optional<T>(j.at(key).get<T>());
}

} // namespace detail

inline nlohmann::json to_json(const InstanceSpec &s) {
    return {{"family", to_string(s.family)},
            {"n", s.n},
            {"width", s.width},
            {"height", s.height},
            {"p", s.p},
            {"seed", s.seed},
            {"labeling", to_string(s.labeling)},
            {"k", s.k},
            {"target_cut", s.target_cut},
            {"arity", s.arity}};
}

inline InstanceSpec instance_from_json(const nlohmann::json &j, InstanceSpec s = {}) {
    std::string family(to_string(s.family)), labeling(to_string(s.labeling));
    detail::read_field(j, "family", family);
    detail::read_field(j, "labeling", labeling);
    s.family = parse_family(family);
    s.labeling = parse_labeling_rule(labeling);
    detail::read_field(j, "n", s.n);
    detail::read_field(j, "width", s.width);
    detail::read_field(j, "height", s.height);
    detail::read_field(j, "p", s.p);
    detail::read_field(j, "seed", s.seed);
    detail::read_field(j, "k", s.k);
    detail::read_field(j, "target_cut", s.target_cut);
    detail::read_field(j, "arity", s.arity);
    return s;
}

inline nlohmann::json to_json(const SweepGrid &g) {
    nlohmann::json families = nlohmann::json::array(), orders = nlohmann::json::array();
    for (Family f : g.families)
        families.push_back(to_string(f));
    for (OrderKind o : g.orders)
        orders.push_back(to_string(o));
    return {{"families", families}, {"ns", g.ns},         {"orders", orders},
            {"seeds", g.seeds},     {"first_seed", g.first_seed}, {"labeling", to_string(g.labeling)},
            {"arity", g.arity},     {"k", g.k},           {"target_cut", g.target_cut},
            {"p", g.p},             {"tree", to_string(g.tree)}};
}

inline SweepGrid sweep_from_json(const nlohmann::json &j, SweepGrid g = {}) {
    if (j.contains("families")) {
        g.families.clear();
        for (const auto &f : j.at("families"))
            g.families.push_back(parse_family(f.get<std::string>()));
    }
    if (j.contains("orders")) {
        g.orders.clear();
        for (const auto &o : j.at("orders"))
            g.orders.push_back(parse_order_kind(o.get<std::string>()));
    }
    detail::read_field(j, "ns", g.ns);
    detail::read_field(j, "seeds", g.seeds);
    detail::read_field(j, "first_seed", g.first_seed);
    detail::read_field(j, "arity", g.arity);
    detail::read_field(j, "k", g.k);
    detail::read_field(j, "target_cut", g.target_cut);
    detail::read_field(j, "p", g.p);
    if (j.contains("labeling"))
        g.labeling = parse_labeling_rule(j.at("labeling").get<std::string>());
    if (j.contains("tree"))
        g.tree = parse_tree_strategy(j.at("tree").get<std::string>());
    return g;
}

inline nlohmann::json to_json(const RunConfig &c) {
    nlohmann::json j{{"graph", c.graph},
                     {"labels", c.labels},
                     {"order", c.order},
                     {"tree", c.tree},
                     {"root", c.root},
                     {"seed", c.seed},
                     {"out", c.out},
                     {"jobs", c.jobs},
                     {"c_cal", c.c_cal},
                     {"fallback", nullptr},
                     {"first_prediction", nullptr},
                     {"instance", to_json(c.instance)},
                     {"sweep", to_json(c.sweep)}};
    if (c.fallback)
        j["fallback"] = *c.fallback;
    if (c.first_prediction)
        j["first_prediction"] = *c.first_prediction;
    if (!c.calibration.is_null())
        j["calibration"] = c.calibration;
    return j;
}

inline RunConfig config_from_json(const nlohmann::json &j) {
    if (!j.is_object())
        throw InputError("config must be a JSON object");
    RunConfig c;
    try {
        detail::read_field(j, "graph", c.graph);
        detail::read_field(j, "labels", c.labels);
        detail::read_field(j, "order", c.order);
        detail::read_field(j, "tree", c.tree);
        detail::read_field(j, "root", c.root);
        detail::read_field(j, "seed", c.seed);
        detail::read_field(j, "out", c.out);
        detail::read_field(j, "jobs", c.jobs);
        detail::read_field(j, "c_cal", c.c_cal);
        detail::read_optional(j, "fallback", c.fallback);
        detail::read_optional(j, "first_prediction", c.first_prediction);
        if (j.contains("instance"))
            c.instance = instance_from_json(j.at("instance"));
        if (j.contains("sweep"))
            c.sweep = sweep_from_json(j.at("sweep"));
        if (j.contains("calibration"))
            c.calibration = j.at("calibration");
    } catch (const nlohmann::json::exception &ex) {
        throw InputError(std::string("config: ") + ex.what());
    }
    parse_tree_strategy(c.tree);
    parse_order_kind(c.order);
    return c;
}

inline RunConfig load_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open config " + path);
    try {
        return config_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception &ex) {
        throw InputError("config " + path + ": " + ex.what());
    }
}

} // namespace cutroute

#endif // CUTROUTE_CONFIG_HPP
