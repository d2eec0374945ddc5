#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <memory>

#include "test_support.hpp"

using namespace cutroute;
namespace tst = cutroute::testing;

namespace {

Graph line(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex v = 0; v + 1 < n; ++v)
        e.push_back({v, v + 1});
    return Graph(n, e);
}

std::shared_ptr<const SpanningTree> bfs_tree(const Graph &g) {
    return std::make_shared<const SpanningTree>(build_spanning_tree(g, TreeStrategy::bfs));
}

std::string p8_label(Vertex v) { return v < 4 ? "+1" : "-1"; }

} // namespace

TEST(Predict, FirstQueryPredictsNothing) {
    PredictionSession<std::string> s(bfs_tree(line(8)));
    EXPECT_FALSE(s.predict(0).has_value());
    EXPECT_FALSE(s.reveal(0, "-1"));
    ASSERT_EQ(s.transcript().size(), 1u);
    EXPECT_FALSE(s.transcript()[0].counted);
    EXPECT_EQ(s.routing().path_log().size(), 0u);
}

TEST(Predict, ForcedFirstPredictionIsStillUncounted) {
    PredictionSession<std::string> s(bfs_tree(line(8)), std::string("+1"));
    EXPECT_EQ(s.predict(4), std::optional<std::string>("+1"));
    EXPECT_FALSE(s.reveal(4, "-1"));
    EXPECT_EQ(s.mistakes(), 0u);
}

// Hand simulation: 7 routes to the only terminal 0 over all seven edges,
// predicts +1, truth is -1. One mistake, congestion 1, cut 1: 1 <= 1 * 1.
TEST(Predict, TwoQuerySessionOnHalfSplitLine) {
    const Graph g = line(8);
    PredictionSession<std::string> s(bfs_tree(g));
    s.predict(0);
    s.reveal(0, p8_label(0));
    EXPECT_EQ(s.predict(7), std::optional<std::string>("+1"));
    EXPECT_TRUE(s.reveal(7, p8_label(7)));
    EXPECT_EQ(s.mistakes(), 1u);
    EXPECT_EQ(s.routing().max_congestion(), 1u);
    const auto &e = s.transcript()[1];
    EXPECT_EQ(e.path_target, std::optional<Vertex>(0));
    EXPECT_EQ(e.path_length, std::optional<std::size_t>(7));
    const Labeling l({"+1", "+1", "+1", "+1", "-1", "-1", "-1", "-1"});
    const std::size_t cut = cut_size(g, l).size();
    EXPECT_EQ(cut, 1u);
    EXPECT_EQ(s.mistakes(), s.routing().max_congestion() * cut);
}

TEST(Predict, KnownVertexAnsweredFromMemory) {
    PredictionSession<std::string> s(bfs_tree(line(8)));
    s.predict(0);
    s.reveal(0, "+1");
    s.predict(7);
    s.reveal(7, "-1");
    const auto paths = s.routing().path_log().size();
    EXPECT_EQ(s.predict(0), std::optional<std::string>("+1"));
    EXPECT_FALSE(s.reveal(0, "+1"));
    EXPECT_EQ(s.routing().path_log().size(), paths);
    EXPECT_TRUE(s.transcript().back().counted);
    EXPECT_FALSE(s.transcript().back().path_index.has_value());
}

TEST(Predict, ProtocolErrors) {
    PredictionSession<std::string> s(bfs_tree(line(4)));
    EXPECT_THROW(s.reveal(0, "a"), ProtocolError);
    s.predict(1);
    EXPECT_THROW(s.predict(2), ProtocolError);
    EXPECT_THROW(s.reveal(2, "a"), ProtocolError);
    s.reveal(1, "a");
    s.predict(1);
    EXPECT_THROW(s.reveal(1, "b"), ProtocolError);
    EXPECT_THROW(PredictionSession<std::string>(bfs_tree(line(4))).predict(9), InputError);
}

TEST(Reveal, FlagsOnlyCountedWrongPredictions) {
    PredictionSession<std::string> s(bfs_tree(line(3)));
    s.predict(0);
    EXPECT_FALSE(s.reveal(0, "+1"));
    s.predict(1);
    EXPECT_FALSE(s.reveal(1, "+1"));
    EXPECT_EQ(s.mistakes(), 0u);
}

TEST(Reveal, ThreeLabelMistake) {
    PredictionSession<std::string> s(bfs_tree(line(3)));
    s.predict(0);
    s.reveal(0, "a");
    s.predict(1);
    s.reveal(1, "b");
    EXPECT_EQ(s.predict(2), std::optional<std::string>("b"));
    EXPECT_TRUE(s.reveal(2, "c"));
    EXPECT_EQ(s.mistakes(), 2u);
}

TEST(Baseline, NoLabeledNeighborsUsesFallback) {
    const Graph g = line(5);
    BaselineSession<std::string> b(g, "fb");
    EXPECT_EQ(b.predict(2), "fb");
}

TEST(Baseline, StrictMajorityAndTies) {
    const Graph star = load_graph("5 4\n0 1\n0 2\n0 3\n0 4\n");
    BaselineSession<std::string> b(star, "fb");
    for (auto [v, l] : {std::pair<Vertex, std::string>{1, "+1"}, {2, "+1"}, {3, "-1"}}) {
        b.predict(v);
        b.reveal(v, l);
    }
    EXPECT_EQ(b.predict(0), "+1");
    b.reveal(0, "+1");

    BaselineSession<std::string> tie(star, "fb");
    for (auto [v, l] : {std::pair<Vertex, std::string>{1, "+1"}, {2, "-1"}}) {
        tie.predict(v);
        tie.reveal(v, l);
    }
    EXPECT_EQ(tie.predict(0), "fb");
}

// Odd vertices of a path are pairwise non-adjacent, so every odd query sees no
// labeled neighbor and gets the fallback; with fallback +1 each odd vertex in
// the -1 half is a mistake.
TEST(Baseline, OddFirstOrderForcesLinearMistakes) {
    for (std::size_t n : {8u, 16u, 64u, 100u, 1024u}) {
        const Graph g = line(n);
        const Labeling l = generate_instance(InstanceSpec{Family::line, n}).labeling;
        BaselineSession<std::string> b(g, "+1");
        for (Vertex v : odd_first_order(n).sequence) {
            b.predict(v);
            b.reveal(v, l.token(v));
        }
        const auto floor_target = static_cast<std::size_t>(std::ceil(static_cast<double>(n) / 4.0)) - 1;
        EXPECT_GE(b.mistakes(), floor_target) << "n=" << n;
    }
}

TEST(Baseline, ProtocolErrors) {
    const Graph g = line(3);
    BaselineSession<std::string> b(g, "x");
    EXPECT_THROW(b.reveal(0, "x"), ProtocolError);
    b.predict(0);
    EXPECT_THROW(b.predict(1), ProtocolError);
    EXPECT_THROW(b.reveal(1, "x"), ProtocolError);
}

namespace {

PredictionSession<std::string> play(const Graph &g, const Labeling &l, const std::vector<Vertex> &order,
                                    TreeStrategy strategy, std::uint64_t seed, bool check_prefix) {
    const CutSet cut = cut_size(g, l);
    PredictionSession<std::string> s(
        std::make_shared<const SpanningTree>(build_spanning_tree(g, strategy, 0, seed)));
    std::size_t last_mistakes = 0;
    std::uint32_t last_cong = 0;
    for (Vertex v : order) {
        s.predict(v);
        s.reveal(v, l.token(v));
        if (check_prefix) {
            const auto cong = s.routing().max_congestion();
            EXPECT_LE(s.mistakes(), static_cast<std::size_t>(cong) * cut.size());
            EXPECT_GE(s.mistakes(), last_mistakes);
            EXPECT_GE(cong, last_cong);
            last_mistakes = s.mistakes();
            last_cong = cong;
        }
    }
    return s;
}

} // namespace

TEST(PredictorProperties, MistakeBoundHoldsAtEveryPrefix) {
    Rng rng(777);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t arity = 2 + rng.below(2);
        const Instance inst = tst::random_instance(rng, 120, arity);
        const Labeling l = trial % 2 ? inst.labeling : tst::random_labeling(inst.graph.num_vertices(), arity, rng);
        QueryOrder order = random_order(inst.graph.num_vertices(), rng.next());
        order.sequence.resize(1 + rng.below(order.sequence.size()));
        const auto s = play(inst.graph, l, order.sequence, TreeStrategy::random, rng.next(), true);

        std::size_t counted_wrong = 0;
        for (const auto &e : s.transcript())
            counted_wrong += e.counted && e.predicted != std::optional<std::string>(e.revealed);
        EXPECT_EQ(s.mistakes(), counted_wrong);
        for (Vertex v = 0; v < inst.graph.num_vertices(); ++v) {
            const bool queried = std::find(order.sequence.begin(), order.sequence.end(), v) != order.sequence.end();
            EXPECT_EQ(s.known(v).has_value(), queried);
            if (queried) {
                EXPECT_EQ(*s.known(v), l.token(v));
            }
        }
    }
}

TEST(PredictorProperties, ConstantLabelingNeverErrs) {
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const Instance inst = tst::random_instance(rng, 100, 1);
        const auto s = play(inst.graph, inst.labeling, random_order(inst.graph.num_vertices(), rng.next()).sequence,
                            TreeStrategy::bfs, 0, false);
        EXPECT_EQ(s.mistakes(), 0u);
    }
}

TEST(PredictorProperties, RenamingLabelsRenamesTheTranscript) {
    Rng rng(8080);
    for (int trial = 0; trial < 30; ++trial) {
        const Instance inst = tst::random_instance(rng, 100, 3);
        const Labeling &l = inst.labeling;
        std::vector<std::string> from = l.label_set().tokens(), to = from;
        std::rotate(to.begin(), to.begin() + 1, to.end());
        std::map<std::string, std::string> f;
        for (std::size_t i = 0; i < from.size(); ++i)
            f[from[i]] = to[i];
        const Labeling renamed = relabel(l, f);
        const auto order = random_order(inst.graph.num_vertices(), rng.next()).sequence;
        const auto a = play(inst.graph, l, order, TreeStrategy::bfs, 0, false);
        const auto b = play(inst.graph, renamed, order, TreeStrategy::bfs, 0, false);
        ASSERT_EQ(a.mistakes(), b.mistakes());
        ASSERT_EQ(a.transcript().size(), b.transcript().size());
        for (std::size_t i = 0; i < a.transcript().size(); ++i) {
            auto ea = a.transcript()[i];
            ea.revealed = f.at(ea.revealed);
            if (ea.predicted)
                ea.predicted = f.at(*ea.predicted);
            EXPECT_EQ(ea, b.transcript()[i]);
        }
    }
}

TEST(PredictorProperties, DeterministicTranscript) {
    Rng rng(1);
    const Instance inst = tst::random_instance(rng, 200, 3);
    const auto order = random_order(inst.graph.num_vertices(), 5).sequence;
    const auto a = play(inst.graph, inst.labeling, order, TreeStrategy::random, 17, false);
    const auto b = play(inst.graph, inst.labeling, order, TreeStrategy::random, 17, false);
    EXPECT_EQ(a.transcript(), b.transcript());
    EXPECT_EQ(a.routing().path_log(), b.routing().path_log());
}
