// The smallest interesting session: on the line 0-...-7 with labels +1 on
// 0..3 and -1 on 4..7, ask vertex 0 and then vertex 7.

#include <iostream>
#include <memory>

#include <cutroute/cutroute.hpp>

int main() {
    using namespace cutroute;

    InstanceSpec spec;
    spec.family = Family::line;
    spec.n = 8;
    spec.labeling = LabelingRule::half_split;
    const Instance inst = generate_instance(spec);
    const Labeling &labels = inst.labeling;

    auto tree = std::make_shared<const SpanningTree>(build_spanning_tree(inst.graph, TreeStrategy::bfs));
    PredictionSession<std::string> session(tree);
    for (Vertex v : {0u, 7u}) {
        const auto guess = session.predict(v);
        const bool mistake = session.reveal(v, labels.token(v));
        std::cout << "query " << v << ": predicted " << (guess ? *guess : "(none)") << ", truth " << labels.token(v)
                  << (mistake ? "  <- mistake" : "") << '\n';
    }

    const CutSet cut = cut_size(inst.graph, labels);
    std::cout << "mistakes " << session.mistakes() << " <= max congestion " << session.routing().max_congestion()
              << " * |cut| " << cut.size() << '\n';
}
