#include "pathquery/scc_learner.hpp"

#include <numeric>

#include "pathquery/errors.hpp"

namespace pathquery {

namespace {
constexpr std::string_view kPartition = "scc.partition";
constexpr std::string_view kCondensation = "scc.condensation";
} // namespace

std::vector<std::vector<Vertex>> learn_partition(QueryOracle& oracle,
                                                 std::span<const Vertex> order) {
    std::vector<std::vector<Vertex>> components;
    for (Vertex v : order) {
        bool placed = false;
        for (auto& members : components) {
            const Vertex rep = members.front();
            // strongly connected iff both directions answer 1; the second
            // query is skipped when the first already fails
            if (oracle.query(v, rep, kPartition) && oracle.query(rep, v, kPartition)) {
                members.push_back(v);
                placed = true;
                break;
            }
        }
        if (!placed)
            components.push_back({v});
    }
    for (auto& members : components)
        std::sort(members.begin(), members.end());
    return components;
}

std::vector<std::vector<Vertex>> learn_partition(QueryOracle& oracle) {
    std::vector<Vertex> order(oracle.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    return learn_partition(oracle, order);
}

std::vector<std::pair<int, int>>
learn_condensation(QueryOracle& oracle, const std::vector<std::vector<Vertex>>& components) {
    const int k = static_cast<int>(components.size());
    std::vector<Vertex> reps;
    reps.reserve(k);
    for (const auto& members : components)
        reps.push_back(members.front());

    // component reachability via representative pairs: k(k-1) queries
    std::vector<char> reach(static_cast<std::size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j)
                reach[static_cast<std::size_t>(i) * k + j] =
                    oracle.query(reps[i], reps[j], kCondensation) ? 1 : 0;

    std::vector<Edge> closed;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j || !reach[static_cast<std::size_t>(i) * k + j])
                continue;
            if (reach[static_cast<std::size_t>(j) * k + i])
                throw PromiseViolation(
                    "components " + std::to_string(i) + " and " + std::to_string(j) +
                    " are mutually reachable: the learned partition is not maximal "
                    "or the oracle is inconsistent");
            closed.emplace_back(i, j);
        }

    // reachability between distinct maximal components is acyclic, so the
    // reduction is well defined and, under the promise, equals the edge set
    std::vector<std::pair<int, int>> out;
    for (const Edge& e : transitive_reduction(DirectedGraph(k, std::move(closed))))
        out.emplace_back(e.first, e.second);
    return out;
}

LearnedScc learn_scc(QueryOracle& oracle) {
    LearnedScc learned;
    learned.components = learn_partition(oracle);
    learned.condensation_edges = learn_condensation(oracle, learned.components);
    return learned;
}

} // namespace pathquery
