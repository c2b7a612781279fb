#include <doctest.h>

#include <numeric>
#include <random>

#include "pathquery/errors.hpp"
#include "pathquery/generate.hpp"
#include "pathquery/oracle.hpp"
#include "pathquery/rng.hpp"
#include "pathquery/scc_learner.hpp"
#include "test_support.hpp"

using namespace pathquery;
using namespace testsupport;

TEST_SUITE_BEGIN("scc_learner");

TEST_CASE("G2 partition within the representative budget") {
    QueryOracle oracle(make_g2(), 1);
    const auto components = learn_partition(oracle);
    CHECK(components == std::vector<std::vector<Vertex>>{{0, 1}, {2}});
    CHECK(oracle.total_queries() <= 2 * 3 * 2);
}

TEST_CASE("G2 condensation uses one representative pair per direction") {
    QueryOracle oracle(make_g2(), 1);
    const auto components = learn_partition(oracle);
    const std::uint64_t before = oracle.total_queries();
    const auto edges = learn_condensation(oracle, components);
    CHECK(edges == std::vector<std::pair<int, int>>{{0, 1}});
    CHECK(oracle.total_queries() - before == 2); // k(k-1) with k = 2
}

TEST_CASE("a DAG learns as singletons") {
    QueryOracle oracle(make_t1(), 1);
    const auto components = learn_partition(oracle);
    REQUIRE(components.size() == 7);
    for (int i = 0; i < 7; ++i)
        CHECK(components[i] == std::vector<Vertex>{i});
}

TEST_CASE("a single cycle learns in exactly 2(n-1) queries") {
    const int n = 9;
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        edges.emplace_back(i, (i + 1) % n);
    QueryOracle oracle(DirectedGraph(n, edges), 1);
    const auto components = learn_partition(oracle);
    REQUIRE(components.size() == 1);
    CHECK(oracle.total_queries() == 2 * (n - 1));
    CHECK(learn_condensation(oracle, components).empty());
    CHECK(oracle.total_queries() == 2 * (n - 1)); // k = 1 adds nothing
}

TEST_CASE("chains keep only their covering edges") {
    QueryOracle oracle(DirectedGraph(3, {{0, 1}, {1, 2}}), 1);
    const LearnedScc learned = learn_scc(oracle);
    CHECK(learned.condensation_edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("an almost-tree learns as singletons with its own edges") {
    // A1 has no transitive edges, so the learned condensation (on singleton
    // components indexed by vertex) is exactly its edge set
    const DirectedGraph a1 = make_a1();
    QueryOracle oracle(a1, 1);
    const LearnedScc learned = learn_scc(oracle);
    REQUIRE(learned.components.size() == 7);
    std::vector<std::pair<int, int>> expect;
    for (const Edge& e : a1.edges())
        expect.emplace_back(e.first, e.second);
    CHECK(learned.condensation_edges == expect);
    CHECK(oracle.total_queries() <= 2ULL * 7 * 7 + 7 * 7);
}

TEST_CASE("a wrong partition trips the promise check") {
    // 0 and 1 are mutually reachable, yet handed over as separate components
    QueryOracle oracle(DirectedGraph(2, {{0, 1}, {1, 0}}), 1);
    CHECK_THROWS_AS(learn_condensation(oracle, {{0}, {1}}), PromiseViolation);
}

TEST_CASE("generated instances learn exactly within 2nk + k*k") {
    std::mt19937_64 rng(808);
    for (int round = 0; round < 50; ++round) {
        const int n = 2 + static_cast<int>(uniform_below(rng, 90));
        const int k = 1 + static_cast<int>(uniform_below(rng, n));
        const DirectedGraph hidden = gen_scc(n, k, rng());
        QueryOracle oracle(hidden, 1);
        const LearnedScc learned = learn_scc(oracle);
        const SccPartition truth = strongly_connected_components(hidden);
        REQUIRE(canonical_scc(learned.components, learned.condensation_edges) == truth);
        CHECK(oracle.total_queries() <=
              2ULL * static_cast<std::uint64_t>(n) * k + static_cast<std::uint64_t>(k) * k);
    }
}

TEST_CASE("the partition is independent of the processing order") {
    std::mt19937_64 rng(313);
    const DirectedGraph hidden = gen_scc(40, 9, 77);
    QueryOracle base(hidden, 1);
    const auto expected = canonical_scc(learn_partition(base), {});
    for (int round = 0; round < 10; ++round) {
        std::vector<Vertex> order(40);
        std::iota(order.begin(), order.end(), 0);
        for (int i = 39; i > 0; --i)
            std::swap(order[i], order[uniform_below(rng, static_cast<std::uint64_t>(i) + 1)]);
        QueryOracle oracle(hidden, 1);
        CHECK(canonical_scc(learn_partition(oracle, order), {}) == expected);
    }
}

TEST_SUITE_END();
