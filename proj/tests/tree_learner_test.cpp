#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "pathquery/errors.hpp"
#include "pathquery/generate.hpp"
#include "pathquery/oracle.hpp"
#include "pathquery/rng.hpp"
#include "pathquery/tree_learner.hpp"
#include "test_support.hpp"

using namespace pathquery;
using namespace testsupport;

namespace {

const std::vector<Vertex> kAllSeven{0, 1, 2, 3, 4, 5, 6};

// first oracle seed whose first bounded draw picks `want` out of `m`
std::uint64_t seed_with_first_draw(std::size_t m, std::uint64_t want) {
    for (std::uint64_t seed = 0;; ++seed) {
        std::mt19937_64 rng(seed);
        if (uniform_below(rng, m) == want)
            return seed;
    }
}

} // namespace

TEST_SUITE_BEGIN("tree_learner");

TEST_CASE("discover_root finds the unique source of A1 in 2(n-1) queries") {
    QueryOracle oracle(make_a1(), 1);
    AlmostTreeLearner learner(oracle, {3});
    CHECK(learner.discover_root(kAllSeven) == 0);
    CHECK(oracle.phase_queries("root") == 12);
    CHECK(oracle.total_queries() == 12);
}

TEST_CASE("search returns vertex 4 of A1 immediately when it is drawn first") {
    QueryOracle oracle(make_a1(), seed_with_first_draw(7, 4));
    AlmostTreeLearner learner(oracle, {3});
    const auto outcome = learner.search(kAllSeven);
    REQUIRE(outcome.splittable);
    CHECK(outcome.vertex == 4); // |D(4)| = 1 lies in [7/9, 7/3]
    CHECK(outcome.loop_iterations == 0);
    CHECK(outcome.view.descendants == std::vector<Vertex>{4});
    // exactly 2(|V|-1) per view, one view issued
    CHECK(oracle.phase_queries("layered.search") == 12);
}

TEST_CASE("search fails fast when the first draw is too big") {
    QueryOracle oracle(make_a1(), seed_with_first_draw(7, 1));
    AlmostTreeLearner learner(oracle, {3});
    const auto outcome = learner.search(kAllSeven);
    CHECK_FALSE(outcome.splittable); // |D(1)| = 5 > 7/3
    CHECK(oracle.phase_queries("layered.search") == 12);
}

TEST_CASE("search query count is 2(|V|-1)(1 + loop iterations)") {
    std::mt19937_64 seeds(5);
    const DirectedGraph hidden = gen_almost_tree(40, 3, 17);
    std::vector<Vertex> all(40);
    std::iota(all.begin(), all.end(), 0);
    for (int round = 0; round < 20; ++round) {
        QueryOracle oracle(hidden, seeds());
        AlmostTreeLearner learner(oracle, {3});
        const auto outcome = learner.search(all);
        CHECK(oracle.phase_queries("layered.search") ==
              2ULL * (all.size() - 1) * (1 + outcome.loop_iterations));
    }
}

TEST_CASE("split of A1 around vertex 4") {
    QueryOracle oracle(make_a1(), seed_with_first_draw(7, 4));
    AlmostTreeLearner learner(oracle, {3});
    const auto split = learner.split_working_set(kAllSeven);
    CHECK(split.inside == std::vector<Vertex>{4});
    CHECK(split.outside == std::vector<Vertex>{0, 1, 2, 3, 5, 6});
    CHECK(split.parent_edge == Edge{1, 4});
    CHECK(make_a1().has_edge(split.parent_edge.first, split.parent_edge.second));
}

TEST_CASE("split balance bounds hold on random instances") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 25; ++round) {
        const int n = 9 + static_cast<int>(uniform_below(rng, 60));
        const int d = 3 + static_cast<int>(uniform_below(rng, 3));
        const DirectedGraph hidden = gen_almost_tree(n, d, rng());
        QueryOracle oracle(hidden, rng());
        AlmostTreeLearner learner(oracle, {d});
        std::vector<Vertex> all(n);
        std::iota(all.begin(), all.end(), 0);
        const auto split = learner.split_working_set(all);
        const auto inside = static_cast<long long>(split.inside.size());
        CHECK(3 * d * inside >= n);
        CHECK(3 * inside <= n);
        CHECK(inside + static_cast<long long>(split.outside.size()) == n);
        CHECK(hidden.has_edge(split.parent_edge.first, split.parent_edge.second));
    }
}

TEST_CASE("find_parent resolves A1 parents by smallest relative descendant set") {
    QueryOracle oracle(make_a1(), 1);
    AlmostTreeLearner learner(oracle, {3});
    CHECK(learner.find_parent(4, kAllSeven) == 1); // |D(1)| = 5 < |D(0)| = 7
    // vertex 5 has two true parents, sizes tie at 3: smaller index wins
    CHECK(learner.find_parent(5, kAllSeven) == 2);
    CHECK_THROWS_AS(learner.find_parent(0, kAllSeven), PromiseViolation);
}

TEST_CASE("two-vertex base case emits the single edge") {
    QueryOracle oracle(DirectedGraph(2, {{0, 1}}, 0), 1);
    AlmostTreeLearner learner(oracle, {3});
    CHECK(learner.reconstruct_layered({0, 1}) == std::vector<Edge>{{0, 1}});
    CHECK(oracle.total_queries() <= 2);
}

TEST_CASE("layered reconstruction of A1 is a spanning tree of true edges") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        QueryOracle oracle(make_a1(), seed);
        AlmostTreeLearner learner(oracle, {3});
        const auto edges = learner.reconstruct_layered(kAllSeven);
        REQUIRE(edges.size() == 6);
        for (const Edge& e : edges)
            CHECK(make_a1().has_edge(e.first, e.second));
        // vertex 5 hangs under one of its two true parents
        const bool via2 = std::find(edges.begin(), edges.end(), Edge{2, 5}) != edges.end();
        const bool via3 = std::find(edges.begin(), edges.end(), Edge{3, 5}) != edges.end();
        CHECK(via2 != via3);
        CHECK_NOTHROW(LayeredGraph::build(7, 0, edges));
    }
}

TEST_CASE("witness search on A1 with the plain-tree layered graph") {
    QueryOracle oracle(make_a1(), 1);
    AlmostTreeLearner learner(oracle, {3});
    const LayeredGraph layered = LayeredGraph::build(7, 0, make_t1().edges());
    const auto witness = learner.find_witness(layered, 0);
    REQUIRE(witness.has_value());
    CHECK(witness->top == 0);
    CHECK(witness->child == 1);
    CHECK(witness->leaf == 6);
}

TEST_CASE("trees produce no witness anywhere") {
    QueryOracle oracle(make_t1(), 1);
    AlmostTreeLearner learner(oracle, {3});
    const LayeredGraph layered = LayeredGraph::build(7, 0, make_t1().edges());
    CHECK_FALSE(learner.find_witness(layered, 0).has_value());
    CHECK_FALSE(learner.find_cross_edge(layered).has_value());
}

TEST_CASE("pinpoint walks the A1 witness down to (3,5)") {
    QueryOracle oracle(make_a1(), 1);
    AlmostTreeLearner learner(oracle, {3});
    const LayeredGraph layered = LayeredGraph::build(7, 0, make_t1().edges());
    const Edge cross = learner.pinpoint_cross_edge(layered, {0, 1, 6});
    CHECK(cross == Edge{3, 5});
}

TEST_CASE("a layered graph that absorbed the extra edge yields the displaced parent edge") {
    QueryOracle oracle(make_a1(), 1);
    AlmostTreeLearner learner(oracle, {3});
    const LayeredGraph layered = LayeredGraph::build(
        7, 0, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {3, 5}, {5, 6}});
    const auto cross = learner.find_cross_edge(layered);
    REQUIRE(cross.has_value());
    CHECK(*cross == Edge{2, 5});
}

TEST_CASE("degenerate pinpoint: tail is the witness child, head is the witness leaf") {
    // extra edge (1,3) between a leaf and a leaf: descend never moves,
    // ascent stops at the leaf itself
    const DirectedGraph hidden(4, {{0, 1}, {0, 2}, {2, 3}, {1, 3}}, 0);
    QueryOracle oracle(hidden, 1);
    AlmostTreeLearner learner(oracle, {3});
    const LayeredGraph layered = LayeredGraph::build(4, 0, {{0, 1}, {0, 2}, {2, 3}});
    const auto witness = learner.find_witness(layered, 0);
    REQUIRE(witness.has_value());
    CHECK(witness->child == 1);
    CHECK(witness->leaf == 3);
    CHECK(learner.pinpoint_cross_edge(layered, *witness) == Edge{1, 3});
}

TEST_CASE("full reconstruction of A1 recovers the exact edge set") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        QueryOracle oracle(make_a1(), seed);
        AlmostTreeLearner learner(oracle, {3});
        const ReconstructionResult result = learner.reconstruct();
        CHECK(result.graph == make_a1());
        REQUIRE(result.cross_edge.has_value());
        const Edge cross = *result.cross_edge;
        CHECK((cross == Edge{3, 5} || cross == Edge{2, 5}));
    }
}

TEST_CASE("full reconstruction of T1 finds no cross edge") {
    QueryOracle oracle(make_t1(), 3);
    AlmostTreeLearner learner(oracle, {3});
    const ReconstructionResult result = learner.reconstruct();
    CHECK(result.graph == make_t1());
    CHECK_FALSE(result.cross_edge.has_value());
}

TEST_CASE("trivial sizes") {
    QueryOracle one(DirectedGraph(1, {}, 0), 1);
    AlmostTreeLearner a(one, {3});
    CHECK(a.reconstruct().graph == DirectedGraph(1, {}, 0));
    CHECK(one.total_queries() == 0);

    QueryOracle two(DirectedGraph(2, {{0, 1}}, 0), 1);
    AlmostTreeLearner b(two, {3});
    CHECK(b.reconstruct().graph == DirectedGraph(2, {{0, 1}}, 0));
}

TEST_CASE("random almost-trees reconstruct exactly") {
    std::mt19937_64 rng(2718);
    for (int round = 0; round < 50; ++round) {
        const int n = 4 + static_cast<int>(uniform_below(rng, 56));
        const int d = 3 + static_cast<int>(uniform_below(rng, 3));
        const DirectedGraph hidden = gen_almost_tree(n, d, rng());
        QueryOracle oracle(hidden, rng());
        AlmostTreeLearner learner(oracle, {d});
        CHECK(learner.reconstruct().graph == hidden);
    }
}

TEST_CASE("random plain trees reconstruct exactly with no cross edge") {
    std::mt19937_64 rng(999);
    for (int round = 0; round < 30; ++round) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 60));
        const int d = 2 + static_cast<int>(uniform_below(rng, 4));
        const DirectedGraph hidden = gen_tree(n, d, rng());
        QueryOracle oracle(hidden, rng());
        AlmostTreeLearner learner(oracle, {std::max(2, d)});
        const ReconstructionResult result = learner.reconstruct();
        CHECK(result.graph == hidden);
        CHECK_FALSE(result.cross_edge.has_value());
    }
}

TEST_CASE("recursion depth stays logarithmic on complete binary trees") {
    for (int n : {64, 256}) {
        const DirectedGraph hidden = complete_dary_tree(n, 2);
        QueryOracle oracle(hidden, 42);
        AlmostTreeLearner learner(oracle, {3});
        REQUIRE(learner.reconstruct().graph == hidden);
        CHECK(learner.stats().max_recursion_depth <= 6 * static_cast<int>(std::log2(n)) + 6);
    }
}

TEST_CASE("cross-phase query count stays within the scan budget") {
    std::mt19937_64 rng(31337);
    for (int round = 0; round < 10; ++round) {
        const int n = 10 + static_cast<int>(uniform_below(rng, 80));
        const int d = 3 + static_cast<int>(uniform_below(rng, 2));
        const DirectedGraph hidden = gen_almost_tree(n, d, rng());
        const int h = graph_height(hidden);
        QueryOracle oracle(hidden, rng());
        AlmostTreeLearner learner(oracle, {d});
        REQUIRE(learner.reconstruct().graph == hidden);
        const std::uint64_t cross =
            oracle.phase_queries("cross.scan") + oracle.phase_queries("cross.pinpoint");
        CHECK(cross <= static_cast<std::uint64_t>(d) * n * (h + 2) +
                           static_cast<std::uint64_t>(d + 1) * (h + 2));
    }
}

TEST_CASE("pinpoint rejects broken witnesses") {
    // plain tree: the fabricated witness leaf is unreachable from the tail
    QueryOracle plain(make_t1(), 1);
    AlmostTreeLearner a(plain, {3});
    const LayeredGraph layered = LayeredGraph::build(7, 0, make_t1().edges());
    CHECK_THROWS_AS(a.pinpoint_cross_edge(layered, {0, 1, 6}), PromiseViolation);

    // two extra edges: both children of the witness child reach the leaf
    auto edges = make_t1().edges();
    edges.emplace_back(3, 6);
    edges.emplace_back(4, 6);
    QueryOracle doubled(DirectedGraph(7, edges, 0), 1);
    AlmostTreeLearner b(doubled, {4});
    CHECK_THROWS_AS(b.pinpoint_cross_edge(layered, {0, 1, 6}), PromiseViolation);
}

TEST_CASE("a cycle violates the promise during root discovery") {
    QueryOracle oracle(DirectedGraph(2, {{0, 1}, {1, 0}}, 0), 1);
    AlmostTreeLearner learner(oracle, {3});
    CHECK_THROWS_AS(learner.reconstruct(), PromiseViolation);
}

TEST_CASE("layered graph validation rejects non-spanning edge sets") {
    CHECK_THROWS_AS(LayeredGraph::build(4, 0, {{0, 1}, {0, 2}}), PromiseViolation);
    CHECK_THROWS_AS(LayeredGraph::build(3, 0, {{0, 1}, {1, 0}}), PromiseViolation);
    CHECK_THROWS_AS(LayeredGraph::build(3, 0, {{0, 1}, {2, 1}}), PromiseViolation);
}

TEST_SUITE_END();
