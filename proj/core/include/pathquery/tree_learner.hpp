#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pathquery/graph.hpp"
#include "pathquery/oracle.hpp"

namespace pathquery {

struct LearnerOptions {
    int degree_bound = 3;          ///< promised maximum total degree
    int retry_cap_multiplier = 48; ///< split retry cap = multiplier * d * ceil(log2 |V|)
};

/// A spanning rooted tree of the working vertices, every edge a true hidden
/// edge. Children lists ascending; per-subtree leaf lists precomputed.
struct LayeredGraph {
    Vertex root = 0;
    std::vector<Edge> edges;
    std::vector<Vertex> parent; // -1 for the root and for vertices outside the tree
    std::vector<std::vector<Vertex>> children;
    std::vector<std::vector<Vertex>> subtree_leaves;

    /// Validates that `edges` form a spanning rooted tree of all n vertices
    /// with the given root; throws PromiseViolation otherwise.
    static LayeredGraph build(int n, Vertex root, std::vector<Edge> edges);
};

/// The four-condition witness locating the lowest common ancestor of the
/// extra edge's endpoints: child and leaf sit in different subtrees of top,
/// yet the leaf is reachable from the child.
struct TopVertexWitness {
    Vertex top = 0;
    Vertex child = 0;
    Vertex leaf = 0;
};

struct ReconstructStats {
    std::uint64_t search_calls = 0;
    std::uint64_t split_calls = 0;
    std::uint64_t split_retries = 0; ///< failed search attempts
    std::uint64_t binary_search_iterations = 0;
    int max_recursion_depth = 0;
};

struct ReconstructionResult {
    DirectedGraph graph;
    std::optional<Edge> cross_edge;
    ReconstructStats stats;
};

/// Exact reconstruction of a hidden rooted tree or path-query reconstructable
/// almost-tree with a known degree bound. Randomness comes from the oracle's
/// companion RNG, so a (hidden graph, oracle seed, options) triple replays
/// bit-identically.
class AlmostTreeLearner {
  public:
    AlmostTreeLearner(QueryOracle& oracle, LearnerOptions options);

    /// Full pipeline: root discovery, layered graph, cross edge.
    ReconstructionResult reconstruct();

    /// Root = the unique vertex no other working vertex reaches; found by a
    /// reachability tournament plus a verification sweep, 2(|V|-1) queries
    /// under phase "root".
    Vertex discover_root(const std::vector<Vertex>& working);

    /// Spanning-tree edges over the working set by randomized splitting.
    std::vector<Edge> reconstruct_layered(const std::vector<Vertex>& working);

    struct SplitResult {
        std::vector<Vertex> inside;  ///< D(v) within the working set
        std::vector<Vertex> outside; ///< the rest
        Edge parent_edge;            ///< (p(v), v), a true hidden edge
    };
    SplitResult split_working_set(const std::vector<Vertex>& working);

    struct SearchOutcome {
        bool splittable = false;
        Vertex vertex = 0;
        RelativeView view;
        int loop_iterations = 0;
    };
    /// One attempt: random probe, then randomized binary search over the
    /// probe's ancestors when its descendant set is too small.
    SearchOutcome search(const std::vector<Vertex>& working);

    /// The ancestor with the smallest relative descendant set (ties to the
    /// smaller index): the probe's parent within the working set.
    Vertex find_parent(Vertex v, const std::vector<Vertex>& working);

    std::optional<Edge> find_cross_edge(const LayeredGraph& layered);
    std::optional<TopVertexWitness> find_witness(const LayeredGraph& layered, Vertex from);
    Edge pinpoint_cross_edge(const LayeredGraph& layered, const TopVertexWitness& witness);

    const ReconstructStats& stats() const { return stats_; }

  private:
    using SizeCache = std::unordered_map<Vertex, int>; // |D(x) ∩ V| for the current split

    SearchOutcome search_impl(const std::vector<Vertex>& working, SizeCache& cache);
    SplitResult split_impl(const std::vector<Vertex>& working, SizeCache& cache);
    Vertex find_parent_impl(Vertex v, const std::vector<Vertex>& working,
                            const std::vector<Vertex>& ancestors, SizeCache& cache);
    std::vector<Edge> layered_impl(const std::vector<Vertex>& working, int depth);

    QueryOracle& oracle_;
    LearnerOptions options_;
    ReconstructStats stats_;
    int depth_limit_ = 0;
};

} // namespace pathquery
