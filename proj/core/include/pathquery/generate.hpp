#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "pathquery/graph.hpp"

namespace pathquery {

/// Instance families. `dary` builds a deterministic heap-shaped complete
/// d-ary tree; it exists for the benchmark's quasi-linear grid.
enum class Family { tree, almost_tree, caterpillar, hybrid, scc, dary };

std::string family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

struct GenSpec {
    Family family = Family::tree;
    int n = 0;         ///< target size (caterpillar: even, produces n-1 vertices)
    int d = 0;         ///< degree budget (tree families) or branching factor (hybrid, dary)
    int h = 0;         ///< target height (hybrid only)
    int k = 0;         ///< component count (scc only)
    std::uint64_t seed = 0;
};

struct InstanceMeta {
    std::string family;
    std::uint64_t seed = 0;
    int n = 0;        ///< requested size parameter
    int vertices = 0; ///< actual vertex count
    std::optional<int> d;
    std::optional<int> h;
    std::optional<int> k;
    std::optional<Edge> extra_edge;
    std::optional<int> spine_length; ///< hybrid sizing detail
    std::optional<int> branch_nodes; ///< hybrid sizing detail

    bool operator==(const InstanceMeta&) const = default;
};

struct GeneratedInstance {
    DirectedGraph graph;
    InstanceMeta meta;
};

/// Dispatch on spec.family. Same spec (including seed) yields a bit-identical
/// graph. Throws std::invalid_argument on bad parameters and
/// GenerationInfeasible when no valid instance exists.
GeneratedInstance generate(const GenSpec& spec);

/// Rooted tree on n vertices by random parent attachment among vertices with
/// remaining total-degree budget d; root 0.
DirectedGraph gen_tree(int n, int d, std::uint64_t seed);

/// Valid extra edge for a tree: endpoints incomparable in the tree (which
/// rules out transitive and cycle-creating choices) and within the degree
/// budget. Uniform over all valid ordered pairs; nullopt when none exists.
std::optional<Edge> pick_extra_edge(const DirectedGraph& tree, int d, std::mt19937_64& rng);

/// gen_tree plus one valid extra edge; throws GenerationInfeasible naming the
/// obstruction when the sampled tree admits none.
DirectedGraph gen_almost_tree(int n, int d, std::uint64_t seed);

/// Spine v_1..v_{n/2} with one leg under each of v_1..v_{n/2-1} (n-1 vertices,
/// vertex i is v_{i+1}), plus a leg-to-leg extra edge (v_{n/2+i}, v_{n/2+j})
/// with i < j drawn uniformly. Requires even n >= 6.
DirectedGraph gen_caterpillar(int n, std::uint64_t seed);

/// The same caterpillar without the extra edge.
DirectedGraph gen_caterpillar_plain(int n);

/// Caterpillar spine of length h - t carrying a complete d-ary tree (branching
/// factor d, depth t) below its last vertex, sized so the total vertex count
/// is exactly n and the height exactly h; extra edge from a random leg to a
/// random d-ary leaf. Sizing details are reported in the instance metadata.
DirectedGraph gen_hybrid(int n, int d, int h, std::uint64_t seed);

/// k cycles (the components) wired by a random component DAG whose cross edges
/// equal their own transitive reduction, one edge per condensation pair with
/// endpoints uniform inside the components. No root.
DirectedGraph gen_scc(int n, int k, std::uint64_t seed);

/// Deterministic heap-shaped complete tree with branching factor `arity`.
DirectedGraph complete_dary_tree(int n, int arity);

} // namespace pathquery
