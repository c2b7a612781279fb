#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pathquery/bitmatrix.hpp"

namespace pathquery {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Immutable directed graph on dense vertices 0..n-1.
///
/// Rejects self-loops, duplicate edges and out-of-range endpoints. When a root
/// is given, every vertex must be reachable from it.
class DirectedGraph {
  public:
    DirectedGraph() = default;
    DirectedGraph(int n, std::vector<Edge> edges, std::optional<Vertex> root = std::nullopt);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    std::optional<Vertex> root() const { return root_; }

    std::span<const Vertex> successors(Vertex u) const;
    std::span<const Vertex> predecessors(Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const;

    int in_degree(Vertex v) const;
    int out_degree(Vertex u) const;
    int total_degree(Vertex v) const { return in_degree(v) + out_degree(v); }

    bool operator==(const DirectedGraph&) const = default;

  private:
    int n_ = 0;
    std::vector<Edge> edges_; // sorted ascending, unique
    std::optional<Vertex> root_;
    std::vector<std::vector<Vertex>> out_;
    std::vector<std::vector<Vertex>> in_;
};

/// Path-query ground truth: is there a directed path (length >= 0) from u to v?
/// reaches(g, u, u) is always true by the empty-path convention.
bool reaches(const DirectedGraph& g, Vertex from, Vertex to);

/// Row r holds the set of vertices reachable from r, self included. BFS based;
/// tests cross-check it against an independent repeated-squaring closure.
BitMatrix reachability_closure(const DirectedGraph& g);

bool is_acyclic(const DirectedGraph& g);

/// Topological order of an acyclic graph; throws std::invalid_argument on cycles.
std::vector<Vertex> topological_order(const DirectedGraph& g);

/// Unique minimal edge set with the same reachability as the input DAG.
/// Throws std::invalid_argument on cyclic input.
std::vector<Edge> transitive_reduction(const DirectedGraph& g);

/// Number of edges on the longest path from the root. Requires a rooted DAG.
int graph_height(const DirectedGraph& g);

int max_total_degree(const DirectedGraph& g);

/// Strongly connected components plus the condensation edge set: the
/// transitive reduction of reachability between components. Components are
/// canonical (members ascending, components ordered by smallest member).
struct SccPartition {
    std::vector<std::vector<Vertex>> components;
    std::vector<std::pair<int, int>> condensation_edges; // component index pairs, sorted

    bool operator==(const SccPartition&) const = default;
};

SccPartition strongly_connected_components(const DirectedGraph& g);

/// Reorders components canonically and remaps condensation edges to match.
SccPartition canonical_scc(std::vector<std::vector<Vertex>> components,
                           std::vector<std::pair<int, int>> condensation_edges);

} // namespace pathquery
