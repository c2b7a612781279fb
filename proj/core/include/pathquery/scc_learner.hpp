#pragma once

#include <span>
#include <vector>

#include "pathquery/graph.hpp"
#include "pathquery/oracle.hpp"

namespace pathquery {

/// Learned component structure. Condensation edges are pairs of indices into
/// `components`; under the no-transitive-cross-edge promise they equal the
/// hidden cross edges exactly (at component granularity).
struct LearnedScc {
    std::vector<std::vector<Vertex>> components;
    std::vector<std::pair<int, int>> condensation_edges;
};

/// Groups vertices by mutual reachability against one representative per
/// discovered component. At most 2nk queries (phase "scc.partition").
std::vector<std::vector<Vertex>> learn_partition(QueryOracle& oracle);

/// Same, processing vertices in the given order; the resulting partition is
/// order-independent as a set of sets.
std::vector<std::vector<Vertex>> learn_partition(QueryOracle& oracle,
                                                 std::span<const Vertex> order);

/// Queries one representative pair per ordered component pair (k(k-1) queries,
/// phase "scc.condensation") and returns the transitive reduction of the
/// component reachability relation. Throws PromiseViolation if two distinct
/// components turn out mutually reachable.
std::vector<std::pair<int, int>>
learn_condensation(QueryOracle& oracle, const std::vector<std::vector<Vertex>>& components);

LearnedScc learn_scc(QueryOracle& oracle);

} // namespace pathquery
