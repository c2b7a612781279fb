#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pathquery/graph.hpp"

namespace pathquery {

/// Decomposition of a valid instance into a spanning rooted tree plus at most
/// one extra edge. `height` and `max_degree` describe the whole graph.
struct AlmostTreeCertificate {
    std::vector<Edge> tree_edges;
    std::optional<Edge> extra_edge;
    int height = 0;
    int max_degree = 0;

    bool operator==(const AlmostTreeCertificate&) const = default;
};

enum class AlmostTreeRejection {
    NotRooted,
    CycleCreated,
    TransitiveExtraEdge,
    MoreThanOneExtraEdge,
};

/// Stable names used in CLI output and error messages.
std::string rejection_name(AlmostTreeRejection r);

struct AlmostTreeValidation {
    std::optional<AlmostTreeCertificate> certificate;
    std::optional<AlmostTreeRejection> rejection;
    std::string detail;

    bool ok() const { return certificate.has_value(); }
};

/// Checks whether every edge of a rooted graph is recoverable through path
/// queries: the graph must be acyclic and free of transitive edges, with at
/// most one vertex of in-degree two. On success splits the edges into
/// tree_edges + extra_edge; between the two in-edges of the doubled vertex the
/// one with the larger tail is designated extra, matching the learner's
/// smaller-index parent tie-break.
AlmostTreeValidation validate_almost_tree(const DirectedGraph& g);

} // namespace pathquery
