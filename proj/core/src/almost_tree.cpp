#include "pathquery/almost_tree.hpp"

#include <algorithm>
#include <string>

namespace pathquery {

std::string rejection_name(AlmostTreeRejection r) {
    switch (r) {
    case AlmostTreeRejection::NotRooted: return "not-rooted";
    case AlmostTreeRejection::CycleCreated: return "cycle-created";
    case AlmostTreeRejection::TransitiveExtraEdge: return "transitive-extra-edge";
    case AlmostTreeRejection::MoreThanOneExtraEdge: return "more-than-one-extra-edge";
    }
    return "unknown";
}

namespace {

AlmostTreeValidation reject(AlmostTreeRejection r, std::string detail) {
    AlmostTreeValidation v;
    v.rejection = r;
    v.detail = std::move(detail);
    return v;
}

} // namespace

AlmostTreeValidation validate_almost_tree(const DirectedGraph& g) {
    if (!g.root())
        return reject(AlmostTreeRejection::NotRooted, "graph has no root");

    const int n = g.vertex_count();
    const int m = g.edge_count();

    // A rooted graph has at least n-1 edges; a tree has exactly n-1 and an
    // almost-tree exactly n.
    if (m > n)
        return reject(AlmostTreeRejection::MoreThanOneExtraEdge,
                      std::to_string(m - (n - 1)) + " edges beyond a spanning tree");

    if (!is_acyclic(g))
        return reject(AlmostTreeRejection::CycleCreated,
                      "an edge points back to one of its ancestors");

    // Transitive edges cannot be recovered by path queries.
    const BitMatrix closure = reachability_closure(g);
    for (const Edge& e : g.edges())
        for (Vertex w : g.successors(e.first))
            if (w != e.second && closure.get(w, e.second))
                return reject(AlmostTreeRejection::TransitiveExtraEdge,
                              "edge (" + std::to_string(e.first) + ", " +
                                  std::to_string(e.second) + ") has an alternate longer path");

    AlmostTreeCertificate cert;
    cert.height = graph_height(g);
    cert.max_degree = max_total_degree(g);

    if (m == n - 1) {
        cert.tree_edges = g.edges();
        AlmostTreeValidation v;
        v.certificate = std::move(cert);
        return v;
    }

    // Exactly one vertex has in-degree two (root in-degree is zero once the
    // graph is acyclic). Both in-edges yield valid spanning trees; designate
    // the larger-tail edge as extra.
    Vertex doubled = -1;
    for (Vertex v = 0; v < n; ++v)
        if (g.in_degree(v) == 2) {
            doubled = v;
            break;
        }
    const auto parents = g.predecessors(doubled);
    const Vertex extra_tail = std::max(parents[0], parents[1]);
    cert.extra_edge = Edge{extra_tail, doubled};
    cert.tree_edges.reserve(n - 1);
    for (const Edge& e : g.edges())
        if (e != *cert.extra_edge)
            cert.tree_edges.push_back(e);

    AlmostTreeValidation v;
    v.certificate = std::move(cert);
    return v;
}

} // namespace pathquery
