#include "pathquery/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pathquery {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_vertex(const DirectedGraph& g, Vertex v, const char* what) {
    if (v < 0 || v >= g.vertex_count())
        fail(std::string(what) + " vertex " + std::to_string(v) + " out of range [0, " +
             std::to_string(g.vertex_count()) + ")");
}

} // namespace

DirectedGraph::DirectedGraph(int n, std::vector<Edge> edges, std::optional<Vertex> root)
    : n_(n), edges_(std::move(edges)), root_(root) {
    if (n_ < 0)
        fail("vertex count must be non-negative");
    std::sort(edges_.begin(), edges_.end());
    out_.assign(n_, {});
    in_.assign(n_, {});
    const Edge* prev = nullptr;
    for (const Edge& e : edges_) {
        if (e.first < 0 || e.first >= n_ || e.second < 0 || e.second >= n_)
            fail("edge (" + std::to_string(e.first) + ", " + std::to_string(e.second) +
                 ") endpoint out of range");
        if (e.first == e.second)
            fail("self-loop edge at vertex " + std::to_string(e.first));
        if (prev && *prev == e)
            fail("duplicate edge (" + std::to_string(e.first) + ", " + std::to_string(e.second) + ")");
        prev = &e;
        out_[e.first].push_back(e.second);
        in_[e.second].push_back(e.first);
    }
    if (root_) {
        if (*root_ < 0 || *root_ >= n_)
            fail("root " + std::to_string(*root_) + " out of range");
        std::vector<char> seen(n_, 0);
        std::vector<Vertex> stack{*root_};
        seen[*root_] = 1;
        int visited = 0;
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            ++visited;
            for (Vertex w : out_[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        if (visited != n_)
            fail("rooted graph: not every vertex is reachable from root " + std::to_string(*root_));
    }
}

std::span<const Vertex> DirectedGraph::successors(Vertex u) const {
    check_vertex(*this, u, "successors:");
    return out_[u];
}

std::span<const Vertex> DirectedGraph::predecessors(Vertex v) const {
    check_vertex(*this, v, "predecessors:");
    return in_[v];
}

bool DirectedGraph::has_edge(Vertex u, Vertex v) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

int DirectedGraph::in_degree(Vertex v) const {
    check_vertex(*this, v, "in_degree:");
    return static_cast<int>(in_[v].size());
}

int DirectedGraph::out_degree(Vertex u) const {
    check_vertex(*this, u, "out_degree:");
    return static_cast<int>(out_[u].size());
}

bool reaches(const DirectedGraph& g, Vertex from, Vertex to) {
    check_vertex(g, from, "reaches:");
    check_vertex(g, to, "reaches:");
    if (from == to)
        return true; // empty path
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<Vertex> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        const Vertex u = stack.back();
        stack.pop_back();
        for (Vertex w : g.successors(u)) {
            if (w == to)
                return true;
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return false;
}

BitMatrix reachability_closure(const DirectedGraph& g) {
    const int n = g.vertex_count();
    BitMatrix m(n);
    std::vector<char> seen(n);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(1, s);
        seen[s] = 1;
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            m.set(s, u);
            for (Vertex w : g.successors(u))
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
    }
    return m;
}

std::vector<Vertex> topological_order(const DirectedGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> pending(n, 0);
    for (Vertex v = 0; v < n; ++v)
        pending[v] = g.in_degree(v);
    std::vector<Vertex> order;
    order.reserve(n);
    for (Vertex v = 0; v < n; ++v)
        if (pending[v] == 0)
            order.push_back(v);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Vertex w : g.successors(order[i]))
            if (--pending[w] == 0)
                order.push_back(w);
    if (static_cast<int>(order.size()) != n)
        fail("graph has a cycle");
    return order;
}

bool is_acyclic(const DirectedGraph& g) {
    try {
        topological_order(g);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

std::vector<Edge> transitive_reduction(const DirectedGraph& g) {
    const auto order = topological_order(g); // throws on cycles
    const int n = g.vertex_count();

    // closure[v] via reverse topological sweep
    BitMatrix closure(n);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Vertex v = *it;
        closure.set(v, v);
        for (Vertex w : g.successors(v))
            closure.or_row_into(w, v);
    }

    std::vector<Edge> kept;
    kept.reserve(g.edges().size());
    for (const Edge& e : g.edges()) {
        bool redundant = false;
        for (Vertex w : g.successors(e.first)) {
            if (w != e.second && closure.get(w, e.second)) {
                redundant = true;
                break;
            }
        }
        if (!redundant)
            kept.push_back(e);
    }
    return kept;
}

int graph_height(const DirectedGraph& g) {
    if (!g.root())
        fail("graph_height requires a rooted graph");
    const auto order = topological_order(g); // throws on cycles
    std::vector<int> depth(g.vertex_count(), 0);
    int best = 0;
    for (Vertex u : order)
        for (Vertex w : g.successors(u)) {
            depth[w] = std::max(depth[w], depth[u] + 1);
            best = std::max(best, depth[w]);
        }
    return best;
}

int max_total_degree(const DirectedGraph& g) {
    int best = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        best = std::max(best, g.total_degree(v));
    return best;
}

SccPartition canonical_scc(std::vector<std::vector<Vertex>> components,
                           std::vector<std::pair<int, int>> condensation_edges) {
    const int k = static_cast<int>(components.size());
    for (auto& c : components)
        std::sort(c.begin(), c.end());
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return components[a].front() < components[b].front();
    });
    std::vector<int> pos(k);
    for (int i = 0; i < k; ++i)
        pos[idx[i]] = i;

    SccPartition out;
    out.components.reserve(k);
    for (int i = 0; i < k; ++i)
        out.components.push_back(std::move(components[idx[i]]));
    out.condensation_edges.reserve(condensation_edges.size());
    for (auto [a, b] : condensation_edges)
        out.condensation_edges.emplace_back(pos[a], pos[b]);
    std::sort(out.condensation_edges.begin(), out.condensation_edges.end());
    return out;
}

SccPartition strongly_connected_components(const DirectedGraph& g) {
    const int n = g.vertex_count();

    // Kosaraju, iterative. First pass: vertices by increasing finish time.
    std::vector<Vertex> finish;
    finish.reserve(n);
    {
        std::vector<char> seen(n, 0);
        // stack of (vertex, next successor index)
        std::vector<std::pair<Vertex, std::size_t>> stack;
        for (Vertex s = 0; s < n; ++s) {
            if (seen[s])
                continue;
            seen[s] = 1;
            stack.emplace_back(s, 0);
            while (!stack.empty()) {
                auto& [u, i] = stack.back();
                const auto succ = g.successors(u);
                if (i < succ.size()) {
                    const Vertex w = succ[i++];
                    if (!seen[w]) {
                        seen[w] = 1;
                        stack.emplace_back(w, 0);
                    }
                } else {
                    finish.push_back(u);
                    stack.pop_back();
                }
            }
        }
    }

    // Second pass on the reverse graph, in decreasing finish time.
    std::vector<int> comp(n, -1);
    int k = 0;
    std::vector<Vertex> stack;
    for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
        if (comp[*it] != -1)
            continue;
        const int id = k++;
        comp[*it] = id;
        stack.assign(1, *it);
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : g.predecessors(u))
                if (comp[w] == -1) {
                    comp[w] = id;
                    stack.push_back(w);
                }
        }
    }

    std::vector<std::vector<Vertex>> components(k);
    for (Vertex v = 0; v < n; ++v)
        components[comp[v]].push_back(v);

    // Component-level edges, deduplicated; the component graph is a DAG, so
    // its transitive reduction is the canonical condensation edge set.
    std::vector<Edge> comp_edges;
    for (const Edge& e : g.edges())
        if (comp[e.first] != comp[e.second])
            comp_edges.emplace_back(comp[e.first], comp[e.second]);
    std::sort(comp_edges.begin(), comp_edges.end());
    comp_edges.erase(std::unique(comp_edges.begin(), comp_edges.end()), comp_edges.end());

    std::vector<std::pair<int, int>> reduced;
    if (k > 0) {
        const DirectedGraph cg(k, comp_edges);
        for (const Edge& e : transitive_reduction(cg))
            reduced.emplace_back(e.first, e.second);
    }
    return canonical_scc(std::move(components), std::move(reduced));
}

} // namespace pathquery
