#include "pathquery/generate.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "pathquery/errors.hpp"
#include "pathquery/rng.hpp"

namespace pathquery {

std::string family_name(Family f) {
    switch (f) {
    case Family::tree: return "tree";
    case Family::almost_tree: return "almost_tree";
    case Family::caterpillar: return "caterpillar";
    case Family::hybrid: return "hybrid";
    case Family::scc: return "scc";
    case Family::dary: return "dary";
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
    for (Family f : {Family::tree, Family::almost_tree, Family::caterpillar, Family::hybrid,
                     Family::scc, Family::dary})
        if (family_name(f) == name)
            return f;
    return std::nullopt;
}

DirectedGraph gen_tree(int n, int d, std::uint64_t seed) {
    if (n < 1)
        throw std::invalid_argument("gen_tree: n must be >= 1");
    if (n >= 2 && d < 2)
        throw std::invalid_argument("gen_tree: n >= 2 needs a degree budget d >= 2");

    std::mt19937_64 rng(seed);
    std::vector<int> degree(n, 0);
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    std::vector<Vertex> open; // vertices with remaining budget
    open.push_back(0);
    for (Vertex v = 1; v < n; ++v) {
        const Vertex parent = open[uniform_below(rng, open.size())];
        edges.emplace_back(parent, v);
        if (++degree[parent] == d)
            open.erase(std::find(open.begin(), open.end(), parent));
        degree[v] = 1;
        if (d > 1)
            open.push_back(v);
    }
    return DirectedGraph(n, std::move(edges), 0);
}

std::optional<Edge> pick_extra_edge(const DirectedGraph& tree, int d, std::mt19937_64& rng) {
    const int n = tree.vertex_count();
    const BitMatrix closure = reachability_closure(tree);

    std::vector<Edge> valid;
    for (Vertex c1 = 0; c1 < n; ++c1) {
        if (tree.total_degree(c1) + 1 > d)
            continue;
        for (Vertex c2 = 0; c2 < n; ++c2) {
            if (c1 == c2 || closure.get(c1, c2) || closure.get(c2, c1))
                continue; // comparable endpoints: transitive or cycle-creating
            if (tree.total_degree(c2) + 1 > d)
                continue;
            // if c2's tree parent is an ancestor of c1, the path
            // p(c2) -> ... -> c1 -> c2 would turn the tree edge (p(c2), c2)
            // into an unlearnable transitive edge
            const Vertex parent = tree.predecessors(c2)[0];
            if (closure.get(parent, c1))
                continue;
            valid.emplace_back(c1, c2);
        }
    }
    if (valid.empty())
        return std::nullopt;
    return valid[uniform_below(rng, valid.size())];
}

namespace {

struct GraphWithExtra {
    DirectedGraph graph;
    Edge extra;
};

GraphWithExtra make_almost_tree(int n, int d, std::uint64_t seed) {
    if (n < 4)
        throw std::invalid_argument("gen_almost_tree: n must be >= 4");
    DirectedGraph tree = gen_tree(n, d, seed);
    std::mt19937_64 rng(splitmix64(seed));
    const auto extra = pick_extra_edge(tree, d, rng);
    if (!extra)
        throw GenerationInfeasible(
            "no valid extra edge for the sampled tree: every ordered pair has comparable "
            "endpoints (transitive or cycle-creating) or exceeds the degree budget " +
            std::to_string(d));
    std::vector<Edge> edges = tree.edges();
    edges.push_back(*extra);
    return {DirectedGraph(n, std::move(edges), 0), *extra};
}

GraphWithExtra make_caterpillar(int n, std::uint64_t seed) {
    DirectedGraph plain = gen_caterpillar_plain(n);
    const int spine = n / 2;
    const int legs = spine - 1;

    // uniform pair i < j from {1..legs}
    std::mt19937_64 rng(seed);
    const std::uint64_t pairs = static_cast<std::uint64_t>(legs) * (legs - 1) / 2;
    std::uint64_t index = uniform_below(rng, pairs);
    int i = 1;
    while (index >= static_cast<std::uint64_t>(legs - i)) {
        index -= legs - i;
        ++i;
    }
    const int j = i + 1 + static_cast<int>(index);

    const Edge extra{spine + i - 1, spine + j - 1};
    std::vector<Edge> edges = plain.edges();
    edges.push_back(extra);
    return {DirectedGraph(n - 1, std::move(edges), 0), extra};
}

int dary_depth(int nodes, int arity) {
    // depth of the last node of a heap-shaped tree with `nodes` nodes
    int depth = 0;
    long long level_start = 0, level_size = 1;
    while (level_start + level_size < nodes) {
        level_start += level_size;
        level_size *= arity;
        ++depth;
    }
    return depth;
}

struct HybridShape {
    int spine = 0;
    int branch_nodes = 0;
    int depth = 0;
};

HybridShape hybrid_shape(int n, int d, int h) {
    // Fixpoint: spine = h - depth(branch part); converges because the branch
    // depth is non-decreasing in its node count.
    int t = 0;
    for (int iter = 0; iter <= h + 1; ++iter) {
        const int spine = h - t;
        const int branch = n - (2 * spine - 1);
        if (spine < 2 || branch < 1)
            throw std::invalid_argument(
                "gen_hybrid: infeasible size: need a spine of >= 2 and a non-empty branch "
                "tree (h too small or too close to n/2)");
        const int t2 = dary_depth(branch, d);
        if (t2 == t)
            return {spine, branch, t};
        t = t2;
    }
    throw std::invalid_argument("gen_hybrid: sizing did not converge (h too small)");
}

GraphWithExtra make_hybrid(int n, int d, int h, std::uint64_t seed) {
    if (n < 8)
        throw std::invalid_argument("gen_hybrid: n must be >= 8");
    if (d < 2)
        throw std::invalid_argument("gen_hybrid: branching factor d must be >= 2");
    if (h < 3)
        throw std::invalid_argument("gen_hybrid: h must be >= 3");

    const HybridShape shape = hybrid_shape(n, d, h);
    const int s = shape.spine;
    const int branch0 = 2 * s - 1; // first branch-tree vertex

    std::vector<Edge> edges;
    edges.reserve(n);
    for (int i = 1; i < s; ++i)
        edges.emplace_back(i - 1, i); // spine
    for (int i = 0; i + 1 < s; ++i)
        edges.emplace_back(i, s + i); // legs under all but the last spine vertex
    edges.emplace_back(s - 1, branch0); // branch-tree root under the last spine vertex
    for (int j = 1; j < shape.branch_nodes; ++j)
        edges.emplace_back(branch0 + (j - 1) / d, branch0 + j);

    std::vector<Vertex> branch_leaves;
    for (int j = 0; j < shape.branch_nodes; ++j)
        if (static_cast<long long>(j) * d + 1 >= shape.branch_nodes)
            branch_leaves.push_back(branch0 + j);

    std::mt19937_64 rng(seed);
    const Vertex leg = s + static_cast<Vertex>(uniform_below(rng, s - 1));
    const Vertex leaf = branch_leaves[uniform_below(rng, branch_leaves.size())];
    const Edge extra{leg, leaf};
    edges.push_back(extra);
    return {DirectedGraph(n, std::move(edges), 0), extra};
}

} // namespace

DirectedGraph gen_almost_tree(int n, int d, std::uint64_t seed) {
    return make_almost_tree(n, d, seed).graph;
}

DirectedGraph gen_caterpillar_plain(int n) {
    if (n < 6 || n % 2 != 0)
        throw std::invalid_argument("gen_caterpillar: n must be even and >= 6");
    const int spine = n / 2; // vertices 0..spine-1 are v_1..v_{n/2}
    std::vector<Edge> edges;
    edges.reserve(n - 2);
    for (int i = 1; i < spine; ++i)
        edges.emplace_back(i - 1, i);
    for (int i = 1; i < spine; ++i) // leg v_{n/2+i} under v_i
        edges.emplace_back(i - 1, spine + i - 1);
    return DirectedGraph(n - 1, std::move(edges), 0);
}

DirectedGraph gen_caterpillar(int n, std::uint64_t seed) {
    return make_caterpillar(n, seed).graph;
}

DirectedGraph gen_hybrid(int n, int d, int h, std::uint64_t seed) {
    return make_hybrid(n, d, h, seed).graph;
}

DirectedGraph gen_scc(int n, int k, std::uint64_t seed) {
    if (n < 1)
        throw std::invalid_argument("gen_scc: n must be >= 1");
    if (k < 1 || k > n)
        throw std::invalid_argument("gen_scc: need 1 <= k <= n");

    std::mt19937_64 rng(seed);

    // random partition: shuffled vertices cut at k-1 of the n-1 gaps
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[uniform_below(rng, static_cast<std::uint64_t>(i) + 1)]);
    std::vector<int> gaps(std::max(0, n - 1));
    std::iota(gaps.begin(), gaps.end(), 1);
    for (int i = 0; i < k - 1; ++i)
        std::swap(gaps[i], gaps[i + uniform_below(rng, gaps.size() - i)]);
    std::vector<int> cuts(gaps.begin(), gaps.begin() + (k - 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(n);

    std::vector<std::vector<Vertex>> comps;
    comps.reserve(k);
    int begin = 0;
    for (int cut : cuts) {
        comps.emplace_back(order.begin() + begin, order.begin() + cut);
        begin = cut;
    }

    std::vector<Edge> edges;
    for (const auto& c : comps)
        if (c.size() >= 2)
            for (std::size_t i = 0; i < c.size(); ++i)
                edges.emplace_back(c[i], c[(i + 1) % c.size()]);

    // random DAG over components, then its transitive reduction: the promise
    // (no transitive cross edges) holds by construction
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = k - 1; i > 0; --i)
        std::swap(perm[i], perm[uniform_below(rng, static_cast<std::uint64_t>(i) + 1)]);
    std::vector<Edge> comp_edges;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (perm[a] < perm[b] && (rng() & 1))
                comp_edges.emplace_back(a, b);
    const DirectedGraph comp_dag(k, std::move(comp_edges));
    for (const Edge& e : transitive_reduction(comp_dag)) {
        const auto& from = comps[e.first];
        const auto& to = comps[e.second];
        edges.emplace_back(from[uniform_below(rng, from.size())],
                           to[uniform_below(rng, to.size())]);
    }
    return DirectedGraph(n, std::move(edges));
}

DirectedGraph complete_dary_tree(int n, int arity) {
    if (n < 1)
        throw std::invalid_argument("complete_dary_tree: n must be >= 1");
    if (n >= 2 && arity < 1)
        throw std::invalid_argument("complete_dary_tree: arity must be >= 1");
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (int j = 1; j < n; ++j)
        edges.emplace_back((j - 1) / arity, j);
    return DirectedGraph(n, std::move(edges), 0);
}

GeneratedInstance generate(const GenSpec& spec) {
    GeneratedInstance out;
    out.meta.family = family_name(spec.family);
    out.meta.seed = spec.seed;
    out.meta.n = spec.n;

    switch (spec.family) {
    case Family::tree:
        out.graph = gen_tree(spec.n, spec.d, spec.seed);
        out.meta.d = spec.d;
        break;
    case Family::almost_tree: {
        auto made = make_almost_tree(spec.n, spec.d, spec.seed);
        out.graph = std::move(made.graph);
        out.meta.extra_edge = made.extra;
        out.meta.d = spec.d;
        break;
    }
    case Family::caterpillar: {
        auto made = make_caterpillar(spec.n, spec.seed);
        out.graph = std::move(made.graph);
        out.meta.extra_edge = made.extra;
        out.meta.d = max_total_degree(out.graph);
        break;
    }
    case Family::hybrid: {
        auto made = make_hybrid(spec.n, spec.d, spec.h, spec.seed);
        out.graph = std::move(made.graph);
        out.meta.extra_edge = made.extra;
        out.meta.d = spec.d;
        const HybridShape shape = hybrid_shape(spec.n, spec.d, spec.h);
        out.meta.spine_length = shape.spine;
        out.meta.branch_nodes = shape.branch_nodes;
        break;
    }
    case Family::scc:
        out.graph = gen_scc(spec.n, spec.k, spec.seed);
        out.meta.k = spec.k;
        break;
    case Family::dary:
        out.graph = complete_dary_tree(spec.n, spec.d);
        out.meta.d = spec.d;
        break;
    }

    out.meta.vertices = out.graph.vertex_count();
    if (spec.family != Family::scc)
        out.meta.h = graph_height(out.graph);
    return out;
}

} // namespace pathquery
