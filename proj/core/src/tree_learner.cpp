#include "pathquery/tree_learner.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pathquery/errors.hpp"
#include "pathquery/rng.hpp"

namespace pathquery {

namespace {

constexpr std::string_view kRoot = "root";
constexpr std::string_view kBase = "layered.base";
constexpr std::string_view kSearch = "layered.search";
constexpr std::string_view kParent = "layered.parent";
constexpr std::string_view kCrossScan = "cross.scan";
constexpr std::string_view kCrossPin = "cross.pinpoint";

int ceil_log2(std::size_t m) {
    int bits = 0;
    std::size_t v = 1;
    while (v < m) {
        v <<= 1;
        ++bits;
    }
    return bits;
}

std::vector<Vertex> sorted_difference(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::vector<Vertex> out;
    out.reserve(a.size());
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<Vertex> sorted_intersection(const std::vector<Vertex>& a,
                                        const std::vector<Vertex>& b) {
    std::vector<Vertex> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

LayeredGraph LayeredGraph::build(int n, Vertex root, std::vector<Edge> edges) {
    if (root < 0 || root >= n)
        throw PromiseViolation("layered graph: root out of range");
    if (static_cast<int>(edges.size()) != n - 1)
        throw PromiseViolation("layered graph: expected " + std::to_string(n - 1) +
                               " edges, got " + std::to_string(edges.size()));

    LayeredGraph g;
    g.root = root;
    g.parent.assign(n, -1);
    g.children.assign(n, {});
    for (const Edge& e : edges) {
        if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n)
            throw PromiseViolation("layered graph: edge endpoint out of range");
        if (e.second == root || g.parent[e.second] != -1)
            throw PromiseViolation("layered graph: vertex " + std::to_string(e.second) +
                                   " has two parents or is the root");
        g.parent[e.second] = e.first;
        g.children[e.first].push_back(e.second);
    }
    for (auto& c : g.children)
        std::sort(c.begin(), c.end());

    // all vertices reachable from the root
    std::vector<Vertex> order{root};
    order.reserve(n);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Vertex c : g.children[order[i]])
            order.push_back(c);
    if (static_cast<int>(order.size()) != n)
        throw PromiseViolation("layered graph: not a spanning tree of the working vertices");

    g.subtree_leaves.assign(n, {});
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Vertex v = *it;
        if (g.children[v].empty()) {
            g.subtree_leaves[v] = {v};
            continue;
        }
        for (Vertex c : g.children[v])
            g.subtree_leaves[v].insert(g.subtree_leaves[v].end(), g.subtree_leaves[c].begin(),
                                       g.subtree_leaves[c].end());
        std::sort(g.subtree_leaves[v].begin(), g.subtree_leaves[v].end());
    }

    std::sort(edges.begin(), edges.end());
    g.edges = std::move(edges);
    return g;
}

AlmostTreeLearner::AlmostTreeLearner(QueryOracle& oracle, LearnerOptions options)
    : oracle_(oracle), options_(options) {
    if (options_.degree_bound < 2)
        throw std::invalid_argument("degree bound must be >= 2");
    if (options_.retry_cap_multiplier < 1)
        throw std::invalid_argument("retry cap multiplier must be >= 1");
}

Vertex AlmostTreeLearner::discover_root(const std::vector<Vertex>& working) {
    if (working.empty())
        throw std::invalid_argument("discover_root: empty working set");
    // tournament: whoever reaches the current candidate replaces it
    Vertex cand = working.front();
    for (std::size_t i = 1; i < working.size(); ++i)
        if (oracle_.query(working[i], cand, kRoot))
            cand = working[i];
    // verification sweep: nothing else may reach the root
    for (Vertex u : working)
        if (u != cand && oracle_.query(u, cand, kRoot))
            throw PromiseViolation("root discovery: vertex " + std::to_string(u) +
                                   " reaches the root candidate " + std::to_string(cand));
    return cand;
}

AlmostTreeLearner::SearchOutcome AlmostTreeLearner::search(const std::vector<Vertex>& working) {
    SizeCache cache;
    return search_impl(working, cache);
}

AlmostTreeLearner::SearchOutcome AlmostTreeLearner::search_impl(const std::vector<Vertex>& working,
                                                                SizeCache& cache) {
    ++stats_.search_calls;
    const auto m = static_cast<long long>(working.size());
    const long long d = options_.degree_bound;

    const Vertex probe = working[uniform_below(oracle_.rng(), working.size())];
    RelativeView view = oracle_.relative_view(probe, working, kSearch);
    const auto dsize = static_cast<long long>(view.descendants.size());
    cache[probe] = static_cast<int>(dsize);

    // exact rational thresholds: in band iff |V| <= 3d|D| and 3|D| <= |V|
    if (3 * dsize > m)
        return {};
    if (3 * d * dsize >= m)
        return {true, probe, std::move(view), 0};

    // descendant set too small: randomized binary search over the ancestors
    std::vector<Vertex> pool = view.ancestors;
    int iterations = 0;
    while (!pool.empty()) {
        ++iterations;
        ++stats_.binary_search_iterations;
        const Vertex pick = pool[uniform_below(oracle_.rng(), pool.size())];
        RelativeView pv = oracle_.relative_view(pick, working, kSearch);
        const auto psize = static_cast<long long>(pv.descendants.size());
        cache[pick] = static_cast<int>(psize);
        if (3 * d * psize >= m && 3 * psize <= m)
            return {true, pick, std::move(pv), iterations};
        const std::size_t before = pool.size();
        if (3 * psize > m) {
            pool = sorted_intersection(pool, pv.descendants);
            pool.erase(std::remove(pool.begin(), pool.end(), pick), pool.end());
        } else {
            pool = sorted_difference(pool, pv.descendants);
        }
        assert(pool.size() < before);
        (void)before;
    }
    SearchOutcome out;
    out.loop_iterations = iterations;
    return out;
}

Vertex AlmostTreeLearner::find_parent(Vertex v, const std::vector<Vertex>& working) {
    // ancestors of v within the working set, then the shared implementation
    std::vector<Vertex> ancestors;
    for (Vertex u : working)
        if (u != v && oracle_.query(u, v, kParent))
            ancestors.push_back(u);
    ancestors.insert(std::lower_bound(ancestors.begin(), ancestors.end(), v), v);
    SizeCache cache;
    return find_parent_impl(v, working, ancestors, cache);
}

Vertex AlmostTreeLearner::find_parent_impl(Vertex v, const std::vector<Vertex>& working,
                                           const std::vector<Vertex>& ancestors,
                                           SizeCache& cache) {
    Vertex best = -1;
    int best_size = 0;
    for (Vertex a : ancestors) {
        if (a == v)
            continue;
        if (best == -1 && ancestors.size() == 2) // singleton candidate: no probe needed
            return a;
        int size;
        if (const auto it = cache.find(a); it != cache.end()) {
            size = it->second;
        } else {
            size = 1;
            for (Vertex u : working)
                if (u != a && oracle_.query(a, u, kParent))
                    ++size;
            cache[a] = size;
        }
        if (best == -1 || size < best_size) { // ties keep the smaller index
            best = a;
            best_size = size;
        }
    }
    if (best == -1)
        throw PromiseViolation("find_parent: vertex " + std::to_string(v) +
                               " has no ancestor in the working set");
    return best;
}

AlmostTreeLearner::SplitResult
AlmostTreeLearner::split_working_set(const std::vector<Vertex>& working) {
    SizeCache cache;
    return split_impl(working, cache);
}

AlmostTreeLearner::SplitResult AlmostTreeLearner::split_impl(const std::vector<Vertex>& working,
                                                             SizeCache& cache) {
    if (working.size() < 3)
        throw std::invalid_argument("split: working set must have >= 3 vertices");
    ++stats_.split_calls;
    const long long cap = static_cast<long long>(options_.retry_cap_multiplier) *
                          options_.degree_bound * ceil_log2(working.size());
    for (long long attempt = 0; attempt < cap; ++attempt) {
        SearchOutcome found = search_impl(working, cache);
        if (!found.splittable) {
            ++stats_.split_retries;
            continue;
        }
        const Vertex parent = find_parent_impl(found.vertex, working, found.view.ancestors, cache);
        SplitResult result;
        result.inside = std::move(found.view.descendants);
        result.outside = sorted_difference(working, result.inside);
        result.parent_edge = {parent, found.vertex};
        // split balance, guaranteed by the in-band thresholds
        assert(3 * static_cast<long long>(options_.degree_bound) * result.inside.size() >=
               working.size());
        assert(3 * result.inside.size() <= working.size());
        return result;
    }
    throw PromiseViolation("split: no splittable vertex after " + std::to_string(cap) +
                           " search attempts on a working set of " +
                           std::to_string(working.size()));
}

std::vector<Edge> AlmostTreeLearner::reconstruct_layered(const std::vector<Vertex>& working) {
    depth_limit_ = static_cast<int>(working.size());
    return layered_impl(working, 1);
}

std::vector<Edge> AlmostTreeLearner::layered_impl(const std::vector<Vertex>& working, int depth) {
    if (depth > depth_limit_)
        throw PromiseViolation("layered reconstruction: recursion deeper than the vertex count");
    stats_.max_recursion_depth = std::max(stats_.max_recursion_depth, depth);

    if (working.size() <= 1)
        return {};
    if (working.size() == 2) {
        const Vertex u = working[0], v = working[1];
        std::vector<Edge> found;
        if (oracle_.query(u, v, kBase))
            found.emplace_back(u, v);
        if (oracle_.query(v, u, kBase))
            found.emplace_back(v, u);
        if (found.size() == 2)
            throw PromiseViolation("two-vertex base case: " + std::to_string(u) + " and " +
                                   std::to_string(v) + " are mutually reachable");
        return found;
    }

    SizeCache cache;
    SplitResult split = split_impl(working, cache);
    std::vector<Edge> edges = layered_impl(split.inside, depth + 1);
    std::vector<Edge> rest = layered_impl(split.outside, depth + 1);
    edges.insert(edges.end(), rest.begin(), rest.end());
    edges.push_back(split.parent_edge);
    return edges;
}

std::optional<TopVertexWitness> AlmostTreeLearner::find_witness(const LayeredGraph& layered,
                                                                Vertex from) {
    const auto& siblings = layered.children[from];
    for (Vertex child : siblings) {
        for (Vertex other : siblings) {
            if (other == child)
                continue;
            for (Vertex leaf : layered.subtree_leaves[other])
                if (oracle_.query(child, leaf, kCrossScan))
                    return TopVertexWitness{from, child, leaf};
        }
    }
    for (Vertex child : siblings)
        if (auto witness = find_witness(layered, child))
            return witness;
    return std::nullopt;
}

Edge AlmostTreeLearner::pinpoint_cross_edge(const LayeredGraph& layered,
                                            const TopVertexWitness& witness) {
    // descend from the witness child toward the tail
    Vertex tail = witness.child;
    for (;;) {
        Vertex next = -1;
        for (Vertex child : layered.children[tail]) {
            if (!oracle_.query(child, witness.leaf, kCrossPin))
                continue;
            if (next != -1)
                throw PromiseViolation("pinpoint: two children of " + std::to_string(tail) +
                                       " reach the witness leaf");
            next = child;
        }
        if (next == -1)
            break;
        tail = next;
    }

    // ascend from the leaf toward the head: the highest ancestor strictly
    // below the top vertex that the tail still reaches
    if (!oracle_.query(tail, witness.leaf, kCrossPin))
        throw PromiseViolation("pinpoint: tail does not reach the witness leaf");
    Vertex head = witness.leaf;
    while (layered.parent[head] != -1 && layered.parent[head] != witness.top &&
           oracle_.query(tail, layered.parent[head], kCrossPin))
        head = layered.parent[head];

    if (layered.parent[head] == tail)
        throw PromiseViolation("pinpoint: recovered edge already belongs to the layered graph");
    return {tail, head};
}

std::optional<Edge> AlmostTreeLearner::find_cross_edge(const LayeredGraph& layered) {
    const auto witness = find_witness(layered, layered.root);
    if (!witness)
        return std::nullopt;
    return pinpoint_cross_edge(layered, *witness);
}

ReconstructionResult AlmostTreeLearner::reconstruct() {
    const int n = oracle_.vertex_count();
    if (n == 0)
        return {DirectedGraph(), std::nullopt, stats_};

    std::vector<Vertex> working(n);
    std::iota(working.begin(), working.end(), 0);

    const Vertex root = discover_root(working);
    std::vector<Edge> edges = reconstruct_layered(working);
    const LayeredGraph layered = LayeredGraph::build(n, root, edges);

    ReconstructionResult result;
    result.cross_edge = find_cross_edge(layered);
    std::vector<Edge> all = layered.edges;
    if (result.cross_edge)
        all.push_back(*result.cross_edge);
    try {
        result.graph = DirectedGraph(n, std::move(all), root);
    } catch (const std::invalid_argument& e) {
        throw PromiseViolation(std::string("reconstructed edges are not a valid graph: ") +
                               e.what());
    }
    result.stats = stats_;
    return result;
}

} // namespace pathquery
