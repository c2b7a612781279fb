#include "pathquery/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace pathquery {

QueryOracle::QueryOracle(DirectedGraph hidden, std::uint64_t seed)
    : hidden_(std::move(hidden)), closure_(reachability_closure(hidden_)), seed_(seed),
      rng_(seed) {
    const std::size_t pairs =
        static_cast<std::size_t>(hidden_.vertex_count()) * hidden_.vertex_count();
    seen_.assign((pairs + 63) / 64, 0);
}

bool QueryOracle::query(Vertex u, Vertex v, std::string_view phase) {
    const int n = hidden_.vertex_count();
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw std::invalid_argument("query: vertex out of range");

    const bool bit = closure_.get(u, v);

    ++total_;
    ++per_phase_[std::string(phase)];
    const std::size_t pair = static_cast<std::size_t>(u) * n + v;
    const std::uint64_t mask = std::uint64_t{1} << (pair % 64);
    if (!(seen_[pair / 64] & mask)) {
        seen_[pair / 64] |= mask;
        ++distinct_;
    }

    auto mix = [this](std::uint64_t value) {
        for (int b = 0; b < 8; ++b) {
            hash_ ^= (value >> (8 * b)) & 0xFF;
            hash_ *= 1099511628211ULL;
        }
    };
    mix(static_cast<std::uint64_t>(u));
    mix(static_cast<std::uint64_t>(v));
    mix(bit ? 1 : 0);
    for (char c : phase) {
        hash_ ^= static_cast<unsigned char>(c);
        hash_ *= 1099511628211ULL;
    }

    if (record_)
        transcript_.push_back(std::to_string(u) + "," + std::to_string(v) + "," +
                              (bit ? "1" : "0") + "," + std::string(phase));
    return bit;
}

RelativeView QueryOracle::relative_view(Vertex base, std::span<const Vertex> working,
                                        std::string_view phase) {
    assert(std::is_sorted(working.begin(), working.end()));
    if (!std::binary_search(working.begin(), working.end(), base))
        throw std::invalid_argument("relative_view: base vertex not in working set");

    RelativeView view;
    view.base = base;
    view.descendants.reserve(working.size());
    view.ancestors.reserve(working.size());
    for (Vertex u : working) {
        if (u == base)
            continue;
        if (query(base, u, phase))
            view.descendants.push_back(u);
        if (query(u, base, phase))
            view.ancestors.push_back(u);
    }
    view.descendants.insert(
        std::lower_bound(view.descendants.begin(), view.descendants.end(), base), base);
    view.ancestors.insert(std::lower_bound(view.ancestors.begin(), view.ancestors.end(), base),
                          base);
    return view;
}

std::uint64_t QueryOracle::phase_queries(std::string_view phase) const {
    const auto it = per_phase_.find(phase);
    return it == per_phase_.end() ? 0 : it->second;
}

} // namespace pathquery
