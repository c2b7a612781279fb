#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathquery/graph.hpp"

namespace pathquery {

/// Reachability of a vertex relative to a working subset: which members it
/// reaches and which members reach it. Both sets contain the base vertex.
struct RelativeView {
    Vertex base = 0;
    std::vector<Vertex> descendants;
    std::vector<Vertex> ancestors;
};

/// The only gateway between learners and a hidden graph. Answers path queries,
/// counts every one of them (per phase label and in total), and carries the
/// seeded companion RNG learners draw their randomness from.
///
/// Answers are a pure function of the hidden graph; nothing is cached, so a
/// learner that re-queries pays for it.
class QueryOracle {
  public:
    explicit QueryOracle(DirectedGraph hidden, std::uint64_t seed = 0);

    int vertex_count() const { return hidden_.vertex_count(); }

    /// Q(u, v): 1 iff a directed path (length >= 0) from u to v exists.
    /// Out-of-range vertices raise std::invalid_argument without counting.
    bool query(Vertex u, Vertex v, std::string_view phase);

    /// Both reachability sets of `base` relative to `working` using exactly
    /// 2(|working| - 1) queries. `working` must be sorted, unique and contain
    /// `base`.
    RelativeView relative_view(Vertex base, std::span<const Vertex> working,
                               std::string_view phase);

    std::uint64_t total_queries() const { return total_; }
    std::uint64_t distinct_queries() const { return distinct_; }
    std::uint64_t phase_queries(std::string_view phase) const;
    const std::map<std::string, std::uint64_t, std::less<>>& queries_by_phase() const {
        return per_phase_;
    }

    /// FNV-1a over every (u, v, bit, phase) record; always maintained.
    std::uint64_t transcript_hash() const { return hash_; }

    void record_transcript(bool on) { record_ = on; }
    const std::vector<std::string>& transcript() const { return transcript_; }

    std::uint64_t seed() const { return seed_; }
    std::mt19937_64& rng() { return rng_; }

  private:
    DirectedGraph hidden_;
    BitMatrix closure_;
    std::uint64_t seed_;
    std::mt19937_64 rng_;
    std::uint64_t total_ = 0;
    std::uint64_t distinct_ = 0;
    std::map<std::string, std::uint64_t, std::less<>> per_phase_;
    std::vector<std::uint64_t> seen_; // n*n bitset over ordered pairs
    std::uint64_t hash_ = 1469598103934665603ULL;
    bool record_ = false;
    std::vector<std::string> transcript_;
};

} // namespace pathquery
