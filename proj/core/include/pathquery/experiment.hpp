#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pathquery/generate.hpp"
#include "pathquery/graph.hpp"
#include "pathquery/tree_learner.hpp"

namespace pathquery {

enum class Algo { scc, almost_tree };

std::string algo_name(Algo a);
std::optional<Algo> parse_algo(std::string_view name);

/// One generated-instance learner run, verified against ground truth.
struct ExperimentRecord {
    std::string family;
    int n = 0; ///< requested size parameter
    int d = 0; ///< learner degree bound (0 for scc)
    int h = 0; ///< instance height (0 for scc)
    int k = 0; ///< component count
    std::uint64_t seed = 0; ///< row seed; generator and oracle seeds derive from it
    std::string algo;
    std::uint64_t total_queries = 0;
    std::map<std::string, std::uint64_t> phase_queries;
    std::uint64_t retries = 0;
    bool success = false;
    double wall_ms = 0.0;
    double norm_tree = 0.0; ///< queries / (v * log2(v)^3 + v * h)
    double norm_scc = 0.0;  ///< queries / (v * k)
    std::uint64_t transcript_hash = 0;
    int vertices = 0;
    std::string error;

    std::uint64_t phase_root() const;
    std::uint64_t phase_layered() const;
    std::uint64_t phase_cross() const;
};

struct RunKnobs {
    int degree_override = 0; ///< 0 = derive the bound from the family
    int retry_cap_multiplier = 48;
};

/// Degree bound handed to the learner for a family: the promised budget for
/// tree/almost_tree, the structural maximum for the fixed constructions.
int learner_degree_bound(const GenSpec& spec);

/// Generates the instance from seeds derived off `row_seed` (generator seed =
/// splitmix64(row_seed), oracle seed = splitmix64 of that), runs the learner,
/// and verifies the output against ground truth. Promise violations are
/// reported as success=0 with the error message, not exceptions.
ExperimentRecord run_experiment(GenSpec spec, Algo algo, const RunKnobs& knobs,
                                std::uint64_t row_seed);

/// CSV schema, fixed order.
std::string csv_header();
std::string csv_row(const ExperimentRecord& rec);
ExperimentRecord parse_csv_row(const std::string& line);

struct BenchCell {
    GenSpec spec;
    Algo algo = Algo::almost_tree;
};

/// Row seeds are splitmix64(splitmix64(base_seed) + row_index) with rows in
/// cell-major order, so any row reruns from its own CSV seed alone.
std::vector<ExperimentRecord> run_bench(const std::vector<BenchCell>& cells, int seeds_per_cell,
                                        std::uint64_t base_seed, const RunKnobs& knobs);

double median(std::vector<double> values);

/// Per-cell medians of total_queries plus the ratio between consecutive
/// cells, in cell order. `cell_of` must map a record back to its cell index.
struct BenchSummary {
    std::vector<double> cell_medians;
    std::vector<double> adjacent_ratios;
};
BenchSummary summarize_bench(const std::vector<ExperimentRecord>& records, int cells,
                             int seeds_per_cell);

} // namespace pathquery
