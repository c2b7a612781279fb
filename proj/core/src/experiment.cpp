#include "pathquery/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pathquery/errors.hpp"
#include "pathquery/oracle.hpp"
#include "pathquery/rng.hpp"
#include "pathquery/scc_learner.hpp"

namespace pathquery {

std::string algo_name(Algo a) { return a == Algo::scc ? "scc" : "almost_tree"; }

std::optional<Algo> parse_algo(std::string_view name) {
    if (name == "scc")
        return Algo::scc;
    if (name == "almost_tree")
        return Algo::almost_tree;
    return std::nullopt;
}

namespace {

std::uint64_t phase_sum(const std::map<std::string, std::uint64_t>& phases,
                        std::string_view prefix) {
    std::uint64_t total = 0;
    for (const auto& [name, count] : phases)
        if (name.rfind(prefix, 0) == 0)
            total += count;
    return total;
}

} // namespace

std::uint64_t ExperimentRecord::phase_root() const { return phase_sum(phase_queries, "root"); }
std::uint64_t ExperimentRecord::phase_layered() const {
    return phase_sum(phase_queries, "layered");
}
std::uint64_t ExperimentRecord::phase_cross() const { return phase_sum(phase_queries, "cross"); }

int learner_degree_bound(const GenSpec& spec) {
    switch (spec.family) {
    case Family::tree:
    case Family::almost_tree:
        return spec.d;
    case Family::caterpillar:
        return 3; // spine vertices: one parent, spine child, leg
    case Family::hybrid:
        return std::max(3, spec.d + 1);
    case Family::dary:
        return spec.d + 1;
    case Family::scc:
        return 0;
    }
    return 0;
}

ExperimentRecord run_experiment(GenSpec spec, Algo algo, const RunKnobs& knobs,
                                std::uint64_t row_seed) {
    ExperimentRecord rec;
    rec.family = family_name(spec.family);
    rec.algo = algo_name(algo);
    rec.seed = row_seed;
    rec.n = spec.n;

    spec.seed = splitmix64(row_seed);
    const std::uint64_t oracle_seed = splitmix64(spec.seed);

    const GeneratedInstance inst = generate(spec);
    const DirectedGraph& hidden = inst.graph;
    rec.vertices = hidden.vertex_count();
    rec.h = inst.meta.h.value_or(0);

    const SccPartition truth = strongly_connected_components(hidden);
    rec.k = static_cast<int>(truth.components.size());

    QueryOracle oracle(hidden, oracle_seed);
    const auto start = std::chrono::steady_clock::now();
    try {
        if (algo == Algo::scc) {
            const LearnedScc learned = learn_scc(oracle);
            const SccPartition canon =
                canonical_scc(learned.components, learned.condensation_edges);
            rec.success = canon == truth;
        } else {
            rec.d = knobs.degree_override > 0 ? knobs.degree_override : learner_degree_bound(spec);
            AlmostTreeLearner learner(oracle, {rec.d, knobs.retry_cap_multiplier});
            const ReconstructionResult result = learner.reconstruct();
            rec.success = result.graph == hidden;
            rec.retries = result.stats.split_retries;
            if (!rec.success)
                rec.error = "reconstructed edge set differs from ground truth";
        }
    } catch (const PromiseViolation& e) {
        rec.success = false;
        rec.error = e.what();
    }
    const auto stop = std::chrono::steady_clock::now();
    rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();

    rec.total_queries = oracle.total_queries();
    for (const auto& [name, count] : oracle.queries_by_phase())
        rec.phase_queries[name] = count;
    rec.transcript_hash = oracle.transcript_hash();

    const double v = rec.vertices;
    const double lg = v > 1 ? std::log2(v) : 0.0;
    const double tree_denom = v * lg * lg * lg + v * rec.h;
    rec.norm_tree = tree_denom > 0 ? rec.total_queries / tree_denom : 0.0;
    const double scc_denom = v * rec.k;
    rec.norm_scc = scc_denom > 0 ? rec.total_queries / scc_denom : 0.0;
    return rec;
}

std::string csv_header() {
    return "family,n,d,h,k,seed,algo,total_queries,phase_root,phase_layered,phase_cross,"
           "retries,success,wall_ms,norm_tree,norm_scc";
}

std::string csv_row(const ExperimentRecord& rec) {
    std::ostringstream out;
    out << rec.family << ',' << rec.n << ',' << rec.d << ',' << rec.h << ',' << rec.k << ','
        << rec.seed << ',' << rec.algo << ',' << rec.total_queries << ',' << rec.phase_root()
        << ',' << rec.phase_layered() << ',' << rec.phase_cross() << ',' << rec.retries << ','
        << (rec.success ? 1 : 0) << ',' << rec.wall_ms << ',' << rec.norm_tree << ','
        << rec.norm_scc;
    return out.str();
}

ExperimentRecord parse_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        fields.push_back(field);
    if (fields.size() != 16)
        throw std::invalid_argument("CSV row must have 16 fields, got " +
                                    std::to_string(fields.size()));
    ExperimentRecord rec;
    rec.family = fields[0];
    rec.n = std::stoi(fields[1]);
    rec.d = std::stoi(fields[2]);
    rec.h = std::stoi(fields[3]);
    rec.k = std::stoi(fields[4]);
    rec.seed = std::stoull(fields[5]);
    rec.algo = fields[6];
    rec.total_queries = std::stoull(fields[7]);
    rec.phase_queries["root"] = std::stoull(fields[8]);
    rec.phase_queries["layered"] = std::stoull(fields[9]);
    rec.phase_queries["cross"] = std::stoull(fields[10]);
    rec.retries = std::stoull(fields[11]);
    rec.success = fields[12] == "1";
    rec.wall_ms = std::stod(fields[13]);
    rec.norm_tree = std::stod(fields[14]);
    rec.norm_scc = std::stod(fields[15]);
    return rec;
}

std::vector<ExperimentRecord> run_bench(const std::vector<BenchCell>& cells, int seeds_per_cell,
                                        std::uint64_t base_seed, const RunKnobs& knobs) {
    std::vector<ExperimentRecord> records;
    records.reserve(cells.size() * seeds_per_cell);
    const std::uint64_t stream = splitmix64(base_seed);
    std::uint64_t row = 0;
    for (const BenchCell& cell : cells)
        for (int s = 0; s < seeds_per_cell; ++s, ++row)
            records.push_back(run_experiment(cell.spec, cell.algo, knobs,
                                             splitmix64(stream + row)));
    return records;
}

double median(std::vector<double> values) {
    if (values.empty())
        return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1)
        return values[mid];
    return (values[mid - 1] + values[mid]) / 2.0;
}

BenchSummary summarize_bench(const std::vector<ExperimentRecord>& records, int cells,
                             int seeds_per_cell) {
    BenchSummary summary;
    for (int c = 0; c < cells; ++c) {
        std::vector<double> totals;
        for (int s = 0; s < seeds_per_cell; ++s)
            totals.push_back(static_cast<double>(
                records[static_cast<std::size_t>(c) * seeds_per_cell + s].total_queries));
        summary.cell_medians.push_back(median(std::move(totals)));
    }
    for (int c = 1; c < cells; ++c)
        summary.adjacent_ratios.push_back(
            summary.cell_medians[c] / std::max(1.0, summary.cell_medians[c - 1]));
    return summary;
}

} // namespace pathquery
