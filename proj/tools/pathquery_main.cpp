// pathquery: generate hidden-graph instances, run path-query learners against
// counted oracles, and benchmark query counts across size grids.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathquery/almost_tree.hpp"
#include "pathquery/errors.hpp"
#include "pathquery/experiment.hpp"
#include "pathquery/generate.hpp"
#include "pathquery/io.hpp"
#include "pathquery/oracle.hpp"
#include "pathquery/rng.hpp"
#include "pathquery/scc_learner.hpp"
#include "pathquery/tree_learner.hpp"

namespace {

using nlohmann::json;
using namespace pathquery;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitInvalid = 2;

json record_to_json(const ExperimentRecord& rec) {
    json j;
    j["family"] = rec.family;
    j["n"] = rec.n;
    j["d"] = rec.d;
    j["h"] = rec.h;
    j["k"] = rec.k;
    j["seed"] = rec.seed;
    j["algo"] = rec.algo;
    j["total_queries"] = rec.total_queries;
    j["phase_queries"] = rec.phase_queries;
    j["retries"] = rec.retries;
    j["success"] = rec.success;
    j["wall_ms"] = rec.wall_ms;
    j["norm_tree"] = rec.norm_tree;
    j["norm_scc"] = rec.norm_scc;
    j["transcript_hash"] = rec.transcript_hash;
    j["vertices"] = rec.vertices;
    if (!rec.error.empty())
        j["error"] = rec.error;
    return j;
}

int cmd_gen(const GenSpec& spec, const std::string& out_path) {
    const GeneratedInstance inst = generate(spec);
    save_graph(inst.graph, out_path);
    save_meta(inst.meta, meta_path_for(out_path));
    std::cout << "wrote " << out_path << " (" << inst.graph.vertex_count() << " vertices, "
              << inst.graph.edge_count() << " edges) and " << meta_path_for(out_path) << "\n";
    return kExitOk;
}

int cmd_learn(const std::string& graph_path, Algo algo, std::uint64_t seed, int degree,
              int retry_mult, const std::string& out_path, const std::string& transcript_path) {
    const DirectedGraph hidden = load_graph(graph_path);

    ExperimentRecord rec;
    rec.family = "file";
    rec.algo = algo_name(algo);
    rec.seed = seed;
    rec.n = hidden.vertex_count();
    rec.vertices = hidden.vertex_count();
    const SccPartition truth = strongly_connected_components(hidden);
    rec.k = static_cast<int>(truth.components.size());
    if (hidden.root() && is_acyclic(hidden))
        rec.h = graph_height(hidden);

    QueryOracle oracle(hidden, seed);
    if (!transcript_path.empty())
        oracle.record_transcript(true);
    json result;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (algo == Algo::scc) {
            const LearnedScc learned = learn_scc(oracle);
            rec.success = canonical_scc(learned.components, learned.condensation_edges) == truth;
            result["components"] = learned.components;
            result["condensation_edges"] = learned.condensation_edges;
        } else {
            rec.d = degree > 0 ? degree : max_total_degree(hidden);
            AlmostTreeLearner learner(oracle, {rec.d, retry_mult});
            const ReconstructionResult res = learner.reconstruct();
            rec.success = res.graph == hidden;
            rec.retries = res.stats.split_retries;
            result = json::parse(graph_to_json(res.graph));
            result["cross_edge"] = res.cross_edge
                                       ? json({res.cross_edge->first, res.cross_edge->second})
                                       : json(nullptr);
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

    json out = record_to_json(rec);
    if (!result.is_null())
        out["result"] = result;
    std::cout << out.dump(2) << "\n";
    if (!out_path.empty() && rec.success) {
        std::ofstream f(out_path);
        f << result.dump(2) << "\n";
    }
    if (!transcript_path.empty()) {
        std::ofstream f(transcript_path);
        for (const std::string& line : oracle.transcript())
            f << line << "\n";
    }
    return rec.success ? kExitOk : kExitVerification;
}

int cmd_bench(Family family, const std::vector<int>& sizes, int d, int h, int k, Algo algo,
              std::uint64_t base_seed, int seeds_per_cell, int retry_mult,
              const std::string& out_path) {
    std::vector<BenchCell> cells;
    for (int n : sizes) {
        BenchCell cell;
        cell.spec = GenSpec{family, n, d, h, k, 0};
        cell.algo = algo;
        cells.push_back(cell);
    }
    RunKnobs knobs;
    knobs.retry_cap_multiplier = retry_mult;
    const auto records = run_bench(cells, seeds_per_cell, base_seed, knobs);

    std::ofstream csv(out_path);
    if (!csv) {
        std::cerr << "cannot write " << out_path << "\n";
        return kExitInvalid;
    }
    csv << csv_header() << "\n";
    for (const auto& rec : records)
        csv << csv_row(rec) << "\n";

    const BenchSummary summary =
        summarize_bench(records, static_cast<int>(cells.size()), seeds_per_cell);
    std::cout << "cell medians (total_queries):";
    for (std::size_t i = 0; i < summary.cell_medians.size(); ++i)
        std::cout << " n=" << sizes[i] << ":" << summary.cell_medians[i];
    std::cout << "\nadjacent-size ratios:";
    for (double r : summary.adjacent_ratios)
        std::cout << " " << r;
    std::cout << "\n";

    bool all_ok = true;
    for (const auto& rec : records)
        if (!rec.success) {
            all_ok = false;
            std::cerr << "FAIL seed=" << rec.seed << " n=" << rec.n << ": "
                      << (rec.error.empty() ? "mismatch" : rec.error) << "\n";
        }
    return all_ok ? kExitOk : kExitVerification;
}

int cmd_verify(const std::string& graph_path, const std::string& promise) {
    const DirectedGraph g = load_graph(graph_path);
    json out;
    bool ok = false;
    if (promise == "almost_tree") {
        const AlmostTreeValidation v = validate_almost_tree(g);
        ok = v.ok();
        out["valid"] = ok;
        if (v.ok()) {
            json cert;
            cert["tree_edges"] = v.certificate->tree_edges;
            cert["extra_edge"] = v.certificate->extra_edge
                                     ? json({v.certificate->extra_edge->first,
                                             v.certificate->extra_edge->second})
                                     : json(nullptr);
            cert["height"] = v.certificate->height;
            cert["max_degree"] = v.certificate->max_degree;
            out["certificate"] = cert;
        } else {
            out["reason"] = rejection_name(*v.rejection);
            out["detail"] = v.detail;
        }
    } else { // scc promise: cross edges equal their own transitive reduction
        const SccPartition truth = strongly_connected_components(g);
        std::vector<Edge> comp_edges;
        std::vector<int> comp_of(g.vertex_count());
        for (int c = 0; c < static_cast<int>(truth.components.size()); ++c)
            for (Vertex v : truth.components[c])
                comp_of[v] = c;
        for (const Edge& e : g.edges())
            if (comp_of[e.first] != comp_of[e.second])
                comp_edges.emplace_back(comp_of[e.first], comp_of[e.second]);
        std::sort(comp_edges.begin(), comp_edges.end());
        comp_edges.erase(std::unique(comp_edges.begin(), comp_edges.end()), comp_edges.end());
        ok = comp_edges == truth.condensation_edges;
        out["valid"] = ok;
        out["components"] = truth.components.size();
        out["condensation_edges"] = truth.condensation_edges;
        if (!ok)
            out["reason"] = "transitive-cross-edge";
    }
    std::cout << out.dump(2) << "\n";
    return ok ? kExitOk : kExitVerification;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hidden directed graph reconstruction through path queries"};
    app.require_subcommand(1);
    // --h is a spec'd option on gen/bench, so help lives on --help alone
    app.set_help_flag("--help", "print help");

    // gen
    auto* gen = app.add_subcommand("gen", "generate an instance file plus metadata sidecar");
    gen->set_help_flag("--help", "print help");
    std::string gen_family = "tree", gen_out;
    GenSpec spec;
    gen->add_option("--family", gen_family, "tree|almost_tree|caterpillar|hybrid|scc|dary")
        ->required();
    gen->add_option("--n", spec.n, "target size")->required();
    gen->add_option("--d", spec.d, "degree budget or branching factor");
    gen->add_option("--h", spec.h, "target height (hybrid)");
    gen->add_option("--k", spec.k, "component count (scc)");
    gen->add_option("--seed", spec.seed, "64-bit seed");
    gen->add_option("--out", gen_out, "output graph path")->required();

    // learn
    auto* learn = app.add_subcommand("learn", "run a learner against a graph file");
    learn->set_help_flag("--help", "print help");
    std::string learn_graph, learn_algo = "almost_tree", learn_out;
    std::uint64_t learn_seed = 0;
    int learn_d = 0, learn_retry = 48;
    learn->add_option("graph", learn_graph, "graph JSON path")->required();
    learn->add_option("--algo", learn_algo, "scc|almost_tree");
    learn->add_option("--seed", learn_seed, "oracle/learner seed");
    learn->add_option("--d", learn_d, "degree bound (default: actual max total degree)");
    learn->add_option("--retry-cap-multiplier", learn_retry, "split retry cap multiplier");
    learn->add_option("--out", learn_out, "write the reconstruction JSON here");
    std::string learn_transcript;
    learn->add_option("--transcript", learn_transcript,
                      "dump the query transcript (u,v,bit,phase lines) here");

    // bench
    auto* bench = app.add_subcommand("bench", "run a size grid and emit a CSV report");
    bench->set_help_flag("--help", "print help");
    std::string bench_family = "tree", bench_algo, bench_out;
    std::vector<int> bench_sizes;
    int bench_d = 3, bench_h = 0, bench_k = 1, bench_seeds = 5, bench_retry = 48;
    std::uint64_t bench_seed = 1;
    bench->add_option("--family", bench_family, "instance family")->required();
    bench->add_option("--n", bench_sizes, "size grid (repeat or comma-separate)")
        ->required()
        ->delimiter(',');
    bench->add_option("--d", bench_d, "degree budget or branching factor");
    bench->add_option("--h", bench_h, "target height (hybrid)");
    bench->add_option("--k", bench_k, "component count (scc)");
    bench->add_option("--algo", bench_algo, "scc|almost_tree (default by family)");
    bench->add_option("--seed", bench_seed, "base seed");
    bench->add_option("--seeds-per-cell", bench_seeds, "runs per grid cell");
    bench->add_option("--retry-cap-multiplier", bench_retry, "split retry cap multiplier");
    bench->add_option("--out", bench_out, "CSV output path")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "validate an instance against a promise class");
    verify->set_help_flag("--help", "print help");
    std::string verify_graph, verify_promise = "almost_tree";
    verify->add_option("graph", verify_graph, "graph JSON path")->required();
    verify->add_option("--promise", verify_promise, "almost_tree|scc");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (gen->parsed()) {
            const auto family = parse_family(gen_family);
            if (!family) {
                std::cerr << "unknown family: " << gen_family << "\n";
                return kExitInvalid;
            }
            spec.family = *family;
            return cmd_gen(spec, gen_out);
        }
        if (learn->parsed()) {
            const auto algo = parse_algo(learn_algo);
            if (!algo) {
                std::cerr << "unknown algo: " << learn_algo << "\n";
                return kExitInvalid;
            }
            return cmd_learn(learn_graph, *algo, learn_seed, learn_d, learn_retry, learn_out,
                             learn_transcript);
        }
        if (bench->parsed()) {
            const auto family = parse_family(bench_family);
            if (!family) {
                std::cerr << "unknown family: " << bench_family << "\n";
                return kExitInvalid;
            }
            Algo algo = *family == Family::scc ? Algo::scc : Algo::almost_tree;
            if (!bench_algo.empty()) {
                const auto parsed = parse_algo(bench_algo);
                if (!parsed) {
                    std::cerr << "unknown algo: " << bench_algo << "\n";
                    return kExitInvalid;
                }
                algo = *parsed;
            }
            return cmd_bench(*family, bench_sizes, bench_d, bench_h, bench_k, algo, bench_seed,
                             bench_seeds, bench_retry, bench_out);
        }
        if (verify->parsed()) {
            if (verify_promise != "almost_tree" && verify_promise != "scc") {
                std::cerr << "unknown promise: " << verify_promise << "\n";
                return kExitInvalid;
            }
            return cmd_verify(verify_graph, verify_promise);
        }
    } catch (const GenerationInfeasible& e) {
        std::cerr << "generation infeasible: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    }
    return kExitInvalid;
}
