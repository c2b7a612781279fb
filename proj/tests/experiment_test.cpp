#include <doctest.h>

#include "pathquery/experiment.hpp"

using namespace pathquery;

TEST_SUITE_BEGIN("experiment");

namespace {
const GenSpec kAlmostTree{Family::almost_tree, 40, 3, 0, 0, 0};
const GenSpec kScc{Family::scc, 50, 0, 0, 8, 0};
} // namespace

TEST_CASE("almost-tree runs succeed and account every phase") {
    const ExperimentRecord rec = run_experiment(kAlmostTree, Algo::almost_tree, {}, 7);
    CHECK(rec.success);
    CHECK(rec.family == "almost_tree");
    CHECK(rec.algo == "almost_tree");
    CHECK(rec.n == 40);
    CHECK(rec.vertices == 40);
    CHECK(rec.d == 3);
    CHECK(rec.h > 0);
    CHECK(rec.k == 40); // a DAG has singleton components
    CHECK(rec.total_queries ==
          rec.phase_root() + rec.phase_layered() + rec.phase_cross());
    CHECK(rec.norm_tree > 0.0);
    CHECK(rec.error.empty());
}

TEST_CASE("scc runs succeed within the representative budget") {
    const ExperimentRecord rec = run_experiment(kScc, Algo::scc, {}, 11);
    CHECK(rec.success);
    CHECK(rec.k == 8);
    CHECK(rec.total_queries <= 2ULL * 50 * 8 + 8 * 8);
    CHECK(rec.norm_scc > 0.0);
}

TEST_CASE("identical row seeds replay identically") {
    const ExperimentRecord a = run_experiment(kAlmostTree, Algo::almost_tree, {}, 99);
    const ExperimentRecord b = run_experiment(kAlmostTree, Algo::almost_tree, {}, 99);
    CHECK(a.total_queries == b.total_queries);
    CHECK(a.transcript_hash == b.transcript_hash);
    CHECK(a.phase_queries == b.phase_queries);
    CHECK(a.retries == b.retries);
    CHECK(a.success == b.success);

    const ExperimentRecord c = run_experiment(kAlmostTree, Algo::almost_tree, {}, 100);
    CHECK(a.transcript_hash != c.transcript_hash);
}

TEST_CASE("csv header and row layout are stable") {
    CHECK(csv_header() ==
          "family,n,d,h,k,seed,algo,total_queries,phase_root,phase_layered,phase_cross,"
          "retries,success,wall_ms,norm_tree,norm_scc");
    const ExperimentRecord rec = run_experiment(kAlmostTree, Algo::almost_tree, {}, 5);
    const ExperimentRecord back = parse_csv_row(csv_row(rec));
    CHECK(back.family == rec.family);
    CHECK(back.n == rec.n);
    CHECK(back.d == rec.d);
    CHECK(back.h == rec.h);
    CHECK(back.k == rec.k);
    CHECK(back.seed == rec.seed);
    CHECK(back.algo == rec.algo);
    CHECK(back.total_queries == rec.total_queries);
    CHECK(back.phase_queries.at("root") == rec.phase_root());
    CHECK(back.phase_queries.at("layered") == rec.phase_layered());
    CHECK(back.phase_queries.at("cross") == rec.phase_cross());
    CHECK(back.retries == rec.retries);
    CHECK(back.success == rec.success);
    CHECK(back.norm_tree == doctest::Approx(rec.norm_tree));
    CHECK(back.norm_scc == doctest::Approx(rec.norm_scc));
    CHECK_THROWS(parse_csv_row("too,few,fields"));
}

TEST_CASE("bench rows rerun bit-identically from their own seeds") {
    std::vector<BenchCell> cells;
    cells.push_back({GenSpec{Family::caterpillar, 16, 0, 0, 0, 0}, Algo::almost_tree});
    cells.push_back({GenSpec{Family::scc, 30, 0, 0, 5, 0}, Algo::scc});
    const auto records = run_bench(cells, 3, 424242, {});
    REQUIRE(records.size() == 6);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        CHECK(rec.success);
        const GenSpec& spec = cells[i / 3].spec;
        const ExperimentRecord again =
            run_experiment(spec, cells[i / 3].algo, {}, rec.seed);
        CHECK(again.transcript_hash == rec.transcript_hash);
        CHECK(again.total_queries == rec.total_queries);
    }
}

TEST_CASE("bench summary medians and ratios") {
    std::vector<ExperimentRecord> records(6);
    const std::uint64_t totals[] = {10, 20, 30, 40, 60, 80};
    for (int i = 0; i < 6; ++i)
        records[i].total_queries = totals[i];
    const BenchSummary summary = summarize_bench(records, 2, 3);
    REQUIRE(summary.cell_medians.size() == 2);
    CHECK(summary.cell_medians[0] == 20.0);
    CHECK(summary.cell_medians[1] == 60.0);
    REQUIRE(summary.adjacent_ratios.size() == 1);
    CHECK(summary.adjacent_ratios[0] == doctest::Approx(3.0));
}

TEST_CASE("learner degree bounds derive from the family") {
    CHECK(learner_degree_bound(GenSpec{Family::tree, 10, 4, 0, 0, 0}) == 4);
    CHECK(learner_degree_bound(GenSpec{Family::almost_tree, 10, 5, 0, 0, 0}) == 5);
    CHECK(learner_degree_bound(GenSpec{Family::caterpillar, 10, 0, 0, 0, 0}) == 3);
    CHECK(learner_degree_bound(GenSpec{Family::hybrid, 64, 2, 18, 0, 0}) == 3);
    CHECK(learner_degree_bound(GenSpec{Family::dary, 81, 3, 0, 0, 0}) == 4);
}

TEST_SUITE_END();
