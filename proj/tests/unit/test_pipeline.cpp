#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "cutmap/benchmarks.hpp"
#include "cutmap/json_io.hpp"
#include "cutmap/pipeline.hpp"

using namespace cutmap;

namespace {

RunConfig bench_cfg(const std::string &name, int n, const std::string &topo = "manila-x20") {
    RunConfig cfg;
    cfg.bench = name;
    cfg.qubits = n;
    cfg.topology = topo;
    return cfg;
}

Json without_timings(Json j) {
    j.erase("timings");
    return j;
}

std::string temp_path(const std::string &name) { return testing::TempDir() + name; }

}  // namespace

TEST(JsonIo, BigValues) {
    EXPECT_EQ(big_to_json(BigInt(576)), Json(576));
    EXPECT_TRUE(big_to_json(sampling_overhead(0, 30)).is_string());
    EXPECT_EQ(big_to_json(sampling_overhead(0, 30)).get<std::string>(), sampling_overhead(0, 30).str());
}

TEST(JsonIo, CircuitRoundTrip) {
    auto c = bench::hardware_efficient_ansatz(4);
    auto back = circuit_from_json(circuit_to_json(c));
    ASSERT_EQ(back.gates().size(), c.gates().size());
    for (std::size_t i = 0; i < c.gates().size(); ++i) EXPECT_TRUE(back.gates()[i].same_as(c.gates()[i]));
    EXPECT_THROW(circuit_from_json(Json{{"num_qubits", 1}, {"gates", {{{"name", "foo"}, {"qubits", {0}}}}}}),
                 std::invalid_argument);
    EXPECT_THROW(circuit_from_json(Json{{"gates", Json::array()}}), std::invalid_argument);
}

TEST(JsonIo, CutsetShape) {
    CutLocations loc;
    loc.wires = {{1, 0}, {2, 3}};
    loc.gates = {7};
    auto j = cutset_to_json(loc);
    EXPECT_EQ(j["k1"], 2);
    EXPECT_EQ(j["k2"], 1);
    EXPECT_EQ(j["postproc"], 96);
    EXPECT_EQ(j["sampling"], 2304);
    EXPECT_EQ(j["wire_cuts"][1]["after_occurrence"], 3);
    EXPECT_EQ(j["gate_cuts"][0], 7);
}

TEST(Pipeline, CutAnchors) {
    auto bv = cmd_cut(bench_cfg("bv", 4));
    EXPECT_EQ(bv.exit_code, kExitOk);
    EXPECT_EQ(bv.report["cuts"]["k2"], 0);
    EXPECT_EQ(bv.report["cuts"]["k1"], 1);
    auto ghz = cmd_cut(bench_cfg("ghz", 64, "toronto-x20"));
    EXPECT_EQ(ghz.report["cuts"]["k1"], 2);
    EXPECT_EQ(ghz.report["cuts"]["k2"], 0);
    auto lone = cmd_cut(bench_cfg("ghz", 1));
    EXPECT_EQ(lone.exit_code, kExitInfeasible);
    EXPECT_NE(lone.report["error"].get<std::string>().find("nothing to cut"), std::string::npos);
}

TEST(Pipeline, BudgetExhaustionExitCode) {
    auto cfg = bench_cfg("rca", 6);
    cfg.budget = 1;
    auto r = cmd_cut(cfg);
    EXPECT_EQ(r.exit_code, kExitBudget);
    EXPECT_TRUE(r.report["search"]["budget_exhausted"].get<bool>());
}

TEST(Pipeline, RunIsExact) {
    auto ghz = cmd_run(bench_cfg("ghz", 4));
    EXPECT_EQ(ghz.exit_code, kExitOk);
    EXPECT_LT(ghz.report["absolute_error"].get<double>(), 1e-9);
    auto cfg = bench_cfg("qft", 4);
    cfg.observable = "XZYX";
    auto qft = cmd_run(cfg);
    EXPECT_LE(qft.report["cuts"]["k1"].get<int>() + qft.report["cuts"]["k2"].get<int>(), 3);
    EXPECT_LT(qft.report["absolute_error"].get<double>(), 1e-9);
}

TEST(Pipeline, NoCutMapsWholeCircuit) {
    auto cfg = bench_cfg("bv", 4);
    cfg.no_cut = true;
    auto r = cmd_run(cfg);
    EXPECT_EQ(r.report["cuts"]["k1"], 0);
    EXPECT_EQ(r.report["cuts"]["k2"], 0);
    EXPECT_EQ(r.report["components"].size(), 1u);
    EXPECT_LE(r.report["mapping"]["total"]["epr_pairs"].get<int>(), 1);
}

TEST(Pipeline, MapAnchors) {
    auto hwea = cmd_map(bench_cfg("hwea", 4));
    EXPECT_EQ(hwea.report["mapping"]["metrics"]["swaps"], 0);
    auto bv = cmd_map(bench_cfg("bv", 4));
    EXPECT_LE(bv.report["mapping"]["metrics"]["epr_pairs"].get<int>(), 1);
    const auto path = temp_path("empty.qasm");
    std::ofstream(path) << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\n";
    RunConfig cfg;
    cfg.qasm_path = path;
    auto empty = cmd_map(cfg);
    EXPECT_EQ(empty.exit_code, kExitOk);
    EXPECT_EQ(empty.report["mapping"]["metrics"], metrics_to_json({}));
    auto big = cmd_map(bench_cfg("ghz", 8, "manila-x2"));
    EXPECT_EQ(big.exit_code, kExitInfeasible);
}

TEST(Pipeline, ReportIsDeterministic) {
    auto cfg = bench_cfg("lc", 8, "nairobi-x4");
    cfg.reuse = true;
    cfg.reuse_count = 1;
    cfg.shots = 2000;
    cfg.seed = 11;
    auto a = cmd_run(cfg), b = cmd_run(cfg);
    EXPECT_EQ(without_timings(a.report).dump(), without_timings(b.report).dump());
    cfg.threads = 4;
    EXPECT_EQ(cmd_run(cfg).report["expectation"], a.report["expectation"]);
}

TEST(Pipeline, ReuseSharesResults) {
    auto cfg = bench_cfg("ghz", 16, "nairobi-x8");
    cfg.reuse = true;
    auto none = cmd_run(cfg);
    cfg.reuse_count = 1;
    auto one = cmd_run(cfg);
    ASSERT_GE(one.report["isomorphs"]["instances"].get<int>(), 2);
    EXPECT_LT(one.report["overheads"]["executed_circuits"].get<int>(),
              none.report["overheads"]["executed_circuits"].get<int>());
    EXPECT_NEAR(one.report["expectation"].get<double>(), none.report["expectation"].get<double>(), 1e-9);
    EXPECT_EQ(one.report["overheads"]["sampling"].get<long>() * 16, none.report["overheads"]["sampling"].get<long>());
}

TEST(Pipeline, ManifestAndGraphFiles) {
    auto cfg = bench_cfg("ghz", 4);
    cfg.manifest_path = temp_path("manifest.json");
    cfg.graph_path = temp_path("graph.dot");
    ASSERT_EQ(cmd_run(cfg).exit_code, kExitOk);
    std::ifstream in(cfg.manifest_path);
    auto m = Json::parse(in);
    EXPECT_EQ(m["variants"].size(), 16u);
    int executed = 0;
    for (const auto &v : m["variants"])
        for (const auto &c : v["components"]) executed += c["execute"].get<bool>();
    EXPECT_EQ(executed, 3 + 4);
    std::ifstream dot(cfg.graph_path);
    std::string first;
    std::getline(dot, first);
    EXPECT_NE(first.find("graph"), std::string::npos);
}

TEST(Pipeline, RejectsBadConfig) {
    auto cfg = bench_cfg("ghz", 4);
    cfg.observable = "ZZQZ";
    EXPECT_THROW(cmd_run(cfg), std::invalid_argument);
    cfg.observable = "ZZ";
    EXPECT_EQ(cmd_run(cfg).exit_code, kExitUsage);
    auto both = bench_cfg("ghz", 4);
    both.qasm_path = "x.qasm";
    EXPECT_THROW(cmd_cut(both), std::invalid_argument);
    auto reuse = bench_cfg("ghz", 4);
    reuse.reuse_count = 1;
    EXPECT_THROW(cmd_cut(reuse), std::invalid_argument);
    auto sim = bench_cfg("ghz", 8, "nairobi-x4");
    sim.max_sim_qubits = 3;
    EXPECT_EQ(cmd_run(sim).exit_code, kExitInfeasible);
}
