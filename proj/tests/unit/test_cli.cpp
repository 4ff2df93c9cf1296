#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "brute.hpp"
#include "graphcorr/cli/cli.hpp"
#include "graphcorr/cli/commands.hpp"
#include "graphcorr/cli/config.hpp"
#include "graphcorr/cli/experiment.hpp"
#include "graphcorr/edge_list.hpp"

using namespace graphcorr;
using namespace graphcorr::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "graphcorr_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("command line errors exit with 1") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"simulate"}).code == kExitUsage);
  CHECK(run({"simulate", "--config", "x.json", "--no-such-flag"}).code == kExitUsage);
  CHECK(run({"analyze", "a", "b", "--rank", "2", "--threshold", "4"}).code == kExitUsage);
  CHECK(run({"analyze", "a", "b", "--test", "nope"}).code == kExitUsage);
  CHECK(run({"reduce-clique", "--n", "5", "--s0", "6"}).code == kExitUsage);
}

TEST_CASE("help and version exit with 0") {
  CHECK(run({"--help"}).code == kExitOk);
  const auto v = run({"--version"});
  CHECK(v.code == kExitOk);
  CHECK(v.out.find(version_string()) != std::string::npos);
}

TEST_CASE("data errors exit with 2") {
  const auto dir = scratch("data_errors");
  CHECK(run({"analyze", (dir / "missing_a").string(), (dir / "missing_b").string()}).code == kExitData);

  write_text(dir / "a.edges", "# n=5\n0 1\n");
  write_text(dir / "b.edges", "# n=6\n0 1\n");
  write_text(dir / "bad.edges", "0 x\n");
  CHECK(run({"analyze", (dir / "a.edges").string(), (dir / "b.edges").string()}).code == kExitData);
  CHECK(run({"predict", (dir / "a.edges").string(), (dir / "bad.edges").string()}).code == kExitData);

  write_text(dir / "bad.json", "{\"model\": \"CosineGraphon\", \"n\": []}");
  CHECK(run({"simulate", "--config", (dir / "bad.json").string()}).code == kExitData);
  write_text(dir / "broken.json", "{\"model\": ");
  CHECK(run({"simulate", "--config", (dir / "broken.json").string()}).code == kExitData);
}

TEST_CASE("config parsing and validation") {
  const auto cfg = config_from_json(nlohmann::json::parse(R"({
    "model": "CorrelatedSbm", "n": [200, 500], "r": [0, 0.005], "K": [2, 5],
    "mc_replicates": 10, "bootstrap_m": 19, "alpha": 0.1, "base_seed": 7,
    "usvt": {"rank": 3, "clip": false}, "output": "out"
  })"));
  CHECK(cfg.model == Model::CorrelatedSbm);
  CHECK(cfg.n == std::vector<std::size_t>{200, 500});
  CHECK(cfg.blocks == std::vector<std::size_t>{2, 5});
  CHECK(cfg.effective_test() == TestMethod::SbmChi2);
  CHECK(cfg.effective_usvt().mode == UsvtConfig::Mode::FixedRank);
  CHECK(cfg.effective_usvt().rank == 3);
  CHECK_FALSE(cfg.effective_usvt().clip);

  const auto back = config_from_json(config_to_json(cfg));
  CHECK(config_to_json(back) == config_to_json(cfg));

  CHECK(config_from_json(nlohmann::json::parse(R"({"model":"CosineGraphon","n":[100]})")).effective_usvt().rank == 3);
  CHECK(config_from_json(nlohmann::json::parse(R"({"model":"GaussianGraphon","n":[100]})")).effective_usvt().mode ==
        UsvtConfig::Mode::Threshold);

  const char* bad[] = {
      R"({"n":[100]})",
      R"({"model":"Nope","n":[100]})",
      R"({"model":"CosineGraphon","n":[]})",
      R"({"model":"CosineGraphon","n":[100],"r":[]})",
      R"({"model":"CosineGraphon","n":[100],"mc_replicates":0})",
      R"({"model":"CosineGraphon","n":[100],"alpha":1.0})",
      R"({"model":"CosineGraphon","n":[100],"usvt":{"rank":2,"threshold":4}})",
      R"({"model":"CosineGraphon","n":[100],"typo":1})",
      R"({"model":"CosineGraphon","n":[-3]})",
      R"({"model":"PlantedClique","n":[10],"s0":[11]})",
  };
  for (const char* text : bad) CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(text)), ConfigError);
}

TEST_CASE("one replicate in one cell gives one row") {
  ExperimentConfig cfg;
  cfg.model = Model::CosineGraphon;
  cfg.n = {40};
  cfg.r = {0.3};
  cfg.mc_replicates = 1;
  cfg.bootstrap_m = 5;
  const auto table = run_experiment(cfg);
  REQUIRE(table.cells.size() == 1);
  REQUIRE(table.cells[0].rejection_rate.has_value());
  CHECK((*table.cells[0].rejection_rate == 0.0 || *table.cells[0].rejection_rate == 1.0));
  std::ostringstream csv;
  write_table_csv(csv, table, false);
  const auto lines = csv_lines(csv.str());
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "n,r,replicates,rejections,rejection_rate,error");
}

TEST_CASE("sbm grid at r = 0 reports theoretical power alpha") {
  ExperimentConfig cfg;
  cfg.model = Model::CorrelatedSbm;
  cfg.n = {60};
  cfg.r = {0.0};
  cfg.blocks = {2};
  cfg.mc_replicates = 4;
  const auto table = run_experiment(cfg);
  REQUIRE(table.cells.size() == 1);
  CHECK(table.cells[0].theoretical_power.value() == doctest::Approx(0.05).epsilon(1e-12));
  const double rate = table.cells[0].rejection_rate.value();
  CHECK(rate >= 0.0);
  CHECK(rate <= 1.0);
  CHECK(rate * 4 == doctest::Approx(static_cast<double>(table.cells[0].rejections)));
}

TEST_CASE("grid order is n, then K, then r") {
  ExperimentConfig cfg;
  cfg.model = Model::CorrelatedSbm;
  cfg.n = {30, 40};
  cfg.r = {0.0, 0.01};
  cfg.blocks = {1, 2};
  cfg.mc_replicates = 1;
  const auto table = run_experiment(cfg);
  REQUIRE(table.cells.size() == 8);
  CHECK(table.cells[0].n == 30);
  CHECK(table.cells[0].blocks == 1u);
  CHECK(table.cells[1].r == 0.01);
  CHECK(table.cells[2].blocks == 2u);
  CHECK(table.cells[4].n == 40);
}

TEST_CASE("an invalid cell is reported and the run continues") {
  ExperimentConfig cfg;
  cfg.model = Model::Lambda1ER;
  cfg.n = {20};
  cfg.p = 0.1;
  cfg.r = {-0.9, 0.0};  // -0.9 is below -p/(1-p) for p = 0.1
  cfg.mc_replicates = 2;
  cfg.bootstrap_m = 3;
  const auto table = run_experiment(cfg);
  REQUIRE(table.cells.size() == 2);
  CHECK_FALSE(table.cells[0].error.empty());
  CHECK_FALSE(table.cells[0].rejection_rate.has_value());
  CHECK(table.cells[1].error.empty());
  CHECK(table.cells[1].rejection_rate.has_value());
}

TEST_CASE("simulate writes a table and a manifest, byte-identical on rerun") {
  const auto dir = scratch("simulate");
  write_text(dir / "cfg.json", R"({"model": "PlantedClique", "n": [30], "s0": [0, 10],
    "mc_replicates": 3, "bootstrap_m": 5, "base_seed": 11, "output": "unused"})");
  const auto out1 = (dir / "run1").string();
  const auto out2 = (dir / "run2").string();
  const auto r1 = run({"simulate", "--config", (dir / "cfg.json").string(), "--out", out1, "--no-timing"});
  const auto r2 = run({"simulate", "--config", (dir / "cfg.json").string(), "--out", out2, "--no-timing",
                       "--threads", "3"});
  REQUIRE(r1.code == kExitOk);
  REQUIRE(r2.code == kExitOk);
  CHECK(r1.out == r2.out);
  CHECK(slurp(fs::path(out1) / "results.csv") == slurp(fs::path(out2) / "results.csv"));
  const auto m1 = nlohmann::json::parse(slurp(fs::path(out1) / "manifest.json"));
  const auto m2 = nlohmann::json::parse(slurp(fs::path(out2) / "manifest.json"));
  CHECK(m1["version"] == std::string(version_string()));
  CHECK(m1["config"]["s0"] == nlohmann::json::array({0, 10}));
  CHECK_FALSE(m1.contains("wallclock_s"));
  CHECK(m1["config"]["base_seed"] == m2["config"]["base_seed"]);

  const auto timed = run({"simulate", "--config", (dir / "cfg.json").string(), "--out", (dir / "timed").string()});
  REQUIRE(timed.code == kExitOk);
  CHECK(csv_lines(timed.out)[0] == "n,s0,replicates,rejections,rejection_rate,wallclock_s,error");
  CHECK(nlohmann::json::parse(slurp(dir / "timed" / "manifest.json")).contains("wallclock_s"));

  const auto reseeded = run({"simulate", "--config", (dir / "cfg.json").string(), "--out", (dir / "s").string(),
                             "--no-timing", "--seed", "12", "--bootstrap-m", "7", "--rank", "1"});
  REQUIRE(reseeded.code == kExitOk);
  const auto m3 = nlohmann::json::parse(slurp(dir / "s" / "manifest.json"));
  CHECK(m3["config"]["base_seed"] == 12);
  CHECK(m3["config"]["bootstrap_m"] == 7);
  CHECK(m3["config"]["usvt"]["rank"] == 1);
}

TEST_CASE("analyze on identical graphs gives the smallest p-value") {
  const auto dir = scratch("analyze_identical");
  const auto g = oracle::random_graph(60, 0.3, 5);
  write_edge_list((dir / "a.edges").string(), g);
  const auto r = run({"analyze", (dir / "a.edges").string(), (dir / "a.edges").string(), "--seed", "3",
                      "--bootstrap-m", "99", "--out", (dir / "out").string()});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["report"]["method"] == "graphon_diff");
  CHECK(j["report"]["p_value"].get<double>() == doctest::Approx(0.5 / 99));
  CHECK(j["report"]["reject"] == true);
  CHECK(fs::exists(dir / "out" / "report.json"));
  CHECK_FALSE(fs::exists(dir / "out" / "block_mean_R.csv"));
}

TEST_CASE("analyze with labels writes block tables with NA") {
  const auto dir = scratch("analyze_labels");
  const auto a = oracle::random_graph(30, 0.4, 1);
  const auto b = oracle::random_graph(30, 0.4, 2);
  write_edge_list((dir / "a.edges").string(), a);
  write_edge_list((dir / "b.edges").string(), b);
  std::string labels;
  for (int i = 0; i < 30; ++i) labels += i == 29 ? "lonely\n" : (i % 2 ? "odd\n" : "even\n");
  write_text(dir / "labels.txt", labels);
  const auto r = run({"analyze", (dir / "a.edges").string(), (dir / "b.edges").string(), "--labels",
                      (dir / "labels.txt").string(), "--bootstrap-m", "9", "--out", (dir / "out").string()});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["labels"] == nlohmann::json::array({"even", "odd", "lonely"}));
  CHECK(j["block_mean_R"][2][2].is_null());
  CHECK(j["naive_block_pearson"][2][2].is_null());
  CHECK_FALSE(j["block_mean_R"][0][1].is_null());
  const auto table = slurp(dir / "out" / "block_mean_R.csv");
  CHECK(table.find("NA") != std::string::npos);

  write_text(dir / "short.txt", "x\ny\n");
  CHECK(run({"analyze", (dir / "a.edges").string(), (dir / "b.edges").string(), "--labels",
             (dir / "short.txt").string()})
            .code == kExitData);
}

TEST_CASE("analyze runs every test and the complement transform") {
  const auto dir = scratch("analyze_tests");
  write_edge_list((dir / "a.edges").string(), oracle::random_graph(40, 0.5, 8));
  write_edge_list((dir / "b.edges").string(), oracle::random_graph(40, 0.5, 9));
  const std::string a = (dir / "a.edges").string(), b = (dir / "b.edges").string();
  for (const char* test : {"graphon_same", "graphon_diff", "lambda1"}) {
    const auto r = run({"analyze", a, b, "--test", test, "--bootstrap-m", "9"});
    REQUIRE(r.code == kExitOk);
    CHECK(nlohmann::json::parse(r.out)["report"]["method"] == test);
  }
  const auto sbm = run({"analyze", a, b, "--test", "sbm_chi2", "--K", "2"});
  REQUIRE(sbm.code == kExitOk);
  CHECK(nlohmann::json::parse(sbm.out)["report"]["method"] == "sbm_chi2");
  CHECK(run({"analyze", a, b, "--test", "sbm_chi2"}).code == kExitData);

  const auto fixed = run({"analyze", a, b, "--test", "lambda1", "--critical-value", "1e9"});
  REQUIRE(fixed.code == kExitOk);
  CHECK(nlohmann::json::parse(fixed.out)["report"]["reject"] == false);

  const auto plain = run({"analyze", a, b, "--test", "lambda1", "--critical-value", "1e9"});
  const auto comp = run({"analyze", a, b, "--test", "lambda1", "--critical-value", "1e9", "--complement"});
  REQUIRE(comp.code == kExitOk);
  CHECK(plain.out != comp.out);
}

TEST_CASE("predict with one repeat emits two AUCs") {
  const auto dir = scratch("predict");
  write_edge_list((dir / "a.edges").string(), oracle::random_graph(40, 0.3, 1));
  write_edge_list((dir / "b.edges").string(), oracle::random_graph(40, 0.3, 2));
  const auto r = run({"predict", (dir / "a.edges").string(), (dir / "b.edges").string(), "--repeats", "1",
                      "--out", (dir / "out").string()});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["single"]["mean_auc"].is_number());
  CHECK(j["joint"]["mean_auc"].is_number());
  CHECK(j["single"]["std_error"].is_null());
  CHECK_FALSE(j.contains("joint_exact"));
  for (const char* f : {"auc_summary.json", "roc_single.csv", "roc_joint.csv", "scores_single.csv", "scores_joint.csv"})
    CHECK(fs::exists(dir / "out" / f));
}

TEST_CASE("standard error of constant AUCs is zero") {
  const auto g = oracle::random_graph(30, 0.5, 4);
  PredictOptions opts;
  opts.repeats = 3;
  opts.fraction = 0.2;
  opts.usvt = UsvtConfig::fixed_rank(1);
  const auto result = predict(g, g, opts);
  for (const auto& m : result.modes) {
    CHECK(m.defined == 3);
    REQUIRE(m.std_error.has_value());
    double sd = 0;
    for (double a : m.aucs) sd += (a - m.mean) * (a - m.mean);
    CHECK(*m.std_error == doctest::Approx(std::sqrt(sd / 2) / std::sqrt(3.0)));
  }
  // joint mode reads B_ij = A_ij directly, so identical graphs separate perfectly
  for (double a : result.modes[1].aucs) CHECK(a == doctest::Approx(1.0));
  CHECK(*result.modes[1].std_error == doctest::Approx(0.0));
}

TEST_CASE("reduce-clique round trip") {
  for (const auto [n, s0] : {std::pair<std::size_t, std::size_t>{60, 0}, {60, 12}, {25, 25}}) {
    const auto red = reduce_clique(n, 0.5, s0, 17);
    CHECK(red.round_trip);
    CHECK(red.recovered == red.instance.graph);
    CHECK(red.r_frobenius == doctest::Approx(std::sqrt(static_cast<double>(s0 * (s0 ? s0 - 1 : 0)))));
    if (s0 == n) CHECK(red.recovered == AdjacencyMatrix::complete(n));
  }

  const auto dir = scratch("reduce");
  const auto r = run({"reduce-clique", "--n", "60", "--s0", "12", "--seed", "4", "--out", dir.string()});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["round_trip"] == true);
  CHECK(j["r_frobenius_nominal"] == 12);
  CHECK(j["clique"].size() == 12);
  CHECK(read_edge_list((dir / "recovered.edges").string()) == read_edge_list((dir / "clique_instance.edges").string()));
  const auto pair = GraphPair(read_edge_list((dir / "graph_a.edges").string()), read_edge_list((dir / "graph_b.edges").string()));
  CHECK(pair_to_clique_instance(pair) == read_edge_list((dir / "clique_instance.edges").string()));
}

TEST_CASE("analyze keeps its size on independent Erdos-Renyi graphs") {
  AnalyzeOptions opts;
  opts.bootstrap.m = 19;
  std::size_t above = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GraphPair pair(oracle::random_graph(300, 0.5, 2 * seed), oracle::random_graph(300, 0.5, 2 * seed + 1));
    opts.bootstrap.seed = seed;
    above += analyze(pair, opts, nullptr).report.p_value.value() > 0.05 ? 1 : 0;
  }
  CHECK(above >= 90);
}
