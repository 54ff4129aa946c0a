#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

RunResult run(const std::string& args) {
  const std::string out_file = std::string(TEST_TMP_DIR) + "/cli_stdout.txt";
  const std::string cmd =
      std::string(MPTQ_BIN) + " " + args + " > " + out_file + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(rc);
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_scenario(const std::string& name, const std::string& body) {
  const std::string path = std::string(TEST_TMP_DIR) + "/" + name;
  std::ofstream out(path);
  out << body;
  return path;
}

const char* kScenario = R"({
  "n_nodes": 16, "n_antennas": 8, "buffer_size": 25, "s_max": 8,
  "aggregate_rate": 10000.0, "packet_error_prob": 0.0,
  "frame_lengths": {"l_sb": 256, "l_tr": 64, "l_csi": 64, "l_d": 8000, "l_ack": 64},
  "rates": [6e6, 12e6, 18e6, 24e6],
  "snr_thresholds": [10, 15, 20, "inf"],
  "node_mean_snr": 30
})";

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("solve prints the metric table") {
  const auto cfg = write_scenario("solve.json", kScenario);
  const auto r = run("solve --config " + cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("blocking_probability") != std::string::npos);
  CHECK(r.output.find("mean_batch_pkts") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").exit_code == 2);
  CHECK(run("frobnicate --config x.json").exit_code == 2);
  CHECK(run("solve --config /does/not/exist.json").exit_code == 2);
  const auto cfg = write_scenario("usage.json", kScenario);
  CHECK(run("sweep --config " + cfg + " --axis warp --values 1 --mode analytic")
            .exit_code == 2);
  CHECK(run("sweep --config " + cfg + " --axis load --values , --mode analytic")
            .exit_code == 2);
  CHECK(run("sweep --config " + cfg + " --axis load --values 4e7 --mode zen")
            .exit_code == 2);
  const auto bad = write_scenario("bad.json", "{ nope");
  CHECK(run("solve --config " + bad).exit_code == 2);
}

TEST_CASE("analytic sweeps are byte-deterministic") {
  const auto cfg = write_scenario("sweep.json", kScenario);
  const std::string out1 = std::string(TEST_TMP_DIR) + "/sweep1.csv";
  const std::string out2 = std::string(TEST_TMP_DIR) + "/sweep2.csv";
  const std::string args = "sweep --config " + cfg +
                           " --axis load --values 4e7,6e7,8e7,1e8"
                           " --mode analytic --out ";
  CHECK(run(args + out1).exit_code == 0);
  CHECK(run(args + out2).exit_code == 0);
  const std::string csv = slurp(out1);
  CHECK(csv == slurp(out2));
  CHECK(count_lines(csv) == 5);  // header + 4 points
  CHECK(csv.find("p_b_analytic") != std::string::npos);
  CHECK(csv.rfind("mode,axis,axis_value,load_mbps,n_nodes", 0) == 0);
}

TEST_CASE("failed points are recorded and fail the run") {
  const auto cfg = write_scenario("points.json", kScenario);
  const std::string out = std::string(TEST_TMP_DIR) + "/points.csv";
  const auto r = run("sweep --config " + cfg +
                     " --axis s_max --values 4,9,8 --mode analytic --out " +
                     out);
  CHECK(r.exit_code == 1);
  const std::string csv = slurp(out);
  CHECK(count_lines(csv) == 4);
  CHECK(csv.find("smax_exceeds_antennas") != std::string::npos);
  CHECK(csv.find("ok") != std::string::npos);  // the valid points still ran
}

TEST_CASE("simulation sweeps are seed-deterministic") {
  const auto cfg = write_scenario("simsweep.json", kScenario);
  const std::string out1 = std::string(TEST_TMP_DIR) + "/sim1.csv";
  const std::string out2 = std::string(TEST_TMP_DIR) + "/sim2.csv";
  const std::string args = "sweep --config " + cfg +
                           " --axis load --values 6e7,9e7 --mode simulate"
                           " --seed 3,5 --duration 5 --warmup 0.5 --out ";
  CHECK(run(args + out1).exit_code == 0);
  CHECK(run(args + out2).exit_code == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(slurp(out1).find("p_b_sim") != std::string::npos);
}

TEST_CASE("ideal-channel flag equals a saturating-SNR scenario") {
  const auto cfg = write_scenario("ideal_a.json", kScenario);
  std::string strong(kScenario);
  strong.replace(strong.find("\"node_mean_snr\": 30"), 19,
                 "\"node_mean_snr\": 200");
  const auto cfg2 = write_scenario("ideal_b.json", strong);
  const std::string out1 = std::string(TEST_TMP_DIR) + "/ideal1.csv";
  const std::string out2 = std::string(TEST_TMP_DIR) + "/ideal2.csv";
  CHECK(run("sweep --config " + cfg +
            " --axis load --values 6e7,8e7,1e8 --mode analytic"
            " --ideal-channel --out " + out1)
            .exit_code == 0);
  CHECK(run("sweep --config " + cfg2 +
            " --axis load --values 6e7,8e7,1e8 --mode analytic --out " + out2)
            .exit_code == 0);
  // identical numbers; only the ideal_channel column differs
  std::string a = slurp(out1), b = slurp(out2);
  CHECK(a != "");
  std::stringstream sa(a), sb(b);
  std::string la, lb;
  while (std::getline(sa, la) && std::getline(sb, lb)) {
    // column 10 is ideal_channel; blank it in both
    auto blank10 = [](std::string line) {
      int col = 0;
      std::string outl;
      std::stringstream ls(line);
      std::string field;
      while (std::getline(ls, field, ',')) {
        if (col == 9) field = "*";
        if (col) outl += ',';
        outl += field;
        ++col;
      }
      return outl;
    };
    CHECK(blank10(la) == blank10(lb));
  }
}

TEST_CASE("compare on the exact single-node case passes") {
  const char* kExact = R"({
    "n_nodes": 1, "n_antennas": 2, "buffer_size": 25, "s_max": 1,
    "aggregate_rate": 1900.0, "packet_error_prob": 0.0,
    "frame_lengths": {"l_sb": 256, "l_tr": 64, "l_csi": 64, "l_d": 8000, "l_ack": 64},
    "rates": [24e6],
    "snr_thresholds": ["inf"],
    "node_mean_snr": 30
  })";
  const auto cfg = write_scenario("exact.json", kExact);
  const std::string out = std::string(TEST_TMP_DIR) + "/compare.csv";
  const auto r = run("compare --config " + cfg +
                     " --seed 1,2,3,4,5,6 --duration 60 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("pass criterion") != std::string::npos);
  const std::string csv = slurp(out);
  CHECK(count_lines(csv) == 6);  // header + five metrics
  CHECK(csv.find("FAIL") == std::string::npos);
}

TEST_CASE("heterogeneous compare downgrades to simulate-only") {
  std::string het(kScenario);
  het.insert(het.rfind('}'),
             R"(, "traffic_weights": [16,16,16,16,1,1,1,1,1,1,1,1,1,1,1,1])");
  const auto cfg = write_scenario("het.json", het);
  const auto r =
      run("compare --config " + cfg + " --seed 1,2 --duration 5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("warning: heterogeneous traffic") != std::string::npos);
}

TEST_CASE("simulate subcommand reports mean and stderr") {
  const auto cfg = write_scenario("sim.json", kScenario);
  const auto r = run("simulate --config " + cfg +
                     " --seed 1,2,3 --duration 5 --warmup 0.5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("+-") != std::string::npos);
}
