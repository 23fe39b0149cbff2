// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(POCMT_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli: missing arguments and bad configs exit with code 1") {
  CHECK(run_cli("") == 1);
  CHECK(run_cli("--preset nope --out /tmp/pocmt_cli_x") == 1);
  CHECK(run_cli("--preset drift --set protocol.delta=1.5 --out /tmp/pocmt_cli_x") == 1);
  CHECK(run_cli("--preset drift --set no.such.key=1 --out /tmp/pocmt_cli_x") == 1);
}

TEST_CASE("cli: a small run emits trace, window and summary files") {
  const fs::path dir = fs::temp_directory_path() / "pocmt_cli_run";
  fs::remove_all(dir);
  const std::string args =
      "--preset drift --seeds 2 --set timeline.horizon_epochs=120 --jobs 2 --out " +
      dir.string();
  CHECK(run_cli(args) == 0);
  CHECK(fs::exists(dir / "trace_drift_base_1.csv"));
  CHECK(fs::exists(dir / "trace_drift_base_2.csv"));
  CHECK(fs::exists(dir / "windows_drift_base_1.csv"));
  CHECK(fs::exists(dir / "summary_drift.csv"));

  const std::string header = slurp(dir / "trace_drift_base_1.csv");
  CHECK(header.rfind("epoch,window,W_H,W_A,leader_id,leader_class,empty_epoch,"
                     "head_weight,chain_len,evidence_count\n", 0) == 0);

  const std::string windows = slurp(dir / "windows_drift_base_1.csv");
  CHECK(windows.rfind("window,X_d,adversary_capacity,honest_solves_total\n", 0) == 0);

  const std::string summary = slurp(dir / "summary_drift.csv");
  CHECK(summary.rfind(
            "preset,swept_key,swept_value,runs,nonempty_rate_mean,"
            "adv_leader_share_mean,adv_leader_share_std,weight_share_mean,"
            "weight_share_std,drift_ok_runs,chain_length_frac_mean,"
            "bootstrap_epochs_mean,evidence_total,finality_conflicts_total,"
            "whm_violation_epochs,human_time_mean,max_fairness_deviation,"
            "reorg_freq_d1,reorg_freq_d2,reorg_freq_d3,reorg_freq_d4,"
            "reorg_freq_d5,reorg_freq_d6,quorum_cases,quorum_conflicts\n",
            0) == 0);
}

TEST_CASE("cli: svg chart for swept presets") {
  const fs::path dir = fs::temp_directory_path() / "pocmt_cli_svg";
  fs::remove_all(dir);
  const std::string args =
      "--preset decay-ablation --seeds 1 --set timeline.horizon_epochs=60 "
      "--svg --out " + dir.string();
  CHECK(run_cli(args) == 0);
  const std::string svg = slurp(dir / "summary_decay-ablation.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("cli: reruns are byte-identical") {
  const fs::path a = fs::temp_directory_path() / "pocmt_cli_a";
  const fs::path b = fs::temp_directory_path() / "pocmt_cli_b";
  fs::remove_all(a);
  fs::remove_all(b);
  const std::string common =
      "--preset capacity-sweep --seeds 2 "
      "--set timeline.horizon_epochs=100 --jobs 4 --out ";
  REQUIRE(run_cli(common + a.string()) == 0);
  REQUIRE(run_cli(common + b.string()) == 0);
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename();
    CHECK(slurp(entry.path()) == slurp(b / name));
    ++compared;
  }
  CHECK(compared == 2 * 11 * 2 + 1);  // trace+windows per run, one summary
}

TEST_CASE("cli: print-config round-trips through --config") {
  const fs::path dir = fs::temp_directory_path() / "pocmt_cli_cfg";
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.cfg";
  {
    const std::string cmd = std::string(POCMT_BIN) +
                            " --preset drift --print-config > " + cfg.string();
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  }
  const std::string args = "--config " + cfg.string() +
                           " --set timeline.horizon_epochs=50 --out " +
                           (dir / "out").string();
  CHECK(run_cli(args) == 0);
  CHECK(fs::exists(dir / "out" / "trace_custom_base_1.csv"));
}
