// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "iosim/cli.hpp"

using namespace iosim;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void write(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"sweep", "--bogus"}).code == kExitUsage);
    CHECK(run({"optimize"}).code == kExitUsage);
    CHECK(run({"optimize", "--mu", "1,2"}).code == kExitUsage);
    CHECK(run({"optimize", "--mu", "1,0,2", "--mode", "most"}).code == kExitUsage);
    const Run help = run({"--help"});
    CHECK(help.code == kExitOk);
    CHECK(help.out.find("optimize") != std::string::npos);
  }

  TEST_CASE("config errors") {
    write("iosim_cli_bad.toml", "panel.s_a = 0\n");
    const Run r = run({"sweep", "--config", "iosim_cli_bad.toml"});
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("panel.s_a") != std::string::npos);
    write("iosim_cli_bad.toml", "panel.sa = 2\n");
    CHECK(run({"heatmap", "--config", "iosim_cli_bad.toml"}).code == kExitConfig);
    std::remove("iosim_cli_bad.toml");
    CHECK(run({"optimize", "--mu", "0,1,2"}).code == kExitConfig);  // on the panel plane
  }

  TEST_CASE("optimize prints one row per element and the SE") {
    write("iosim_cli_small.toml", "panel.rows = 2\npanel.cols = 3\n");
    const Run r = run({"optimize", "--config", "iosim_cli_small.toml", "--mu", "1.0,0.5,2.0"});
    CHECK(r.code == kExitOk);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "element,phase_index,phase_rad");
    for (int m = 0; m < 6; ++m) {
      std::getline(lines, line);
      CHECK(line.rfind(std::to_string(m) + ",", 0) == 0);
    }
    CHECK(r.out.find("# method=bracketing-bnb") != std::string::npos);
    CHECK(r.out.find("# se_los=") != std::string::npos);

    const Run full = run({"optimize", "--config", "iosim_cli_small.toml", "--mu", "1.0,0.5,2.0",
                          "--mode", "full", "--solver", "brute-force"});
    CHECK(full.code == kExitOk);
    CHECK(full.out.find("# method=brute-force") != std::string::npos);
    std::remove("iosim_cli_small.toml");
  }

  TEST_CASE("sweep output is byte-identical across runs and thread counts") {
    write("iosim_cli_sweep.toml", "experiment.n_trials = 40\nexperiment.sizes = [2, 3]\n");
    const Run a = run({"sweep", "--config", "iosim_cli_sweep.toml", "--out", "iosim_a.csv"});
    const Run b = run({"sweep", "--config", "iosim_cli_sweep.toml", "--out", "iosim_b.csv",
                       "--threads", "3"});
    const Run c = run({"sweep", "--config", "iosim_cli_sweep.toml", "--serial"});
    CHECK(a.code == kExitOk);
    CHECK(b.code == kExitOk);
    const std::string sa = slurp("iosim_a.csv");
    CHECK(sa.rfind("m_elements,system,avg_se,std_err,n_trials\n", 0) == 0);
    CHECK(sa == slurp("iosim_b.csv"));
    CHECK(sa == c.out);
    CHECK(std::count(sa.begin(), sa.end(), '\n') == 7);
    const Run d = run({"sweep", "--config", "iosim_cli_sweep.toml", "--seed", "2"});
    CHECK(d.out != sa);
    std::remove("iosim_a.csv");
    std::remove("iosim_b.csv");
    std::remove("iosim_cli_sweep.toml");
  }

  TEST_CASE("effective config dump reloads to the same dump") {
    write("iosim_cli_dump.toml", "rf.tx_power_dbm = 37\nexperiment.sizes = [4]\n");
    const Run a = run({"sweep", "--config", "iosim_cli_dump.toml", "--trials", "12", "--dump-config"});
    CHECK(a.code == kExitOk);
    CHECK(a.out.find("experiment.n_trials = 12") != std::string::npos);
    write("iosim_cli_dump2.toml", a.out);
    const Run b = run({"sweep", "--config", "iosim_cli_dump2.toml", "--dump-config"});
    CHECK(b.out == a.out);
    std::remove("iosim_cli_dump.toml");
    std::remove("iosim_cli_dump2.toml");
  }

  TEST_CASE("heatmap writes the documented header") {
    write("iosim_cli_map.toml",
          "panel.rows = 2\npanel.cols = 2\nheatmap.x_min = -0.2\nheatmap.x_max = 0.2\n"
          "heatmap.y_min = 0\nheatmap.y_max = 0\n");
    const Run r = run({"heatmap", "--config", "iosim_cli_map.toml"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("x,y,side,se_ios,se_irs,se_direct\n-0.2,0,reflective,", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
    std::remove("iosim_cli_map.toml");
  }
}
