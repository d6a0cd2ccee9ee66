// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion. Usage:
//   iosim_acceptance <path-to-iosim-cli> [--only C5]

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "iosim/experiments.hpp"
#include "iosim/validation.hpp"

using namespace iosim;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

Outcome from_check(const CheckResult& c) { return {c.passed, c.detail}; }

Outcome size_sweep_check() {
  const ScenarioConfig s;
  const ExperimentParams& e = s.experiment;
  const std::vector<SweepPoint> pts = size_sweep(s, e.sizes, e.n_trials, e.master_seed);
  bool monotone = true;
  bool sandwich = true;
  std::ostringstream d;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const SweepPoint& p = pts[k];
    d << "M=" << p.m_elements << " ios=" << fmt(p.avg_se.ios) << " irs=" << fmt(p.avg_se.irs)
      << " direct=" << fmt(p.avg_se.direct) << "; ";
    if (!(p.avg_se.ios >= p.avg_se.irs && p.avg_se.irs >= p.avg_se.direct)) sandwich = false;
    if (k > 0 && (p.avg_se.ios < pts[k - 1].avg_se.ios || p.avg_se.irs < pts[k - 1].avg_se.irs)) {
      monotone = false;
    }
  }
  // Diminishing returns, informational: second differences within 2 standard errors.
  bool concave = true;
  for (std::size_t k = 2; k < pts.size(); ++k) {
    for (auto pick : {&SystemSe::ios, &SystemSe::irs}) {
      const double g1 = pts[k - 1].avg_se.*pick - pts[k - 2].avg_se.*pick;
      const double g2 = pts[k].avg_se.*pick - pts[k - 1].avg_se.*pick;
      const double dm1 = static_cast<double>(pts[k - 1].m_elements - pts[k - 2].m_elements);
      const double dm2 = static_cast<double>(pts[k].m_elements - pts[k - 1].m_elements);
      if (g2 / dm2 - g1 / dm1 > 2.0 * pts[k].std_err.*pick / dm2) concave = false;
    }
  }
  const ImprovementFactors f = improvement_factors(pts.back());
  const bool se_reading = f.se_ratio_ios >= 10 && f.se_ratio_ios <= 40 && f.se_ratio_irs >= 6 &&
                          f.se_ratio_irs <= 25 && f.se_ratio_ios > f.se_ratio_irs;
  const bool snr_reading = f.snr_ratio_ios >= 10 && f.snr_ratio_ios <= 40 &&
                           f.snr_ratio_irs >= 6 && f.snr_ratio_irs <= 25 &&
                           f.snr_ratio_ios > f.snr_ratio_irs;
  d << "se_ratio ios=" << fmt(f.se_ratio_ios) << " irs=" << fmt(f.se_ratio_irs)
    << "; snr_ratio ios=" << fmt(f.snr_ratio_ios) << " irs=" << fmt(f.snr_ratio_irs)
    << "; (a) monotone=" << monotone << " (b) ordered=" << sandwich
    << " (c) se_reading=" << se_reading << " snr_reading=" << snr_reading
    << "; diminishing_returns=" << concave;
  return {monotone && sandwich && (se_reading || snr_reading), d.str()};
}

Outcome heatmap_check() {
  const ScenarioConfig s;
  const Heatmap map = heatmap(s);
  bool irs_equals_direct = true;
  double left = 0.0, right = 0.0;
  std::size_t nl = 0, nr = 0;
  std::vector<std::pair<double, double>> axis_left, axis_right;  // (|x|, se)
  for (const HeatmapCell& c : map.cells) {
    if (c.side == Side::transmissive) {
      if (c.se.irs != c.se.direct) irs_equals_direct = false;
      right += c.se.ios;
      ++nr;
    } else {
      left += c.se.ios;
      ++nl;
    }
    if (c.y == s.panel.center.y) {
      (c.x < 0 ? axis_left : axis_right).emplace_back(std::abs(c.x), c.se.ios);
    }
  }
  const double ml = left / static_cast<double>(nl);
  const double mr = right / static_cast<double>(nr);
  const double rel = std::abs(ml - mr) / std::max(ml, mr);
  auto decreasing = [](std::vector<std::pair<double, double>> v) {
    std::sort(v.begin(), v.end());
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (!(v[i].second < v[i - 1].second)) return false;
    }
    return v.size() > 1;
  };
  const bool mono = decreasing(axis_left) && decreasing(axis_right);
  std::ostringstream d;
  d << "cells=" << map.cells.size() << "; (a) irs_transmissive_equals_direct=" << irs_equals_direct
    << " (b) mean_left=" << fmt(ml) << " mean_right=" << fmt(mr) << " rel_diff=" << fmt(rel)
    << " (c) monotone_along_normal=" << mono << " points=" << axis_left.size() << "+"
    << axis_right.size();
  return {irs_equals_direct && rel < 0.05 && mono, d.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& cli) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("iosim_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path a = dir / "a.csv";
  const fs::path b = dir / "b.csv";
  const std::string base = "\"" + cli + "\" sweep --trials 2000 --seed 7 --out ";
  const int ra = std::system((base + "\"" + a.string() + "\" --threads 1").c_str());
  const int rb = std::system((base + "\"" + b.string() + "\" --threads 4").c_str());
  const std::string sa = slurp(a);
  const std::string sb = slurp(b);
  fs::remove_all(dir);
  const bool ok = ra == 0 && rb == 0 && !sa.empty() && sa == sb;
  return {ok, "two sweep runs (1 and 4 threads, 2000 trials, seed 7): exit " + std::to_string(ra) +
                  "/" + std::to_string(rb) + ", " + std::to_string(sa.size()) + " bytes, identical=" +
                  std::to_string(sa == sb)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: iosim_acceptance <iosim-cli> [--only ID]\n";
    return 2;
  }
  const std::string cli = argv[1];
  std::string only;
  if (argc >= 4 && std::string(argv[2]) == "--only") only = argv[3];

  RandomInstanceOptions ten;
  ten.max_elements = 10;
  ten.levels = {2, 4, 8};
  RandomInstanceOptions oracle = ten;
  oracle.blocked_probability = 0.05;
  RandomInstanceOptions audit;
  audit.max_elements = 8;
  audit.levels = {4};

  const std::vector<Criterion> criteria = {
      {"C1", "oracle_equivalence", 60,
       [&] { return from_check(check_oracle_equivalence(1000, oracle, 101)); }},
      {"C2", "co_phasing", 10, [&] { return from_check(check_co_phasing(100, 10000, ten, 102)); }},
      {"C3", "bound_admissibility", 30,
       [&] { return from_check(check_bound_admissibility(200, ten, 103)); }},
      {"C4", "moment", 60, [&] { return from_check(check_moments(20, 100000, 0.02, ten, 104)); }},
      {"C5", "size_sweep", 600, size_sweep_check},
      {"C6", "heatmap", 300, heatmap_check},
      {"C7", "determinism", 600, [&] { return determinism(cli); }},
      {"C8", "bracketing_audit", 600,
       [&] {
         const BracketingAudit a = audit_bracketing(1000, audit, 108);
         return Outcome{a.violations == 0,
                        "instances=" + std::to_string(a.instances) +
                            " discrepancies=" + std::to_string(a.discrepancies) +
                            " discrepancy_rate=" + fmt(a.rate()) +
                            " full_below_bracketing=" + std::to_string(a.violations)};
       }},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = o.passed && in_time;
    if (!pass) ++failures;
    std::cout << c.id << ' ' << (pass ? "PASS" : "FAIL") << ' ' << c.name << " (" << fmt(secs, 3)
              << " s, limit " << c.limit_seconds << " s" << (in_time ? "" : ", OVER TIME")
              << "): " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
