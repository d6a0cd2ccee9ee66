// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <map>

#include "doctest.h"
#include "iosim/experiments.hpp"

using namespace iosim;
using doctest::Approx;

namespace {

ScenarioConfig small_scenario() {
  ScenarioConfig s;
  s.panel.rows = 4;
  s.panel.cols = 4;
  return s;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("user drops are uniform on the disk and split evenly across the panel") {
    const ScenarioConfig s;
    Rng rng(42);
    const int n = 10000;
    double sx = 0.0, sy = 0.0;
    int reflective = 0;
    for (int i = 0; i < n; ++i) {
      const Point3 p = sample_mu(s.mu, s.panel, rng);
      CHECK(distance(p, s.mu.center) <= s.mu.radius);
      CHECK(p.z == s.mu.height());
      CHECK(std::abs(signed_offset(s.panel, p)) >= 0.01);
      sx += p.x;
      sy += p.y;
      if (side_of(s.panel, p) == Side::reflective) ++reflective;
    }
    // Coordinate std of a uniform disk is R / 2.
    const double sigma = s.mu.radius / 2.0 / std::sqrt(n);
    CHECK(std::abs(sx / n - s.mu.center.x) < 3 * sigma);
    CHECK(std::abs(sy / n - s.mu.center.y) < 3 * sigma);
    CHECK(std::abs(reflective - n / 2) < 3 * std::sqrt(n * 0.25));
  }

  TEST_CASE("reflective-side trials give the reflect-only surface the full channel") {
    const ScenarioConfig s = small_scenario();
    Rng rng(1);
    const TrialResult t = evaluate_trial(s, {-1.0, 0.4, 2.0}, rng);
    CHECK(t.side == Side::reflective);
    CHECK(t.se.irs == t.se.ios);
    CHECK(t.los_se.irs == t.los_se.ios);
  }

  TEST_CASE("transmissive-side trials leave the reflect-only surface with the direct path") {
    const ScenarioConfig s = small_scenario();
    Rng rng(1);
    const TrialResult t = evaluate_trial(s, {1.0, 0.4, 2.0}, rng);
    CHECK(t.side == Side::transmissive);
    CHECK(t.se.irs == t.se.direct);
    CHECK(t.los_se.irs == t.los_se.direct);
    CHECK(t.se.ios > t.se.direct);
  }

  TEST_CASE("baseline ordering holds per trial on the LoS objective") {
    const ScenarioConfig s = small_scenario();
    for (std::size_t i = 0; i < 300; ++i) {
      const TrialResult t = run_trial(s, 9, i);
      CHECK(t.los_se.direct <= t.los_se.irs);
      CHECK(t.los_se.irs <= t.los_se.ios);
      CHECK(t.se.ios >= 0.0);
      CHECK(t.phases.size() == 16);
    }
  }

  TEST_CASE("trials are reproducible from their index") {
    const ScenarioConfig s = small_scenario();
    const TrialResult a = run_trial(s, 5, 17);
    const TrialResult b = run_trial(s, 5, 17);
    CHECK(a.mu_position == b.mu_position);
    CHECK(a.se.ios == b.se.ios);
    CHECK(a.se.direct == b.se.direct);
    CHECK(a.phases == b.phases);
    // Same user for a different panel size.
    const TrialResult c = run_trial(with_square_panel(s, 8), 5, 17);
    CHECK(c.mu_position == a.mu_position);
    CHECK(run_trial(s, 6, 17).mu_position != a.mu_position);
  }

  TEST_CASE("grid axis") {
    const std::vector<double> ax = grid_axis(-2.0, 2.0, 0.1);
    CHECK(ax.size() == 41);
    CHECK(ax.front() == -2.0);
    CHECK(ax.back() == 2.0);
    CHECK(ax[20] == 0.0);
    CHECK(ax[13] == -0.7);
    CHECK(grid_axis(0.0, 0.0, 0.5).size() == 1);
  }

  TEST_CASE("heatmap points skip the panel plane and run y-major") {
    ScenarioConfig s;
    s.experiment.grid = {-0.2, 0.2, -0.1, 0.1, 0.1};
    const std::vector<Point3> pts = heatmap_points(s);
    CHECK(pts.size() == 4 * 3);
    for (const Point3& p : pts) CHECK(p.x != 0.0);
    CHECK(pts[0].x == -0.2);
    CHECK(pts[0].y == -0.1);
    CHECK(pts[1].x == -0.1);
    CHECK(pts[4].y == 0.0);
  }

  TEST_CASE("heatmap structure on a coarse grid") {
    ScenarioConfig s;
    s.experiment.grid = {-1.9, 1.9, -1.0, 1.0, 0.2};
    const Heatmap map = heatmap(s);
    double left = 0.0, right = 0.0;
    int nl = 0, nr = 0;
    for (const HeatmapCell& c : map.cells) {
      if (c.side == Side::transmissive) {
        CHECK(c.se.irs == c.se.direct);
        right += c.se.ios;
        ++nr;
      } else {
        CHECK(c.se.irs == c.se.ios);
        left += c.se.ios;
        ++nl;
      }
      CHECK(c.se.ios >= c.se.direct);
    }
    REQUIRE(nl == nr);
    CHECK(std::abs(left / nl - right / nr) < 0.05 * std::max(left / nl, right / nr));
  }

  TEST_CASE("coverage falls off along the panel normal") {
    const ScenarioConfig s;
    double prev_left = INFINITY, prev_right = INFINITY;
    for (int k = 1; k <= 19; ++k) {
      const double x = 0.1 * k;
      const double l = heatmap_cell(s, {-x, 0.0, 2.0}).se.ios;
      const double r = heatmap_cell(s, {x, 0.0, 2.0}).se.ios;
      CHECK(l < prev_left);
      CHECK(r < prev_right);
      prev_left = l;
      prev_right = r;
    }
    CHECK(heatmap_cell(s, {0.5, 0.0, 2.0}).se.ios > heatmap_cell(s, {1.9, 0.0, 2.0}).se.ios);
  }

  TEST_CASE("summary statistics") {
    std::vector<TrialResult> t(4);
    const double ios[] = {1.0, 2.0, 3.0, 6.0};
    for (int i = 0; i < 4; ++i) {
      t[i].se = {ios[i], ios[i] / 2, 0.5};
    }
    const SweepPoint p = summarize(16, t);
    CHECK(p.m_elements == 16);
    CHECK(p.n_trials == 4);
    CHECK(p.avg_se.ios == Approx(3.0));
    CHECK(p.avg_se.irs == Approx(1.5));
    // Sample variance 14/3, standard error sqrt(14/3 / 4).
    CHECK(p.std_err.ios == Approx(std::sqrt(14.0 / 3.0 / 4.0)));
    CHECK(p.std_err.direct == 0.0);

    const ImprovementFactors f = improvement_factors(p);
    CHECK(f.se_ratio_ios == Approx(6.0));
    CHECK(f.se_ratio_irs == Approx(3.0));
    CHECK(f.snr_ratio_ios == Approx((std::pow(2.0, 3.0) - 1.0) / (std::sqrt(2.0) - 1.0)));
  }

  TEST_CASE("small sweep grows with panel size") {
    ScenarioConfig s;
    const std::vector<std::size_t> sizes{2, 6, 10};
    const std::vector<SweepPoint> pts = size_sweep(s, sizes, 200, 3);
    REQUIRE(pts.size() == 3);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      CHECK(pts[k].m_elements == sizes[k] * sizes[k]);
      CHECK(pts[k].avg_se.ios >= pts[k].avg_se.irs);
      CHECK(pts[k].avg_se.irs >= pts[k].avg_se.direct);
      if (k > 0) {
        CHECK(pts[k].avg_se.ios > pts[k - 1].avg_se.ios);
        CHECK(pts[k].avg_se.irs > pts[k - 1].avg_se.irs);
      }
    }
    // The direct path does not depend on the panel.
    CHECK(pts[0].avg_se.direct == pts[2].avg_se.direct);
  }
}
