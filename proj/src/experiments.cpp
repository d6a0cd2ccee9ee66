// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Serial reference kernels and the per-item work shared with the OpenMP
// versions in experiments_omp.cpp.

#include "iosim/experiments.hpp"

#include <cmath>
#include <numbers>

namespace iosim {

Point3 sample_mu(const MuRegion& region, const PanelGeometry& panel, Rng& rng) {
  while (true) {
    const double r = region.radius * std::sqrt(rng.uniform());
    const double a = kTwoPi * rng.uniform();
    const Point3 p = region.center + Point3{r * std::cos(a), r * std::sin(a), 0.0};
    if (std::abs(signed_offset(panel, p)) >= 0.01) return p;
  }
}

TrialResult evaluate_trial(const ScenarioConfig& scenario, Point3 mu, Rng& rng) {
  const BnbOptions options = scenario.optimizer_options();
  TrialResult t;
  t.mu_position = mu;
  t.side = side_of(scenario.panel, mu);

  const LinkBudget ios = build_link(scenario.panel, scenario.bs, mu, scenario.rf, SurfaceKind::ios);
  const LinkBudget direct =
      build_link(scenario.panel, scenario.bs, mu, scenario.rf, SurfaceKind::absent);
  const OptimizationResult ios_opt = branch_and_bound(ios, options);

  const SmallScaleDraws draws = SmallScaleDraws::sample(rng, ios.size());
  auto realized_se = [&](const LinkBudget& link, const PhaseShiftVector& phases) {
    return spectral_efficiency(std::norm(realize(link, phases, draws).total), link.tx_power,
                               link.noise_power);
  };

  t.se.ios = realized_se(ios, ios_opt.phases);
  t.los_se.ios = ios_opt.se;
  if (t.side == Side::reflective) {
    // Reflect-only and omni surfaces see the same channel on this side.
    t.se.irs = t.se.ios;
    t.los_se.irs = t.los_se.ios;
  } else {
    const LinkBudget irs =
        build_link(scenario.panel, scenario.bs, mu, scenario.rf, SurfaceKind::irs);
    const OptimizationResult irs_opt = branch_and_bound(irs, options);
    t.se.irs = realized_se(irs, irs_opt.phases);
    t.los_se.irs = irs_opt.se;
  }
  t.se.direct = realized_se(direct, PhaseShiftVector::zeros(0, direct.levels));
  // Scored like the optimizer scores a leaf, so a silent surface ties exactly.
  const double direct_amp = los_amplitude(direct, {});
  t.los_se.direct = spectral_efficiency(direct_amp * direct_amp, direct.tx_power, direct.noise_power);
  t.phases = ios_opt.phases;
  return t;
}

TrialResult run_trial(const ScenarioConfig& scenario, std::uint64_t master_seed,
                      std::size_t index) {
  Rng rng = Rng::stream(master_seed, index);
  const Point3 mu = sample_mu(scenario.mu, scenario.panel, rng);
  return evaluate_trial(scenario, mu, rng);
}

HeatmapCell heatmap_cell(const ScenarioConfig& scenario, Point3 mu) {
  const BnbOptions options = scenario.optimizer_options();
  HeatmapCell cell;
  cell.x = mu.x;
  cell.y = mu.y;
  cell.side = side_of(scenario.panel, mu);
  auto designed_se = [&](SurfaceKind kind) {
    const LinkBudget link = build_link(scenario.panel, scenario.bs, mu, scenario.rf, kind);
    const OptimizationResult opt = branch_and_bound(link, options);
    return spectral_efficiency(expected_power(link, opt.phases), link.tx_power, link.noise_power);
  };
  cell.se.ios = designed_se(SurfaceKind::ios);
  cell.se.irs = cell.side == Side::reflective ? cell.se.ios : designed_se(SurfaceKind::irs);
  cell.se.direct = designed_se(SurfaceKind::absent);
  return cell;
}

std::vector<double> grid_axis(double lo, double hi, double step) {
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> axis(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    // Snap to a 1 nm lattice so that e.g. -2 + 20 * 0.1 is exactly 0.
    axis[i] = std::round((lo + static_cast<double>(i) * step) * 1e9) / 1e9;
  }
  return axis;
}

std::vector<Point3> heatmap_points(const ScenarioConfig& scenario) {
  const HeatmapGrid& g = scenario.experiment.grid;
  std::vector<Point3> points;
  for (double y : grid_axis(g.y_min, g.y_max, g.step)) {
    for (double x : grid_axis(g.x_min, g.x_max, g.step)) {
      const Point3 p{x, y, scenario.mu.height()};
      if (std::abs(signed_offset(scenario.panel, p)) < 1e-6) continue;
      points.push_back(p);
    }
  }
  return points;
}

Heatmap heatmap_serial(const ScenarioConfig& scenario) {
  Heatmap map;
  for (const Point3& p : heatmap_points(scenario)) map.cells.push_back(heatmap_cell(scenario, p));
  return map;
}

ScenarioConfig with_square_panel(const ScenarioConfig& scenario, std::size_t side) {
  ScenarioConfig s = scenario;
  s.panel.rows = side;
  s.panel.cols = side;
  return s;
}

SweepPoint summarize(std::size_t m_elements, std::span<const TrialResult> trials) {
  SweepPoint point;
  point.m_elements = m_elements;
  point.n_trials = trials.size();
  if (trials.empty()) return point;
  const double n = static_cast<double>(trials.size());
  SystemSe sum;
  for (const TrialResult& t : trials) {
    sum.ios += t.se.ios;
    sum.irs += t.se.irs;
    sum.direct += t.se.direct;
  }
  point.avg_se = {sum.ios / n, sum.irs / n, sum.direct / n};
  if (trials.size() < 2) return point;
  SystemSe sq;
  for (const TrialResult& t : trials) {
    sq.ios += (t.se.ios - point.avg_se.ios) * (t.se.ios - point.avg_se.ios);
    sq.irs += (t.se.irs - point.avg_se.irs) * (t.se.irs - point.avg_se.irs);
    sq.direct += (t.se.direct - point.avg_se.direct) * (t.se.direct - point.avg_se.direct);
  }
  auto stderr_of = [&](double s) { return std::sqrt(s / (n - 1.0)) / std::sqrt(n); };
  point.std_err = {stderr_of(sq.ios), stderr_of(sq.irs), stderr_of(sq.direct)};
  return point;
}

std::vector<SweepPoint> size_sweep_serial(const ScenarioConfig& scenario,
                                          std::span<const std::size_t> sizes, std::size_t n_trials,
                                          std::uint64_t master_seed) {
  std::vector<SweepPoint> out;
  for (std::size_t side : sizes) {
    const ScenarioConfig s = with_square_panel(scenario, side);
    std::vector<TrialResult> trials;
    trials.reserve(n_trials);
    for (std::size_t i = 0; i < n_trials; ++i) trials.push_back(run_trial(s, master_seed, i));
    out.push_back(summarize(side * side, trials));
  }
  return out;
}

ImprovementFactors improvement_factors(const SweepPoint& point) {
  auto snr = [](double se) { return std::expm1(se * std::numbers::ln2); };
  ImprovementFactors f;
  f.se_ratio_ios = point.avg_se.ios / point.avg_se.direct;
  f.se_ratio_irs = point.avg_se.irs / point.avg_se.direct;
  f.snr_ratio_ios = snr(point.avg_se.ios) / snr(point.avg_se.direct);
  f.snr_ratio_irs = snr(point.avg_se.irs) / snr(point.avg_se.direct);
  return f;
}

}  // namespace iosim
