// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo size sweeps and deterministic coverage heatmaps comparing the
// omni-surface (ios), a reflect-only surface (irs) and the direct path alone.
//
// Every kernel has a serial reference (`*_serial`) and an OpenMP version that
// must produce bit-identical output: work items carry their own RNG stream
// and results are reduced in index order after the parallel loop.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "iosim/scenario.hpp"

namespace iosim {

struct SystemSe {
  double ios = 0.0;
  double irs = 0.0;
  double direct = 0.0;
};

struct TrialResult {
  Point3 mu_position;
  Side side = Side::reflective;
  SystemSe se;      // realized SE with shared small-scale draws
  SystemSe los_se;  // SE of the deterministic LoS objective
  PhaseShiftVector phases;  // ios design
};

struct SweepPoint {
  std::size_t m_elements = 0;
  SystemSe avg_se;
  SystemSe std_err;
  std::size_t n_trials = 0;
};

struct HeatmapCell {
  double x = 0.0;
  double y = 0.0;
  Side side = Side::reflective;
  SystemSe se;
};

/// Cells in y-major then x order, both ascending; cells on the panel plane
/// are left out.
struct Heatmap {
  std::vector<HeatmapCell> cells;
};

/// Uniform on the region's disk; resamples points within 1 cm of the panel plane.
Point3 sample_mu(const MuRegion& region, const PanelGeometry& panel, Rng& rng);

TrialResult evaluate_trial(const ScenarioConfig& scenario, Point3 mu, Rng& rng);

/// Trial `index` of a sweep: the user position and the small-scale draws come
/// from Rng::stream(master_seed, index), so every panel size sees the same users.
TrialResult run_trial(const ScenarioConfig& scenario, std::uint64_t master_seed, std::size_t index);

/// Expected-power SE for every system with the user at `mu`.
HeatmapCell heatmap_cell(const ScenarioConfig& scenario, Point3 mu);

/// Grid cell centres (before removing the panel plane).
std::vector<double> grid_axis(double lo, double hi, double step);

std::vector<Point3> heatmap_points(const ScenarioConfig& scenario);

Heatmap heatmap_serial(const ScenarioConfig& scenario);
Heatmap heatmap(const ScenarioConfig& scenario);

std::vector<SweepPoint> size_sweep_serial(const ScenarioConfig& scenario,
                                          std::span<const std::size_t> sizes, std::size_t n_trials,
                                          std::uint64_t master_seed);
std::vector<SweepPoint> size_sweep(const ScenarioConfig& scenario,
                                   std::span<const std::size_t> sizes, std::size_t n_trials,
                                   std::uint64_t master_seed);

/// Mean and standard error of per-trial SE, summed in trial order.
SweepPoint summarize(std::size_t m_elements, std::span<const TrialResult> trials);

/// Gains over the direct path: SE ratios, and ratios of 2^SE - 1, the
/// linear SNR a single link would need to reach the same average SE.
struct ImprovementFactors {
  double se_ratio_ios = 0.0;
  double se_ratio_irs = 0.0;
  double snr_ratio_ios = 0.0;
  double snr_ratio_irs = 0.0;
};

ImprovementFactors improvement_factors(const SweepPoint& point);

/// The scenario with a rows x cols = side x side panel.
ScenarioConfig with_square_panel(const ScenarioConfig& scenario, std::size_t side);

}  // namespace iosim
