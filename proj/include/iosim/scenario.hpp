// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "iosim/channel.hpp"
#include "iosim/geometry.hpp"
#include "iosim/optimizer.hpp"

namespace iosim {

/// Users are dropped uniformly on a horizontal disk.
struct MuRegion {
  Point3 center{0.0, 0.0, 2.0};
  double radius = 2.0;

  double height() const { return center.z; }

  friend bool operator==(const MuRegion&, const MuRegion&) = default;
};

/// Cell centres are x_min + i * step (and likewise for y), both ends inclusive.
struct HeatmapGrid {
  double x_min = -2.0;
  double x_max = 2.0;
  double y_min = -2.0;
  double y_max = 2.0;
  double step = 0.1;

  friend bool operator==(const HeatmapGrid&, const HeatmapGrid&) = default;
};

struct ExperimentParams {
  std::size_t n_trials = 10000;
  std::uint64_t master_seed = 1;
  std::vector<std::size_t> sizes{2, 4, 6, 8, 10};  // elements per panel side
  CandidateMode candidate_set = CandidateMode::bracketing;
  InitMode init = InitMode::nearest;
  BoundKind bound = BoundKind::rotation;
  HeatmapGrid grid;

  friend bool operator==(const ExperimentParams&, const ExperimentParams&) = default;
};

struct ScenarioConfig {
  RfConstants rf;
  PanelGeometry panel;
  Point3 bs{-500.0, 0.0, 2.0};
  MuRegion mu;
  ExperimentParams experiment;

  BnbOptions optimizer_options() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Revalidates every field; throws std::invalid_argument naming the key.
void validate(const ScenarioConfig& config);

}  // namespace iosim
