// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0

#include "iosim/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace iosim {

BnbOptions ScenarioConfig::optimizer_options() const {
  BnbOptions o;
  o.mode = experiment.candidate_set;
  o.init = experiment.init;
  o.bound = experiment.bound;
  o.seed = experiment.master_seed;
  return o;
}

void validate(const ScenarioConfig& config) {
  validate(config.panel);
  validate(config.rf);
  if (!is_finite(config.bs)) throw std::invalid_argument("bs.position must be finite");
  if (!(signed_offset(config.panel, config.bs) > 0.0)) {
    throw std::invalid_argument("bs.position must lie on the side panel.normal points to");
  }
  if (!is_finite(config.mu.center)) throw std::invalid_argument("mu.center must be finite");
  if (!(config.mu.radius > 0.0) || !std::isfinite(config.mu.radius)) {
    throw std::invalid_argument("mu.radius must be finite and > 0");
  }
  const ExperimentParams& e = config.experiment;
  if (e.n_trials < 1) throw std::invalid_argument("experiment.n_trials must be >= 1");
  if (e.sizes.empty()) throw std::invalid_argument("experiment.sizes must not be empty");
  for (std::size_t s : e.sizes) {
    if (s < 1) throw std::invalid_argument("experiment.sizes entries must be >= 1");
  }
  const HeatmapGrid& g = e.grid;
  if (!(g.step > 0.0) || !std::isfinite(g.step)) {
    throw std::invalid_argument("heatmap.step must be finite and > 0");
  }
  if (!(g.x_min <= g.x_max) || !(g.y_min <= g.y_max) || !std::isfinite(g.x_min) ||
      !std::isfinite(g.x_max) || !std::isfinite(g.y_min) || !std::isfinite(g.y_max)) {
    throw std::invalid_argument("heatmap extents must be finite with min <= max");
  }
}

}  // namespace iosim
