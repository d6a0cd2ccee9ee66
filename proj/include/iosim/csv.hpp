// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0
//
// CSV writers. Numbers use the shortest round-trip form from std::to_chars,
// which ignores the process locale; lines end in '\n'.

#pragma once

#include <ostream>
#include <span>
#include <string>

#include "iosim/experiments.hpp"
#include "iosim/optimizer.hpp"

namespace iosim {

std::string format_double(double v);

/// x,y,side,se_ios,se_irs,se_direct
void write_heatmap_csv(std::ostream& out, const Heatmap& map);

/// m_elements,system,avg_se,std_err,n_trials with one row per system.
void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points);

/// element,phase_index,phase_rad rows followed by `# key=value` summary lines.
void write_optimize_csv(std::ostream& out, const OptimizationResult& result,
                        double expected_power_se);

}  // namespace iosim
