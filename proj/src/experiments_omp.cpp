// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0
//
// OpenMP kernels. Each iteration writes only its own slot; reductions happen
// afterwards in index order, so output matches the serial reference bit for bit.

#include <omp.h>

#include <exception>

#include "iosim/experiments.hpp"

namespace iosim {

namespace {

// Exceptions must not cross the parallel region boundary.
class FirstError {
 public:
  template <class F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
#pragma omp critical(iosim_first_error)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace

Heatmap heatmap(const ScenarioConfig& scenario) {
  const std::vector<Point3> points = heatmap_points(scenario);
  Heatmap map;
  map.cells.resize(points.size());
  FirstError error;
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    error.run([&] { map.cells[i] = heatmap_cell(scenario, points[i]); });
  }
  error.rethrow();
  return map;
}

std::vector<SweepPoint> size_sweep(const ScenarioConfig& scenario,
                                   std::span<const std::size_t> sizes, std::size_t n_trials,
                                   std::uint64_t master_seed) {
  std::vector<ScenarioConfig> per_size;
  for (std::size_t side : sizes) per_size.push_back(with_square_panel(scenario, side));
  std::vector<std::vector<TrialResult>> trials(sizes.size(), std::vector<TrialResult>(n_trials));

  FirstError error;
  const auto total = static_cast<std::ptrdiff_t>(sizes.size() * n_trials);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const std::size_t s = static_cast<std::size_t>(k) / n_trials;
    const std::size_t i = static_cast<std::size_t>(k) % n_trials;
    error.run([&] { trials[s][i] = run_trial(per_size[s], master_seed, i); });
  }
  error.rethrow();

  std::vector<SweepPoint> out;
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    out.push_back(summarize(sizes[s] * sizes[s], trials[s]));
  }
  return out;
}

}  // namespace iosim
