// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Randomized oracle and invariant checks behind `iosim validate` and the
// acceptance suite. Each check draws its instances from Rng::stream(seed, i),
// so a failing instance can be replayed from its index.

#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "iosim/channel.hpp"
#include "iosim/geometry.hpp"
#include "iosim/rng.hpp"

namespace iosim {

struct RandomInstanceOptions {
  std::size_t max_elements = 10;
  std::vector<int> levels{2, 4, 8};
  std::vector<double> kappas{0.0, 1.0, 4.0, 10.0};
  double blocked_probability = 0.0;  // chance of a blocked direct path
  bool require_surface = false;      // redraw until some element amplitude is nonzero
};

/// A small random scene: panel of 1..max_elements elements at half-wavelength
/// pitch with a random pose, BS 5-100 m away on the normal side, user
/// 0.5-10 m away on either side. The element gain is scaled so that the total
/// element amplitude over |direct LoS| is log-uniform in [0.1, 10].
struct RandomInstance {
  PanelGeometry panel;
  Point3 bs;
  Point3 mu;
  RfConstants rf;

  LinkBudget link(SurfaceKind kind = SurfaceKind::ios) const;
  /// Same scene with a different number of phase levels.
  RandomInstance with_levels(int s_a) const;
};

RandomInstance random_instance(Rng& rng, const RandomInstanceOptions& options = {});

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// branch_and_bound against brute_force (or rotation_sweep above the
/// brute-force leaf limit) in both candidate modes and with both bounds.
CheckResult check_oracle_equivalence(std::size_t instances, const RandomInstanceOptions& options,
                                     std::uint64_t seed);

/// Continuous optimum co-phases every element with the direct path and beats
/// `random_vectors` random continuous phase vectors.
CheckResult check_co_phasing(std::size_t geometries, std::size_t random_vectors,
                             const RandomInstanceOptions& options, std::uint64_t seed);

/// Both node bounds against exhaustive completion of random partial
/// assignments; leaves must be tight.
CheckResult check_bound_admissibility(std::size_t nodes, const RandomInstanceOptions& options,
                                      std::uint64_t seed);

/// Expected power against the Monte Carlo second moment, relative tolerance.
CheckResult check_moments(std::size_t scenarios, std::size_t draws, double tolerance,
                          const RandomInstanceOptions& options, std::uint64_t seed);

/// continuous >= full >= bracketing >= nearest.
CheckResult check_ordering(std::size_t instances, const RandomInstanceOptions& options,
                           std::uint64_t seed);

/// Full search with 2 S_a levels never loses to S_a levels.
CheckResult check_nested_monotonicity(std::size_t instances, const RandomInstanceOptions& options,
                                      std::uint64_t seed);

struct BracketingAudit {
  std::size_t instances = 0;
  std::size_t discrepancies = 0;  // bracketing strictly below full
  std::size_t violations = 0;     // bracketing strictly above full
  double seconds = 0.0;

  double rate() const {
    return instances == 0 ? 0.0 : static_cast<double>(discrepancies) / static_cast<double>(instances);
  }
};

BracketingAudit audit_bracketing(std::size_t instances, const RandomInstanceOptions& options,
                                 std::uint64_t seed);

struct ValidationReport {
  std::vector<CheckResult> checks;
  BracketingAudit audit;

  bool passed() const;
};

/// quick: elements <= 8 and reduced instance counts.
ValidationReport run_validation(bool quick, std::uint64_t seed);

/// check,status,detail with one row per check plus the audit row.
void write_validation_csv(std::ostream& out, const ValidationReport& report);

}  // namespace iosim
