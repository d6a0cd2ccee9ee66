// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Phase-shift design for a single user. The search objective is the
// deterministic LoS composite |sum_m h_m^LoS + h_D^LoS|: NLoS terms add
// phase-independent power and never move the argmax.
//
// Solvers:
//   continuous_optimum  closed-form co-phasing with the direct path
//   branch_and_bound    exact search over a per-element candidate set
//   brute_force         exhaustive enumeration, used as the test oracle
//   rotation_sweep      exact O(E log E) solver over the same candidate set
//
// All discrete solvers break ties toward the lexicographically smallest
// phase-index vector, so their outputs are comparable element by element.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "iosim/channel.hpp"

namespace iosim {

enum class CandidateMode {
  bracketing,  // the two grid phases that bracket the continuous optimum
  full,        // every grid phase
};

enum class InitMode { nearest, random };

enum class BoundKind {
  relaxed,   // unfixed elements co-phased with the partial sum (triangle bound)
  rotation,  // best candidate per element for every common rotation; exact
};

enum class Method { continuous, nearest, bracketing_bnb, full_bnb, brute_force, rotation_sweep };

const char* to_string(CandidateMode mode);
const char* to_string(InitMode mode);
const char* to_string(BoundKind kind);
const char* to_string(Method method);
CandidateMode parse_candidate_mode(const std::string& s);
InitMode parse_init_mode(const std::string& s);
BoundKind parse_bound_kind(const std::string& s);

struct OptimizationResult {
  PhaseShiftVector phases;
  double se = 0.0;         // SE of the LoS objective at `phases`
  double amplitude = 0.0;  // |LoS composite| at `phases`
  std::uint64_t nodes_visited = 0;
  std::uint64_t nodes_pruned = 0;
  Method method = Method::nearest;
};

/// psi*_m = (2 pi / lambda)(d_BS,MU - d_BS,m - d_m,MU) wrapped into [0, 2 pi).
std::vector<double> continuous_optimum(const PanelGeometry& panel, Point3 bs, Point3 mu,
                                       const RfConstants& rf);

/// Phases that rotate every element phasor onto the direct LoS phasor
/// (onto the real axis when the direct path is blocked).
std::vector<double> continuous_optimum(const LinkBudget& link);

struct BracketPair {
  int low = 0;
  int high = 0;
};

/// low = floor(psi* / step) mod S_a, high = low + 1 mod S_a. A psi* exactly on
/// a grid point brackets upward.
BracketPair bracketing_candidates(double psi_star, int s_a);

/// Grid index at the smallest cyclic distance from psi*; ties go to the
/// lower index.
int quantize_nearest(double psi_star, int s_a);

/// Sorted, de-duplicated phase indices allowed for each element.
using CandidateSets = std::vector<std::vector<int>>;

CandidateSets candidate_sets(const LinkBudget& link, CandidateMode mode);

/// |LoS composite| for an index vector, summed in element order then the
/// direct term. Every discrete solver scores leaves with this function.
double los_amplitude(const LinkBudget& link, std::span<const int> indices);

/// A search-tree node. `fixed[m] < 0` marks element m as unfixed.
struct BnbNode {
  std::vector<int> fixed;
  cplx partial_phasor;              // direct LoS + fixed element phasors
  double remaining_amplitude = 0.0;  // sum of unfixed element amplitudes
};

BnbNode make_node(const LinkBudget& link, std::span<const int> fixed);

/// log2(1 + P (|partial| + remaining)^2 / sigma^2): every unfixed element
/// co-phased with the partial sum.
double node_upper_bound(const BnbNode& node, double tx_power, double noise_power);
double node_upper_bound(const BnbNode& node, const RfConstants& rf);

/// Exact best completion amplitude of a node over `candidates`, found by
/// sweeping the common rotation of the unfixed elements.
double rotation_upper_bound_amplitude(const LinkBudget& link, const CandidateSets& candidates,
                                      std::span<const int> fixed);

struct BnbOptions {
  CandidateMode mode = CandidateMode::bracketing;
  InitMode init = InitMode::nearest;
  BoundKind bound = BoundKind::rotation;
  std::uint64_t seed = 0;  // for InitMode::random
};

OptimizationResult branch_and_bound(const LinkBudget& link, const BnbOptions& options = {});
OptimizationResult branch_and_bound(const PanelGeometry& panel, Point3 bs, Point3 mu,
                                    const RfConstants& rf, CandidateMode mode);

inline constexpr std::uint64_t kBruteForceLeafLimit = std::uint64_t{1} << 24;

/// Leaves in the candidate set; saturates at UINT64_MAX.
std::uint64_t leaf_count(const CandidateSets& candidates);

/// Throws std::length_error above `max_leaves`.
OptimizationResult brute_force(const LinkBudget& link, CandidateMode mode,
                               std::uint64_t max_leaves = kBruteForceLeafLimit);
OptimizationResult brute_force(const PanelGeometry& panel, Point3 bs, Point3 mu,
                               const RfConstants& rf, CandidateMode mode);

OptimizationResult rotation_sweep(const LinkBudget& link, CandidateMode mode);

/// Nearest grid phase to the continuous optimum for every element.
OptimizationResult nearest_quantized(const LinkBudget& link);

}  // namespace iosim
