// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace iosim {

/// Seeded generator with portable uniform and Gaussian draws. The standard
/// distribution classes are implementation-defined, so draws are built
/// directly on top of mt19937_64 to keep CSV output identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for work item `index` under `master_seed`.
  static Rng stream(std::uint64_t master_seed, std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n);
  double standard_normal();
  /// Circularly-symmetric complex Gaussian with unit variance, CN(0, 1).
  std::complex<double> complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace iosim
