// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Scenario files: one `section.key = value` per line, `#` starts a comment.
// Values are numbers, true/false, bare or double-quoted words, or lists in
// square brackets. Powers take an explicit unit suffix (`_dbm` or `_w`).
// Unknown or repeated keys are errors; missing keys keep their defaults.
//
//   rf.tx_power_dbm = 40
//   panel.center = [0, 0, 2]
//   experiment.candidate_set = bracketing

#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "iosim/scenario.hpp"

namespace iosim {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, std::string key, const std::string& message);

  std::size_t line() const { return line_; }  // 0 when not tied to a line
  const std::string& key() const { return key_; }

 private:
  std::size_t line_;
  std::string key_;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Every key with its effective value; parse_config(dump_config(c)) == c.
std::string dump_config(const ScenarioConfig& config);

}  // namespace iosim
