// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0

#include "iosim/csv.hpp"

#include <array>
#include <charconv>
#include <tuple>

namespace iosim {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_heatmap_csv(std::ostream& out, const Heatmap& map) {
  out << "x,y,side,se_ios,se_irs,se_direct\n";
  for (const HeatmapCell& c : map.cells) {
    out << format_double(c.x) << ',' << format_double(c.y) << ',' << to_string(c.side) << ','
        << format_double(c.se.ios) << ',' << format_double(c.se.irs) << ','
        << format_double(c.se.direct) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points) {
  out << "m_elements,system,avg_se,std_err,n_trials\n";
  for (const SweepPoint& p : points) {
    const std::array<std::tuple<const char*, double, double>, 3> rows{{
        {"ios", p.avg_se.ios, p.std_err.ios},
        {"irs", p.avg_se.irs, p.std_err.irs},
        {"direct", p.avg_se.direct, p.std_err.direct},
    }};
    for (const auto& [system, avg, err] : rows) {
      out << p.m_elements << ',' << system << ',' << format_double(avg) << ','
          << format_double(err) << ',' << p.n_trials << '\n';
    }
  }
}

void write_optimize_csv(std::ostream& out, const OptimizationResult& result,
                        double expected_power_se) {
  out << "element,phase_index,phase_rad\n";
  for (std::size_t m = 0; m < result.phases.size(); ++m) {
    out << m << ',' << result.phases.indices[m] << ',' << format_double(result.phases.phase(m))
        << '\n';
  }
  out << "# method=" << to_string(result.method) << '\n';
  out << "# se_los=" << format_double(result.se) << '\n';
  out << "# se_expected=" << format_double(expected_power_se) << '\n';
  out << "# nodes_visited=" << result.nodes_visited << '\n';
  out << "# nodes_pruned=" << result.nodes_pruned << '\n';
}

}  // namespace iosim
