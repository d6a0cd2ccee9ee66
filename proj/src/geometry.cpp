// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0

#include "iosim/geometry.hpp"

#include <algorithm>
#include <numbers>

namespace iosim {

const char* to_string(Side side) {
  return side == Side::reflective ? "reflective" : "transmissive";
}

void validate(const PanelGeometry& panel) {
  if (panel.rows < 1 || panel.cols < 1) {
    throw std::invalid_argument("panel.rows and panel.cols must be >= 1");
  }
  if (!(panel.delta_x > 0.0) || !(panel.delta_y > 0.0) || !std::isfinite(panel.delta_x) ||
      !std::isfinite(panel.delta_y)) {
    throw std::invalid_argument("panel.delta_x and panel.delta_y must be finite and > 0");
  }
  if (!is_finite(panel.center)) {
    throw std::invalid_argument("panel.center must be finite");
  }
  if (!is_finite(panel.normal) || std::abs(norm(panel.normal) - 1.0) > 1e-9) {
    throw std::invalid_argument("panel.normal must be a unit vector");
  }
  if (panel.n_diodes < 0 || panel.n_diodes > 30) {
    throw std::invalid_argument("panel.n_diodes must be in [0, 30]");
  }
  if (panel.s_a < 1 || panel.s_a > (1 << panel.n_diodes)) {
    throw std::invalid_argument("panel.s_a must be in [1, 2^n_diodes]");
  }
}

PanelFrame panel_frame(const PanelGeometry& panel) {
  const Point3 n = panel.normal;
  Point3 up{0.0, 0.0, 1.0};
  Point3 h = cross(up, n);
  if (norm(h) < 1e-12) {
    // Panel lies flat; fall back to world x as the column axis.
    h = Point3{1.0, 0.0, 0.0} - dot(Point3{1.0, 0.0, 0.0}, n) * n;
  }
  h = (1.0 / norm(h)) * h;
  return {h, cross(n, h), n};
}

Point3 element_position(const PanelGeometry& panel, std::size_t m) {
  if (m >= panel.size()) {
    throw std::out_of_range("element index " + std::to_string(m) + " out of range for " +
                            std::to_string(panel.size()) + " elements");
  }
  const PanelFrame frame = panel_frame(panel);
  const double row = static_cast<double>(m / panel.cols);
  const double col = static_cast<double>(m % panel.cols);
  const double du = (col - 0.5 * static_cast<double>(panel.cols - 1)) * panel.delta_x;
  const double dv = (row - 0.5 * static_cast<double>(panel.rows - 1)) * panel.delta_y;
  return panel.center + du * frame.horizontal + dv * frame.vertical;
}

namespace {

Direction direction_of(const PanelFrame& frame, Point3 v, double length) {
  const double c = std::clamp(dot(v, frame.normal) / length, -1.0, 1.0);
  double phi = std::atan2(dot(v, frame.vertical), dot(v, frame.horizontal));
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
  return {std::acos(c), phi};
}

}  // namespace

ElementGeometry directions_at(const PanelFrame& frame, Point3 element, Point3 src, Point3 dst) {
  const Point3 to_src = src - element;
  const Point3 to_dst = dst - element;
  const double d_src = norm(to_src);
  const double d_dst = norm(to_dst);
  if (!(d_src > 0.0) || !(d_dst > 0.0)) {
    throw GeometryError("source or destination coincides with an element");
  }
  return {direction_of(frame, to_src, d_src), direction_of(frame, to_dst, d_dst), d_src, d_dst};
}

ElementGeometry directions(const PanelGeometry& panel, std::size_t m, Point3 src, Point3 dst) {
  return directions_at(panel_frame(panel), element_position(panel, m), src, dst);
}

double signed_offset(const PanelGeometry& panel, Point3 p) {
  return dot(p - panel.center, panel.normal);
}

Side side_of(const PanelGeometry& panel, Point3 p) {
  const double s = signed_offset(panel, p);
  if (s == 0.0) {
    throw GeometryError("point lies on the panel plane");
  }
  return s > 0.0 ? Side::reflective : Side::transmissive;
}

}  // namespace iosim
