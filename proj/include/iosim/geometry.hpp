// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Panel, base station and user placement in 3-D space.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace iosim {

/// Raised for inputs that put a point on the panel plane or on an element.
class GeometryError : public std::domain_error {
 public:
  explicit GeometryError(const std::string& what) : std::domain_error(what) {}
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Point3 operator*(double s, Point3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr bool operator==(Point3, Point3) = default;
};

constexpr double dot(Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Point3 cross(Point3 a, Point3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Point3 a) { return std::sqrt(dot(a, a)); }
inline double distance(Point3 a, Point3 b) { return norm(a - b); }
inline bool is_finite(Point3 a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// Polar angle from the panel normal and azimuth in the panel plane.
struct Direction {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)
};

enum class Side { reflective, transmissive };

const char* to_string(Side side);

/// A flat rows x cols grid of identical elements. The normal points toward
/// the base-station side; element m sits at row m / cols, column m % cols.
struct PanelGeometry {
  std::size_t rows = 10;
  std::size_t cols = 10;
  double delta_x = 0.03;  // element width (m)
  double delta_y = 0.03;  // element height (m)
  Point3 center{0.0, 0.0, 2.0};
  Point3 normal{-1.0, 0.0, 0.0};
  int n_diodes = 2;
  int s_a = 4;  // number of available phase shifts

  std::size_t size() const { return rows * cols; }
  double element_area() const { return delta_x * delta_y; }

  friend bool operator==(const PanelGeometry&, const PanelGeometry&) = default;
};

/// Throws std::invalid_argument naming the violated field.
void validate(const PanelGeometry& panel);

/// In-plane unit axes: `horizontal` runs along columns, `vertical` along rows.
/// (horizontal, vertical, normal) is right-handed.
struct PanelFrame {
  Point3 horizontal;
  Point3 vertical;
  Point3 normal;
};

PanelFrame panel_frame(const PanelGeometry& panel);

/// Centre of element m (0-based, row-major).
Point3 element_position(const PanelGeometry& panel, std::size_t m);

struct ElementGeometry {
  Direction arrival;
  Direction departure;
  double d_src = 0.0;
  double d_dst = 0.0;
};

/// Arrival angles of src -> element and departure angles of element -> dst.
ElementGeometry directions(const PanelGeometry& panel, std::size_t m, Point3 src, Point3 dst);

/// Same, for an element position already computed by the caller.
ElementGeometry directions_at(const PanelFrame& frame, Point3 element, Point3 src, Point3 dst);

/// Signed distance of p from the panel plane, positive on the BS side.
double signed_offset(const PanelGeometry& panel, Point3 p);

/// Throws GeometryError when p lies on the panel plane.
Side side_of(const PanelGeometry& panel, Point3 p);

}  // namespace iosim
