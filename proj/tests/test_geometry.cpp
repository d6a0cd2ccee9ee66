// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0

#include <numbers>

#include "doctest.h"
#include "iosim/geometry.hpp"
#include "iosim/rng.hpp"

using namespace iosim;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

PanelGeometry unit_panel(Point3 normal = {-1.0, 0.0, 0.0}) {
  PanelGeometry p;
  p.rows = 1;
  p.cols = 1;
  p.center = {0.0, 0.0, 0.0};
  p.normal = normal;
  return p;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("single element sits at the panel centre") {
    const PanelGeometry p = unit_panel();
    CHECK(element_position(p, 0) == Point3{0.0, 0.0, 0.0});
    CHECK_THROWS_AS(element_position(p, 1), std::out_of_range);
  }

  TEST_CASE("two-row panel straddles the centre along the vertical axis") {
    PanelGeometry p = unit_panel({0.0, 0.0, 1.0});
    p.rows = 2;
    p.delta_y = 0.03;
    const PanelFrame f = panel_frame(p);
    CHECK(f.vertical.y == Approx(1.0));
    const Point3 a = element_position(p, 0);
    const Point3 b = element_position(p, 1);
    CHECK(a.y == Approx(-0.015));
    CHECK(b.y == Approx(0.015));
    CHECK(a.x == Approx(0.0));
    CHECK(b.z == Approx(0.0));
  }

  TEST_CASE("10x10 grid at 3 cm pitch spans 0.3 m by 0.3 m") {
    const PanelGeometry p;  // defaults
    const PanelFrame f = panel_frame(p);
    double h_lo = 1e9, h_hi = -1e9, v_lo = 1e9, v_hi = -1e9;
    for (std::size_t m = 0; m < p.size(); ++m) {
      const Point3 q = element_position(p, m) - p.center;
      h_lo = std::min(h_lo, dot(q, f.horizontal));
      h_hi = std::max(h_hi, dot(q, f.horizontal));
      v_lo = std::min(v_lo, dot(q, f.vertical));
      v_hi = std::max(v_hi, dot(q, f.vertical));
      CHECK(std::abs(dot(q, p.normal)) < 1e-15);
    }
    CHECK(h_hi - h_lo + p.delta_x == Approx(0.3));
    CHECK(v_hi - v_lo + p.delta_y == Approx(0.3));
  }

  TEST_CASE("row-major numbering") {
    PanelGeometry p;
    p.rows = 2;
    p.cols = 3;
    const PanelFrame f = panel_frame(p);
    const Point3 e0 = element_position(p, 0);
    const Point3 e1 = element_position(p, 1);
    const Point3 e3 = element_position(p, 3);
    CHECK(dot(e1 - e0, f.horizontal) == Approx(p.delta_x));
    CHECK(dot(e1 - e0, f.vertical) == Approx(0.0));
    CHECK(dot(e3 - e0, f.vertical) == Approx(p.delta_y));
  }

  TEST_CASE("panel frame is right-handed and orthonormal") {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
      Point3 n{rng.standard_normal(), rng.standard_normal(), rng.standard_normal()};
      n = (1.0 / norm(n)) * n;
      PanelGeometry p = unit_panel(n);
      const PanelFrame f = panel_frame(p);
      CHECK(norm(f.horizontal) == Approx(1.0));
      CHECK(norm(f.vertical) == Approx(1.0));
      CHECK(dot(f.horizontal, f.vertical) == Approx(0.0).epsilon(1e-12));
      CHECK(dot(f.horizontal, n) == Approx(0.0).epsilon(1e-12));
      CHECK(dot(cross(f.horizontal, f.vertical), n) == Approx(1.0));
    }
    // Panel lying flat.
    const PanelFrame flat = panel_frame(unit_panel({0.0, 0.0, -1.0}));
    CHECK(dot(cross(flat.horizontal, flat.vertical), Point3{0.0, 0.0, -1.0}) == Approx(1.0));
  }

  TEST_CASE("boresight source has zero arrival angle") {
    const PanelGeometry p = unit_panel();
    const ElementGeometry g = directions(p, 0, {-1.0, 0.0, 0.0}, {-1.0, 1.0, 0.0});
    CHECK(g.arrival.theta == Approx(0.0));
    CHECK(g.d_src == Approx(1.0));
    CHECK(g.departure.theta == Approx(kPi / 4));
  }

  TEST_CASE("base station 500 m down the normal") {
    const PanelGeometry p = unit_panel();
    const ElementGeometry g = directions(p, 0, {-500.0, 0.0, 0.0}, {-1.0, 0.0, 0.0});
    CHECK(g.arrival.theta == 0.0);
    CHECK(g.d_src == 500.0);
  }

  TEST_CASE("destination behind the panel departs into the far half-space") {
    const PanelGeometry p = unit_panel();
    const Point3 src{-2.0, 1.0, 0.5};
    const Point3 mirror{2.0, 1.0, 0.5};
    const ElementGeometry g = directions(p, 0, src, mirror);
    CHECK(g.departure.theta > kPi / 2);
    CHECK(g.departure.theta < kPi);
    CHECK(g.departure.theta == Approx(kPi - g.arrival.theta));
  }

  TEST_CASE("coincident source is rejected") {
    const PanelGeometry p = unit_panel();
    CHECK_THROWS_AS(directions(p, 0, {0.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}), GeometryError);
    CHECK_THROWS_AS(directions(p, 0, {-1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}), GeometryError);
  }

  TEST_CASE("side classification") {
    const PanelGeometry p = unit_panel();
    CHECK(side_of(p, {-1.0, 0.0, 0.0}) == Side::reflective);
    CHECK(side_of(p, {1.0, 0.0, 0.0}) == Side::transmissive);
    CHECK_THROWS_AS(side_of(p, {0.0, 1.0, 0.0}), GeometryError);
    CHECK(std::string(to_string(Side::transmissive)) == "transmissive");
  }

  TEST_CASE("panel validation names the offending key") {
    PanelGeometry p;
    CHECK_NOTHROW(validate(p));
    p.s_a = 0;
    CHECK_THROWS_WITH_AS(validate(p), doctest::Contains("panel.s_a"), std::invalid_argument);
    p.s_a = 5;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = PanelGeometry{};
    p.normal = {-2.0, 0.0, 0.0};
    CHECK_THROWS_WITH_AS(validate(p), doctest::Contains("panel.normal"), std::invalid_argument);
    p = PanelGeometry{};
    p.rows = 0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = PanelGeometry{};
    p.delta_x = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
  }

  TEST_CASE("arrival from the normal side stays below grazing; triangle inequality") {
    Rng rng(11);
    PanelGeometry p;
    p.rows = 4;
    p.cols = 5;
    for (int i = 0; i < 500; ++i) {
      const Point3 src{-0.1 - 20.0 * rng.uniform(), 4.0 * rng.uniform() - 2.0,
                       2.0 + 4.0 * rng.uniform() - 2.0};
      double dx = 4.0 * rng.uniform() - 2.0;
      if (std::abs(dx) < 0.05) dx = 0.05;
      const Point3 dst{dx, 4.0 * rng.uniform() - 2.0, 4.0 * rng.uniform()};
      for (std::size_t m = 0; m < p.size(); ++m) {
        const ElementGeometry g = directions(p, m, src, dst);
        CHECK(g.arrival.theta < kPi / 2);
        CHECK(g.arrival.phi >= 0.0);
        CHECK(g.arrival.phi < 2 * kPi);
        CHECK(g.d_src + g.d_dst >= distance(src, dst));
        CHECK((g.departure.theta > kPi / 2) == (side_of(p, dst) == Side::transmissive));
      }
    }
  }

  TEST_CASE("even grids are symmetric under a half turn about the centre") {
    PanelGeometry p;
    p.rows = 4;
    p.cols = 6;
    for (std::size_t m = 0; m < p.size(); ++m) {
      const Point3 s = element_position(p, m) + element_position(p, p.size() - 1 - m);
      CHECK(s.x == Approx(2 * p.center.x));
      CHECK(s.y == Approx(2 * p.center.y));
      CHECK(s.z == Approx(2 * p.center.z));
    }
  }
}
