// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Cascaded BS -> surface -> user channel with reflective and transmissive
// element responses, the Rician direct path, and spectral efficiency.
//
// Every channel term is sqrt(w_los) * LoS + sqrt(w_nlos) * NLoS with
// w_los = kappa / (1 + kappa) and w_nlos = 1 / (1 + kappa).

#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "iosim/geometry.hpp"
#include "iosim/rng.hpp"

namespace iosim {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into [0, 2 pi).
double wrap_phase(double radians);

/// Free-space reference power gain (lambda / 4 pi)^2 at 1 m.
double free_space_gain_1m(double wavelength);

struct RfConstants {
  double wavelength = 0.06;        // m (5 GHz)
  double rician_kappa = 4.0;       // may be +inf for a pure LoS channel
  double tx_gain = 1.0;            // G^tx
  double rx_gain = 1.0;            // G^rx
  double element_gain = 1.0;       // G_m
  double tx_pattern_gain = 1.0;    // F^tx_m
  double rx_pattern_gain = 1.0;    // F^rx
  double alpha = 5.2;              // direct LoS path-loss exponent
  double tx_power = 10.0;          // W (40 dBm)
  double noise_power = 2.511886431509582e-13;  // W (-96 dBm)
  double epsilon = 1.0;            // transmissive / reflective power ratio
  double gamma_sq = 1.0;           // |gamma_m|^2
  double nlos_exponent = 3.5;      // beta
  double nlos_ref_gain = 2.2797266319525994e-05;  // C, equals free_space_gain_1m(0.06)
  bool direct_blocked = false;

  double los_weight() const;
  double nlos_weight() const;

  friend bool operator==(const RfConstants&, const RfConstants&) = default;
};

/// Throws std::invalid_argument naming the violated field.
void validate(const RfConstants& rf);

/// Discrete phase per element: psi_m = index_m * 2 pi / levels.
struct PhaseShiftVector {
  int levels = 1;
  std::vector<int> indices;

  static PhaseShiftVector zeros(std::size_t m, int levels);

  std::size_t size() const { return indices.size(); }
  double step() const { return kTwoPi / levels; }
  double phase(std::size_t m) const { return indices[m] * step(); }
  std::vector<double> phases() const;

  friend bool operator==(const PhaseShiftVector&, const PhaseShiftVector&) = default;
};

/// Per-term decomposition: value = sqrt(w_los) * los + sqrt(w_nlos) * nlos.
struct ChannelTerm {
  cplx los;
  cplx nlos;
  cplx value;
};

struct ChannelRealization {
  ChannelTerm direct;
  std::vector<ChannelTerm> elements;
  cplx total;      // sum of element values + direct value
  cplx los_total;  // sum of element LoS + direct LoS (unweighted)
};

/// One CN(0,1) draw for the direct path and one per element.
struct SmallScaleDraws {
  cplx direct;
  std::vector<cplx> elements;

  /// Direct draw first, then elements in index order.
  static SmallScaleDraws sample(Rng& rng, std::size_t m);
};

double pattern_arrival(double theta_a);

/// Zero at grazing departure (theta_d == pi / 2).
double pattern_departure(double theta_d, double epsilon);

cplx element_power_gain(const Direction& arrival, const Direction& departure, double psi,
                        const RfConstants& rf, const PanelGeometry& panel);

cplx direct_los(Point3 bs, Point3 mu, const RfConstants& rf);

/// NLoS amplitude gain sqrt(C) * d^(-beta / 2).
double nlos_pathloss(double d, const RfConstants& rf);

cplx direct_channel(Point3 bs, Point3 mu, const RfConstants& rf, Rng& rng);

cplx element_channel(const PanelGeometry& panel, std::size_t m, Point3 bs, Point3 mu, double psi,
                     const RfConstants& rf, Rng& rng);

double spectral_efficiency(cplx h, const RfConstants& rf);
double spectral_efficiency(double channel_power, double tx_power, double noise_power);

/// LoS contribution of one element before its phase shift is applied:
/// h_m^LoS = amplitude * exp(j (base_phase - psi_m)).
struct ElementPhasor {
  double amplitude = 0.0;
  double base_phase = 0.0;  // -2 pi (d_BS,m + d_m,MU) / lambda, wrapped
};

/// How the surface forwards signals to the user's side.
enum class SurfaceKind {
  ios,     // both sides, transmissive side scaled by epsilon
  irs,     // reflect only: no element contribution on the transmissive side
  absent,  // direct path only
};

const char* to_string(SurfaceKind kind);

/// Everything about one BS/panel/user link that does not depend on the
/// phase shifts or the small-scale draws.
struct LinkBudget {
  cplx direct_los;               // zero when the direct path is blocked
  double direct_nlos_gain = 0.0;  // PL(d_BS,MU), zero when blocked
  std::vector<ElementPhasor> elements;
  std::vector<double> element_nlos_gain;  // PL(d_BS,m) * PL(d_m,MU)
  double distance_direct = 0.0;
  int levels = 1;
  double los_weight = 1.0;
  double nlos_weight = 0.0;
  double tx_power = 1.0;
  double noise_power = 1.0;

  std::size_t size() const { return elements.size(); }
  cplx element_los(std::size_t m, double psi) const;
};

LinkBudget build_link(const PanelGeometry& panel, Point3 bs, Point3 mu, const RfConstants& rf,
                      SurfaceKind kind = SurfaceKind::ios);

/// sum_m h_m^LoS + h_D^LoS in element order.
cplx los_composite(const LinkBudget& link, std::span<const double> psi);
cplx los_composite(const LinkBudget& link, const PhaseShiftVector& phases);

ChannelRealization realize(const LinkBudget& link, std::span<const double> psi,
                           const SmallScaleDraws& draws);
ChannelRealization realize(const LinkBudget& link, const PhaseShiftVector& phases,
                           const SmallScaleDraws& draws);

/// E|h|^2 over the small-scale draws.
double expected_power(const LinkBudget& link, std::span<const double> psi);
double expected_power(const LinkBudget& link, const PhaseShiftVector& phases);

ChannelRealization composite_channel(const PanelGeometry& panel, Point3 bs, Point3 mu,
                                     const PhaseShiftVector& phases, const RfConstants& rf,
                                     Rng& rng);

double expected_channel_power(const PanelGeometry& panel, Point3 bs, Point3 mu,
                              const PhaseShiftVector& phases, const RfConstants& rf);

}  // namespace iosim
