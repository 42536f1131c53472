// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>
#include <vector>

#include "panharmonia/fields.hpp"
#include "panharmonia/geometry.hpp"
#include "panharmonia/rng.hpp"

namespace panharmonia {

enum class MeanMethod { trapezoid, gauss_product, monte_carlo, radial_composite };

std::string_view to_string(MeanMethod method);

/// A computed mean. std_error is zero exactly for the deterministic rules.
struct MeanEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long samples = 1;
  MeanMethod method = MeanMethod::trapezoid;

  bool deterministic() const { return method != MeanMethod::monte_carlo; }
};

/// Node counts for the sphere and radial rules.
///
/// m = 2 uses a `circle_points` trapezoid rule; m = 3 a `polar_nodes` Gauss-Legendre
/// rule in cos(theta) times an `azimuth_points` trapezoid rule in phi; m >= 4 falls
/// back to `mc_samples` uniform directions drawn from `stream`.
struct QuadratureConfig {
  int circle_points = 256;
  int polar_nodes = 32;
  int azimuth_points = 64;
  long long mc_samples = 200'000;
  RngStream stream{0, 0};
  int radial_nodes = 64;

  /// 16 x 32 sphere rule (and 64-point circle); used where nested rules multiply cost.
  static QuadratureConfig compact();
  /// Throws DomainError when any count is below 4.
  void validate() const;
};

/// Spherical mean of f over S_r(x). r = 0 returns f(x).
MeanEstimate sphere_mean(const ScalarField& f, const Point& x, double r, const QuadratureConfig& q = {});

/// Volume mean over B_r(x) by radial composition m r^{-m} int_0^r t^{m-1} M°(f,x,t) dt
/// (Gauss-Legendre in t). Monte Carlo directly over the ball when m >= 4.
MeanEstimate ball_mean(const ScalarField& f, const Point& x, double r, const QuadratureConfig& q = {});

/// Double spherical average (1/omega_m^2) int int f(x + r_outer y + r_inner z) dS_y dS_z.
MeanEstimate iterated_mean(const ScalarField& f, const Point& x, double r_outer, double r_inner,
                           const QuadratureConfig& q = {});

/// Monte Carlo volume mean of f over d with n uniform samples.
MeanEstimate domain_mean(const ScalarField& f, const Domain& d, long long n, const RngStream& rng);

/// Flux int_{dD} df/dn dS over a ball by centered differences of step h along the
/// outward normal at the sphere-rule nodes. h <= 0 selects 1e-5 * radius.
double boundary_flux(const ScalarField& f, const Domain& d, double h = 0.0, const QuadratureConfig& q = {});

enum class MeanKind { sphere, volume };

/// Richardson-extrapolated limit of (mean(f, x, r) - f(x)) / r^2 as r -> 0, from
/// r_k = r0 2^{-k}, k = 0..levels-1 (the expansion is in even powers of r).
/// Deterministic rules only: throws UnsupportedError for m >= 4.
double mean_excess_limit(MeanKind kind, const ScalarField& f, const Point& x, double r0, int levels = 7,
                         const QuadratureConfig& q = {});

/// Repeated Richardson extrapolation of values taken at h_k = h0 / 2^k for an
/// expansion in powers of h^2; returns the bottom-right tableau entry.
double richardson_extrapolate(const std::vector<double>& values);

}  // namespace panharmonia
