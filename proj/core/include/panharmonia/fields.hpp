// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "panharmonia/geometry.hpp"

namespace panharmonia {

enum class FieldClass { panharmonic, harmonic, neither, unknown };

std::string_view to_string(FieldClass c);

/// Ground-truth annotations. Numerical code never reads these; they exist so the
/// detector and the verification suite can be scored.
struct FieldMeta {
  FieldClass cls = FieldClass::unknown;
  std::optional<double> mu;
  std::vector<Point> singular_points;
};

/// Real-valued function on R^m (minus its singular points).
class ScalarField {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  ScalarField(std::string name, int dim, Evaluator evaluator, FieldMeta meta = {})
      : name_(std::move(name)), dim_(dim), eval_(std::move(evaluator)), meta_(std::move(meta)) {}

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const FieldMeta& meta() const { return meta_; }

  double operator()(std::span<const double> x) const { return eval_(x); }
  double operator()(const Point& x) const { return eval_(x.span()); }

  /// Smallest distance from x to a singular point (infinity when there are none).
  double clearance(std::span<const double> x) const;

 private:
  std::string name_;
  int dim_;
  Evaluator eval_;
  FieldMeta meta_;
};

/// U(x) = a°(mu |x - center|): entire, radial, U(center) = 1.
ScalarField make_u_radial(int m, double mu, const Point& center);
inline ScalarField make_u_radial(int m, double mu) { return make_u_radial(m, mu, Point::zeros(m)); }

enum class FundamentalSign { decaying, growing };

/// Yukawa-type fundamental solution exp(-+mu |x - pole|) / |x - pole| in R^3.
ScalarField make_fundamental(double mu, FundamentalSign sign, const Point& pole);

/// Harmonic fundamental solution [(2-m) omega_m |x - pole|^{m-2}]^{-1}, m >= 3.
ScalarField make_harmonic_fundamental(int m, const Point& pole);

ScalarField make_constant(int m, double c);
/// x_i with 1-based i.
ScalarField make_coordinate(int m, int i);
/// x_1^2 - x_2^2.
ScalarField make_harmonic_quadratic(int m);
/// exp(mu d.x) for a unit vector d.
ScalarField make_plane_wave(double mu, const Point& direction);
/// |x|^2: neither harmonic nor panharmonic.
ScalarField make_radius_squared(int m);

/// x -> f(s x); a mu-panharmonic f becomes (mu s)-panharmonic.
ScalarField make_scaled(const ScalarField& f, double s);

/// Catalog members that are mu-panharmonic on a neighborhood of the closed unit ball
/// of R^m: U, a plane wave and, for m = 3, both Yukawa fundamental solutions with
/// poles outside the ball.
std::vector<ScalarField> panharmonic_catalog(int m, double mu);
/// panharmonic_catalog plus harmonic controls (constant, coordinate, x1^2 - x2^2 and,
/// for m >= 3, E_m with an exterior pole) and the non-example |x|^2.
std::vector<ScalarField> full_catalog(int m, double mu);

/// Catalog identifiers: `u_radial`, `efund-`, `efund+`, `em`, `const:<c>`, `coord:<i>`,
/// `planewave:<mu>:<d1,d2,...>`, `r2`. `efund+-` and `em` accept a pole suffix
/// `@x,y,z` (default: the origin). `mu` applies to u_radial and efund+-.
ScalarField parse_field(std::string_view id, int m, double mu);

}  // namespace panharmonia
