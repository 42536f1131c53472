// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>

namespace panharmonia {

/// Bessel order nu = k/2 stored exactly as the integer k.
class HalfOrder {
 public:
  constexpr explicit HalfOrder(std::uint32_t twice_order) : twice_(twice_order) {}

  /// Order (m-2)/2 used by the sphere coefficient in dimension m.
  static constexpr HalfOrder sphere(int m) { return HalfOrder(static_cast<std::uint32_t>(m - 2)); }
  /// Order m/2 used by the ball coefficient in dimension m.
  static constexpr HalfOrder ball(int m) { return HalfOrder(static_cast<std::uint32_t>(m)); }

  constexpr std::uint32_t twice_order() const { return twice_; }
  constexpr double value() const { return 0.5 * static_cast<double>(twice_); }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr HalfOrder next() const { return HalfOrder(twice_ + 2); }

  friend constexpr bool operator==(HalfOrder, HalfOrder) = default;

 private:
  std::uint32_t twice_;
};

/// Gamma(k/2) for integer k >= 1, exact recursion from Gamma(1/2) and Gamma(1).
double gamma_half(std::uint32_t twice_argument);

/// Modified Bessel function of the first kind I_nu(z), or e^{-z} I_nu(z) when scaled.
///
/// Summed as the all-positive power series, so there is no cancellation at any z.
/// Throws DomainError for negative or non-finite z and OverflowError when the
/// unscaled value exceeds double range (z above roughly 713).
double bessel_i(HalfOrder order, double z, bool scaled = false);

enum class CoeffKind { sphere, ball, ratio };

std::string_view to_string(CoeffKind kind);
/// Parses "sphere", "ball" or "ratio"; throws ParseError otherwise.
CoeffKind parse_coeff_kind(std::string_view text);

/// Mean value coefficients of mu-panharmonic functions at t = mu*r in dimension m.
///
///   sphere: a°(t) = Gamma(m/2) I_{(m-2)/2}(t) / (t/2)^{(m-2)/2}
///   ball:   a•(t) = Gamma(m/2+1) I_{m/2}(t) / (t/2)^{m/2}
///   ratio:  a•(t) / a°(t)
///
/// sphere and ball equal 1 at t = 0. With `scaled` the sphere and ball values are
/// multiplied by e^{-t} (the ratio is unaffected). Throws DomainError for m < 2 or
/// t < 0 and OverflowError when an unscaled coefficient overflows.
double coeff(CoeffKind kind, int m, double t, bool scaled = false);

inline double sphere_coeff(int m, double t) { return coeff(CoeffKind::sphere, m, t); }
inline double ball_coeff(int m, double t) { return coeff(CoeffKind::ball, m, t); }

/// Leading large-t term of a°: Gamma(m/2) 2^{(m-3)/2} / sqrt(pi) * e^t / t^{(m-1)/2}.
double coeff_sphere_asymptotic(int m, double t);

/// Normalized Poisson integral
///   int_0^1 (1-s^2)^{(m-3)/2} cosh(t s) ds / int_0^1 (1-s^2)^{(m-3)/2} ds,
/// evaluated after s = sin(theta), which equals a°(t) for every m >= 2.
double poisson_integral_u(int m, double t);

/// Surface area of the unit sphere in R^m, 2 pi^{m/2} / Gamma(m/2).
double unit_sphere_area(int m);
/// Volume of the unit ball in R^m.
double unit_ball_volume(int m);

}  // namespace panharmonia
