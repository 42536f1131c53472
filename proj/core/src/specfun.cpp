// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#include "panharmonia/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "panharmonia/errors.hpp"
#include "panharmonia/quadrature.hpp"

namespace panharmonia {
namespace {

constexpr double kRelativeStop = 1e-17;
constexpr double kLogScaleThreshold = 600.0;
const double kLogMax = std::log(std::numeric_limits<double>::max());

int term_cap(double x) { return std::max(300, static_cast<int>(x) + 100); }

// sum_j (x^2/4)^j / (j! (nu+1)_j), every term positive.
double normalized_series(double nu, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  const int cap = term_cap(x);
  for (int j = 0; j < cap; ++j) {
    const double dj = static_cast<double>(j);
    term *= q / ((dj + 1.0) * (dj + 1.0 + nu));
    sum += term;
    if (term < kRelativeStop * sum) break;
  }
  return sum;
}

// log of normalized_series, accumulated relative to a running maximum so large x
// never overflows.
double log_normalized_series(double nu, double x) {
  if (x <= kLogScaleThreshold) return std::log(normalized_series(nu, x));
  const double log_q = 2.0 * std::log(0.5 * x);
  double log_term = 0.0;
  double log_peak = 0.0;
  double sum = 1.0;  // relative to exp(log_peak)
  const int cap = term_cap(x);
  for (int j = 0; j < cap; ++j) {
    const double dj = static_cast<double>(j);
    log_term += log_q - std::log((dj + 1.0) * (dj + 1.0 + nu));
    if (log_term > log_peak) {
      sum = sum * std::exp(log_peak - log_term) + 1.0;
      log_peak = log_term;
    } else {
      const double rel = std::exp(log_term - log_peak);
      sum += rel;
      if (rel < kRelativeStop * sum) break;
    }
  }
  return log_peak + std::log(sum);
}

void check_argument(double z, const char* what) {
  if (!std::isfinite(z) || z < 0.0) {
    throw DomainError(std::string(what) + ": argument must be finite and nonnegative, got " +
                      std::to_string(z));
  }
}

void check_dimension(int m, const char* what) {
  if (m < 2) throw DomainError(std::string(what) + ": dimension must be >= 2, got " + std::to_string(m));
}

// Gamma(nu+1) * e^{-x*scaled} * normalized_series, i.e. the coefficient a(x) for order nu.
double coefficient(double nu, double x, bool scaled) {
  if (x == 0.0) return 1.0;
  if (x <= kLogScaleThreshold) {
    const double s = normalized_series(nu, x);
    return scaled ? s * std::exp(-x) : s;
  }
  const double log_s = log_normalized_series(nu, x);
  if (scaled) return std::exp(log_s - x);
  if (log_s > kLogMax) throw OverflowError("coeff: value overflows double; use the scaled variant");
  return std::exp(log_s);
}

}  // namespace

double gamma_half(std::uint32_t twice_argument) {
  if (twice_argument == 0) throw DomainError("gamma_half: pole at 0");
  double g = (twice_argument % 2 == 0) ? 1.0 : std::sqrt(std::numbers::pi);
  for (std::uint32_t k = (twice_argument % 2 == 0) ? 2 : 1; k + 2 <= twice_argument; k += 2) {
    g *= 0.5 * static_cast<double>(k);
  }
  return g;
}

double bessel_i(HalfOrder order, double z, bool scaled) {
  check_argument(z, "bessel_i");
  const double nu = order.value();
  if (z == 0.0) return order.twice_order() == 0 ? 1.0 : 0.0;
  const double gamma = gamma_half(order.twice_order() + 2);  // Gamma(nu + 1)
  if (z <= kLogScaleThreshold) {
    const double value = std::pow(0.5 * z, nu) / gamma * normalized_series(nu, z);
    if (!std::isfinite(value)) throw OverflowError("bessel_i: value overflows double");
    return scaled ? value * std::exp(-z) : value;
  }
  const double log_value = nu * std::log(0.5 * z) - std::lgamma(nu + 1.0) + log_normalized_series(nu, z);
  if (scaled) return std::exp(log_value - z);
  if (log_value > kLogMax) throw OverflowError("bessel_i: value overflows double; use scaled");
  return std::exp(log_value);
}

std::string_view to_string(CoeffKind kind) {
  switch (kind) {
    case CoeffKind::sphere: return "sphere";
    case CoeffKind::ball: return "ball";
    case CoeffKind::ratio: return "ratio";
  }
  return "?";
}

CoeffKind parse_coeff_kind(std::string_view text) {
  if (text == "sphere") return CoeffKind::sphere;
  if (text == "ball") return CoeffKind::ball;
  if (text == "ratio") return CoeffKind::ratio;
  throw ParseError("unknown coefficient kind '" + std::string(text) + "' (sphere|ball|ratio)");
}

double coeff(CoeffKind kind, int m, double t, bool scaled) {
  check_dimension(m, "coeff");
  check_argument(t, "coeff");
  const double nu_sphere = 0.5 * (m - 2);
  const double nu_ball = 0.5 * m;
  switch (kind) {
    case CoeffKind::sphere: return coefficient(nu_sphere, t, scaled);
    case CoeffKind::ball: return coefficient(nu_ball, t, scaled);
    case CoeffKind::ratio:
      if (t == 0.0) return 1.0;
      if (t <= kLogScaleThreshold) return normalized_series(nu_ball, t) / normalized_series(nu_sphere, t);
      return std::exp(log_normalized_series(nu_ball, t) - log_normalized_series(nu_sphere, t));
  }
  throw DomainError("coeff: unknown kind");
}

double coeff_sphere_asymptotic(int m, double t) {
  check_dimension(m, "coeff_sphere_asymptotic");
  check_argument(t, "coeff_sphere_asymptotic");
  if (t == 0.0) throw DomainError("coeff_sphere_asymptotic: t = 0 is a pole of the leading term");
  const double md = static_cast<double>(m);
  const double log_value = std::log(gamma_half(static_cast<std::uint32_t>(m))) +
                           0.5 * (md - 3.0) * std::numbers::ln2 - 0.5 * std::log(std::numbers::pi) + t -
                           0.5 * (md - 1.0) * std::log(t);
  if (log_value > kLogMax) throw OverflowError("coeff_sphere_asymptotic: value overflows double");
  return std::exp(log_value);
}

double poisson_integral_u(int m, double t) {
  check_dimension(m, "poisson_integral_u");
  check_argument(t, "poisson_integral_u");
  if (t == 0.0) return 1.0;
  // s = sin(theta): (1-s^2)^{(m-3)/2} ds = cos^{m-2}(theta) dtheta, smooth on [0, pi/2].
  const std::size_t n = std::max<std::size_t>(64, 32 + 2 * static_cast<std::size_t>(std::ceil(t)));
  const auto& rule = gauss_legendre(n);
  const int power = m - 2;
  const double numerator = rule.integrate(
      [&](double theta) { return std::pow(std::cos(theta), power) * std::cosh(t * std::sin(theta)); }, 0.0,
      0.5 * std::numbers::pi);
  // int_0^{pi/2} cos^{m-2} = sqrt(pi) Gamma((m-1)/2) / (2 Gamma(m/2))
  const double normalization = std::sqrt(std::numbers::pi) * gamma_half(static_cast<std::uint32_t>(m - 1)) /
                               (2.0 * gamma_half(static_cast<std::uint32_t>(m)));
  return numerator / normalization;
}

double unit_sphere_area(int m) {
  check_dimension(m, "unit_sphere_area");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * m) / gamma_half(static_cast<std::uint32_t>(m));
}

double unit_ball_volume(int m) { return unit_sphere_area(m) / static_cast<double>(m); }

}  // namespace panharmonia
