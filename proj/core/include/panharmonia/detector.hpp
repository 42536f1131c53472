// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "panharmonia/fields.hpp"
#include "panharmonia/geometry.hpp"
#include "panharmonia/means.hpp"
#include "panharmonia/rng.hpp"
#include "panharmonia/verify.hpp"

namespace panharmonia {

/// Ratio variation below which a field is certified.
inline constexpr double kAcceptVariation = 1e-6;
/// Ratio variation at or above which a field is rejected.
inline constexpr double kRejectVariation = 1e-3;

struct Verdict {
  FieldClass cls = FieldClass::neither;
  std::optional<double> mu_hat;  // present iff cls == panharmonic
  std::vector<std::pair<double, double>> residual_profile;  // (radius, relative deviation)
  double confidence = 0.0;
};

/// At `centers` admissible points of d, compares sphere_mean(f,x,r)/a°(mu r) on
/// `radii_per_center` radii in (0, reach) against f(x). The report's residual is the
/// largest relative variation of that ratio; threshold kAcceptVariation.
/// mu = 0 tests the harmonic mean value property. m >= 4 is unsupported.
CheckReport panharmonic_score(const ScalarField& f, double mu, const Domain& d, int centers, int radii_per_center,
                              const QuadratureConfig& q, const RngStream& rng);

/// sqrt(2m L / f(x)) with L the Richardson limit of (sphere_mean - f(x))/r^2 over
/// r0 2^-k. Returns 0 when |radicand| is below max(1e-8, 2m 64 eps / r_min^2), the
/// rounding floor at the smallest radius; throws DomainError for f(x) = 0 or a
/// negative radicand.
double estimate_mu(const ScalarField& f, const Point& x, double r0, int levels = 7, const QuadratureConfig& q = {});

struct DetectorConfig {
  int centers = 5;
  int radii_per_center = 6;
  /// r0 for estimate_mu as a fraction of the reach at each center.
  double r0_fraction = 0.5;
  int levels = 7;
  QuadratureConfig q{};
  std::uint64_t seed = 0;
};

Verdict classify(const ScalarField& f, const Domain& d, const DetectorConfig& cfg = {});

}  // namespace panharmonia
