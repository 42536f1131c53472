// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "panharmonia/fields.hpp"
#include "panharmonia/geometry.hpp"
#include "panharmonia/means.hpp"
#include "panharmonia/rng.hpp"

namespace panharmonia {

enum class WosVariant { weighted, killing };

std::string_view to_string(WosVariant v);
WosVariant parse_wos_variant(std::string_view text);

struct WosConfig {
  /// Termination shell width as a fraction of the domain diameter.
  double epsilon_shell = 1e-3;
  long long max_steps = 10'000;
  long long walks = 100'000;
  WosVariant variant = WosVariant::weighted;
  /// Jump radius = jump_fraction * distance to the boundary.
  double jump_fraction = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class WalkTermination { shell, killed, max_steps };

std::string_view to_string(WalkTermination t);

struct WalkOutcome {
  Point boundary_point;
  /// Product of 1/a°(mu rho_i) (weighted); 1 for killing-variant survivors.
  double weight = 1.0;
  long long steps = 0;
  WalkTermination terminated = WalkTermination::shell;
};

/// One walk from x. Each jump goes to a uniform point of the sphere of radius
/// jump_fraction * dist(x, boundary); since u(x) = M°(u, x, rho) / a°(mu rho) for a
/// mu-panharmonic u, the jump either multiplies the weight by 1/a°(mu rho) or survives
/// with that probability. Ends in the epsilon shell (scored at the nearest boundary
/// point), when killed, or at the step cap.
WalkOutcome wos_walk(const Domain& d, double mu, const Point& x, RngStream& rng, const WosConfig& cfg);

struct WosEstimate {
  MeanEstimate estimate;
  long long walks = 0;
  long long killed = 0;
  long long max_steps_hits = 0;
  double mean_steps = 0.0;
  /// Summed weight of the excluded capped walks divided by `walks`; their contribution
  /// to the estimate is bounded by this times sup |g|.
  double excluded_weight = 0.0;
  /// Non-empty when more than 1% of walks hit the step cap.
  std::string warning;

  double killed_fraction() const { return walks ? static_cast<double>(killed) / static_cast<double>(walks) : 0.0; }
};

/// Monte Carlo solution u(x) of the Dirichlet problem lap u = mu^2 u in d, u = g on the
/// boundary. Walk i uses stream (seed, i), so results are identical for any worker
/// count. Walks that hit max_steps are excluded and counted.
WosEstimate wos_solve(const Domain& d, const ScalarField& g, double mu, const Point& x, const WosConfig& cfg);

}  // namespace panharmonia
