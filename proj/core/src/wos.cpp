// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#include "panharmonia/wos.hpp"

#include <cmath>
#include <vector>

#include "panharmonia/errors.hpp"
#include "panharmonia/parallel.hpp"
#include "panharmonia/specfun.hpp"

namespace panharmonia {
namespace {

constexpr std::size_t kWalkBlock = 4096;

struct BlockTally {
  RunningStats stats;
  long long walks = 0;
  long long killed = 0;
  long long capped = 0;
  long long steps = 0;
  double capped_weight = 0.0;
};

}  // namespace

std::string_view to_string(WosVariant v) { return v == WosVariant::weighted ? "weighted" : "killing"; }

WosVariant parse_wos_variant(std::string_view text) {
  if (text == "weighted") return WosVariant::weighted;
  if (text == "killing") return WosVariant::killing;
  throw ParseError("unknown WoS variant '" + std::string(text) + "' (weighted|killing)");
}

std::string_view to_string(WalkTermination t) {
  switch (t) {
    case WalkTermination::shell: return "shell";
    case WalkTermination::killed: return "killed";
    case WalkTermination::max_steps: return "max_steps";
  }
  return "?";
}

void WosConfig::validate() const {
  if (!(epsilon_shell > 0.0 && epsilon_shell < 1.0)) throw DomainError("wos: epsilon_shell must lie in (0, 1)");
  if (walks < 1) throw DomainError("wos: walks must be >= 1");
  if (max_steps < 1) throw DomainError("wos: max_steps must be >= 1");
  if (!(jump_fraction > 0.0 && jump_fraction <= 1.0)) throw DomainError("wos: jump_fraction must lie in (0, 1]");
}

WalkOutcome wos_walk(const Domain& d, double mu, const Point& x, RngStream& rng, const WosConfig& cfg) {
  cfg.validate();
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw DomainError("wos: mu must be finite and >= 0");
  if (x.dim() != d.dim()) throw DomainError("wos: point dimension does not match domain");
  const double shell = cfg.epsilon_shell * d.diameter();
  if (!d.contains(x) || !(d.distance_to_boundary(x) > shell)) {
    throw DomainError("wos: start point must be interior and outside the epsilon shell");
  }
  const int m = d.dim();
  Point pos = x;
  std::vector<double> u(static_cast<std::size_t>(m));
  WalkOutcome out;
  for (out.steps = 0; out.steps < cfg.max_steps; ++out.steps) {
    const double dist = d.distance_to_boundary(pos);
    if (dist <= shell) {
      out.terminated = WalkTermination::shell;
      // A jump can land a rounding error outside; that point is already on the boundary.
      out.boundary_point = d.contains(pos) ? d.project_to_boundary(pos) : pos;
      return out;
    }
    const double rho = cfg.jump_fraction * dist;
    const double survival = 1.0 / sphere_coeff(m, mu * rho);
    if (cfg.variant == WosVariant::weighted) {
      out.weight *= survival;
    } else if (rng.uniform() >= survival) {
      out.terminated = WalkTermination::killed;
      out.weight = 0.0;
      out.boundary_point = pos;
      ++out.steps;
      return out;
    }
    sample_unit_sphere(u, rng);
    for (int i = 0; i < m; ++i) pos[i] += rho * u[i];
  }
  out.terminated = WalkTermination::max_steps;
  out.boundary_point = pos;
  return out;
}

WosEstimate wos_solve(const Domain& d, const ScalarField& g, double mu, const Point& x, const WosConfig& cfg) {
  cfg.validate();
  if (g.dim() != d.dim()) throw DomainError("wos: boundary data dimension does not match domain");
  // Validates the start point once up front so the error is not raised inside workers.
  {
    RngStream probe(cfg.seed, 0);
    WosConfig one = cfg;
    one.max_steps = 1;
    (void)wos_walk(d, mu, x, probe, one);
  }
  const std::size_t total = static_cast<std::size_t>(cfg.walks);
  const std::size_t blocks = (total + kWalkBlock - 1) / kWalkBlock;
  std::vector<BlockTally> tallies(blocks);
  parallel_blocks(blocks, [&](std::size_t b) {
    BlockTally t;
    const std::size_t end = std::min(total, (b + 1) * kWalkBlock);
    for (std::size_t i = b * kWalkBlock; i < end; ++i) {
      RngStream rng(cfg.seed, i);
      const WalkOutcome w = wos_walk(d, mu, x, rng, cfg);
      ++t.walks;
      t.steps += w.steps;
      switch (w.terminated) {
        case WalkTermination::shell: t.stats.add(w.weight * g(w.boundary_point)); break;
        case WalkTermination::killed:
          ++t.killed;
          t.stats.add(0.0);
          break;
        case WalkTermination::max_steps: {
          ++t.capped;
          t.capped_weight += w.weight;
          break;
        }
      }
    }
    tallies[b] = t;
  });

  BlockTally all;
  for (const auto& t : tallies) {
    all.stats.merge(t.stats);
    all.walks += t.walks;
    all.killed += t.killed;
    all.capped += t.capped;
    all.steps += t.steps;
    all.capped_weight += t.capped_weight;
  }
  WosEstimate result;
  result.estimate = {all.stats.mean, all.stats.std_error(), static_cast<long long>(all.stats.count),
                     MeanMethod::monte_carlo};
  result.walks = all.walks;
  result.killed = all.killed;
  result.max_steps_hits = all.capped;
  result.mean_steps = static_cast<double>(all.steps) / static_cast<double>(all.walks);
  result.excluded_weight = all.capped_weight / static_cast<double>(all.walks);
  if (all.capped * 100 > all.walks) {
    result.warning = "more than 1% of walks reached max_steps (" + std::to_string(all.capped) + " of " +
                     std::to_string(all.walks) + ")";
  }
  return result;
}

}  // namespace panharmonia
