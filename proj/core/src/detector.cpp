// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#include "panharmonia/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "panharmonia/errors.hpp"
#include "panharmonia/specfun.hpp"

namespace panharmonia {
namespace {

constexpr double kRadicandTolerance = 1e-8;
constexpr double kMuAgreement = 1e-3;

struct Center {
  Point x;
  double reach;
};

// Interior points whose sphere of radius `reach` stays clear of the boundary and of
// singular points. With nonzero_value, points where f nearly vanishes are skipped.
std::vector<Center> sample_centers(const ScalarField& f, const Domain& d, int count, RngStream& rng,
                                   bool nonzero_value) {
  std::vector<Center> out;
  const double minimum = 0.025 * d.diameter();
  for (int attempt = 0; attempt < 1000 * count && static_cast<int>(out.size()) < count; ++attempt) {
    Point x = d.sample_interior(rng);
    const double reach = std::min(d.distance_to_boundary(x), f.clearance(x.span()));
    if (reach <= minimum) continue;
    if (nonzero_value && std::abs(f(x)) < 1e-6) continue;
    out.push_back({std::move(x), reach});
  }
  if (out.empty()) throw DomainError("detector: no admissible centers in " + d.to_string());
  return out;
}

CheckReport score(const ScalarField& f, double mu, const std::vector<Center>& centers, int radii,
                  const QuadratureConfig& q, std::vector<std::pair<double, double>>* profile) {
  CheckReport report;
  report.check_id = "panharmonic_score";
  report.threshold = kAcceptVariation;
  const int m = f.dim();
  for (const auto& [x, reach] : centers) {
    const double fx = f(x);
    std::vector<double> ratios{fx};
    std::vector<double> rs{0.0};
    for (int j = 1; j <= radii; ++j) {
      const double r = 0.9 * reach * j / radii;
      rs.push_back(r);
      ratios.push_back(sphere_mean(f, x, r, q).value / sphere_coeff(m, mu * r));
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    double scale = 0.0;
    for (double v : ratios) scale = std::max(scale, std::abs(v));
    scale = std::max(scale, kResidualFloor);
    std::size_t farthest = 0;
    for (std::size_t j = 1; j < ratios.size(); ++j) {
      if (std::abs(ratios[j] - fx) > std::abs(ratios[farthest] - fx)) farthest = j;
      if (profile != nullptr) profile->emplace_back(rs[j], std::abs(ratios[j] - fx) / scale);
    }
    std::ostringstream inputs;
    inputs.precision(10);
    inputs << "x=(" << to_string(x) << ") mu=" << mu << " r_max=" << rs.back();
    report.cases.push_back({inputs.str(), fx, ratios[farthest], (*hi - *lo) / scale, 0.0});
  }
  report.finalize();
  if (report.max_relative_residual >= kRejectVariation) {
    report.append_note("rejected: ratio varies with the radius");
  } else if (!report.passed) {
    report.append_note("inconclusive: variation between the accept and reject thresholds");
  }
  return report;
}

double confidence_from(double variation) {
  if (variation < kAcceptVariation) return 1.0 - 0.5 * variation / kAcceptVariation;
  if (variation >= kRejectVariation) return 1.0 - 0.5 * kRejectVariation / variation;
  return 0.25;
}

}  // namespace

CheckReport panharmonic_score(const ScalarField& f, double mu, const Domain& d, int centers, int radii_per_center,
                              const QuadratureConfig& q, const RngStream& rng) {
  if (d.dim() > 3) throw UnsupportedError("panharmonic_score: needs deterministic quadrature (m <= 3)");
  if (f.dim() != d.dim()) throw DomainError("panharmonic_score: field and domain dimensions differ");
  if (!(mu >= 0.0)) throw DomainError("panharmonic_score: mu must be >= 0");
  if (centers < 1 || radii_per_center < 1) throw DomainError("panharmonic_score: centers and radii must be >= 1");
  RngStream r = rng;
  return score(f, mu, sample_centers(f, d, centers, r, false), radii_per_center, q, nullptr);
}

double estimate_mu(const ScalarField& f, const Point& x, double r0, int levels, const QuadratureConfig& q) {
  const double fx = f(x);
  if (fx == 0.0) throw DomainError("estimate_mu: f(x) = 0, mu is not identifiable at x");
  const double limit = mean_excess_limit(MeanKind::sphere, f, x, r0, levels, q);
  const double radicand = 2.0 * x.dim() * limit / fx;
  // Rounding in the mean is divided by the smallest r^2 of the extrapolation.
  const double r_min = r0 * std::ldexp(1.0, -(levels - 1));
  const double tolerance =
      std::max(kRadicandTolerance, 2.0 * x.dim() * 64.0 * std::numeric_limits<double>::epsilon() / (r_min * r_min));
  if (radicand < -tolerance) throw DomainError("estimate_mu: negative radicand, not panharmonic at x");
  if (std::abs(radicand) <= tolerance) return 0.0;
  return std::sqrt(radicand);
}

Verdict classify(const ScalarField& f, const Domain& d, const DetectorConfig& cfg) {
  if (d.dim() > 3) throw UnsupportedError("classify: needs deterministic quadrature (m <= 3)");
  if (f.dim() != d.dim()) throw DomainError("classify: field and domain dimensions differ");
  RngStream rng(cfg.seed, 0x646574656374ULL);
  const auto centers = sample_centers(f, d, cfg.centers, rng, true);

  std::vector<double> estimates;
  bool negative_radicand = false;
  for (const auto& [x, reach] : centers) {
    try {
      estimates.push_back(estimate_mu(f, x, cfg.r0_fraction * reach, cfg.levels, cfg.q));
    } catch (const DomainError&) {
      negative_radicand = true;
    }
  }

  Verdict verdict;
  double candidate = 0.0;
  bool consistent = !negative_radicand;
  if (!estimates.empty()) {
    const auto [lo, hi] = std::minmax_element(estimates.begin(), estimates.end());
    double sum = 0.0;
    for (double e : estimates) sum += e;
    candidate = sum / static_cast<double>(estimates.size());
    const bool all_zero = *hi == 0.0;
    if (!all_zero && (*lo == 0.0 || *hi - *lo > kMuAgreement * std::max(1.0, candidate))) consistent = false;
    if (all_zero) candidate = 0.0;
  }

  const auto score_centers = sample_centers(f, d, cfg.centers, rng, false);
  const CheckReport report = score(f, candidate, score_centers, cfg.radii_per_center, cfg.q, &verdict.residual_profile);
  const double variation = report.max_relative_residual;
  if (consistent && variation < kAcceptVariation) {
    verdict.cls = candidate > 0.0 ? FieldClass::panharmonic : FieldClass::harmonic;
    if (candidate > 0.0) verdict.mu_hat = candidate;
    verdict.confidence = confidence_from(variation);
  } else {
    verdict.cls = FieldClass::neither;
    verdict.confidence = consistent ? confidence_from(variation) : std::max(confidence_from(variation), 0.75);
  }
  return verdict;
}

}  // namespace panharmonia
