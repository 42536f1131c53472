// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "panharmonia/fields.hpp"
#include "panharmonia/geometry.hpp"
#include "panharmonia/means.hpp"
#include "panharmonia/rng.hpp"

namespace panharmonia {

/// Deterministic relative-residual threshold for quadrature-based identities.
inline constexpr double kIdentityThreshold = 1e-8;
/// Finite-difference flux identity threshold.
inline constexpr double kFluxThreshold = 1e-6;
/// Asymptotic-limit threshold.
inline constexpr double kAsymptoticThreshold = 1e-6;
/// Monte Carlo criterion: |observed - expected| <= 3 sigma.
inline constexpr double kSigmaThreshold = 3.0;
/// Absolute floor for relative residuals.
inline constexpr double kResidualFloor = 1e-12;

struct CheckCase {
  std::string inputs;
  double expected = 0.0;
  double observed = 0.0;
  /// Relative residual, or |observed - expected| / sigma for statistical cases.
  double residual = 0.0;
  /// Combined standard error; zero for deterministic cases.
  double sigma = 0.0;
};

/// Verdict of one identity check. passed == (max_relative_residual <= threshold).
struct CheckReport {
  std::string check_id;
  std::vector<CheckCase> cases;
  double max_relative_residual = 0.0;
  double threshold = kIdentityThreshold;
  bool passed = false;
  /// False when the input does not satisfy the identity's hypothesis; the residual is
  /// then informative only and `notes` says which hypothesis failed.
  bool hypothesis_met = true;
  std::string notes;

  /// Appends a deterministic case with residual |obs - exp| / max(|scale|, floor).
  void add_relative(std::string inputs, double expected, double observed, double scale);
  /// Appends a statistical case with residual |obs - exp| / sigma.
  void add_statistical(std::string inputs, double expected, double observed, double sigma);
  /// Recomputes max_relative_residual and passed from the cases.
  void finalize();
  void append_note(std::string_view note);
};

enum class IdentityKind { sphere, ball, coupling, iterated, subharmonic, flux, mean_ratio };

std::string_view to_string(IdentityKind kind);
IdentityKind parse_identity_kind(std::string_view text);

/// Samples `trials` admissible configurations inside d and compares both sides of
/// the named mean value identity for a mu-panharmonic f:
///   sphere      M°(f,x,r) = a°(mu r) f(x)
///   ball        M•(f,x,r) = a•(mu r) f(x)
///   coupling    a°(mu r) M• = a•(mu r) M°
///   iterated    I(f,x,r',r) = a°(mu r') a°(mu r) f(x)
///   subharmonic f(x) <= M°(f,x,r) for nonnegative f
///   flux        int_B f = mu^{-2} int_{dB} df/dn   (d must be a ball)
///   mean_ratio  M•/M° over d = a•/a°(mu R)        (d must be a ball)
/// Deterministic rules use kIdentityThreshold (kFluxThreshold for flux); m >= 4 uses
/// the 3-sigma criterion.
CheckReport verify_identity(IdentityKind kind, const ScalarField& f, double mu, const Domain& d,
                            const QuadratureConfig& q, int trials, const RngStream& rng);

/// Richardson-extrapolated (mean - f(x)) / r^2 against mu^2 f(x)/(2m) (sphere) or
/// mu^2 f(x)/(2(m+2)) (volume). mu = 0 checks the harmonic limit 0.
CheckReport verify_asymptotic(MeanKind kind, const ScalarField& f, double mu, const Point& x, double r0 = 0.25,
                              const QuadratureConfig& q = {});

/// max |f| over the interior points of a grid_resolution^m grid on the bounding box
/// against max |f| over boundary samples (tolerance 1e-12 relative).
CheckReport verify_max_principle(const ScalarField& f, const Domain& d, int grid_resolution,
                                 int boundary_samples = 20'000);

/// Least-harmonic-majorant part h = f - mu^2 int_D E_m(x - y) f(y) dy of a radial,
/// nonnegative mu-panharmonic f on a ball (m >= 3), with the Newtonian potential of
/// the radial profile g evaluated as
///   (1/(2-m)) [ r^{2-m} int_0^r s^{m-1} g(s) ds + int_r^R s g(s) ds ].
class RieszHarmonicPart {
 public:
  RieszHarmonicPart(const ScalarField& f, double mu, const Domain& ball);

  /// h at a point of the closed ball.
  double operator()(std::span<const double> x) const;
  /// mu^2 times the Newtonian potential at distance r from the center.
  double potential_term(double r) const;
  /// h as a ScalarField (harmonic in the ball).
  ScalarField as_field() const;

 private:
  ScalarField f_;
  double mu_;
  Point center_;
  double radius_;
};

/// Checks h >= 0, h >= f, sphere_mean(h) = h (m <= 3) and the (2m+1)-point discrete Laplacian
/// of h (spacing 1e-2) at each probe; threshold 1e-6. Non-radial f and m = 2 are
/// unsupported.
CheckReport riesz_harmonic_part(const ScalarField& f, double mu, const Domain& d, const std::vector<Point>& probes);

/// Forward integral equation f = mu^2 T f + h at the probes, with T f estimated by
/// Monte Carlo over the ball (independent of the radial route used for h), 3 sigma.
CheckReport verify_integral_equation(const ScalarField& f, double mu, const Domain& d,
                                     const std::vector<Point>& probes, long long n, const RngStream& rng);

/// Delta(d) = int_d U - |d| a•(mu R_d), U centered at d.center(), R_d the matched radius.
MeanEstimate kugel_discrepancy(const Domain& d, double mu, long long n, const RngStream& rng);

/// Compares domain_mean(E_mu^{+-}(., x), d) with a_3(mu R_d) E_mu^{+-}(x, x0) for each
/// exterior x and both signs; 3-sigma criterion (passes on the matched ball).
CheckReport kugel_fundamental_check(const Domain& d, double mu, const Point& x0, const std::vector<Point>& exterior,
                                    long long n, const RngStream& rng);

/// Ratio coeff_sphere_asymptotic(m, t) / a°(t) against 1 at t = 50; threshold 1e-3.
CheckReport verify_asymptotic_coefficient(const std::vector<int>& dims, double t = 50.0);

/// Growth bound behind the Liouville property: the envelope
/// (1 + |x| + r)^n r^{(m-1)/2} e^{-r}, taken as (1 + |x| + r)^n / coeff_sphere_asymptotic(m, r),
/// stays below 1e-6 on r in [40, 200] for n in {0, 1, 2}.
CheckReport verify_liouville_decay(const std::vector<int>& dims, double x_norm = 0.0);

/// Suite settings. Defaults reproduce `verify --suite all`.
struct SuiteConfig {
  int dim = 3;
  double mu = 1.0;
  std::uint64_t seed = 0;
  int trials = 20;
  long long mc_samples = 1'000'000;
};

/// Identifiers of every check the suite knows, in run order.
const std::vector<std::string>& suite_check_ids();

/// Runs one named check (or every check for "all") of the registry.
/// Checks that do not apply to cfg.dim are omitted.
std::vector<CheckReport> run_suite(std::string_view which, const SuiteConfig& cfg);

}  // namespace panharmonia
