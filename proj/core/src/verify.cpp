// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#include "panharmonia/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "panharmonia/errors.hpp"
#include "panharmonia/quadrature.hpp"
#include "panharmonia/specfun.hpp"

namespace panharmonia {
namespace {

constexpr int kAdmissibleTries = 1000;
constexpr int kPotentialNodes = 64;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string describe(const Point& x, double r) { return "x=(" + to_string(x) + ") r=" + fmt(r); }

struct Admissible {
  Point x;
  double reach;
};

// Interior x with reach = min(dist to boundary, clearance from singular points) not
// smaller than 5% of the domain radius.
Admissible sample_admissible(const ScalarField& f, const Domain& d, RngStream& rng) {
  const double minimum = 0.025 * d.diameter();
  for (int attempt = 0; attempt < kAdmissibleTries; ++attempt) {
    Point x = d.sample_interior(rng);
    const double reach = std::min(d.distance_to_boundary(x), f.clearance(x.span()));
    if (reach > minimum) return {std::move(x), reach};
  }
  throw DomainError("could not generate an admissible configuration in " + d.to_string());
}

double uniform_in(RngStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

void add_mean_case(CheckReport& report, std::string inputs, double expected, const MeanEstimate& observed,
                   double observed_factor, double scale) {
  if (observed.deterministic()) {
    report.add_relative(std::move(inputs), expected, observed_factor * observed.value, scale);
  } else {
    report.add_statistical(std::move(inputs), expected, observed_factor * observed.value,
                           std::abs(observed_factor) * observed.std_error);
  }
}

CheckReport merge_reports(std::string id, const std::vector<std::pair<std::string, CheckReport>>& parts) {
  CheckReport merged;
  merged.check_id = std::move(id);
  for (const auto& [label, part] : parts) {
    merged.threshold = part.threshold;
    for (auto c : part.cases) {
      c.inputs = label + " " + c.inputs;
      merged.cases.push_back(std::move(c));
    }
    merged.hypothesis_met = merged.hypothesis_met && part.hypothesis_met;
    if (!part.notes.empty()) merged.append_note(label + ": " + part.notes);
  }
  merged.finalize();
  return merged;
}

bool nonnegative_on(const ScalarField& f, const Domain& d, RngStream rng) {
  for (int i = 0; i < 256; ++i) {
    if (f(d.sample_interior(rng)) < 0.0) return false;
  }
  return true;
}

}  // namespace

void CheckReport::add_relative(std::string inputs, double expected, double observed, double scale) {
  const double residual = std::abs(observed - expected) / std::max(std::abs(scale), kResidualFloor);
  cases.push_back({std::move(inputs), expected, observed, residual, 0.0});
}

void CheckReport::add_statistical(std::string inputs, double expected, double observed, double sigma) {
  const double diff = std::abs(observed - expected);
  const double residual = sigma > 0.0 ? diff / sigma : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  cases.push_back({std::move(inputs), expected, observed, residual, sigma});
}

void CheckReport::finalize() {
  if (cases.empty()) throw DomainError("CheckReport " + check_id + ": no cases");
  max_relative_residual = 0.0;
  for (const auto& c : cases) max_relative_residual = std::max(max_relative_residual, c.residual);
  passed = max_relative_residual <= threshold;
}

void CheckReport::append_note(std::string_view note) {
  if (!notes.empty()) notes += "; ";
  notes += note;
}

std::string_view to_string(IdentityKind kind) {
  switch (kind) {
    case IdentityKind::sphere: return "sphere";
    case IdentityKind::ball: return "ball";
    case IdentityKind::coupling: return "coupling";
    case IdentityKind::iterated: return "iterated";
    case IdentityKind::subharmonic: return "subharmonic";
    case IdentityKind::flux: return "flux";
    case IdentityKind::mean_ratio: return "mean_ratio";
  }
  return "?";
}

IdentityKind parse_identity_kind(std::string_view text) {
  for (auto k : {IdentityKind::sphere, IdentityKind::ball, IdentityKind::coupling, IdentityKind::iterated,
                 IdentityKind::subharmonic, IdentityKind::flux, IdentityKind::mean_ratio}) {
    if (to_string(k) == text) return k;
  }
  throw ParseError("unknown identity kind '" + std::string(text) + "'");
}

CheckReport verify_identity(IdentityKind kind, const ScalarField& f, double mu, const Domain& d,
                            const QuadratureConfig& q, int trials, const RngStream& rng_in) {
  if (f.dim() != d.dim()) throw DomainError("verify_identity: field and domain dimensions differ");
  if (trials < 1) throw DomainError("verify_identity: trials must be >= 1");
  if (!(mu >= 0.0)) throw DomainError("verify_identity: mu must be >= 0");
  const int m = d.dim();
  const bool deterministic = m <= 3;
  RngStream rng = rng_in;
  CheckReport report;
  report.check_id = "identity_" + std::string(to_string(kind));
  report.threshold = deterministic ? kIdentityThreshold : kSigmaThreshold;
  if (!deterministic) report.append_note("m >= 4: Monte Carlo means, 3-sigma criterion");

  switch (kind) {
    case IdentityKind::sphere:
    case IdentityKind::ball:
    case IdentityKind::coupling: {
      for (int t = 0; t < trials; ++t) {
        const auto [x, reach] = sample_admissible(f, d, rng);
        const double r = reach * uniform_in(rng, 0.1, 0.9);
        const double fx = f(x);
        const double a_s = sphere_coeff(m, mu * r);
        const double a_b = ball_coeff(m, mu * r);
        if (kind == IdentityKind::sphere) {
          add_mean_case(report, describe(x, r), a_s * fx, sphere_mean(f, x, r, q), 1.0, a_s * fx);
        } else if (kind == IdentityKind::ball) {
          add_mean_case(report, describe(x, r), a_b * fx, ball_mean(f, x, r, q), 1.0, a_b * fx);
        } else {
          const MeanEstimate s = sphere_mean(f, x, r, q);
          const MeanEstimate b = ball_mean(f, x, r, q);
          if (deterministic) {
            report.add_relative(describe(x, r), a_b * s.value, a_s * b.value, a_b * s.value);
          } else {
            report.add_statistical(describe(x, r), a_b * s.value, a_s * b.value,
                                   std::hypot(a_b * s.std_error, a_s * b.std_error));
          }
        }
      }
      break;
    }
    case IdentityKind::iterated: {
      for (int t = 0; t < trials; ++t) {
        const auto [x, reach] = sample_admissible(f, d, rng);
        const double r_outer = reach * uniform_in(rng, 0.05, 0.5);
        const double r_inner = reach * uniform_in(rng, 0.05, 0.45);
        const double expected = sphere_coeff(m, mu * r_outer) * sphere_coeff(m, mu * r_inner) * f(x);
        add_mean_case(report, describe(x, r_outer) + " r_inner=" + fmt(r_inner), expected,
                      iterated_mean(f, x, r_outer, r_inner, q), 1.0, expected);
      }
      break;
    }
    case IdentityKind::subharmonic: {
      report.hypothesis_met = nonnegative_on(f, d, rng.split(0x5b));
      for (int t = 0; t < trials; ++t) {
        const auto [x, reach] = sample_admissible(f, d, rng);
        const double r = reach * uniform_in(rng, 0.1, 0.9);
        const double fx = f(x);
        if (fx < 0.0) report.hypothesis_met = false;
        const MeanEstimate mean = sphere_mean(f, x, r, q);
        const double excess = std::max(0.0, fx - mean.value);
        CheckCase c{describe(x, r), fx, mean.value, 0.0, mean.std_error};
        c.residual = deterministic ? excess / std::max(std::abs(fx), kResidualFloor)
                                   : (mean.std_error > 0.0 ? excess / mean.std_error : 0.0);
        report.cases.push_back(std::move(c));
      }
      if (!report.hypothesis_met) {
        report.append_note("hypothesis unmet: field takes negative values, subharmonicity not implied");
      }
      break;
    }
    case IdentityKind::flux:
    case IdentityKind::mean_ratio: {
      const auto* ball = std::get_if<BallShape>(&d.shape());
      if (ball == nullptr) throw UnsupportedError("verify_identity: flux and mean_ratio need a ball domain");
      if (!deterministic) throw UnsupportedError("verify_identity: flux and mean_ratio need m <= 3");
      if (kind == IdentityKind::flux && !(mu > 0.0)) throw DomainError("verify_identity: flux needs mu > 0");
      report.threshold = kind == IdentityKind::flux ? kFluxThreshold : kIdentityThreshold;
      // The ball itself, then admissible sub-balls.
      std::vector<std::pair<Point, double>> balls{{ball->center, ball->radius}};
      for (int t = 1; t < std::min(trials, 5); ++t) {
        const auto [x, reach] = sample_admissible(f, d, rng);
        balls.emplace_back(x, reach * uniform_in(rng, 0.3, 0.9));
      }
      for (const auto& [c, radius] : balls) {
        if (f.clearance(c.span()) <= radius) throw SingularityError("verify_identity: ball contains a singular point");
        const MeanEstimate vol = ball_mean(f, c, radius, q);
        if (kind == IdentityKind::flux) {
          const Domain sub = Domain::ball(c, radius);
          const double volume_integral = sub.volume() * vol.value;
          const double flux = boundary_flux(f, sub, 0.0, q);
          report.add_relative(describe(c, radius), volume_integral, flux / (mu * mu), volume_integral);
        } else {
          const MeanEstimate surf = sphere_mean(f, c, radius, q);
          const double expected = coeff(CoeffKind::ratio, m, mu * radius);
          report.add_relative(describe(c, radius), expected, vol.value / surf.value, expected);
        }
      }
      break;
    }
  }
  report.finalize();
  return report;
}

CheckReport verify_asymptotic(MeanKind kind, const ScalarField& f, double mu, const Point& x, double r0,
                              const QuadratureConfig& q) {
  const int m = x.dim();
  if (m > 3) throw UnsupportedError("verify_asymptotic: needs deterministic quadrature (m <= 3)");
  const double clearance = f.clearance(x.span());
  if (r0 >= clearance) r0 = 0.5 * clearance;
  const double fx = f(x);
  const double denominator = kind == MeanKind::sphere ? 2.0 * m : 2.0 * (m + 2);
  const double expected = mu * mu * fx / denominator;
  const double observed = mean_excess_limit(kind, f, x, r0, 7, q);
  CheckReport report;
  report.check_id = kind == MeanKind::sphere ? "asymptotic_sphere" : "asymptotic_volume";
  report.threshold = kAsymptoticThreshold;
  const double scale = mu > 0.0 ? expected : std::max(std::abs(fx), 1.0);
  report.add_relative("x=(" + to_string(x) + ") r0=" + fmt(r0), expected, observed, scale);
  if (mu > 0.0 && fx == 0.0) report.append_note("f(x) = 0: residual is absolute");
  report.finalize();
  return report;
}

CheckReport verify_max_principle(const ScalarField& f, const Domain& d, int grid_resolution, int boundary_samples) {
  if (grid_resolution < 2) throw DomainError("verify_max_principle: grid resolution must be >= 2");
  const int m = d.dim();
  Point lo;
  Point hi;
  d.bounding_box(lo, hi);
  double interior_max = 0.0;
  long long interior_points = 0;
  std::vector<int> index(static_cast<std::size_t>(m), 0);
  Point p = lo;
  while (true) {
    for (int i = 0; i < m; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * index[i] / (grid_resolution - 1);
    if (d.contains(p)) {
      interior_max = std::max(interior_max, std::abs(f(p)));
      ++interior_points;
    }
    int axis = 0;
    while (axis < m && ++index[axis] == grid_resolution) index[axis++] = 0;
    if (axis == m) break;
  }
  RngStream rng(0x6d61785f7072696eULL, 0);
  double boundary_max = 0.0;
  for (int i = 0; i < boundary_samples; ++i) boundary_max = std::max(boundary_max, std::abs(f(d.sample_boundary(rng))));

  CheckReport report;
  report.check_id = "max_principle";
  report.threshold = 1e-12;
  const double excess = std::max(0.0, interior_max - boundary_max);
  report.cases.push_back({"interior grid " + std::to_string(grid_resolution) + "^" + std::to_string(m) + " (" +
                              std::to_string(interior_points) + " points) vs " + std::to_string(boundary_samples) +
                              " boundary samples",
                          boundary_max, interior_max, excess / std::max(boundary_max, kResidualFloor), 0.0});
  report.finalize();
  if (interior_points == 0) throw DomainError("verify_max_principle: grid has no interior points");
  std::ostringstream note;
  note.precision(17);
  note << "interior max " << interior_max << ", boundary max " << boundary_max;
  if (std::abs(interior_max - boundary_max) <= 1e-12 * std::max(boundary_max, 1.0)) note << " (equality)";
  report.append_note(note.str());
  return report;
}

// ---- Riesz decomposition -------------------------------------------------------

RieszHarmonicPart::RieszHarmonicPart(const ScalarField& f, double mu, const Domain& ball)
    : f_(f), mu_(mu), center_(ball.center()), radius_(0.0) {
  const auto* b = std::get_if<BallShape>(&ball.shape());
  if (b == nullptr) throw UnsupportedError("riesz_harmonic_part: domain must be a ball");
  if (ball.dim() < 3) throw UnsupportedError("riesz_harmonic_part: needs m >= 3 (logarithmic kernel in m = 2)");
  if (f.dim() != ball.dim()) throw DomainError("riesz_harmonic_part: field and domain dimensions differ");
  radius_ = b->radius;
  const int m = ball.dim();
  // Radial probe: compare values at equal distance along several directions.
  std::vector<Point> directions;
  directions.push_back(Point::on_axis(m, 1.0, 1));
  directions.push_back(Point::on_axis(m, -1.0, 0));
  Point diagonal = Point::zeros(m);
  for (int i = 0; i < m; ++i) diagonal[i] = (i % 2 == 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(m));
  directions.push_back(diagonal);
  for (int k = 1; k <= 8; ++k) {
    const double s = radius_ * k / 8.0;
    Point y = center_;
    y[0] += s;
    const double reference = f_(y);
    for (const auto& dir : directions) {
      Point z = center_;
      for (int i = 0; i < m; ++i) z[i] += s * dir[i];
      if (std::abs(f_(z) - reference) > 1e-10 * std::max(std::abs(reference), 1e-300)) {
        throw UnsupportedError("riesz_harmonic_part: field is not radial about the ball center");
      }
    }
  }
}

double RieszHarmonicPart::potential_term(double r) const {
  const int m = center_.dim();
  const auto& gl = gauss_legendre(kPotentialNodes);
  auto profile = [&](double s) {
    Point y = center_;
    y[0] += s;
    return f_(y);
  };
  double inner = 0.0;
  if (r > 0.0) {
    inner = std::pow(r, 2 - m) * gl.integrate([&](double s) { return std::pow(s, m - 1) * profile(s); }, 0.0, r);
  }
  const double outer = r < radius_ ? gl.integrate([&](double s) { return s * profile(s); }, r, radius_) : 0.0;
  return mu_ * mu_ * (inner + outer) / (2.0 - m);
}

double RieszHarmonicPart::operator()(std::span<const double> x) const {
  return f_(x) - potential_term(distance(x, center_.span()));
}

ScalarField RieszHarmonicPart::as_field() const {
  auto self = *this;
  return ScalarField("riesz_h(" + f_.name() + ")", f_.dim(), [self](std::span<const double> x) { return self(x); },
                     {FieldClass::harmonic, std::nullopt, {}});
}

CheckReport riesz_harmonic_part(const ScalarField& f, double mu, const Domain& d, const std::vector<Point>& probes) {
  const RieszHarmonicPart h(f, mu, d);
  const ScalarField h_field = h.as_field();
  const int m = d.dim();
  const Point center = d.center();
  const double radius = std::get<BallShape>(d.shape()).radius;
  constexpr double kSpacing = 1e-2;
  CheckReport report;
  report.check_id = "riesz_harmonic_part";
  report.threshold = 1e-6;
  if (probes.empty()) throw DomainError("riesz_harmonic_part: no probes");
  for (const auto& p : probes) {
    const double rp = distance(p, center);
    if (rp > radius) throw DomainError("riesz_harmonic_part: probe outside the ball");
    const double hp = h(p.span());
    const double fp = f(p);
    const std::string where = "x=(" + to_string(p) + ")";
    report.cases.push_back({where + " h>=0", 0.0, hp, std::max(0.0, -hp) / std::max(std::abs(hp), kResidualFloor), 0.0});
    report.cases.push_back(
        {where + " h>=f", fp, hp, std::max(0.0, fp - hp) / std::max(std::abs(fp), kResidualFloor), 0.0});
    const double r = 0.5 * (radius - rp);
    if (r > 0.0 && m <= 3) {
      report.add_relative(where + " sphere_mean(h) r=" + fmt(r), hp, sphere_mean(h_field, p, r).value, hp);
    }
    if (rp + kSpacing <= radius) {
      double laplacian = -2.0 * m * hp;
      Point y = p;
      for (int i = 0; i < m; ++i) {
        y[i] = p[i] + kSpacing;
        laplacian += h(y.span());
        y[i] = p[i] - kSpacing;
        laplacian += h(y.span());
        y[i] = p[i];
      }
      laplacian /= kSpacing * kSpacing;
      report.cases.push_back({where + " discrete laplacian", 0.0, laplacian, std::abs(laplacian), 0.0});
    }
  }
  report.append_note("h = f - mu^2 * Newtonian potential of f (radial quadrature); discrete Laplacian spacing 1e-2");
  if (m > 3) report.append_note("sphere mean of h skipped for m >= 4 (Monte Carlo noise exceeds the threshold)");
  report.finalize();
  return report;
}

CheckReport verify_integral_equation(const ScalarField& f, double mu, const Domain& d,
                                     const std::vector<Point>& probes, long long n, const RngStream& rng) {
  if (d.dim() != 3) throw UnsupportedError("verify_integral_equation: Monte Carlo kernel variance is finite only for m = 3");
  const RieszHarmonicPart h(f, mu, d);
  const Point center = d.center();
  const double volume = d.volume();
  CheckReport report;
  report.check_id = "integral_equation";
  report.threshold = kSigmaThreshold;
  std::uint64_t index = 0;
  for (const auto& p : probes) {
    const std::vector<double> pole = p.coords();
    const double kernel_factor = -1.0 / (4.0 * std::numbers::pi);
    ScalarField integrand("E3*f", 3,
                          [&f, pole, kernel_factor](std::span<const double> y) {
                            const double r = distance(y, pole);
                            return r == 0.0 ? 0.0 : kernel_factor / r * f(y);
                          });
    const MeanEstimate t = domain_mean(integrand, d, n, rng.split(index++));
    const double observed = mu * mu * volume * t.value;
    const double expected = f(p) - h(p.span());
    report.add_statistical("x=(" + to_string(p) + ")", expected, observed, mu * mu * volume * t.std_error);
  }
  report.append_note("mu^2 T f by Monte Carlo against f - h from the radial potential");
  report.finalize();
  return report;
}

// ---- Ball characterization -----------------------------------------------------

MeanEstimate kugel_discrepancy(const Domain& d, double mu, long long n, const RngStream& rng) {
  const int m = d.dim();
  const ScalarField u = make_u_radial(m, mu, d.center());
  const MeanEstimate mean = domain_mean(u, d, n, rng);
  const double volume = d.volume();
  const double a_ball = ball_coeff(m, mu * d.matched_radius());
  return {volume * (mean.value - a_ball), volume * mean.std_error, mean.samples, MeanMethod::monte_carlo};
}

CheckReport kugel_fundamental_check(const Domain& d, double mu, const Point& x0, const std::vector<Point>& exterior,
                                    long long n, const RngStream& rng) {
  if (d.dim() != 3) throw UnsupportedError("kugel_fundamental_check: fundamental solutions are three-dimensional");
  if (!d.contains(x0)) throw DomainError("kugel_fundamental_check: x0 must be interior");
  for (const auto& x : exterior) {
    if (d.contains(x) || d.distance_to_boundary(x) == 0.0) {
      throw DomainError("kugel_fundamental_check: probe (" + to_string(x) + ") is not exterior");
    }
  }
  const double a3 = ball_coeff(3, mu * d.matched_radius());
  CheckReport report;
  report.check_id = "kugel_fundamental";
  report.threshold = kSigmaThreshold;
  std::uint64_t index = 0;
  for (auto sign : {FundamentalSign::decaying, FundamentalSign::growing}) {
    for (const auto& x : exterior) {
      const ScalarField e = make_fundamental(mu, sign, x);
      const MeanEstimate mean = domain_mean(e, d, n, rng.split(index++));
      const double expected = a3 * e(x0);
      report.add_statistical(std::string(sign == FundamentalSign::decaying ? "E-" : "E+") + " x=(" + to_string(x) + ")",
                             expected, mean.value, mean.std_error);
    }
  }
  if (!d.is_ball()) report.append_note("non-ball domain: a mismatch is the expected outcome");
  if (!d.complement_connected()) report.append_note("hypothesis violated: complement is not connected");
  report.finalize();
  return report;
}

CheckReport verify_asymptotic_coefficient(const std::vector<int>& dims, double t) {
  CheckReport report;
  report.check_id = "liouville_asymptotic";
  report.threshold = 1e-3;
  for (int m : dims) {
    const double ratio = coeff_sphere_asymptotic(m, t) / sphere_coeff(m, t);
    report.add_relative("m=" + std::to_string(m) + " t=" + fmt(t), 1.0, ratio, 1.0);
  }
  report.append_note("leading term only; relative error is O(1/t) unless m = 3");
  report.finalize();
  return report;
}

CheckReport verify_liouville_decay(const std::vector<int>& dims, double x_norm) {
  CheckReport report;
  report.check_id = "liouville_decay";
  report.threshold = 1e-6;
  for (int m : dims) {
    for (int n = 0; n <= 2; ++n) {
      double worst = 0.0;
      for (double r = 40.0; r <= 200.0; r += 1.0) {
        worst = std::max(worst, std::pow(1.0 + x_norm + r, n) / coeff_sphere_asymptotic(m, r));
      }
      report.cases.push_back({"m=" + std::to_string(m) + " n=" + std::to_string(n) + " |x|=" + fmt(x_norm) +
                                  " max envelope on [40,200]",
                              0.0, worst, worst, 0.0});
    }
  }
  report.finalize();
  return report;
}

// ---- Suite ---------------------------------------------------------------------

namespace {

using SuiteRunner = std::function<std::vector<CheckReport>(const SuiteConfig&, const RngStream&)>;

struct SuiteEntry {
  std::string id;
  SuiteRunner run;
};

std::vector<CheckReport> identity_over_catalog(IdentityKind kind, const SuiteConfig& cfg, const RngStream& rng) {
  const Domain d = Domain::ball(cfg.dim, 1.0);
  QuadratureConfig q = kind == IdentityKind::iterated ? QuadratureConfig::compact() : QuadratureConfig{};
  q.stream = rng.split(1);
  std::vector<std::pair<std::string, CheckReport>> parts;
  std::uint64_t index = 0;
  for (const auto& f : panharmonic_catalog(cfg.dim, cfg.mu)) {
    parts.emplace_back(f.name(), verify_identity(kind, f, cfg.mu, d, q, cfg.trials, rng.split(100 + index++)));
  }
  return {merge_reports("identity_" + std::string(to_string(kind)), parts)};
}

std::vector<Point> asymptotic_points(int m) {
  std::vector<Point> points{Point::zeros(m), Point::on_axis(m, 0.3)};
  Point p = Point::zeros(m);
  p[0] = 0.2;
  p[1] = -0.4;
  points.push_back(p);
  return points;
}

std::vector<CheckReport> asymptotic_suite(MeanKind kind, const SuiteConfig& cfg, const RngStream&) {
  const ScalarField u = make_u_radial(cfg.dim, cfg.mu);
  std::vector<std::pair<std::string, CheckReport>> parts;
  for (const auto& x : asymptotic_points(cfg.dim)) parts.emplace_back(u.name(), verify_asymptotic(kind, u, cfg.mu, x));
  return {merge_reports(kind == MeanKind::sphere ? "asymptotic_sphere" : "asymptotic_volume", parts)};
}

std::vector<Point> riesz_probes(int m) {
  std::vector<Point> probes;
  for (int k = 0; k < 10; ++k) {
    Point p = Point::zeros(m);
    const double r = 0.1 * k;
    p[static_cast<std::size_t>(k % m)] = (k % 2 == 0 ? r : -r);
    probes.push_back(p);
  }
  return probes;
}

Domain stretched_ellipsoid(int m, double ratio) {
  std::vector<double> axes(static_cast<std::size_t>(m), 1.0);
  axes[0] = ratio;
  axes[static_cast<std::size_t>(m - 1)] = 1.0 / ratio;
  return Domain::ellipsoid(std::move(axes));
}

CheckReport inverted_significance(std::string id, const MeanEstimate& delta) {
  // Passes when delta > 5 sigma: residual 5 / z with threshold 1.
  CheckReport report;
  report.check_id = std::move(id);
  report.threshold = 1.0;
  const double z = delta.std_error > 0.0 ? delta.value / delta.std_error : 0.0;
  const double residual = z > 0.0 ? 5.0 / z : std::numeric_limits<double>::infinity();
  report.cases.push_back({"significance z=" + fmt(z), 0.0, delta.value, residual, delta.std_error});
  report.append_note("passes when the discrepancy exceeds 5 sigma; residual = 5/z");
  report.finalize();
  return report;
}

std::vector<Point> kugel_probes() { return {Point{2.0, 0.0, 0.0}, Point{0.0, -1.5, 0.5}, Point{0.3, 0.4, -1.8}}; }

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> entries = {
      {"identity_sphere",
       [](const SuiteConfig& c, const RngStream& r) { return identity_over_catalog(IdentityKind::sphere, c, r); }},
      {"identity_ball",
       [](const SuiteConfig& c, const RngStream& r) { return identity_over_catalog(IdentityKind::ball, c, r); }},
      {"identity_coupling",
       [](const SuiteConfig& c, const RngStream& r) { return identity_over_catalog(IdentityKind::coupling, c, r); }},
      {"identity_iterated",
       [](const SuiteConfig& c, const RngStream& r) { return identity_over_catalog(IdentityKind::iterated, c, r); }},
      {"identity_subharmonic",
       [](const SuiteConfig& c, const RngStream& r) { return identity_over_catalog(IdentityKind::subharmonic, c, r); }},
      {"identity_flux",
       [](const SuiteConfig& c, const RngStream& r) -> std::vector<CheckReport> {
         if (c.dim > 3) return {};
         return identity_over_catalog(IdentityKind::flux, c, r);
       }},
      {"identity_mean_ratio",
       [](const SuiteConfig& c, const RngStream& r) -> std::vector<CheckReport> {
         if (c.dim > 3) return {};
         return identity_over_catalog(IdentityKind::mean_ratio, c, r);
       }},
      {"asymptotic_sphere",
       [](const SuiteConfig& c, const RngStream& r) -> std::vector<CheckReport> {
         if (c.dim > 3) return {};
         return asymptotic_suite(MeanKind::sphere, c, r);
       }},
      {"asymptotic_volume",
       [](const SuiteConfig& c, const RngStream& r) -> std::vector<CheckReport> {
         if (c.dim > 3) return {};
         return asymptotic_suite(MeanKind::volume, c, r);
       }},
      {"max_principle",
       [](const SuiteConfig& c, const RngStream&) -> std::vector<CheckReport> {
         const int grid = c.dim == 2 ? 129 : (c.dim == 3 ? 33 : 9);
         return {verify_max_principle(make_u_radial(c.dim, c.mu), Domain::ball(c.dim, 1.0), grid)};
       }},
      {"liouville_asymptotic",
       [](const SuiteConfig& c, const RngStream&) -> std::vector<CheckReport> {
         return {verify_asymptotic_coefficient({c.dim})};
       }},
      {"liouville_decay",
       [](const SuiteConfig& c, const RngStream&) -> std::vector<CheckReport> {
         return {verify_liouville_decay({c.dim}, 1.0)};
       }},
      {"riesz_harmonic_part",
       [](const SuiteConfig& c, const RngStream&) -> std::vector<CheckReport> {
         if (c.dim < 3) return {};
         return {riesz_harmonic_part(make_u_radial(c.dim, c.mu), c.mu, Domain::ball(c.dim, 1.0), riesz_probes(c.dim))};
       }},
      {"integral_equation",
       [](const SuiteConfig& c, const RngStream& r) -> std::vector<CheckReport> {
         if (c.dim != 3) return {};
         return {verify_integral_equation(make_u_radial(3, c.mu), c.mu, Domain::ball(3, 1.0),
                                          {Point{0.0, 0.0, 0.0}, Point{0.5, 0.0, 0.0}, Point{0.0, -0.3, 0.6}},
                                          c.mc_samples, r)};
       }},
      {"kugel_discrepancy_ball",
       [](const SuiteConfig& c, const RngStream& r) -> std::vector<CheckReport> {
         const MeanEstimate delta = kugel_discrepancy(Domain::ball(c.dim, 1.0), c.mu, c.mc_samples, r);
         CheckReport report;
         report.check_id = "kugel_discrepancy_ball";
         report.threshold = kSigmaThreshold;
         report.add_statistical("ball:1", 0.0, delta.value, delta.std_error);
         report.finalize();
         return {report};
       }},
      {"kugel_discrepancy_nonball",
       [](const SuiteConfig& c, const RngStream& r) -> std::vector<CheckReport> {
         const Domain e = stretched_ellipsoid(c.dim, 1.2);
         auto report = inverted_significance("kugel_discrepancy_nonball", kugel_discrepancy(e, c.mu, c.mc_samples, r));
         report.cases.front().inputs = e.to_string() + " " + report.cases.front().inputs;
         return {report};
       }},
      {"kugel_fundamental_ball",
       [](const SuiteConfig& c, const RngStream& r) -> std::vector<CheckReport> {
         if (c.dim != 3) return {};
         auto report = kugel_fundamental_check(Domain::ball(3, 1.0), c.mu, Point::zeros(3), kugel_probes(),
                                               c.mc_samples, r);
         report.check_id = "kugel_fundamental_ball";
         return {report};
       }},
      {"kugel_fundamental_nonball",
       [](const SuiteConfig& c, const RngStream& r) -> std::vector<CheckReport> {
         if (c.dim != 3) return {};
         const Domain e = stretched_ellipsoid(3, 1.3);
         const auto raw = kugel_fundamental_check(e, c.mu, Point::zeros(3), kugel_probes(), c.mc_samples, r);
         // Passes when at least one probe is off by more than 5 sigma.
         CheckReport report;
         report.check_id = "kugel_fundamental_nonball";
         report.threshold = 1.0;
         report.cases = raw.cases;
         double worst_z = 0.0;
         for (const auto& cs : raw.cases) worst_z = std::max(worst_z, cs.residual);
         report.finalize();
         report.max_relative_residual = worst_z > 0.0 ? 5.0 / worst_z : std::numeric_limits<double>::infinity();
         report.passed = report.max_relative_residual <= report.threshold;
         report.notes = "passes when some probe mismatch exceeds 5 sigma; residual = 5/max z (max z = " +
                        fmt(worst_z) + ")";
         return {report};
       }},
  };
  return entries;
}

}  // namespace

const std::vector<std::string>& suite_check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.id);
    return out;
  }();
  return ids;
}

std::vector<CheckReport> run_suite(std::string_view which, const SuiteConfig& cfg) {
  if (cfg.dim < 2) throw DomainError("run_suite: dimension must be >= 2");
  if (!(cfg.mu > 0.0)) throw DomainError("run_suite: mu must be positive");
  std::vector<CheckReport> out;
  bool found = false;
  std::uint64_t index = 0;
  for (const auto& entry : registry()) {
    const RngStream rng(cfg.seed, 0x7375697465ULL + index++);
    if (which != "all" && which != entry.id) continue;
    found = true;
    for (auto& report : entry.run(cfg, rng)) out.push_back(std::move(report));
  }
  if (!found) throw ParseError("unknown check id '" + std::string(which) + "'");
  return out;
}

}  // namespace panharmonia
