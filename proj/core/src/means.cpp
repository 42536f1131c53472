// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#include "panharmonia/means.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "panharmonia/errors.hpp"
#include "panharmonia/parallel.hpp"
#include "panharmonia/quadrature.hpp"
#include "panharmonia/specfun.hpp"

namespace panharmonia {
namespace {

constexpr std::size_t kBlockSize = 8192;

// Unit directions with weights summing to 1.
struct SphereRule {
  int dim = 0;
  std::vector<double> directions;  // row-major, dim per node
  std::vector<double> weights;
  MeanMethod method = MeanMethod::trapezoid;

  std::size_t size() const { return weights.size(); }
  std::span<const double> direction(std::size_t i) const {
    return {directions.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
};

SphereRule make_sphere_rule(int m, const QuadratureConfig& q) {
  SphereRule rule;
  rule.dim = m;
  if (m == 2) {
    const int n = q.circle_points;
    rule.method = MeanMethod::trapezoid;
    for (int k = 0; k < n; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / n;
      rule.directions.push_back(std::cos(phi));
      rule.directions.push_back(std::sin(phi));
      rule.weights.push_back(1.0 / n);
    }
  } else if (m == 3) {
    const auto& gl = gauss_legendre(static_cast<std::size_t>(q.polar_nodes));
    const int n_phi = q.azimuth_points;
    rule.method = MeanMethod::gauss_product;
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const double c = gl.nodes[i];
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      for (int j = 0; j < n_phi; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / n_phi;
        rule.directions.push_back(s * std::cos(phi));
        rule.directions.push_back(s * std::sin(phi));
        rule.directions.push_back(c);
        rule.weights.push_back(0.5 * gl.weights[i] / n_phi);
      }
    }
  } else {
    throw UnsupportedError("deterministic sphere rule only for m = 2, 3");
  }
  // Exact unit total weight: constants must average to themselves without rounding bias.
  double total = 0.0;
  for (double w : rule.weights) total += w;
  for (double& w : rule.weights) w /= total;
  return rule;
}

void check_dims(const ScalarField& f, const Point& x, const char* what) {
  if (f.dim() != x.dim()) {
    throw DomainError(std::string(what) + ": field dimension " + std::to_string(f.dim()) +
                      " does not match point dimension " + std::to_string(x.dim()));
  }
}

void check_radius(double r, const char* what) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError(std::string(what) + ": radius must be finite and >= 0");
}

void check_sphere_clear(const ScalarField& f, const Point& x, double r, const char* what) {
  for (const auto& p : f.meta().singular_points) {
    if (std::abs(distance(p, x) - r) <= 1e-12 * std::max(1.0, r)) {
      throw SingularityError(std::string(what) + ": sphere passes through a singular point");
    }
  }
}

void check_ball_clear(const ScalarField& f, const Point& x, double r, const char* what) {
  for (const auto& p : f.meta().singular_points) {
    if (distance(p, x) <= r * (1.0 + 1e-12)) {
      throw SingularityError(std::string(what) + ": closed ball contains a singular point");
    }
  }
}

double rule_mean(const ScalarField& f, const SphereRule& rule, std::span<const double> x, double r,
                 std::vector<double>& buffer) {
  const std::size_t m = x.size();
  buffer.resize(m);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const auto u = rule.direction(k);
    for (std::size_t i = 0; i < m; ++i) buffer[i] = x[i] + r * u[i];
    sum += rule.weights[k] * f(std::span<const double>(buffer));
  }
  return sum;
}

// Monte Carlo over directions; sample(u, buffer) returns one draw.
template <class Sample>
MeanEstimate monte_carlo(int m, long long n, const RngStream& stream, Sample sample) {
  if (n < 1) throw DomainError("monte carlo: need at least one sample");
  const std::size_t total = static_cast<std::size_t>(n);
  const std::size_t blocks = (total + kBlockSize - 1) / kBlockSize;
  std::vector<RunningStats> partial(blocks);
  parallel_blocks(blocks, [&](std::size_t b) {
    RngStream rng = stream.split(b);
    std::vector<double> u(static_cast<std::size_t>(m));
    std::vector<double> buffer(static_cast<std::size_t>(m));
    const std::size_t end = std::min(total, (b + 1) * kBlockSize);
    RunningStats stats;
    for (std::size_t i = b * kBlockSize; i < end; ++i) stats.add(sample(rng, u, buffer));
    partial[b] = stats;
  });
  RunningStats all;
  for (const auto& p : partial) all.merge(p);
  return {all.mean, all.std_error(), static_cast<long long>(all.count), MeanMethod::monte_carlo};
}

}  // namespace

std::string_view to_string(MeanMethod method) {
  switch (method) {
    case MeanMethod::trapezoid: return "trapezoid";
    case MeanMethod::gauss_product: return "gauss_product";
    case MeanMethod::monte_carlo: return "monte_carlo";
    case MeanMethod::radial_composite: return "radial_composite";
  }
  return "?";
}

QuadratureConfig QuadratureConfig::compact() {
  QuadratureConfig q;
  q.circle_points = 64;
  q.polar_nodes = 16;
  q.azimuth_points = 32;
  return q;
}

void QuadratureConfig::validate() const {
  if (circle_points < 4 || polar_nodes < 4 || azimuth_points < 4 || mc_samples < 4 || radial_nodes < 4) {
    throw DomainError("QuadratureConfig: every node count must be >= 4");
  }
}

MeanEstimate sphere_mean(const ScalarField& f, const Point& x, double r, const QuadratureConfig& q) {
  check_dims(f, x, "sphere_mean");
  check_radius(r, "sphere_mean");
  q.validate();
  const int m = x.dim();
  const MeanMethod det_method = m == 2 ? MeanMethod::trapezoid : MeanMethod::gauss_product;
  if (r == 0.0) return {f(x), 0.0, 1, m <= 3 ? det_method : MeanMethod::monte_carlo};
  check_sphere_clear(f, x, r, "sphere_mean");
  if (m <= 3) {
    const SphereRule rule = make_sphere_rule(m, q);
    std::vector<double> buffer;
    return {rule_mean(f, rule, x.span(), r, buffer), 0.0, static_cast<long long>(rule.size()), rule.method};
  }
  return monte_carlo(m, q.mc_samples, q.stream, [&](RngStream& rng, std::vector<double>& u, std::vector<double>& y) {
    sample_unit_sphere(u, rng);
    for (int i = 0; i < m; ++i) y[i] = x[i] + r * u[i];
    return f(std::span<const double>(y));
  });
}

MeanEstimate ball_mean(const ScalarField& f, const Point& x, double r, const QuadratureConfig& q) {
  check_dims(f, x, "ball_mean");
  check_radius(r, "ball_mean");
  q.validate();
  const int m = x.dim();
  if (r == 0.0) return {f(x), 0.0, 1, m <= 3 ? MeanMethod::radial_composite : MeanMethod::monte_carlo};
  check_ball_clear(f, x, r, "ball_mean");
  if (m <= 3) {
    const SphereRule rule = make_sphere_rule(m, q);
    const auto& gl = gauss_legendre(static_cast<std::size_t>(q.radial_nodes));
    std::vector<double> buffer;
    double sum = 0.0;
    for (std::size_t k = 0; k < gl.size(); ++k) {
      const double s = 0.5 * (1.0 + gl.nodes[k]);  // t / r
      sum += 0.5 * gl.weights[k] * std::pow(s, m - 1) * rule_mean(f, rule, x.span(), r * s, buffer);
    }
    return {m * sum, 0.0, static_cast<long long>(rule.size() * gl.size()), MeanMethod::radial_composite};
  }
  return monte_carlo(m, q.mc_samples, q.stream, [&](RngStream& rng, std::vector<double>& u, std::vector<double>& y) {
    sample_unit_sphere(u, rng);
    const double rho = r * std::pow(rng.uniform_open(), 1.0 / m);
    for (int i = 0; i < m; ++i) y[i] = x[i] + rho * u[i];
    return f(std::span<const double>(y));
  });
}

MeanEstimate iterated_mean(const ScalarField& f, const Point& x, double r_outer, double r_inner,
                           const QuadratureConfig& q) {
  check_dims(f, x, "iterated_mean");
  check_radius(r_outer, "iterated_mean");
  check_radius(r_inner, "iterated_mean");
  if (r_outer == 0.0) return sphere_mean(f, x, r_inner, q);
  if (r_inner == 0.0) return sphere_mean(f, x, r_outer, q);
  q.validate();
  const int m = x.dim();
  for (const auto& p : f.meta().singular_points) {
    if (distance(p, x) <= (r_outer + r_inner) * (1.0 + 1e-12)) {
      throw SingularityError("iterated_mean: evaluation points may reach a singular point");
    }
  }
  if (m <= 3) {
    const SphereRule rule = make_sphere_rule(m, q);
    std::vector<double> outer(static_cast<std::size_t>(m));
    std::vector<double> buffer;
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const auto u = rule.direction(k);
      for (int i = 0; i < m; ++i) outer[i] = x[i] + r_outer * u[i];
      sum += rule.weights[k] * rule_mean(f, rule, outer, r_inner, buffer);
    }
    return {sum, 0.0, static_cast<long long>(rule.size() * rule.size()), rule.method};
  }
  return monte_carlo(m, q.mc_samples, q.stream, [&](RngStream& rng, std::vector<double>& u, std::vector<double>& y) {
    sample_unit_sphere(u, rng);
    for (int i = 0; i < m; ++i) y[i] = x[i] + r_outer * u[i];
    sample_unit_sphere(u, rng);
    for (int i = 0; i < m; ++i) y[i] += r_inner * u[i];
    return f(std::span<const double>(y));
  });
}

MeanEstimate domain_mean(const ScalarField& f, const Domain& d, long long n, const RngStream& rng) {
  if (f.dim() != d.dim()) throw DomainError("domain_mean: field and domain dimensions differ");
  for (const auto& p : f.meta().singular_points) {
    if (d.contains(p) || d.distance_to_boundary(p) == 0.0) {
      throw SingularityError("domain_mean: singular point inside the closed domain");
    }
  }
  const int m = d.dim();
  return monte_carlo(m, n, rng, [&](RngStream& stream, std::vector<double>&, std::vector<double>&) {
    const Point y = d.sample_interior(stream);
    return f(y);
  });
}

double boundary_flux(const ScalarField& f, const Domain& d, double h, const QuadratureConfig& q) {
  const auto* ball = std::get_if<BallShape>(&d.shape());
  if (ball == nullptr) throw UnsupportedError("boundary_flux: only balls are supported");
  if (f.dim() != d.dim()) throw DomainError("boundary_flux: field and domain dimensions differ");
  q.validate();
  const int m = d.dim();
  const double radius = ball->radius;
  if (h <= 0.0) h = 1e-5 * radius;
  const double area = unit_sphere_area(m) * std::pow(radius, m - 1);
  auto normal_derivative = [&](std::span<const double> u, std::vector<double>& y) {
    for (int i = 0; i < m; ++i) y[i] = ball->center[i] + (radius + h) * u[i];
    const double outside = f(std::span<const double>(y));
    for (int i = 0; i < m; ++i) y[i] = ball->center[i] + (radius - h) * u[i];
    const double inside = f(std::span<const double>(y));
    return (outside - inside) / (2.0 * h);
  };
  if (m <= 3) {
    const SphereRule rule = make_sphere_rule(m, q);
    std::vector<double> y(static_cast<std::size_t>(m));
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) sum += rule.weights[k] * normal_derivative(rule.direction(k), y);
    return area * sum;
  }
  const MeanEstimate est =
      monte_carlo(m, q.mc_samples, q.stream, [&](RngStream& rng, std::vector<double>& u, std::vector<double>& y) {
        sample_unit_sphere(u, rng);
        return normal_derivative(u, y);
      });
  return area * est.value;
}

double richardson_extrapolate(const std::vector<double>& values) {
  if (values.empty()) throw DomainError("richardson_extrapolate: no values");
  std::vector<double> row = values;
  double factor = 1.0;
  for (std::size_t level = 1; level < values.size(); ++level) {
    factor *= 4.0;
    for (std::size_t k = values.size() - 1; k >= level; --k) {
      row[k] = (factor * row[k] - row[k - 1]) / (factor - 1.0);
    }
  }
  return row.back();
}

double mean_excess_limit(MeanKind kind, const ScalarField& f, const Point& x, double r0, int levels,
                         const QuadratureConfig& q) {
  check_dims(f, x, "mean_excess_limit");
  if (x.dim() > 3) throw UnsupportedError("mean_excess_limit: extrapolation needs deterministic quadrature (m <= 3)");
  if (!(r0 > 0.0)) throw DomainError("mean_excess_limit: r0 must be positive");
  if (levels < 2) throw DomainError("mean_excess_limit: need at least two levels");
  const double center = f(x);
  std::vector<double> excess;
  double r = r0;
  for (int k = 0; k < levels; ++k, r *= 0.5) {
    const MeanEstimate mean = kind == MeanKind::sphere ? sphere_mean(f, x, r, q) : ball_mean(f, x, r, q);
    excess.push_back((mean.value - center) / (r * r));
  }
  return richardson_extrapolate(excess);
}

}  // namespace panharmonia
