// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#include "panharmonia/fields.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "panharmonia/errors.hpp"
#include "panharmonia/specfun.hpp"

namespace panharmonia {
namespace {

double checked_distance(std::span<const double> x, const std::vector<double>& pole, const char* what) {
  const double r = distance(x, pole);
  if (r == 0.0) throw SingularityError(std::string(what) + ": evaluated at the pole");
  return r;
}

std::string format(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_positive_mu(double mu, const char* what) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError(std::string(what) + ": mu must be positive");
}

}  // namespace

std::string_view to_string(FieldClass c) {
  switch (c) {
    case FieldClass::panharmonic: return "panharmonic";
    case FieldClass::harmonic: return "harmonic";
    case FieldClass::neither: return "neither";
    case FieldClass::unknown: return "unknown";
  }
  return "?";
}

double ScalarField::clearance(std::span<const double> x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : meta_.singular_points) best = std::min(best, distance(x, p.span()));
  return best;
}

ScalarField make_u_radial(int m, double mu, const Point& center) {
  if (m < 2) throw DomainError("u_radial: dimension must be >= 2");
  require_positive_mu(mu, "u_radial");
  if (center.dim() != m) throw DomainError("u_radial: center dimension mismatch");
  std::vector<double> c = center.coords();
  return ScalarField("u_radial", m,
                     [m, mu, c](std::span<const double> x) { return sphere_coeff(m, mu * distance(x, c)); },
                     {FieldClass::panharmonic, mu, {}});
}

ScalarField make_fundamental(double mu, FundamentalSign sign, const Point& pole) {
  require_positive_mu(mu, "fundamental");
  if (pole.dim() != 3) throw DomainError("fundamental: only defined in three dimensions");
  const double s = sign == FundamentalSign::decaying ? -mu : mu;
  std::vector<double> p = pole.coords();
  return ScalarField(sign == FundamentalSign::decaying ? "efund-" : "efund+", 3,
                     [s, p](std::span<const double> x) {
                       const double r = checked_distance(x, p, "fundamental");
                       return std::exp(s * r) / r;
                     },
                     {FieldClass::panharmonic, mu, {pole}});
}

ScalarField make_harmonic_fundamental(int m, const Point& pole) {
  if (m < 3) throw DomainError("harmonic fundamental: dimension must be >= 3");
  if (pole.dim() != m) throw DomainError("harmonic fundamental: pole dimension mismatch");
  const double factor = 1.0 / ((2.0 - m) * unit_sphere_area(m));
  std::vector<double> p = pole.coords();
  return ScalarField("em", m,
                     [m, factor, p](std::span<const double> x) {
                       const double r = checked_distance(x, p, "harmonic fundamental");
                       return factor / std::pow(r, m - 2);
                     },
                     {FieldClass::harmonic, std::nullopt, {pole}});
}

ScalarField make_constant(int m, double c) {
  return ScalarField("const:" + format(c), m, [c](std::span<const double>) { return c; },
                     {FieldClass::harmonic, std::nullopt, {}});
}

ScalarField make_coordinate(int m, int i) {
  if (i < 1 || i > m) throw DomainError("coordinate: index must be in 1..m");
  const std::size_t k = static_cast<std::size_t>(i - 1);
  return ScalarField("coord:" + std::to_string(i), m, [k](std::span<const double> x) { return x[k]; },
                     {FieldClass::harmonic, std::nullopt, {}});
}

ScalarField make_harmonic_quadratic(int m) {
  return ScalarField("hquad", m, [](std::span<const double> x) { return x[0] * x[0] - x[1] * x[1]; },
                     {FieldClass::harmonic, std::nullopt, {}});
}

ScalarField make_plane_wave(double mu, const Point& direction) {
  require_positive_mu(mu, "plane_wave");
  if (std::abs(direction.norm() - 1.0) > 1e-12) throw DomainError("plane_wave: direction must be a unit vector");
  std::vector<double> d = direction.coords();
  return ScalarField("planewave:" + format(mu) + ":" + to_string(direction), direction.dim(),
                     [mu, d](std::span<const double> x) {
                       double dot = 0.0;
                       for (std::size_t i = 0; i < d.size(); ++i) dot += d[i] * x[i];
                       return std::exp(mu * dot);
                     },
                     {FieldClass::panharmonic, mu, {}});
}

ScalarField make_radius_squared(int m) {
  return ScalarField("r2", m,
                     [](std::span<const double> x) {
                       double s = 0.0;
                       for (double v : x) s += v * v;
                       return s;
                     },
                     {FieldClass::neither, std::nullopt, {}});
}

ScalarField make_scaled(const ScalarField& f, double s) {
  FieldMeta meta = f.meta();
  if (meta.mu) *meta.mu *= s;
  for (auto& p : meta.singular_points) {
    for (int i = 0; i < p.dim(); ++i) p[i] /= s;
  }
  return ScalarField(f.name() + "*" + format(s), f.dim(),
                     [f, s](std::span<const double> x) {
                       double buf[16];
                       std::vector<double> heap;
                       double* y = buf;
                       if (x.size() > 16) {
                         heap.resize(x.size());
                         y = heap.data();
                       }
                       for (std::size_t i = 0; i < x.size(); ++i) y[i] = s * x[i];
                       return f(std::span<const double>(y, x.size()));
                     },
                     std::move(meta));
}

ScalarField parse_field(std::string_view id, int m, double mu) {
  std::string_view body = id;
  std::string_view pole_text;
  if (const std::size_t at = body.find('@'); at != std::string_view::npos) {
    pole_text = body.substr(at + 1);
    body = body.substr(0, at);
  }
  auto pole = [&](int dim) { return pole_text.empty() ? Point::zeros(dim) : parse_point(pole_text); };
  auto number = [](std::string_view t) {
    std::size_t used = 0;
    const std::string s(t);
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ParseError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw ParseError("not a number: '" + s + "'");
    return v;
  };

  if (body == "u_radial") return make_u_radial(m, mu);
  if (body == "efund-") return make_fundamental(mu, FundamentalSign::decaying, pole(3));
  if (body == "efund+") return make_fundamental(mu, FundamentalSign::growing, pole(3));
  if (body == "em") return make_harmonic_fundamental(m, pole(m));
  if (body == "r2") return make_radius_squared(m);
  if (body == "hquad") return make_harmonic_quadratic(m);
  if (body.starts_with("const:")) return make_constant(m, number(body.substr(6)));
  if (body.starts_with("coord:")) return make_coordinate(m, static_cast<int>(number(body.substr(6))));
  if (body.starts_with("planewave:")) {
    const std::string_view rest = body.substr(10);
    const std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos) throw ParseError("planewave spec needs 'planewave:<mu>:<dir>'");
    Point dir = parse_point(rest.substr(colon + 1));
    const double n = dir.norm();
    if (n == 0.0) throw ParseError("planewave direction must be nonzero");
    for (int i = 0; i < dir.dim(); ++i) dir[i] /= n;
    return make_plane_wave(number(rest.substr(0, colon)), dir);
  }
  throw ParseError("unknown field id '" + std::string(id) + "'");
}

std::vector<ScalarField> panharmonic_catalog(int m, double mu) {
  std::vector<ScalarField> out;
  out.push_back(make_u_radial(m, mu));
  Point dir = Point::zeros(m);
  if (m == 2) {
    dir[0] = 0.6;
    dir[1] = 0.8;
  } else {
    for (int i = 0; i < m; ++i) dir[i] = 1.0 / std::sqrt(static_cast<double>(m));
  }
  out.push_back(make_plane_wave(mu, dir));
  if (m == 3) {
    out.push_back(make_fundamental(mu, FundamentalSign::decaying, Point{2.0, 1.0, 0.0}));
    out.push_back(make_fundamental(mu, FundamentalSign::growing, Point{-2.0, 0.0, 1.0}));
  }
  return out;
}

std::vector<ScalarField> full_catalog(int m, double mu) {
  std::vector<ScalarField> out = panharmonic_catalog(m, mu);
  out.push_back(make_constant(m, 1.5));
  out.push_back(make_coordinate(m, 1));
  out.push_back(make_harmonic_quadratic(m));
  if (m >= 3) out.push_back(make_harmonic_fundamental(m, Point::on_axis(m, 2.2, m - 1)));
  out.push_back(make_radius_squared(m));
  return out;
}

}  // namespace panharmonia
