// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#include "panharmonia/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "panharmonia/errors.hpp"
#include "panharmonia/specfun.hpp"

namespace panharmonia {
namespace {

constexpr int kMaxRejectionTries = 1'000'000;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_number(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join(std::span<const double> values) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << values[i];
  }
  return os.str();
}

// Nearest point on the ellipsoid sum (x_i/e_i)^2 = 1 to y (coordinates relative to the
// center). Works in the first orthant and restores signs. Lagrange multiplier t solves
// F(t) = sum (e_i y_i / (e_i^2 + t))^2 - 1 = 0, F decreasing; bracketed and bisected.
std::vector<double> ellipsoid_nearest(std::span<const double> e, std::span<const double> y_signed) {
  const std::size_t m = e.size();
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = std::abs(y_signed[i]);

  double level = 0.0;
  for (std::size_t i = 0; i < m; ++i) level += (y[i] / e[i]) * (y[i] / e[i]);

  std::vector<double> x(m);
  const double e_min = *std::min_element(e.begin(), e.end());
  const double e_min_sq = e_min * e_min;

  auto F = [&](double t) {
    double s = -1.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double q = e[i] * y[i] / (e[i] * e[i] + t);
      s += q * q;
    }
    return s;
  };

  double t_lo;
  double t_hi;
  if (level <= 1.0) {
    // Interior. Degenerate case: y vanishes on every shortest axis.
    bool degenerate = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (e[i] == e_min && y[i] != 0.0) degenerate = false;
    }
    if (degenerate) {
      double s = 1.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (e[i] != e_min) {
          x[i] = e[i] * e[i] * y[i] / (e[i] * e[i] - e_min_sq);
          s -= (x[i] / e[i]) * (x[i] / e[i]);
        }
      }
      if (s > 0.0) {
        bool placed = false;
        for (std::size_t i = 0; i < m; ++i) {
          if (e[i] == e_min) {
            x[i] = placed ? 0.0 : e_min * std::sqrt(s);
            placed = true;
          }
        }
        for (std::size_t i = 0; i < m; ++i) x[i] = std::copysign(x[i], y_signed[i]);
        return x;
      }
    }
    t_lo = -e_min_sq;
    t_hi = 0.0;
  } else {
    double ny = 0.0;
    for (double v : y) ny += v * v;
    const double e_max = *std::max_element(e.begin(), e.end());
    t_lo = 0.0;
    t_hi = e_max * std::sqrt(ny);
  }
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (t_lo + t_hi);
    if (mid <= t_lo || mid >= t_hi) break;
    if (F(mid) > 0.0) {
      t_lo = mid;
    } else {
      t_hi = mid;
    }
  }
  const double t = 0.5 * (t_lo + t_hi);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = std::copysign(e[i] * e[i] * y[i] / (e[i] * e[i] + t), y_signed[i]);
  }
  return x;
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  for (double v : coords_) {
    if (!std::isfinite(v)) throw DomainError("Point: coordinates must be finite");
  }
}

Point Point::on_axis(int m, double value, int axis) {
  Point p = zeros(m);
  p[static_cast<std::size_t>(axis)] = value;
  return p;
}

double Point::norm() const {
  double s = 0.0;
  for (double v : coords_) s += v * v;
  return std::sqrt(s);
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Point parse_point(std::string_view text) { return Point(parse_list(text)); }

std::string to_string(const Point& p) { return join(p.span()); }

Domain Domain::ball(Point center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("ball: radius must be positive");
  if (center.dim() < 2) throw DomainError("ball: dimension must be >= 2");
  const int m = center.dim();
  return Domain(BallShape{std::move(center), radius}, m);
}

Domain Domain::box(Point lo, Point hi) {
  if (lo.dim() != hi.dim()) throw DomainError("box: lo and hi dimensions differ");
  if (lo.dim() < 2) throw DomainError("box: dimension must be >= 2");
  for (int i = 0; i < lo.dim(); ++i) {
    if (!(lo[i] < hi[i])) throw DomainError("box: need lo < hi componentwise");
  }
  const int m = lo.dim();
  return Domain(BoxShape{std::move(lo), std::move(hi)}, m);
}

Domain Domain::shell(Point center, double r_in, double r_out) {
  if (!(r_in > 0.0) || !(r_in < r_out) || !std::isfinite(r_out)) throw DomainError("shell: need 0 < r_in < r_out");
  if (center.dim() < 2) throw DomainError("shell: dimension must be >= 2");
  const int m = center.dim();
  return Domain(ShellShape{std::move(center), r_in, r_out}, m);
}

Domain Domain::ellipsoid(Point center, std::vector<double> semi_axes) {
  if (static_cast<int>(semi_axes.size()) != center.dim()) throw DomainError("ellipsoid: axis count != dimension");
  if (center.dim() < 2) throw DomainError("ellipsoid: dimension must be >= 2");
  for (double a : semi_axes) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("ellipsoid: semi-axes must be positive");
  }
  const int m = center.dim();
  return Domain(EllipsoidShape{std::move(center), std::move(semi_axes)}, m);
}

Domain Domain::ellipsoid(std::vector<double> semi_axes) {
  const int m = static_cast<int>(semi_axes.size());
  return ellipsoid(Point::zeros(m), std::move(semi_axes));
}

void Domain::check_dim(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) {
    throw DomainError("point dimension " + std::to_string(x.size()) + " does not match domain dimension " +
                      std::to_string(dim_));
  }
}

bool Domain::contains(std::span<const double> x) const {
  check_dim(x);
  return std::visit(
      overloaded{
          [&](const BallShape& b) { return distance(x, b.center.span()) < b.radius; },
          [&](const BoxShape& b) {
            for (int i = 0; i < dim_; ++i) {
              if (!(x[i] > b.lo[i] && x[i] < b.hi[i])) return false;
            }
            return true;
          },
          [&](const ShellShape& s) {
            const double r = distance(x, s.center.span());
            return r > s.r_in && r < s.r_out;
          },
          [&](const EllipsoidShape& e) {
            double level = 0.0;
            for (int i = 0; i < dim_; ++i) {
              const double q = (x[i] - e.center[i]) / e.semi_axes[i];
              level += q * q;
            }
            return level < 1.0;
          },
      },
      shape_);
}

double Domain::distance_to_boundary(std::span<const double> x) const {
  check_dim(x);
  return std::visit(
      overloaded{
          [&](const BallShape& b) { return std::abs(b.radius - distance(x, b.center.span())); },
          [&](const BoxShape& b) {
            bool inside = true;
            double inner = std::numeric_limits<double>::infinity();
            double outer_sq = 0.0;
            for (int i = 0; i < dim_; ++i) {
              const double below = b.lo[i] - x[i];
              const double above = x[i] - b.hi[i];
              if (below >= 0.0 || above >= 0.0) inside = false;
              inner = std::min({inner, -below, -above});
              const double gap = std::max({below, above, 0.0});
              outer_sq += gap * gap;
            }
            return inside ? inner : (outer_sq > 0.0 ? std::sqrt(outer_sq) : 0.0);
          },
          [&](const ShellShape& s) {
            const double r = distance(x, s.center.span());
            return std::min(std::abs(r - s.r_in), std::abs(s.r_out - r));
          },
          [&](const EllipsoidShape& e) {
            std::vector<double> y(static_cast<std::size_t>(dim_));
            for (int i = 0; i < dim_; ++i) y[i] = x[i] - e.center[i];
            const auto nearest = ellipsoid_nearest(e.semi_axes, y);
            return distance(nearest, y);
          },
      },
      shape_);
}

Point Domain::project_to_boundary(const Point& x) const {
  check_dim(x.span());
  if (!contains(x)) throw DomainError("project_to_boundary: point is not interior");
  return std::visit(
      overloaded{
          [&](const BallShape& b) {
            Point out = x;
            const double r = distance(x, b.center);
            for (int i = 0; i < dim_; ++i) {
              const double dir = r > 0.0 ? (x[i] - b.center[i]) / r : (i == 0 ? 1.0 : 0.0);
              out[i] = b.center[i] + b.radius * dir;
            }
            return out;
          },
          [&](const BoxShape& b) {
            Point out = x;
            int axis = 0;
            bool upper = false;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < dim_; ++i) {
              if (x[i] - b.lo[i] < best) {
                best = x[i] - b.lo[i];
                axis = i;
                upper = false;
              }
              if (b.hi[i] - x[i] < best) {
                best = b.hi[i] - x[i];
                axis = i;
                upper = true;
              }
            }
            out[axis] = upper ? b.hi[axis] : b.lo[axis];
            return out;
          },
          [&](const ShellShape& s) {
            Point out = x;
            const double r = distance(x, s.center);
            const double target = (r - s.r_in <= s.r_out - r) ? s.r_in : s.r_out;
            for (int i = 0; i < dim_; ++i) out[i] = s.center[i] + target * (x[i] - s.center[i]) / r;
            return out;
          },
          [&](const EllipsoidShape& e) {
            std::vector<double> y(static_cast<std::size_t>(dim_));
            for (int i = 0; i < dim_; ++i) y[i] = x[i] - e.center[i];
            auto nearest = ellipsoid_nearest(e.semi_axes, y);
            for (int i = 0; i < dim_; ++i) nearest[i] += e.center[i];
            return Point(std::move(nearest));
          },
      },
      shape_);
}

double Domain::volume() const {
  const double unit = unit_ball_volume(dim_);
  return std::visit(
      overloaded{
          [&](const BallShape& b) { return unit * std::pow(b.radius, dim_); },
          [&](const BoxShape& b) {
            double v = 1.0;
            for (int i = 0; i < dim_; ++i) v *= b.hi[i] - b.lo[i];
            return v;
          },
          [&](const ShellShape& s) { return unit * (std::pow(s.r_out, dim_) - std::pow(s.r_in, dim_)); },
          [&](const EllipsoidShape& e) {
            double v = unit;
            for (double a : e.semi_axes) v *= a;
            return v;
          },
      },
      shape_);
}

double Domain::matched_radius() const {
  if (const auto* b = std::get_if<BallShape>(&shape_)) return b->radius;
  return std::pow(volume() / unit_ball_volume(dim_), 1.0 / dim_);
}

double Domain::diameter() const {
  return std::visit(overloaded{
                        [&](const BallShape& b) { return 2.0 * b.radius; },
                        [&](const BoxShape& b) { return distance(b.lo, b.hi); },
                        [&](const ShellShape& s) { return 2.0 * s.r_out; },
                        [&](const EllipsoidShape& e) {
                          return 2.0 * *std::max_element(e.semi_axes.begin(), e.semi_axes.end());
                        },
                    },
                    shape_);
}

Point Domain::center() const {
  return std::visit(overloaded{
                        [&](const BallShape& b) { return b.center; },
                        [&](const BoxShape& b) {
                          Point c = b.lo;
                          for (int i = 0; i < dim_; ++i) c[i] = 0.5 * (b.lo[i] + b.hi[i]);
                          return c;
                        },
                        [&](const ShellShape& s) { return s.center; },
                        [&](const EllipsoidShape& e) { return e.center; },
                    },
                    shape_);
}

void Domain::bounding_box(Point& lo, Point& hi) const {
  std::visit(overloaded{
                 [&](const BallShape& b) {
                   lo = b.center;
                   hi = b.center;
                   for (int i = 0; i < dim_; ++i) {
                     lo[i] -= b.radius;
                     hi[i] += b.radius;
                   }
                 },
                 [&](const BoxShape& b) {
                   lo = b.lo;
                   hi = b.hi;
                 },
                 [&](const ShellShape& s) {
                   lo = s.center;
                   hi = s.center;
                   for (int i = 0; i < dim_; ++i) {
                     lo[i] -= s.r_out;
                     hi[i] += s.r_out;
                   }
                 },
                 [&](const EllipsoidShape& e) {
                   lo = e.center;
                   hi = e.center;
                   for (int i = 0; i < dim_; ++i) {
                     lo[i] -= e.semi_axes[i];
                     hi[i] += e.semi_axes[i];
                   }
                 },
             },
             shape_);
}

Point Domain::sample_interior(RngStream& rng) const {
  Point lo;
  Point hi;
  bounding_box(lo, hi);
  Point x = lo;
  for (int attempt = 0; attempt < kMaxRejectionTries; ++attempt) {
    for (int i = 0; i < dim_; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * rng.uniform();
    if (contains(x)) return x;
  }
  throw DomainError("sample_interior: rejection sampling failed after 1e6 tries");
}

Point Domain::sample_boundary(RngStream& rng) const {
  return std::visit(
      overloaded{
          [&](const BallShape& b) {
            Point u = sample_unit_sphere(dim_, rng);
            for (int i = 0; i < dim_; ++i) u[i] = b.center[i] + b.radius * u[i];
            return u;
          },
          [&](const BoxShape& b) {
            // Face pair i has area prod_{j != i} width_j.
            std::vector<double> area(static_cast<std::size_t>(dim_));
            double total = 0.0;
            for (int i = 0; i < dim_; ++i) {
              double a = 1.0;
              for (int j = 0; j < dim_; ++j) {
                if (j != i) a *= b.hi[j] - b.lo[j];
              }
              area[i] = 2.0 * a;
              total += area[i];
            }
            double pick = rng.uniform() * total;
            int axis = 0;
            while (axis + 1 < dim_ && pick >= area[axis]) pick -= area[axis++];
            Point x = b.lo;
            for (int i = 0; i < dim_; ++i) x[i] = b.lo[i] + (b.hi[i] - b.lo[i]) * rng.uniform();
            x[axis] = rng.uniform() < 0.5 ? b.lo[axis] : b.hi[axis];
            return x;
          },
          [&](const ShellShape& s) {
            const double w_in = std::pow(s.r_in, dim_ - 1);
            const double w_out = std::pow(s.r_out, dim_ - 1);
            const double radius = rng.uniform() * (w_in + w_out) < w_in ? s.r_in : s.r_out;
            Point u = sample_unit_sphere(dim_, rng);
            for (int i = 0; i < dim_; ++i) u[i] = s.center[i] + radius * u[i];
            return u;
          },
          [&](const EllipsoidShape& e) {
            Point u = sample_unit_sphere(dim_, rng);
            for (int i = 0; i < dim_; ++i) u[i] = e.center[i] + e.semi_axes[i] * u[i];
            return u;
          },
      },
      shape_);
}

std::string Domain::to_string() const {
  return std::visit(overloaded{
                        [&](const BallShape& b) {
                          std::ostringstream os;
                          os.precision(17);
                          os << "ball:" << b.radius << '@' << join(b.center.span());
                          return os.str();
                        },
                        [&](const BoxShape& b) { return "box:" + join(b.lo.span()) + "/" + join(b.hi.span()); },
                        [&](const ShellShape& s) {
                          std::ostringstream os;
                          os.precision(17);
                          os << "shell:" << s.r_in << ',' << s.r_out << '@' << join(s.center.span());
                          return os.str();
                        },
                        [&](const EllipsoidShape& e) {
                          return "ellipsoid:" + join(e.semi_axes) + "@" + join(e.center.span());
                        },
                    },
                    shape_);
}

Domain parse_domain(std::string_view text, int default_dim) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("domain spec '" + std::string(text) + "' lacks '<shape>:'");
  }
  const std::string_view kind = text.substr(0, colon);
  std::string_view body = text.substr(colon + 1);
  std::string_view center_text;
  if (const std::size_t at = body.find('@'); at != std::string_view::npos) {
    center_text = body.substr(at + 1);
    body = body.substr(0, at);
  }
  auto center_or = [&](int m) { return center_text.empty() ? Point::zeros(m) : parse_point(center_text); };

  if (kind == "ball") {
    return Domain::ball(center_or(default_dim), parse_number(body));
  }
  if (kind == "box") {
    const std::size_t slash = body.find('/');
    if (slash == std::string_view::npos) throw ParseError("box spec needs '<lo...>/<hi...>'");
    return Domain::box(Point(parse_list(body.substr(0, slash))), Point(parse_list(body.substr(slash + 1))));
  }
  if (kind == "shell") {
    const auto radii = parse_list(body);
    if (radii.size() != 2) throw ParseError("shell spec needs '<rin>,<rout>'");
    return Domain::shell(center_or(default_dim), radii[0], radii[1]);
  }
  if (kind == "ellipsoid") {
    auto axes = parse_list(body);
    const int m = static_cast<int>(axes.size());
    return Domain::ellipsoid(center_or(m), std::move(axes));
  }
  throw ParseError("unknown domain shape '" + std::string(kind) + "' (ball|box|shell|ellipsoid)");
}

void sample_unit_sphere(std::span<double> out, RngStream& rng) {
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (double& v : out) {
      v = rng.normal();
      norm_sq += v * v;
    }
  } while (norm_sq == 0.0);
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& v : out) v *= inv;
}

Point sample_unit_sphere(int m, RngStream& rng) {
  if (m < 2) throw DomainError("sample_unit_sphere: dimension must be >= 2");
  std::vector<double> v(static_cast<std::size_t>(m));
  sample_unit_sphere(v, rng);
  return Point(std::move(v));
}

}  // namespace panharmonia
