// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "panharmonia/rng.hpp"

namespace panharmonia {

/// A point of R^m with finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

  static Point zeros(int m) { return Point(std::vector<double>(static_cast<std::size_t>(m), 0.0)); }
  /// Point (value, 0, ..., 0).
  static Point on_axis(int m, double value, int axis = 0);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> span() const { return coords_; }
  const std::vector<double>& coords() const { return coords_; }
  double norm() const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

double distance(std::span<const double> a, std::span<const double> b);
inline double distance(const Point& a, const Point& b) { return distance(a.span(), b.span()); }
/// Parses "x1,x2,..." into a point.
Point parse_point(std::string_view text);
std::string to_string(const Point& p);

struct BallShape {
  Point center;
  double radius;
};
struct BoxShape {
  Point lo;
  Point hi;
};
struct ShellShape {
  Point center;
  double r_in;
  double r_out;
};
struct EllipsoidShape {
  Point center;
  std::vector<double> semi_axes;
};

/// Bounded closed-form region of R^m. Immutable after construction.
class Domain {
 public:
  using Shape = std::variant<BallShape, BoxShape, ShellShape, EllipsoidShape>;

  static Domain ball(Point center, double radius);
  static Domain ball(int m, double radius) { return ball(Point::zeros(m), radius); }
  static Domain box(Point lo, Point hi);
  static Domain shell(Point center, double r_in, double r_out);
  static Domain ellipsoid(Point center, std::vector<double> semi_axes);
  static Domain ellipsoid(std::vector<double> semi_axes);

  int dim() const { return dim_; }
  const Shape& shape() const { return shape_; }
  bool is_ball() const { return std::holds_alternative<BallShape>(shape_); }
  /// False only for the shell, whose complement has a bounded component.
  bool complement_connected() const { return !std::holds_alternative<ShellShape>(shape_); }

  /// Strictly interior.
  bool contains(std::span<const double> x) const;
  bool contains(const Point& x) const { return contains(x.span()); }

  /// dist(x, boundary), exact for every shape, for interior and exterior x.
  double distance_to_boundary(std::span<const double> x) const;
  double distance_to_boundary(const Point& x) const { return distance_to_boundary(x.span()); }

  /// Nearest boundary point of an interior x; throws DomainError for exterior x.
  Point project_to_boundary(const Point& x) const;

  double volume() const;
  /// Radius of the m-ball whose volume equals volume().
  double matched_radius() const;
  double diameter() const;
  /// Ball/shell/ellipsoid center, box midpoint.
  Point center() const;
  void bounding_box(Point& lo, Point& hi) const;

  /// Uniform point by rejection from the bounding box (at most 1e6 tries).
  Point sample_interior(RngStream& rng) const;
  /// Random boundary point: area-uniform for ball, box and shell; the image of the
  /// uniform sphere measure for the ellipsoid.
  Point sample_boundary(RngStream& rng) const;

  /// Canonical text form, parseable by parse_domain.
  std::string to_string() const;

 private:
  Domain(Shape shape, int dim) : shape_(std::move(shape)), dim_(dim) {}
  void check_dim(std::span<const double> x) const;

  Shape shape_;
  int dim_;
};

/// Parses `ball:<r>[@c1,c2,...]`, `box:<lo...>/<hi...>`, `shell:<rin>,<rout>[@c...]`,
/// `ellipsoid:<a,b,...>[@c...]`. `default_dim` applies to ball and shell without an
/// explicit center. Throws ParseError or DomainError.
Domain parse_domain(std::string_view text, int default_dim = 3);

/// Uniform point on the unit sphere S^{m-1} (normalized Gaussian vector).
Point sample_unit_sphere(int m, RngStream& rng);
/// Writes a uniform unit vector into `out` without allocating.
void sample_unit_sphere(std::span<double> out, RngStream& rng);

}  // namespace panharmonia
