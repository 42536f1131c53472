// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "panharmonia/errors.hpp"
#include "panharmonia/fields.hpp"

using namespace panharmonia;

namespace {

// Five-point-per-axis Laplacian minus mu^2 f, relative to |f|.
double helmholtz_residual(const ScalarField& f, double mu, const Point& x) {
  const double h = 1e-3;
  double lap = 0.0;
  Point y = x;
  for (int i = 0; i < x.dim(); ++i) {
    const double c = x[i];
    y[i] = c + 2 * h;
    const double p2 = f(y);
    y[i] = c + h;
    const double p1 = f(y);
    y[i] = c - h;
    const double m1 = f(y);
    y[i] = c - 2 * h;
    const double m2 = f(y);
    y[i] = c;
    lap += (-p2 + 16 * p1 - 30 * f(x) + 16 * m1 - m2) / (12 * h * h);
  }
  return std::abs(lap - mu * mu * f(x)) / std::max(std::abs(f(x)), 1.0);
}

}  // namespace

TEST(Fields, CatalogSolvesItsEquation) {
  for (int m : {2, 3, 4}) {
    for (double mu : {0.5, 1.0, 2.0}) {
      for (const auto& f : full_catalog(m, mu)) {
        const Point x = Point::on_axis(m, 0.3, 0);
        const double target = f.meta().cls == FieldClass::panharmonic ? mu : 0.0;
        if (f.meta().cls == FieldClass::neither) {
          EXPECT_GT(helmholtz_residual(f, mu, x), 1.0) << f.name();
          EXPECT_GT(helmholtz_residual(f, 0.0, x), 1.0) << f.name();
        } else {
          EXPECT_LT(helmholtz_residual(f, target, x), 1e-6) << f.name() << " m=" << m << " mu=" << mu;
        }
      }
    }
  }
}

TEST(Fields, RadialUValues) {
  const ScalarField u = make_u_radial(3, 1.0);
  EXPECT_EQ(u(Point::zeros(3)), 1.0);
  EXPECT_NEAR(u(Point{0, 0, 1}), std::sinh(1.0), 1e-15);
  const ScalarField u2 = make_u_radial(2, 3.0, Point{1, 1});
  EXPECT_NEAR(u2(Point{1, 2}), std::cyl_bessel_i(0.0, 3.0), 1e-13);
}

TEST(Fields, FundamentalSolutions) {
  const ScalarField e = make_fundamental(1.0, FundamentalSign::decaying, Point{3, 0, 0});
  EXPECT_NEAR(e(Point::zeros(3)), std::exp(-3.0) / 3.0, 1e-16);
  EXPECT_THROW(e(Point{3, 0, 0}), SingularityError);
  EXPECT_DOUBLE_EQ(e.clearance(Point{1, 0, 0}.span()), 2.0);
  const ScalarField g = make_fundamental(2.0, FundamentalSign::growing, Point::zeros(3));
  EXPECT_NEAR(g(Point{0, 0.5, 0}), std::exp(1.0) / 0.5, 1e-14);
  EXPECT_THROW(make_fundamental(1.0, FundamentalSign::decaying, Point{0, 0}), DomainError);
  EXPECT_THROW(make_fundamental(-1.0, FundamentalSign::decaying, Point{1, 0, 0}), DomainError);
  EXPECT_THROW(make_harmonic_fundamental(2, Point{1, 0}), DomainError);
}

TEST(Fields, ParseIdentifiers) {
  EXPECT_EQ(parse_field("u_radial", 3, 1.0).name(), "u_radial");
  EXPECT_DOUBLE_EQ(parse_field("const:2.5", 2, 1.0)(Point{0.1, 0.2}), 2.5);
  EXPECT_DOUBLE_EQ(parse_field("coord:2", 3, 1.0)(Point{0.1, 0.2, 0.3}), 0.2);
  EXPECT_NEAR(parse_field("efund-@3,0,0", 3, 1.0)(Point::zeros(3)), std::exp(-3.0) / 3.0, 1e-16);
  const ScalarField w = parse_field("planewave:2:3,4", 2, 1.0);
  EXPECT_NEAR(w(Point{1, 1}), std::exp(2.0 * 1.4), 1e-12);
  EXPECT_EQ(w.meta().mu.value(), 2.0);
  EXPECT_THROW(parse_field("nope", 3, 1.0), ParseError);
  EXPECT_THROW(parse_field("const:abc", 3, 1.0), ParseError);
  EXPECT_THROW(parse_field("coord:4", 3, 1.0), DomainError);
  EXPECT_THROW(parse_field("planewave:1", 3, 1.0), ParseError);
  EXPECT_THROW(parse_field("planewave:1:0,0,0", 3, 1.0), ParseError);
}

TEST(Fields, ScaledFieldIsSelfSimilar) {
  const ScalarField u = make_u_radial(3, 1.0);
  const ScalarField us = make_scaled(u, 2.0);
  EXPECT_EQ(us.meta().mu.value(), 2.0);
  const Point x{0.1, 0.2, 0.3};
  EXPECT_NEAR(us(x), make_u_radial(3, 2.0)(x), 1e-14);
}

TEST(Fields, MetadataAndNames) {
  const auto catalog = full_catalog(3, 1.0);
  int panharmonic = 0;
  for (const auto& f : catalog) {
    if (f.meta().cls == FieldClass::panharmonic) {
      ++panharmonic;
      EXPECT_EQ(f.meta().mu.value(), 1.0);
    }
  }
  EXPECT_EQ(panharmonic, 4);
  EXPECT_EQ(panharmonic_catalog(2, 1.0).size(), 2u);
  EXPECT_EQ(to_string(FieldClass::neither), "neither");
}
