// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance runner. `panharmonia_acceptance [N]` runs criterion N (all when
// omitted) and prints one PASS/FAIL line per criterion followed by details.
// Expected values come from closed forms in oracles.hpp, not from the library.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "panharmonia/detector.hpp"
#include "panharmonia/means.hpp"
#include "panharmonia/specfun.hpp"
#include "panharmonia/verify.hpp"
#include "panharmonia/wos.hpp"

using namespace panharmonia;

namespace {

constexpr std::uint64_t kSeed = 20260401;

class Log {
 public:
  explicit Log(std::ostream& out) : out_(out) {}

  // Records one sub-check; returns ok so callers can chain.
  bool check(bool ok, const std::string& what) {
    out_ << "    [" << (ok ? "ok" : "FAIL") << "] " << what << '\n';
    all_ &= ok;
    return ok;
  }
  bool all() const { return all_; }

 private:
  std::ostream& out_;
  bool all_ = true;
};

std::string sci(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << v;
  return os.str();
}

std::string fixed(double v, int digits = 10) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

// |obs - exp| <= k sigma, with a rounding floor for zero-variance estimators.
bool within_sigma(double observed, double expected, double sigma, double k = 3.0) {
  return std::abs(observed - expected) <= k * sigma + 1e-12 * std::max(1.0, std::abs(expected));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1 -------------------------------------------------------------------------

void special_functions(Log& log) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_sphere = 0.0;
  double worst_ball = 0.0;
  double worst_plane = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double t = 0.1 * k;
    worst_sphere = std::max(worst_sphere, oracle::rel_err(coeff(CoeffKind::sphere, 3, t), oracle::sphere_coeff_3d(t)));
    worst_ball = std::max(worst_ball, oracle::rel_err(coeff(CoeffKind::ball, 3, t), oracle::ball_coeff_3d(t)));
    worst_plane = std::max(worst_plane, oracle::rel_err(coeff(CoeffKind::sphere, 2, t), oracle::bessel_i0_series(t)));
  }
  log.check(worst_sphere <= 1e-12, "a°(3,t) vs sinh(t)/t on t = 0.1..10: max rel err " + sci(worst_sphere));
  log.check(worst_ball <= 1e-12, "a•(3,t) vs 3(t cosh t - sinh t)/t^3: max rel err " + sci(worst_ball));
  log.check(worst_plane <= 1e-12, "a°(2,t) vs I0 power series: max rel err " + sci(worst_plane));
  for (int m : {2, 3, 5}) {
    double worst = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double t = 0.1 * k;
      worst = std::max(worst, oracle::rel_err(poisson_integral_u(m, t), coeff(CoeffKind::sphere, m, t)));
    }
    log.check(worst <= 1e-10, "Poisson integral vs a°, m = " + std::to_string(m) + ": max rel err " + sci(worst));
  }
  const double elapsed = seconds_since(t0);
  log.check(elapsed < 1.0, "runtime " + fixed(elapsed, 3) + " s < 1 s");
}

// ---- 2 -------------------------------------------------------------------------

void identity_suite(Log& log) {
  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t stream = 0;
  for (int m : {2, 3}) {
    const Domain d = Domain::ball(m, 1.0);
    for (double mu : {0.5, 1.0, 2.0}) {
      for (const auto& f : panharmonic_catalog(m, mu)) {
        for (auto kind : {IdentityKind::sphere, IdentityKind::ball, IdentityKind::coupling, IdentityKind::iterated}) {
          QuadratureConfig q = kind == IdentityKind::iterated ? QuadratureConfig::compact() : QuadratureConfig{};
          const CheckReport r = verify_identity(kind, f, mu, d, q, 20, RngStream(kSeed, stream++));
          log.check(r.passed && r.cases.size() >= 20 && r.max_relative_residual <= 1e-8,
                    std::string(to_string(kind)) + " m=" + std::to_string(m) + " mu=" + fixed(mu, 2) + " " +
                        f.name() + ": " + std::to_string(r.cases.size()) + " configs, max residual " +
                        sci(r.max_relative_residual));
        }
      }
    }
  }
  const double elapsed = seconds_since(t0);
  log.check(elapsed < 30.0, "runtime " + fixed(elapsed, 3) + " s < 30 s");
}

// ---- 3 -------------------------------------------------------------------------

void asymptotic_limits(Log& log) {
  for (int m : {2, 3}) {
    for (double mu : {0.5, 1.0, 2.0}) {
      const ScalarField u = make_u_radial(m, mu);
      Point skew = Point::zeros(m);
      skew[0] = 0.2;
      skew[1] = -0.4;
      for (const Point& x : {Point::zeros(m), Point::on_axis(m, 0.3), skew}) {
        const double ux = oracle::sphere_coeff(m, mu * x.norm());
        for (auto kind : {MeanKind::sphere, MeanKind::volume}) {
          const double expected = mu * mu * ux / (kind == MeanKind::sphere ? 2.0 * m : 2.0 * (m + 2));
          const CheckReport r = verify_asymptotic(kind, u, mu, x);
          const double err = oracle::rel_err(r.cases[0].observed, expected);
          log.check(err <= 1e-6, std::string(kind == MeanKind::sphere ? "sphere" : "volume") +
                                     " m=" + std::to_string(m) + " mu=" + fixed(mu, 2) + " x=(" + to_string(x) +
                                     "): limit " + fixed(r.cases[0].observed, 12) + " vs " + fixed(expected, 12) +
                                     ", rel err " + sci(err));
        }
      }
    }
  }
}

// ---- 4 -------------------------------------------------------------------------

void maximum_principle(Log& log) {
  const CheckReport r = verify_max_principle(make_u_radial(3, 1.0), Domain::ball(3, 1.0), 41);
  const double interior = r.cases[0].observed;
  log.check(interior < std::sinh(1.0) && r.passed,
            "interior grid max |U| = " + fixed(interior, 12) + " < sinh(1) = " + fixed(std::sinh(1.0), 12));
  log.check(std::abs(r.cases[0].expected - std::sinh(1.0)) < 1e-12,
            "sampled boundary max equals sinh(1): " + fixed(r.cases[0].expected, 12));
  std::uint64_t stream = 100;
  for (int m : {2, 3}) {
    for (const auto& f : panharmonic_catalog(m, 1.0)) {
      const CheckReport s = verify_identity(IdentityKind::subharmonic, f, 1.0, Domain::ball(m, 1.0), {}, 50,
                                            RngStream(kSeed, stream++));
      log.check(s.passed && s.hypothesis_met && s.cases.size() == 50,
                "sphere_mean >= value, m=" + std::to_string(m) + " " + f.name() + ": 50 configs, max excess " +
                    sci(s.max_relative_residual));
    }
  }
}

// ---- 5 -------------------------------------------------------------------------

void liouville_decay(Log& log) {
  for (int m : {2, 3}) {
    const double exact = oracle::sphere_coeff(m, 50.0);
    const double err = oracle::rel_err(coeff_sphere_asymptotic(m, 50.0), exact);
    log.check(err <= 1e-3, "asymptotic/exact a° at t=50, m=" + std::to_string(m) + ": rel err " + sci(err) +
                               (m == 2 ? " (first correction 1/(8t) = 2.5e-3)" : ""));
  }
  for (int m : {2, 3}) {
    const double c = std::sqrt(std::numbers::pi) / (std::tgamma(0.5 * m) * std::pow(2.0, 0.5 * (m - 3)));
    double worst = 0.0;
    for (double r = 40.0; r <= 200.0; r += 0.5) {
      worst = std::max(worst, (1 + r) * (1 + r) * std::pow(r, 0.5 * (m - 1)) * std::exp(-r) * c);
    }
    log.check(worst < 1e-6, "envelope (1+r)^2 r^((m-1)/2) e^-r C for r >= 40, m=" + std::to_string(m) + ": max " +
                                sci(worst));
  }
  const CheckReport decay = verify_liouville_decay({2, 3});
  log.check(decay.passed, "library envelope check on [40, 200]: max " + sci(decay.max_relative_residual));
}

// ---- 6 -------------------------------------------------------------------------

void detector(Log& log) {
  for (int m : {2, 3}) {
    const Domain d = Domain::ball(m, 1.0);
    for (double mu : {0.5, 1.0, 2.0}) {
      for (const auto& f : full_catalog(m, mu)) {
        DetectorConfig cfg;
        cfg.seed = kSeed;
        const Verdict v = classify(f, d, cfg);
        bool ok = v.cls == f.meta().cls;
        std::string detail = std::string(to_string(v.cls));
        if (f.meta().cls == FieldClass::panharmonic) {
          ok = ok && v.mu_hat && std::abs(*v.mu_hat - mu) <= 1e-3;
          if (v.mu_hat) detail += " mu_hat=" + fixed(*v.mu_hat, 12);
        }
        log.check(ok, "classify m=" + std::to_string(m) + " mu=" + fixed(mu, 2) + " " + f.name() + " -> " + detail);
      }
      RngStream rng(kSeed, 600 + static_cast<std::uint64_t>(m * 10 + mu * 2));
      for (const auto& f : panharmonic_catalog(m, mu)) {
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
          Point x = d.sample_interior(rng);
          double reach = std::min(d.distance_to_boundary(x), f.clearance(x.span()));
          while (reach < 0.1) {
            x = d.sample_interior(rng);
            reach = std::min(d.distance_to_boundary(x), f.clearance(x.span()));
          }
          worst = std::max(worst, std::abs(estimate_mu(f, x, 0.5 * reach) - mu));
        }
        log.check(worst <= 1e-3, "mu recovery at 5 random points, m=" + std::to_string(m) + " mu=" + fixed(mu, 2) +
                                     " " + f.name() + ": max error " + sci(worst));
      }
    }
  }
  for (int m : {2, 3}) {
    for (const auto& f : panharmonic_catalog(m, 1.0)) {
      const CheckReport wrong =
          panharmonic_score(f, 2.0, Domain::ball(m, 1.0), 5, 6, {}, RngStream(kSeed, 700));
      log.check(!wrong.passed && wrong.max_relative_residual >= 1e-3,
                "wrong mu = 2 for " + f.name() + " (mu = 1), m=" + std::to_string(m) + ": ratio variation " +
                    sci(wrong.max_relative_residual));
    }
  }
  const CheckReport example =
      panharmonic_score(make_u_radial(3, 1.0), 2.0, Domain::ball(3, 2.0), 5, 6, {}, RngStream(kSeed, 701));
  log.check(example.max_relative_residual >= 1e-3,
            "U (mu=1) on ball(0,2) tested at mu=2: ratio variation " + sci(example.max_relative_residual));
}

// ---- 7 -------------------------------------------------------------------------

void riesz(Log& log) {
  const Domain b = Domain::ball(3, 1.0);
  const ScalarField u = make_u_radial(3, 1.0);
  const RieszHarmonicPart h(u, 1.0, b);
  const double cosh1 = std::cosh(1.0);
  std::vector<Point> probes;
  for (int k = 0; k < 10; ++k) {
    const double r = 0.1 * k + 0.05;
    Point p = Point::zeros(3);
    p[static_cast<std::size_t>(k % 3)] = r;
    probes.push_back(p);
    const double value = h(p.span());
    log.check(std::abs(value - cosh1) <= 1e-6 && value >= u(p),
              "h at |x| = " + fixed(r, 3) + ": " + fixed(value, 14) + " (cosh 1 = " + fixed(cosh1, 14) +
                  "), U = " + fixed(u(p), 10));
  }
  const CheckReport r = riesz_harmonic_part(u, 1.0, b, probes);
  double laplacian = 0.0;
  for (const auto& c : r.cases) {
    if (c.inputs.find("laplacian") != std::string::npos) laplacian = std::max(laplacian, std::abs(c.observed));
  }
  log.check(r.passed, "library report (nonnegative, majorant, mean value, discrete Laplacian): max residual " +
                          sci(r.max_relative_residual));
  log.check(laplacian <= 1e-6, "max |discrete Laplacian of h| " + sci(laplacian));
}

// ---- 8 -------------------------------------------------------------------------

const std::vector<Point>& kugel_probes() {
  static const std::vector<Point> probes{Point{2.0, 0.0, 0.0}, Point{0.0, -1.5, 0.5}, Point{0.3, 0.4, -1.8}};
  return probes;
}

Domain kugel_ellipsoid() { return Domain::ellipsoid({1.2, 1.0 / 1.2, 1.0}); }

struct KugelRun {
  MeanEstimate ball_delta;
  MeanEstimate ellipsoid_delta;
  CheckReport ball_fundamental;
  CheckReport ellipsoid_fundamental;
};

KugelRun kugel_run() {
  const long long n = 1'000'000;
  return {kugel_discrepancy(Domain::ball(3, 1.0), 1.0, n, RngStream(kSeed, 800)),
          kugel_discrepancy(kugel_ellipsoid(), 1.0, n, RngStream(kSeed, 801)),
          kugel_fundamental_check(Domain::ball(3, 1.0), 1.0, Point::zeros(3), kugel_probes(), n, RngStream(kSeed, 802)),
          kugel_fundamental_check(kugel_ellipsoid(), 1.0, Point::zeros(3), kugel_probes(), n, RngStream(kSeed, 803))};
}

void kugel(Log& log) {
  const auto t0 = std::chrono::steady_clock::now();
  const KugelRun run = kugel_run();
  log.check(within_sigma(run.ball_delta.value, 0.0, run.ball_delta.std_error),
            "Delta(unit ball) = " + sci(run.ball_delta.value) + " +- " + sci(run.ball_delta.std_error));
  const double z = run.ellipsoid_delta.value / run.ellipsoid_delta.std_error;
  log.check(z >= 5.0, "Delta(ellipsoid 1.2, 1/1.2, 1) = " + sci(run.ellipsoid_delta.value) + " +- " +
                          sci(run.ellipsoid_delta.std_error) + " (" + fixed(z, 4) + " sigma)");
  const double a_ball = oracle::ball_coeff_3d(1.0);
  for (std::size_t i = 0; i < run.ball_fundamental.cases.size(); ++i) {
    const auto& c = run.ball_fundamental.cases[i];
    const Point& p = kugel_probes()[i % kugel_probes().size()];
    const bool decaying = i < kugel_probes().size();
    const double r = p.norm();
    const double expected = a_ball * (decaying ? std::exp(-r) : std::exp(r)) / r;
    log.check(within_sigma(c.observed, expected, c.sigma),
              "ball " + c.inputs + ": " + fixed(c.observed, 10) + " vs " + fixed(expected, 10) + " (" +
                  fixed(std::abs(c.observed - expected) / c.sigma, 3) + " sigma)");
  }
  double worst_z = 0.0;
  for (const auto& c : run.ellipsoid_fundamental.cases) worst_z = std::max(worst_z, c.residual);
  log.check(worst_z > 5.0, "ellipsoid: largest probe mismatch " + fixed(worst_z, 4) + " sigma");
  const double elapsed = seconds_since(t0);
  log.check(elapsed < 60.0, "runtime " + fixed(elapsed, 3) + " s < 60 s");
}

// ---- 9 -------------------------------------------------------------------------

struct WosCase {
  std::string name;
  ScalarField g;
  double expected;
};

std::vector<WosCase> wos_cases() {
  return {{"g = U|dB = sinh(1)", make_u_radial(3, 1.0), 1.0},
          {"g = 1", make_constant(3, 1.0), 1.0 / std::sinh(1.0)},
          {"g = E-(., (3,0,0))", make_fundamental(1.0, FundamentalSign::decaying, Point{3, 0, 0}),
           oracle::yukawa(1.0, 3.0)}};
}

struct WosRun {
  std::string label;
  double expected;
  WosEstimate estimate;
};

std::vector<WosRun> wos_run() {
  std::vector<WosRun> runs;
  const Domain b = Domain::ball(3, 1.0);
  std::uint64_t seed = kSeed + 900;
  for (const auto& c : wos_cases()) {
    for (long long walks : {100'000LL, 1'000'000LL}) {
      for (auto variant : {WosVariant::weighted, WosVariant::killing}) {
        for (double eps : {1e-3, 5e-4}) {
          if (walks == 100'000 && eps != 1e-3) continue;
          WosConfig cfg;
          cfg.walks = walks;
          cfg.variant = variant;
          cfg.epsilon_shell = eps;
          cfg.seed = seed++;
          std::ostringstream label;
          label << c.name << ", " << walks << " walks, " << to_string(variant) << ", eps " << eps;
          runs.push_back({label.str(), c.expected, wos_solve(b, c.g, 1.0, Point::zeros(3), cfg)});
        }
      }
    }
  }
  return runs;
}

void walk_on_spheres(Log& log) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<WosRun> runs = wos_run();
  for (const auto& r : runs) {
    const MeanEstimate& e = r.estimate.estimate;
    bool ok = within_sigma(e.value, r.expected, e.std_error);
    if (r.estimate.walks == 1'000'000) ok = ok && std::abs(e.value - r.expected) <= 0.01 * std::abs(r.expected);
    log.check(ok && r.estimate.max_steps_hits == 0,
              r.label + ": " + fixed(e.value, 10) + " +- " + sci(e.std_error) + " vs " + fixed(r.expected, 10));
  }
  // Pairs: runs are ordered (weighted eps, [weighted eps/2], killing eps, [killing eps/2]) per size.
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t j = i + 1; j < runs.size(); ++j) {
      const auto& a = runs[i].estimate;
      const auto& b = runs[j].estimate;
      if (a.walks != b.walks || runs[i].expected != runs[j].expected) continue;
      const double sigma = std::hypot(a.estimate.std_error, b.estimate.std_error);
      log.check(within_sigma(a.estimate.value, b.estimate.value, sigma),
                "agree within 3 combined sigma: [" + runs[i].label + "] vs [" + runs[j].label + "]");
    }
  }
  const double elapsed = seconds_since(t0);
  log.check(elapsed < 120.0, "runtime " + fixed(elapsed, 3) + " s < 120 s");
}

// ---- 10 ------------------------------------------------------------------------

// Every Monte Carlo number produced by criteria 8 and 9, plus the m >= 4 mean
// rules, flattened for bitwise comparison.
std::vector<double> monte_carlo_fingerprint() {
  std::vector<double> v;
  const KugelRun k = kugel_run();
  for (const auto* e : {&k.ball_delta, &k.ellipsoid_delta}) {
    v.push_back(e->value);
    v.push_back(e->std_error);
  }
  for (const auto* r : {&k.ball_fundamental, &k.ellipsoid_fundamental}) {
    for (const auto& c : r->cases) {
      v.push_back(c.observed);
      v.push_back(c.sigma);
    }
  }
  for (const auto& r : wos_run()) {
    v.push_back(r.estimate.estimate.value);
    v.push_back(r.estimate.estimate.std_error);
    v.push_back(r.estimate.mean_steps);
    v.push_back(static_cast<double>(r.estimate.killed));
  }
  WosConfig off_center;
  off_center.walks = 50'000;
  off_center.seed = kSeed;
  const WosEstimate w =
      wos_solve(Domain::ellipsoid({1.2, 1.0, 0.8}), make_constant(3, 1.0), 1.0, Point{0.3, 0.1, -0.2}, off_center);
  v.push_back(w.estimate.value);
  v.push_back(w.mean_steps);
  QuadratureConfig q;
  q.stream = RngStream(kSeed, 1000);
  const ScalarField u4 = make_u_radial(4, 1.0);
  v.push_back(sphere_mean(u4, Point::on_axis(4, 0.2), 0.5, q).value);
  v.push_back(ball_mean(u4, Point::on_axis(4, 0.2), 0.5, q).value);
  const CheckReport ident = verify_identity(IdentityKind::coupling, u4, 1.0, Domain::ball(4, 1.0), q, 5,
                                            RngStream(kSeed, 1001));
  v.push_back(ident.max_relative_residual);
  const CheckReport ie = verify_integral_equation(make_u_radial(3, 1.0), 1.0, Domain::ball(3, 1.0),
                                                  {Point{0.2, 0.1, 0.0}}, 200'000, RngStream(kSeed, 1002));
  v.push_back(ie.cases[0].observed);
  return v;
}

void reproducibility(Log& log) {
  std::vector<std::vector<double>> prints;
  const std::vector<const char*> workers{"1", "4", "3", "1"};
  for (const char* w : workers) {
    setenv("PANHARMONIA_THREADS", w, 1);
    prints.push_back(monte_carlo_fingerprint());
  }
  unsetenv("PANHARMONIA_THREADS");
  for (std::size_t i = 1; i < prints.size(); ++i) {
    const bool same = prints[i].size() == prints[0].size() &&
                      std::memcmp(prints[i].data(), prints[0].data(), prints[0].size() * sizeof(double)) == 0;
    log.check(same, std::to_string(prints[0].size()) + " Monte Carlo outputs bit-identical: " + workers[0] +
                        " worker vs " + workers[i] + (i == 3 ? " worker (repeat run)" : " workers"));
  }
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Log&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "special-function oracles", special_functions},
      {2, "sphere, ball, coupling and iterated identities on the catalog", identity_suite},
      {3, "asymptotic limits of the sphere and volume means", asymptotic_limits},
      {4, "maximum principle and subharmonicity", maximum_principle},
      {5, "asymptotic coefficient and Liouville decay envelope", liouville_decay},
      {6, "detector classification, mu recovery and wrong-mu rejection", detector},
      {7, "Riesz decomposition of U on the unit ball", riesz},
      {8, "ball characterization experiments", kugel},
      {9, "walk-on-spheres Dirichlet solver", walk_on_spheres},
      {10, "Monte Carlo reproducibility across worker counts", reproducibility},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > static_cast<int>(criteria().size())) {
      std::cerr << "usage: panharmonia_acceptance [1-" << criteria().size() << "]\n";
      return 2;
    }
  }
  bool all = true;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    std::ostringstream details;
    Log log(details);
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    try {
      c.run(log);
      ok = log.all();
    } catch (const std::exception& e) {
      details << "    [FAIL] exception: " << e.what() << '\n';
      ok = false;
    }
    std::cout << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << "  " << c.title << " ("
              << fixed(seconds_since(t0), 3) << " s)\n"
              << details.str() << std::flush;
    all &= ok;
  }
  return all ? 0 : 1;
}
