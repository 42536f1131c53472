// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#include "panharmonia/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "panharmonia/detector.hpp"
#include "panharmonia/errors.hpp"
#include "panharmonia/means.hpp"
#include "panharmonia/report.hpp"
#include "panharmonia/specfun.hpp"
#include "panharmonia/verify.hpp"
#include "panharmonia/wos.hpp"

#ifndef PANHARMONIA_VERSION
#define PANHARMONIA_VERSION "0.0.0"
#endif

namespace panharmonia::cli {
namespace {

using nlohmann::json;

// 17 significant digits: enough to round-trip any double.
std::string scalar(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// Doubles that may be inf in reports; JSON cannot hold them.
json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

struct Settings {
  int dim = 3;
  double mu = 1.0;
  std::uint64_t seed = 0;
  std::string report_path;

  // bessel / coeff
  double nu = 0.0;
  double z = 0.0;
  double t = 0.0;
  bool scaled = false;
  std::string kind;

  // fields, domains, points
  std::string field;
  std::string domain = "ball:1";
  std::string point;
  double radius = 0.0;
  double inner_radius = 0.0;
  long long samples = 0;

  // verify
  std::string suite = "all";
  std::string identity;
  int trials = 20;
  std::string csv_path;

  // detect
  int centers = 5;
  int radii = 6;
  double hypothesis_mu = -1.0;

  // wos
  std::string boundary;
  long long walks = 100'000;
  double eps = 1e-3;
  std::string variant = "weighted";
  long long max_steps = 10'000;
  double jump = 1.0;

  // kugel
  std::string x0;
  std::string probes;
};

struct Outcome {
  int code = kExitSuccess;
  json result;
};

Domain domain_for(const Settings& s) {
  const Domain d = parse_domain(s.domain, s.dim);
  if (d.dim() != s.dim) {
    throw DomainError("domain '" + s.domain + "' has dimension " + std::to_string(d.dim()) + " but --dim is " +
                      std::to_string(s.dim));
  }
  return d;
}

Point point_for(const std::string& text, int dim) {
  if (text.empty()) return Point::zeros(dim);
  Point p = parse_point(text);
  if (p.dim() != dim) throw DomainError("point '" + text + "' does not have dimension " + std::to_string(dim));
  return p;
}

std::vector<Point> parse_point_list(const std::string& text, int dim) {
  std::vector<Point> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (!item.empty()) out.push_back(point_for(item, dim));
  }
  if (out.empty()) throw ParseError("empty point list '" + text + "'");
  return out;
}

json reports_json(const std::vector<CheckReport>& reports) {
  json out = json::array();
  for (const auto& r : reports) out.push_back(json::parse(report_to_json(r)));
  return out;
}

void print_table(const std::vector<CheckReport>& reports, std::ostream& out) {
  out << std::left << std::setw(28) << "check_id" << std::setw(6) << "pass" << std::setw(14) << "residual"
      << std::setw(12) << "threshold" << "cases\n";
  for (const auto& r : reports) {
    out << std::left << std::setw(28) << r.check_id << std::setw(6) << (r.passed ? "yes" : "NO") << std::setw(14)
        << std::setprecision(6) << r.max_relative_residual << std::setw(12) << r.threshold << r.cases.size();
    if (!r.hypothesis_met) out << "  (hypothesis unmet)";
    out << '\n';
  }
}

bool all_passed(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) {
    if (!r.passed) return false;
  }
  return true;
}

Outcome run_bessel(const Settings& s, std::ostream& out) {
  const double twice = 2.0 * s.nu;
  if (s.nu < 0.0 || twice != std::round(twice)) throw DomainError("--nu must be a nonnegative multiple of 1/2");
  const double v = bessel_i(HalfOrder(static_cast<std::uint32_t>(twice)), s.z, s.scaled);
  out << scalar(v) << '\n';
  return {kExitSuccess, {{"value", v}}};
}

Outcome run_coeff(const Settings& s, std::ostream& out) {
  const double v = coeff(parse_coeff_kind(s.kind), s.dim, s.t, s.scaled);
  out << scalar(v) << '\n';
  return {kExitSuccess, {{"value", v}}};
}

Outcome run_mean(const Settings& s, std::ostream& out) {
  const ScalarField f = parse_field(s.field, s.dim, s.mu);
  QuadratureConfig q;
  q.stream = RngStream(s.seed, 1);
  if (s.samples > 0) q.mc_samples = s.samples;
  MeanEstimate e;
  if (s.kind == "sphere") {
    e = sphere_mean(f, point_for(s.point, s.dim), s.radius, q);
  } else if (s.kind == "ball") {
    e = ball_mean(f, point_for(s.point, s.dim), s.radius, q);
  } else if (s.kind == "iterated") {
    e = iterated_mean(f, point_for(s.point, s.dim), s.radius, s.inner_radius, q);
  } else if (s.kind == "domain") {
    e = domain_mean(f, domain_for(s), s.samples > 0 ? s.samples : 1'000'000, RngStream(s.seed, 2));
  } else {
    throw ParseError("--kind must be sphere, ball, iterated or domain");
  }
  out << scalar(e.value);
  if (!e.deterministic()) out << " +- " << scalar(e.std_error);
  out << '\n';
  return {kExitSuccess,
          {{"value", e.value},
           {"std_error", e.std_error},
           {"samples", e.samples},
           {"method", std::string(to_string(e.method))}}};
}

Outcome run_verify(const Settings& s, std::ostream& out) {
  std::vector<CheckReport> reports;
  if (!s.identity.empty()) {
    if (s.field.empty()) throw ParseError("--identity needs --field");
    QuadratureConfig q;
    q.stream = RngStream(s.seed, 1);
    reports.push_back(verify_identity(parse_identity_kind(s.identity), parse_field(s.field, s.dim, s.mu), s.mu,
                                      domain_for(s), q, s.trials, RngStream(s.seed, 2)));
  } else {
    SuiteConfig cfg;
    cfg.dim = s.dim;
    cfg.mu = s.mu;
    cfg.seed = s.seed;
    cfg.trials = s.trials;
    if (s.samples > 0) cfg.mc_samples = s.samples;
    reports = run_suite(s.suite, cfg);
  }
  print_table(reports, out);
  if (!s.csv_path.empty()) {
    std::ofstream csv(s.csv_path);
    if (!csv) throw DomainError("cannot write " + s.csv_path);
    csv << suite_csv(reports);
  }
  const bool ok = all_passed(reports);
  return {ok ? kExitSuccess : kExitCheckFailed, {{"passed", ok}, {"reports", reports_json(reports)}}};
}

Outcome run_detect(const Settings& s, std::ostream& out) {
  const ScalarField f = parse_field(s.field, s.dim, s.mu);
  const Domain d = domain_for(s);
  DetectorConfig cfg;
  cfg.centers = s.centers;
  cfg.radii_per_center = s.radii;
  cfg.seed = s.seed;
  if (s.hypothesis_mu >= 0.0) {
    const CheckReport r = panharmonic_score(f, s.hypothesis_mu, d, s.centers, s.radii, cfg.q, RngStream(s.seed, 3));
    print_table({r}, out);
    if (!r.notes.empty()) out << r.notes << '\n';
    return {r.passed ? kExitSuccess : kExitCheckFailed, json::parse(report_to_json(r))};
  }
  const Verdict v = classify(f, d, cfg);
  const std::string text = verdict_to_json(v);
  out << text << '\n';
  return {kExitSuccess, json::parse(text)};
}

Outcome run_wos(const Settings& s, std::ostream& out) {
  const Domain d = domain_for(s);
  const ScalarField g = parse_field(s.boundary, s.dim, s.mu);
  WosConfig cfg;
  cfg.epsilon_shell = s.eps;
  cfg.max_steps = s.max_steps;
  cfg.walks = s.walks;
  cfg.variant = parse_wos_variant(s.variant);
  cfg.jump_fraction = s.jump;
  cfg.seed = s.seed;
  const WosEstimate e = wos_solve(d, g, s.mu, point_for(s.point, s.dim), cfg);
  const json j = {{"value", e.estimate.value},
                  {"std_error", e.estimate.std_error},
                  {"walks", e.walks},
                  {"killed_fraction", e.killed_fraction()},
                  {"mean_steps", e.mean_steps},
                  {"max_steps_hits", e.max_steps_hits},
                  {"excluded_weight", e.excluded_weight},
                  {"warning", e.warning}};
  out << std::setprecision(17) << j.dump() << '\n';
  return {kExitSuccess, j};
}

Outcome run_kugel(const Settings& s, std::ostream& out) {
  const Domain d = domain_for(s);
  const long long n = s.samples > 0 ? s.samples : 1'000'000;
  const MeanEstimate delta = kugel_discrepancy(d, s.mu, n, RngStream(s.seed, 4));
  const double z = delta.std_error > 0.0 ? delta.value / delta.std_error : 0.0;
  json j = {{"domain", d.to_string()},
            {"matched_radius", d.matched_radius()},
            {"delta", delta.value},
            {"std_error", delta.std_error},
            {"z", number(z)},
            {"samples", delta.samples}};
  int code = kExitSuccess;
  if (!s.probes.empty()) {
    const Point x0 = s.x0.empty() ? d.center() : point_for(s.x0, s.dim);
    const CheckReport r = kugel_fundamental_check(d, s.mu, x0, parse_point_list(s.probes, s.dim), n, RngStream(s.seed, 5));
    j["fundamental"] = json::parse(report_to_json(r));
    code = r.passed ? kExitSuccess : kExitCheckFailed;
  }
  out << j.dump(2) << '\n';
  return {code, j};
}

struct Subcommand {
  CLI::App* app;
  std::function<Outcome(const Settings&, std::ostream&)> handler;
};

RunManifest collect_manifest(const CLI::App& sub, const Settings& s) {
  RunManifest m;
  m.subcommand = sub.get_name();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help") continue;
    std::string value;
    if (opt->get_type_size() == 0) {
      value = opt->count() > 0 ? "true" : "false";
    } else if (opt->count() > 0) {
      value = opt->results().front();
    } else {
      value = opt->get_default_str();
    }
    m.parameters[name] = value;
  }
  m.seed = s.seed;
  m.tool_version = PANHARMONIA_VERSION;
  m.timestamp = utc_timestamp();
  return m;
}

json manifest_json(const RunManifest& m) {
  return {{"subcommand", m.subcommand},
          {"parameters", m.parameters},
          {"seed", m.seed},
          {"tool_version", m.tool_version},
          {"timestamp", m.timestamp}};
}

}  // namespace

std::string manifest_to_json(const RunManifest& manifest) { return manifest_json(manifest).dump(2); }

RunManifest manifest_from_report(std::string_view report_json) {
  try {
    const json j = json::parse(report_json).at("manifest");
    RunManifest m;
    m.subcommand = j.at("subcommand").get<std::string>();
    m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.timestamp = j.at("timestamp").get<std::string>();
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report manifest: ") + e.what());
  }
}

std::vector<std::string> manifest_to_argv(const RunManifest& manifest, const std::string& report_path) {
  std::vector<std::string> argv{manifest.subcommand};
  for (const auto& [name, value] : manifest.parameters) {
    const std::string v = name == "report" && !report_path.empty() ? report_path : value;
    if (v.empty()) continue;
    argv.push_back("--" + name + "=" + v);
  }
  return argv;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Mean value calculus of panharmonic functions (modified Helmholtz equation)", "panharmonia"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", PANHARMONIA_VERSION);

  std::vector<Subcommand> subs;
  auto common = [&](CLI::App* sub, bool stochastic) {
    sub->add_option("--dim", s.dim, "Space dimension m");
    sub->add_option("--report", s.report_path, "Write a JSON report with its run manifest here");
    if (stochastic) sub->add_option("--seed", s.seed, "Master seed");
  };

  auto* bessel = app.add_subcommand("bessel", "Modified Bessel function I_nu(z) for half-integer nu");
  bessel->add_option("--nu", s.nu, "Order (multiple of 1/2)")->required();
  bessel->add_option("--z", s.z, "Argument")->required();
  bessel->add_flag("--scaled", s.scaled, "Return exp(-z) I_nu(z)");
  bessel->add_option("--report", s.report_path, "Write a JSON report with its run manifest here");
  subs.push_back({bessel, run_bessel});

  auto* coeff_cmd = app.add_subcommand("coeff", "Mean value coefficients a°, a• and their ratio");
  coeff_cmd->add_option("--kind", s.kind, "sphere | ball | ratio")->required();
  coeff_cmd->add_option("--t", s.t, "Argument mu r")->required();
  coeff_cmd->add_flag("--scaled", s.scaled, "Multiply by exp(-t)");
  common(coeff_cmd, false);
  subs.push_back({coeff_cmd, run_coeff});

  auto* mean = app.add_subcommand("mean", "Sphere, ball, iterated or domain mean of a catalog field");
  mean->add_option("--field", s.field, "Field id")->required();
  mean->add_option("--kind", s.kind, "sphere | ball | iterated | domain")->required();
  mean->add_option("--mu", s.mu, "Field parameter");
  mean->add_option("--point", s.point, "Center x as c1,c2,...");
  mean->add_option("--radius", s.radius, "Radius (outer radius for iterated)");
  mean->add_option("--inner-radius", s.inner_radius, "Inner radius for iterated");
  mean->add_option("--domain", s.domain, "Domain for --kind domain");
  mean->add_option("--samples", s.samples, "Monte Carlo samples");
  common(mean, true);
  subs.push_back({mean, run_mean});

  auto* verify = app.add_subcommand("verify", "Run mean value identity checks");
  verify->add_option("--suite", s.suite, "Check id or 'all'");
  verify->add_option("--identity", s.identity, "Single identity on --field instead of the suite");
  verify->add_option("--field", s.field, "Field id for --identity");
  verify->add_option("--domain", s.domain, "Domain for --identity");
  verify->add_option("--mu", s.mu, "Parameter mu");
  verify->add_option("--trials", s.trials, "Random configurations per field");
  verify->add_option("--samples", s.samples, "Monte Carlo samples for the stochastic checks");
  verify->add_option("--csv", s.csv_path, "Write a CSV summary here");
  common(verify, true);
  subs.push_back({verify, run_verify});

  auto* detect = app.add_subcommand("detect", "Classify a field as panharmonic, harmonic or neither");
  detect->add_option("--field", s.field, "Field id")->required();
  detect->add_option("--mu", s.mu, "Parameter used to build the field");
  detect->add_option("--domain", s.domain, "Domain");
  detect->add_option("--centers", s.centers, "Number of centers");
  detect->add_option("--radii", s.radii, "Radii per center");
  detect->add_option("--hypothesis-mu", s.hypothesis_mu, "Only score the ratio test at this mu");
  common(detect, true);
  subs.push_back({detect, run_detect});

  auto* wos = app.add_subcommand("wos", "Walk-on-spheres Dirichlet solver");
  wos->add_option("--boundary", s.boundary, "Boundary data field id")->required();
  wos->add_option("--domain", s.domain, "Domain");
  wos->add_option("--mu", s.mu, "Parameter mu");
  wos->add_option("--point", s.point, "Evaluation point");
  wos->add_option("--walks", s.walks, "Number of walks");
  wos->add_option("--eps", s.eps, "Shell width as a fraction of the diameter");
  wos->add_option("--variant", s.variant, "weighted | killing");
  wos->add_option("--max-steps", s.max_steps, "Step cap per walk");
  wos->add_option("--jump", s.jump, "Jump radius as a fraction of the boundary distance");
  common(wos, true);
  subs.push_back({wos, run_wos});

  auto* kugel = app.add_subcommand("kugel", "Ball characterization experiments");
  kugel->add_option("--domain", s.domain, "Domain");
  kugel->add_option("--mu", s.mu, "Parameter mu");
  kugel->add_option("--samples", s.samples, "Monte Carlo samples");
  kugel->add_option("--probes", s.probes, "Exterior points p1;p2;... for the fundamental solution check");
  kugel->add_option("--x0", s.x0, "Interior point for the fundamental solution check");
  common(kugel, true);
  subs.push_back({kugel, run_kugel});

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  for (const auto& [sub, handler] : subs) {
    if (!sub->parsed()) continue;
    try {
      const Outcome outcome = handler(s, out);
      if (!s.report_path.empty()) {
        const json report = {{"manifest", manifest_json(collect_manifest(*sub, s))}, {"result", outcome.result}};
        std::ofstream file(s.report_path);
        if (!file) throw DomainError("cannot write " + s.report_path);
        file << report.dump(2) << '\n';
      }
      return outcome.code;
    } catch (const std::invalid_argument& e) {  // ParseError
      err << "error: " << e.what() << '\n';
    } catch (const std::domain_error& e) {
      err << "error: " << e.what() << '\n';
    } catch (const std::overflow_error& e) {
      err << "error: " << e.what() << '\n';
    } catch (const SingularityError& e) {
      err << "error: " << e.what() << '\n';
    } catch (const UnsupportedError& e) {
      err << "error: unsupported: " << e.what() << '\n';
    }
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace panharmonia::cli
