// Copyright 2026 The mbloch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// mbloch: simulate, classify and verify the five-component Maxwell-Bloch
// system from the command line.
//
// Exit codes: 0 success, 1 numerical or verification failure, 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mbloch/mbloch.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace mbloch;

constexpr int kOk = 0;
constexpr int kNumericFailure = 1;
constexpr int kUsage = 2;

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

json to_json(const DriftReport& d) {
  return {{"max_abs_dH", num(d.max_abs_dH)},
          {"max_abs_dI", num(d.max_abs_dI)},
          {"max_abs_dC", num(d.max_abs_dC)}};
}

json to_json(const State5& p) {
  return json::array({num(p.x1), num(p.y1), num(p.x2), num(p.y2), num(p.z)});
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<double> parse_list(const std::string& s, std::size_t n, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(io::parse_double(item));
  if (out.size() != n) {
    throw CLI::ValidationError(flag, "expected " + std::to_string(n) + " comma-separated numbers");
  }
  for (double v : out) {
    if (!std::isfinite(v)) throw CLI::ValidationError(flag, "non-finite value");
  }
  return out;
}

const auto Finite = CLI::Validator(
    [](const std::string& s) -> std::string {
      try {
        return std::isfinite(io::parse_double(s)) ? "" : "value must be finite";
      } catch (const std::exception&) {
        return "not a number: " + s;
      }
    },
    "FINITE");

const auto Positive = CLI::Validator(
    [](const std::string& s) -> std::string {
      try {
        const double v = io::parse_double(s);
        return std::isfinite(v) && v > 0.0 ? "" : "value must be positive";
      } catch (const std::exception&) {
        return "not a number: " + s;
      }
    },
    "POSITIVE");

const auto NonZero = CLI::Validator(
    [](const std::string& s) -> std::string {
      try {
        const double v = io::parse_double(s);
        return std::isfinite(v) && v != 0.0 ? "" : "value must be finite and nonzero";
      } catch (const std::exception&) {
        return "not a number: " + s;
      }
    },
    "NONZERO");

std::optional<std::ofstream> open_out(const std::string& path) {
  if (path.empty()) return std::nullopt;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  return os;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  State5 p0;
  double t_end = 10.0;
  double dt = 1e-3;
  double tol = 1e-10;
  std::string method = "rk45";
  int stride = 1;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
  IntegratorConfig cfg = a.method == "rk4" ? IntegratorConfig::rk4(a.dt, a.t_end)
                                           : IntegratorConfig::rk45(a.tol, a.t_end);
  cfg.sample_stride = a.stride;
  auto os = open_out(a.out);
  try {
    const Trajectory traj = integrate(a.p0, cfg);
    if (os) io::write_csv(*os, traj);
    print({{"status", "ok"},
           {"method", a.method},
           {"samples", traj.size()},
           {"t_end", num(traj.back_time())},
           {"drift", to_json(drift_report(traj))}});
    return kOk;
  } catch (const integration_error& e) {
    if (os) io::write_csv(*os, e.partial());
    print({{"status", "error"},
           {"method", a.method},
           {"samples", e.partial().size()},
           {"error",
            {{"kind", to_string(e.failure().kind)},
             {"time", num(e.failure().time)},
             {"message", e.failure().message}}},
           {"drift", to_json(drift_report(e.partial()))}});
    return kNumericFailure;
  }
}

// --- classify ---------------------------------------------------------------

struct ClassifyArgs {
  double c = 0.0;
  double box = 2.0;
  int grid = 21;
};

int cmd_classify(const ClassifyArgs& a) {
  const State5 e{0.0, 0.0, 0.0, 0.0, a.c};
  const ClassificationResult r = cartan_classify(e, a.c);
  json roots = json::array();
  for (const cplx& z : r.roots) roots.push_back(json::array({num(z.real()), num(z.imag())}));

  json out{{"c", num(a.c)},
           {"kind", to_string(r.kind)},
           {"alpha", num(r.alpha)},
           {"roots", roots},
           {"A", num(r.A)},
           {"B", num(r.B)},
           {"discriminant", num(r.discriminant)},
           {"stable", to_string(r.stable)}};

  if (r.kind == CartanKind::Degenerate) {
    const StabilityCertificate cert = origin_stability_certificate(a.box, a.grid);
    json levels = json::array();
    for (const auto& lv : cert.levels) {
      levels.push_back({{"epsilon", num(lv.epsilon)},
                        {"admitted", lv.admitted},
                        {"max_norm", num(lv.max_norm)},
                        {"chain_bound", num(lv.chain_bound)}});
    }
    out["stable"] = cert.unique_solution ? "stable" : "not-determined";
    out["certificate"] = {{"box_half_width", num(a.box)},
                          {"grid_n", a.grid},
                          {"unique_solution", cert.unique_solution},
                          {"worst_offender",
                           cert.worst_offender ? to_json(*cert.worst_offender) : json(nullptr)},
                          {"levels", levels}};
  }
  print(out);
  return kOk;
}

// --- closed-form orbits -----------------------------------------------------

struct HomoclinicArgs {
  double c = 1.0;
  double theta0 = 0.0;
  std::string sign = "+";
  double t_min = -10.0;
  double t_max = 10.0;
  double dt = 0.01;
  std::string out;
};

std::vector<double> time_grid(double t0, double t1, double dt) {
  const auto n = static_cast<long>(std::ceil((t1 - t0) / dt * (1.0 - 1e-14)));
  std::vector<double> ts;
  for (long k = 0; k < n; ++k) ts.push_back(t0 + static_cast<double>(k) * dt);
  ts.push_back(t1);
  return ts;
}

int cmd_homoclinic(const HomoclinicArgs& a) {
  const HomoclinicParams prm{a.c, a.theta0, a.sign == "+" ? 1 : -1};
  auto os = open_out(a.out);
  if (os) *os << io::csv_header << '\n';
  double residual = 0.0;
  double deviation = 0.0;
  std::size_t rows = 0;
  for (double t : time_grid(a.t_min, a.t_max, a.dt)) {
    const State5 p = homoclinic(prm, t);
    if (os) io::write_row(*os, t, p);
    ++rows;
    residual = std::max(residual, (homoclinic_derivative(prm, t).vec() - vector_field(p).vec())
                                      .lpNorm<Eigen::Infinity>());
    const ConservedTriple k = conserved(p);
    deviation = std::max({deviation, std::abs(k.H - 0.5 * a.c * a.c), std::abs(k.I),
                          std::abs(k.C - a.c)});
  }
  const double tol = 1e-10 * (1.0 + a.c * a.c);
  const bool passed = residual < tol && deviation < tol;
  print({{"family", "homoclinic"},
         {"rows", rows},
         {"max_ode_residual", num(residual)},
         {"max_conserved_deviation", num(deviation)},
         {"expected_conserved", {{"H", num(0.5 * a.c * a.c)}, {"I", 0.0}, {"C", num(a.c)}}},
         {"tolerance", num(tol)},
         {"passed", passed}});
  return passed ? kOk : kNumericFailure;
}

struct PeriodicArgs {
  double x1 = 0.0;
  double y1 = 1.0;
  double x2 = 1.0;
  std::optional<double> t_max;
  double dt = 0.01;
  std::string out;
};

int cmd_periodic(const PeriodicArgs& a) {
  const PeriodicParams prm{a.x1, a.y1, a.x2};
  const double t_max = a.t_max.value_or(prm.period());
  const double w = prm.omega();
  const double f1 = a.x1 * a.x1 + a.x2 * a.x2;
  const ConservedTriple k0 = conserved(periodic_solution(prm, 0.0));
  auto os = open_out(a.out);
  if (os) *os << io::csv_header << '\n';
  double residual = 0.0;
  double deviation = 0.0;
  std::size_t rows = 0;
  for (double t : time_grid(0.0, t_max, a.dt)) {
    const State5 p = periodic_solution(prm, t);
    if (os) io::write_row(*os, t, p);
    ++rows;
    residual = std::max(residual, (periodic_derivative(prm, t).vec() - vector_field(p).vec())
                                      .lpNorm<Eigen::Infinity>());
    const ConservedTriple k = conserved(p);
    deviation = std::max({deviation, std::abs(k.H - k0.H), std::abs(k.I - k0.I),
                          std::abs(k.C - k0.C)});
  }
  const double tol = 1e-12 * (1.0 + w * w) * (1.0 + f1);
  const bool passed = residual < tol && deviation < tol;
  const PunctureSchedule sched = puncture_times(prm);
  print({{"family", "periodic"},
         {"rows", rows},
         {"omega", num(w)},
         {"period", num(prm.period())},
         {"vartheta", num(sched.vartheta)},
         {"punctures_in_range", sched.count_in(0.0, t_max)},
         {"max_ode_residual", num(residual)},
         {"max_conserved_deviation", num(deviation)},
         {"tolerance", num(tol)},
         {"passed", passed}});
  return passed ? kOk : kNumericFailure;
}

// --- invariant sets ---------------------------------------------------------

int cmd_rank(const std::string& point) {
  const auto v = parse_list(point, 5, "--point");
  const State5 p{v[0], v[1], v[2], v[3], v[4]};
  const RankReport r = rank_F(p);
  print({{"point", to_json(p)},
         {"singular_values", json::array({num(r.singular_values[0]), num(r.singular_values[1]),
                                          num(r.singular_values[2])})},
         {"rank", r.rank},
         {"tol_used", num(r.tol_used)},
         {"in_M1", m1_membership(p, 1e-9)},
         {"in_M2", m2_membership(p, 1e-9)}});
  return kOk;
}

struct ProbeArgs {
  std::string m1;
  double t_end = 20.0;
  double tol = 1e-10;
};

int cmd_probe(const ProbeArgs& a) {
  const auto v = parse_list(a.m1, 3, "--m1");
  if (v[2] == 0.0) throw CLI::ValidationError("--m1", "x2 must be nonzero");
  const M1Point q0{v[0], v[1], v[2]};
  const ProbeReport rep = invariance_probe(q0, a.t_end, IntegratorConfig::rk45(a.tol, a.t_end));
  long predicted = 0;
  if (q0.y1 != 0.0) predicted = puncture_times(PeriodicParams{q0.x1, q0.y1, q0.x2}).count_in(0.0, a.t_end);
  const bool passed = rep.max_distance_to_union < 1e-6 && rep.puncture_count == predicted;
  print({{"m1", json::array({num(q0.x1), num(q0.y1), num(q0.x2)})},
         {"t_end", num(a.t_end)},
         {"samples", rep.samples},
         {"max_distance_to_union", num(rep.max_distance_to_union)},
         {"puncture_count", rep.puncture_count},
         {"predicted_punctures", predicted},
         {"passed", passed}});
  return passed ? kOk : kNumericFailure;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(std::uint64_t seed, const std::string& level) {
  verify::Options o;
  o.seed = seed;
  o.full = level == "full";
  const auto results = verify::run_all(o);
  bool all = true;
  json checks = json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    checks.push_back({{"name", r.name},
                      {"passed", r.passed},
                      {"worst", num(r.worst)},
                      {"bound", num(r.bound)}});
  }
  print({{"seed", seed}, {"level", level}, {"passed", all}, {"checks", checks}});
  return all ? kOk : kNumericFailure;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maxwell-Bloch system: simulation, stability and special solutions"};
  app.require_subcommand(1);

  int rc = kOk;

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Integrate the system and report conserved-quantity drift");
  simulate->add_option("--x1", sim.p0.x1)->check(Finite);
  simulate->add_option("--y1", sim.p0.y1)->check(Finite);
  simulate->add_option("--x2", sim.p0.x2)->check(Finite);
  simulate->add_option("--y2", sim.p0.y2)->check(Finite);
  simulate->add_option("--z", sim.p0.z)->check(Finite);
  simulate->add_option("--t-end", sim.t_end, "Final time")->check(Positive);
  simulate->add_option("--dt", sim.dt, "RK4 step")->check(Positive);
  simulate->add_option("--tol", sim.tol, "RK45 absolute and relative tolerance")->check(Positive);
  simulate->add_option("--method", sim.method)->check(CLI::IsMember({"rk4", "rk45"}));
  simulate->add_option("--stride", sim.stride, "Record every k-th step")->check(CLI::PositiveNumber);
  simulate->add_option("--out", sim.out, "Trajectory CSV path");
  simulate->callback([&] { rc = cmd_simulate(sim); });

  ClassifyArgs cls;
  auto* classify = app.add_subcommand("classify", "Classify the equilibrium (0,0,0,0,c) on its leaf");
  classify->add_option("--c", cls.c, "Leaf parameter")->required()->check(Finite);
  classify->add_option("--box", cls.box, "Certificate box half-width (c = 0)")->check(Positive);
  classify->add_option("--grid", cls.grid, "Certificate points per axis (c = 0)")->check(CLI::Range(3, 61));
  classify->callback([&] { rc = cmd_classify(cls); });

  HomoclinicArgs hom;
  auto* homo = app.add_subcommand("homoclinic", "Sample the closed-form homoclinic orbit");
  homo->add_option("--c", hom.c, "Leaf parameter (> 0)")->check(Positive);
  homo->add_option("--theta0", hom.theta0, "Angle in radians")->check(Finite);
  homo->add_option("--sign", hom.sign, "Branch: + or -")->check(CLI::IsMember({"+", "-"}));
  homo->add_option("--t-min", hom.t_min)->check(Finite);
  homo->add_option("--t-max", hom.t_max)->check(Finite);
  homo->add_option("--dt", hom.dt)->check(Positive);
  homo->add_option("--out", hom.out, "Orbit CSV path");
  homo->callback([&] {
    if (!(hom.t_max > hom.t_min)) throw CLI::ValidationError("--t-max", "must exceed --t-min");
    rc = cmd_homoclinic(hom);
  });

  PeriodicArgs per;
  auto* periodic = app.add_subcommand("periodic", "Sample the closed-form periodic orbit");
  periodic->add_option("--x1", per.x1)->check(Finite);
  periodic->add_option("--y1", per.y1, "Nonzero")->check(NonZero);
  periodic->add_option("--x2", per.x2, "Nonzero")->check(NonZero);
  periodic->add_option("--t-max", per.t_max, "Defaults to one period")->check(Positive);
  periodic->add_option("--dt", per.dt)->check(Positive);
  periodic->add_option("--out", per.out, "Orbit CSV path");
  periodic->callback([&] { rc = cmd_periodic(per); });

  std::string point;
  auto* rank = app.add_subcommand("rank", "Rank of the Jacobian of (H, I, C) at a point");
  rank->add_option("--point", point, "x1,y1,x2,y2,z")->required();
  rank->callback([&] { rc = cmd_rank(point); });

  ProbeArgs prb;
  auto* probe = app.add_subcommand("invariant-probe", "Integrate from an M1 point and track M1 u M2 membership");
  probe->add_option("--m1", prb.m1, "x1,y1,x2 with x2 != 0")->required();
  probe->add_option("--t-end", prb.t_end)->check(Positive);
  probe->add_option("--tol", prb.tol)->check(Positive);
  probe->callback([&] { rc = cmd_probe(prb); });

  std::uint64_t seed = 42;
  std::string level = "quick";
  auto* ver = app.add_subcommand("verify", "Run the property suites");
  ver->add_option("--seed", seed);
  ver->add_option("--level", level)->check(CLI::IsMember({"quick", "full"}));
  ver->callback([&] { rc = cmd_verify(seed, level); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const mbloch::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
  return rc;
}
