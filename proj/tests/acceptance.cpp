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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mbloch/mbloch.hpp"
#include "test_support.hpp"

using namespace mbloch;
using std::numbers::pi;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (passed) detail << "failed: ";
      else detail << "; ";
      detail << what;
      passed = false;
    }
  }
};

struct Criterion {
  const char* name;
  double time_limit_s;
  std::function<void(Outcome&)> body;
};

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

double max_abs(const Vec5& v) { return v.cwiseAbs().maxCoeff(); }

const std::vector<double> kLeafGrid{-4.0, -1.0, -0.25, 0.25, 1.0, 4.0};
const std::vector<double> kAlphaGrid{0.1, 0.5, 1.0, 2.0};

void axis_classification(Outcome& o) {
  double worst = 0.0;
  for (double c : kLeafGrid) {
    const auto r = cartan_classify({0, 0, 0, 0, c}, c);
    const bool want_ff = c > 0;
    o.require(r.kind == (want_ff ? CartanKind::FocusFocus : CartanKind::CenterCenter),
              "kind at c=" + std::to_string(c));
    o.require(r.stable == (want_ff ? Stability::unstable : Stability::stable),
              "stability at c=" + std::to_string(c));
    if (!r.alpha || !r.discriminant) {
      o.require(false, "missing alpha/discriminant");
      continue;
    }
    worst = std::max(worst, rel_err(*r.discriminant, -16 * c * *r.alpha * *r.alpha));
  }
  o.require(worst < 1e-12, "discriminant");
  o.detail << "max rel discriminant error " << worst;
}

void pencil_polynomial(Outcome& o) {
  double worst = 0.0;
  for (double c : kLeafGrid) {
    for (double a : kAlphaGrid) {
      const QuarticPoly q = pencil_char_poly(c, a);
      o.require(q.c3 == 0.0 && q.c1 == 0.0, "odd coefficients");
      worst = std::max(worst, rel_err(q.c2, 2 * a * a - 2 * c));
      worst = std::max(worst, rel_err(q.c0, (a * a + c) * (a * a + c)));
    }
  }
  o.require(worst < 1e-12, "coefficients");
  o.detail << "max rel coefficient error " << worst;
}

void leaf_matrices(Outcome& o) {
  double worst = 0.0;
  for (double c : kLeafGrid) {
    const LeafLinearization lin = leaf_linearization({0, 0, 0, 0, c}, c);
    Mat4 h;
    h << 0, 1, 0, 0,
         c, 0, 0, 0,
         0, 0, 0, 1,
         0, 0, c, 0;
    Mat4 i;
    i << 0, 0, 1, 0,
         0, 0, 0, 1,
         -1, 0, 0, 0,
         0, -1, 0, 0;
    o.require(lin.matrix_H == h, "matrix_H at c=" + std::to_string(c));
    o.require(lin.matrix_I == i, "matrix_I at c=" + std::to_string(c));

    Eigen::EigenSolver<Mat4> esi(lin.matrix_I, false);
    int plus = 0;
    for (int k = 0; k < 4; ++k) {
      const cplx z = esi.eigenvalues()[k];
      worst = std::max(worst, std::abs(std::abs(z) - 1.0) + std::abs(z.real()));
      plus += z.imag() > 0 ? 1 : 0;
    }
    o.require(plus == 2, "matrix_I eigenvalue multiplicity");

    if (c > 0) {
      Eigen::EigenSolver<Mat4> esh(lin.matrix_H, false);
      std::vector<double> re;
      for (int k = 0; k < 4; ++k) {
        worst = std::max(worst, std::abs(esh.eigenvalues()[k].imag()));
        re.push_back(esh.eigenvalues()[k].real());
      }
      std::sort(re.begin(), re.end());
      const double s = std::sqrt(c);
      for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(re[k] - (k < 2 ? -s : s)));
    }
  }
  o.require(worst < 1e-10, "eigenvalues");
  o.detail << "max eigenvalue error " << worst;
}

void origin_degenerate_stable(Outcome& o) {
  const auto r = cartan_classify({0, 0, 0, 0, 0}, 0);
  o.require(r.kind == CartanKind::Degenerate, "origin kind");
  double worst = 0.0;
  for (double a : kAlphaGrid) {
    const QuarticPoly q = pencil_char_poly(0, a);
    // (t^2 + a^2)^2 = t^4 + 2 a^2 t^2 + a^4
    worst = std::max({worst, std::abs(q.c3), std::abs(q.c1), rel_err(q.c2, 2 * a * a),
                      rel_err(q.c0, a * a * a * a)});
  }
  o.require(worst < 1e-12, "pencil at c=0");
  const StabilityCertificate cert = origin_stability_certificate(2.0, 21, {1e-2, 1e-4, 1e-6});
  o.require(cert.unique_solution, "certificate");
  o.detail << "pencil error " << worst << ", certificate levels";
  for (const auto& lv : cert.levels) o.detail << ' ' << lv.epsilon << ":" << lv.max_norm;
}

void homoclinic_identity(Outcome& o) {
  double worst_res = 0.0;
  double worst_level = 0.0;
  double worst_end = 0.0;
  for (double c : {0.5, 1.0, 2.0}) {
    const double tol = 1e-12 * (1 + c * c);
    for (double th : {0.0, pi / 3, pi / 2}) {
      for (int sign : {1, -1}) {
        const HomoclinicParams prm{c, th, sign};
        for (int k = 0; k < 1000; ++k) {
          const double t = -10.0 + 20.0 * k / 999.0;
          const State5 p = homoclinic(prm, t);
          worst_res = std::max(worst_res,
                               max_abs(homoclinic_derivative(prm, t).vec() - vector_field(p).vec()) / tol);
          const ConservedTriple kk = conserved(p);
          worst_level = std::max(worst_level,
                                 std::max({std::abs(kk.H - c * c / 2), std::abs(kk.I), std::abs(kk.C - c)}) /
                                     tol);
        }
        for (double t : {-20 / std::sqrt(c), 20 / std::sqrt(c)}) {
          worst_end = std::max(worst_end, (homoclinic(prm, t).vec() - Vec5{0, 0, 0, 0, c}).norm());
        }
      }
    }
  }
  o.require(worst_res < 1.0, "ODE residual");
  o.require(worst_level < 1.0, "level set");
  o.require(worst_end < 1e-6, "endpoint");
  o.detail << "residual/tol " << worst_res << ", level/tol " << worst_level << ", endpoint " << worst_end;
}

void homoclinic_tracking(Outcome& o) {
  const HomoclinicParams prm{1.0, 0.0, 1};
  auto cfg = IntegratorConfig::rk45(1e-10, 3.0);
  cfg.t_start = -3.0;
  const Trajectory traj = integrate(homoclinic(prm, -3.0), cfg);
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    worst = std::max(worst, (traj.states()[i].vec() - homoclinic(prm, traj.times()[i]).vec()).norm());
  }
  o.require(traj.back_time() == 3.0, "final time");
  o.require(worst < 1e-5, "tracking");
  o.detail << traj.size() << " samples, max deviation " << worst;
}

void periodic_family(Outcome& o) {
  mbloch::testing::Sampler s(7);
  double worst_res = 0.0;
  double worst_return = 0.0;
  double worst_closure = 0.0;
  for (int n = 0; n < 20; ++n) {
    const double sy = s.uniform(0, 1) < 0.5 ? -1.0 : 1.0;
    const double sx = s.uniform(0, 1) < 0.5 ? -1.0 : 1.0;
    const PeriodicParams prm{s.uniform(-2, 2), sy * s.uniform(0.1, 2), sx * s.uniform(0.1, 2)};
    const double w = prm.omega();
    const double f1 = prm.x1_0 * prm.x1_0 + prm.x2_0 * prm.x2_0;
    const double T = 2 * pi * std::abs(prm.x2_0 / prm.y1_0);
    const double tol = 1e-12 * (1 + w * w) * (1 + f1);
    for (int k = 0; k < 1000; ++k) {
      const double t = T * k / 999.0;
      const Vec5 d = periodic_derivative(prm, t).vec() - vector_field(periodic_solution(prm, t)).vec();
      worst_res = std::max(worst_res, max_abs(d) / tol);
    }
    const Vec5 p0 = periodic_solution(prm, 0).vec();
    worst_return = std::max(worst_return, max_abs(periodic_solution(prm, T).vec() - p0));
    // Long periods (small |omega|) need a tighter local tolerance to close within 1e-8.
    const Trajectory traj = integrate(State5::from(p0), IntegratorConfig::rk45(1e-12, T));
    worst_closure = std::max(worst_closure, (traj.back_state().vec() - p0).norm());
  }
  o.require(worst_res < 1.0, "residual");
  o.require(worst_return < 1e-12, "return to start");
  o.require(worst_closure < 1e-8, "numerical closure");
  o.detail << "residual/tol " << worst_res << ", return " << worst_return << ", closure " << worst_closure;
}

void conservation_drift(Outcome& o) {
  mbloch::testing::Sampler s(8);
  DriftReport worst;
  for (int n = 0; n < 20; ++n) {
    State5 p0;
    do {
      p0 = s.point(2.0);
    } while (p0.norm() > 2.0);
    auto cfg = IntegratorConfig::rk4(1e-3, 100.0);
    cfg.sample_stride = 100;
    const DriftReport d = drift_report(integrate(p0, cfg));
    worst.max_abs_dH = std::max(worst.max_abs_dH, d.max_abs_dH);
    worst.max_abs_dI = std::max(worst.max_abs_dI, d.max_abs_dI);
    worst.max_abs_dC = std::max(worst.max_abs_dC, d.max_abs_dC);
  }
  o.require(worst.max() < 1e-7, "drift");

  const State5 p0{1, 1, 0, 0, 1};
  auto ref_cfg = IntegratorConfig::rk45(1e-13, 1.0);
  ref_cfg.dt_max = 1e-2;
  const Vec5 ref = integrate(p0, ref_cfg).back_state().vec();
  const double e1 = (integrate(p0, IntegratorConfig::rk4(0.1, 1.0)).back_state().vec() - ref).norm();
  const double e2 = (integrate(p0, IntegratorConfig::rk4(0.05, 1.0)).back_state().vec() - ref).norm();
  const double factor = e1 / e2;
  o.require(factor >= 12 && factor <= 20, "order factor");
  o.detail << "drift H " << worst.max_abs_dH << " I " << worst.max_abs_dI << " C " << worst.max_abs_dC
           << ", order factor " << factor;
}

void invariant_sets(Outcome& o) {
  mbloch::testing::Sampler s(9);
  int generic = 0;
  int generic_bad = 0;
  while (generic < 1000) {
    const State5 p = s.point(2.0);
    if (std::min(m1_defect(p), m2_defect(p)) < 1e-3) continue;
    ++generic;
    generic_bad += rank_F(p).rank == 3 ? 0 : 1;
  }
  int embedded_bad = 0;
  for (int n = 0; n < 1000; ++n) {
    const double sx = s.uniform(0, 1) < 0.5 ? -1.0 : 1.0;
    const M1Point q{s.uniform(-2, 2), s.uniform(-2, 2), sx * s.uniform(0.01, 2)};
    embedded_bad += rank_F(m1_embed(q)).rank == 2 ? 0 : 1;
    const M2Point m{sx * s.uniform(0.01, 2), s.uniform(-2, 2)};
    embedded_bad += rank_F(m2_embed(m)).rank == 2 ? 0 : 1;
  }
  o.require(generic_bad == 0, "generic rank");
  o.require(embedded_bad == 0, "embedded rank");

  const ProbeReport rep = invariance_probe({0, 1, 1}, 20.0, IntegratorConfig::rk45(1e-10, 20.0));
  const long predicted = puncture_times({0, 1, 1}).count_in(0.0, 20.0);
  o.require(rep.max_distance_to_union < 1e-6, "probe defect");
  o.require(rep.puncture_count == 6 && predicted == 6, "puncture count");

  double worst_f = 0.0;
  for (int n = 0; n < 100; ++n) {
    const double sy = s.uniform(0, 1) < 0.5 ? -1.0 : 1.0;
    const PeriodicParams prm{s.uniform(-2, 2), sy * s.uniform(0.1, 2), s.uniform(0.1, 2)};
    const M1Conserved f0 = m1_conserved(prm.m1_start());
    for (int k = 0; k < 200; ++k) {
      const M1Point q = m1_solution(prm, s.uniform(-20, 20));
      if (std::abs(q.x2) <= 0.1) continue;
      const M1Conserved f = m1_conserved(q);
      worst_f = std::max({worst_f, std::abs(f.f1 - f0.f1) / (1e-12 * (1 + f0.f1)),
                          std::abs(f.f2 - f0.f2) / (1e-11 * (1 + std::abs(f0.f2)))});
    }
  }
  o.require(worst_f < 1.0, "f1/f2 conservation");
  o.detail << "generic rank-3 " << generic - generic_bad << "/" << generic << ", probe defect "
           << rep.max_distance_to_union << ", punctures " << rep.puncture_count << "/" << predicted
           << ", f/tol " << worst_f;
}

void structure(Outcome& o) {
  const verify::Options opts{2026, false};
  const char* names[] = {"core.antisymmetry", "core.casimir_kernel", "core.hamilton_poisson",
                         "core.commuting", "core.jacobi"};
  for (const auto& r : verify::run_all(opts)) {
    if (std::find_if(std::begin(names), std::end(names), [&](const char* n) { return r.name == n; }) ==
        std::end(names)) {
      continue;
    }
    o.require(r.passed, r.name);
    o.detail << r.name << "=" << r.worst << " ";
  }
}

void instability_witness(Outcome& o) {
  auto first_exit = [](double c, double t_end, double radius) {
    const State5 eq{0, 0, 0, 0, c};
    auto cfg = IntegratorConfig::rk45(1e-10, t_end);
    cfg.dt_max = 0.05;
    const Trajectory traj = integrate({1e-6, 0, 0, 0, c}, cfg);
    double max_dist = 0.0;
    double exit_time = INFINITY;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const double d = (traj.states()[i].vec() - eq.vec()).norm();
      max_dist = std::max(max_dist, d);
      if (d > radius && !std::isfinite(exit_time)) exit_time = traj.times()[i];
    }
    return std::pair{exit_time, max_dist};
  };
  const auto [t_exit, _] = first_exit(1.0, 25.0, 0.1);
  const auto [never, max_stable] = first_exit(-1.0, 100.0, 1e-4);
  o.require(t_exit < 25.0, "unstable side did not leave");
  o.require(!std::isfinite(never) && max_stable < 1e-4, "stable side left");
  o.detail << "c=1 exits 0.1 at t=" << t_exit << ", c=-1 max distance " << max_stable;
}

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"axis equilibria classification", 1.0, axis_classification},
      {"pencil characteristic polynomial", 1.0, pencil_polynomial},
      {"leaf linearization matrices", 1.0, leaf_matrices},
      {"origin degenerate and stable", 30.0, origin_degenerate_stable},
      {"homoclinic closed form", 5.0, homoclinic_identity},
      {"homoclinic numerical tracking", 5.0, homoclinic_tracking},
      {"periodic family", 10.0, periodic_family},
      {"conservation drift and order", 60.0, conservation_drift},
      {"invariant set suite", 30.0, invariant_sets},
      {"Hamilton-Poisson structure", 1.0, structure},
      {"instability witness", 10.0, instability_witness},
  };

  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < c.time_limit_s, "runtime over " + std::to_string(c.time_limit_s) + " s");
    failed += o.passed ? 0 : 1;
    std::printf("%s %2d %-34s %.3fs  %s\n", o.passed ? "PASS" : "FAIL", index, c.name, secs,
                o.detail.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
