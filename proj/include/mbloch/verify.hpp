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

#ifndef MBLOCH_VERIFY_HPP
#define MBLOCH_VERIFY_HPP

// Self-verification suites behind `mbloch verify`. Each check is seeded
// independently from (seed, check name), so results do not depend on the
// order or concurrency with which checks run.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mbloch/core.hpp"
#include "mbloch/equilibria.hpp"
#include "mbloch/integrate.hpp"
#include "mbloch/invariant_sets.hpp"
#include "mbloch/quartic.hpp"
#include "mbloch/solutions.hpp"

namespace mbloch::verify {

struct Options {
  std::uint64_t seed = 42;
  bool full = false;

  [[nodiscard]] int samples(int requested) const { return full ? requested : std::min(requested, 100); }
  [[nodiscard]] double t_end(double requested) const {
    return full ? requested : std::min(requested, 10.0);
  }
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0; // largest observed value of the checked quantity
  double bound = 0.0; // threshold it is compared against
};

/// Platform-independent uniform doubles from a 64-bit Mersenne twister.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  State5 point(double half_width) {
    State5 p;
    p.x1 = uniform(-half_width, half_width);
    p.y1 = uniform(-half_width, half_width);
    p.x2 = uniform(-half_width, half_width);
    p.y2 = uniform(-half_width, half_width);
    p.z = uniform(-half_width, half_width);
    return p;
  }

  /// Uniform in the cube, rejected to the ball of the given radius.
  State5 point_in_ball(double radius) {
    for (;;) {
      const State5 p = point(radius);
      if (p.norm() <= radius) return p;
    }
  }

private:
  std::mt19937_64 gen_;
};

inline std::uint64_t check_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 1469598103934665603ULL; // FNV-1a
  for (char ch : name) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ULL;
  }
  return h ^ (seed * 0x9E3779B97F4A7C15ULL);
}

/// F(p) = p^T Q p / 2 + b^T p with symmetric Q; H, I and C are of this form.
struct QuadraticFn {
  Mat5 Q = Mat5::Zero();
  Vec5 b = Vec5::Zero();

  [[nodiscard]] Vec5 grad(const State5& p) const { return Q * p.vec() + b; }

  static QuadraticFn hamiltonian() {
    QuadraticFn f;
    f.Q(1, 1) = f.Q(3, 3) = f.Q(4, 4) = 1.0;
    return f;
  }
  static QuadraticFn invariant_I() {
    QuadraticFn f;
    f.Q(1, 2) = f.Q(2, 1) = 1.0;
    f.Q(0, 3) = f.Q(3, 0) = -1.0;
    return f;
  }
  static QuadraticFn casimir() {
    QuadraticFn f;
    f.Q(0, 0) = f.Q(2, 2) = 1.0;
    f.b[4] = 1.0;
    return f;
  }
  static QuadraticFn random(Rng& rng) {
    QuadraticFn f;
    for (int i = 0; i < 5; ++i) {
      for (int j = i; j < 5; ++j) f.Q(i, j) = f.Q(j, i) = rng.uniform(-1.0, 1.0);
      f.b[i] = rng.uniform(-1.0, 1.0);
    }
    return f;
  }
  [[nodiscard]] double size() const { return Q.norm() + b.norm(); }
};

/// Gradient of {G, K}(p) = g^T J(p) k for quadratic G, K, including the
/// derivative of J (which depends on x1 and x2 only).
inline Vec5 bracket_gradient(const QuadraticFn& G, const QuadraticFn& K, const State5& p) {
  const Vec5 g = G.grad(p);
  const Vec5 k = K.grad(p);
  const Mat5 J = poisson_tensor(p).matrix();
  Vec5 out = G.Q * (J * k) - K.Q * (J * g);
  out[0] += g[1] * k[4] - g[4] * k[1];
  out[2] += g[3] * k[4] - g[4] * k[3];
  return out;
}

inline double jacobi_sum(const QuadraticFn& F, const QuadraticFn& G, const QuadraticFn& K,
                         const State5& p) {
  const Mat5 J = poisson_tensor(p).matrix();
  auto outer = [&](const QuadraticFn& a, const Vec5& inner_grad) {
    return a.grad(p).dot(J * inner_grad);
  };
  return outer(F, bracket_gradient(G, K, p)) + outer(G, bracket_gradient(K, F, p)) +
         outer(K, bracket_gradient(F, G, p));
}

namespace detail {

inline CheckResult finish(std::string name, double worst, double bound, bool extra = true) {
  return {std::move(name), extra && worst <= bound, worst, bound};
}

// Worst ratio |value| / scale over a set, reported against bound 1.
struct Ratio {
  double worst = 0.0;
  void add(double value, double scale) { worst = std::max(worst, std::abs(value) / scale); }
};

inline CheckResult core_antisymmetry(const Options& o) {
  Rng rng(check_seed(o.seed, "core.antisymmetry"));
  double worst = 0.0;
  for (int i = 0; i < o.samples(100); ++i) {
    const State5 p = rng.point(2.0);
    const Mat5 J = poisson_tensor(p).matrix();
    worst = std::max(worst, (J + J.transpose()).lpNorm<Eigen::Infinity>());
    const QuadraticFn f = QuadraticFn::random(rng);
    auto gf = [&](const State5& q) { return f.grad(q); };
    worst = std::max(worst, std::abs(poisson_bracket(gf, gf, p)));
  }
  return finish("core.antisymmetry", worst, 0.0);
}

inline CheckResult core_casimir_kernel(const Options& o) {
  Rng rng(check_seed(o.seed, "core.casimir_kernel"));
  Ratio r;
  for (int i = 0; i < o.samples(100); ++i) {
    const State5 p = rng.point(2.0);
    const Vec5 v = poisson_tensor(p).apply(grad_C(p));
    r.add(v.lpNorm<Eigen::Infinity>(), 1e-14 * (1.0 + p.vec().squaredNorm()));
  }
  return finish("core.casimir_kernel", r.worst, 1.0);
}

inline CheckResult core_hamilton_poisson(const Options& o) {
  Rng rng(check_seed(o.seed, "core.hamilton_poisson"));
  Ratio r;
  for (int i = 0; i < o.samples(100); ++i) {
    const State5 p = rng.point(2.0);
    const Vec5 d = vector_field(p).vec() - poisson_tensor(p).apply(grad_H(p));
    r.add(d.lpNorm<Eigen::Infinity>(), 1e-14 * (1.0 + std::pow(p.norm(), 3)));
  }
  return finish("core.hamilton_poisson", r.worst, 1.0);
}

inline CheckResult core_commuting(const Options& o) {
  Rng rng(check_seed(o.seed, "core.commuting"));
  Ratio r;
  for (int i = 0; i < o.samples(100); ++i) {
    const State5 p = rng.point(2.0);
    const double scale = 1e-14 * (1.0 + std::pow(p.norm(), 3));
    r.add(poisson_bracket(grad_H, grad_I, p), scale);
    r.add(poisson_bracket(grad_C, grad_H, p), scale);
    r.add(poisson_bracket(grad_C, grad_I, p), scale);
  }
  return finish("core.commuting", r.worst, 1.0);
}

inline CheckResult core_flow_invariants(const Options& o) {
  Rng rng(check_seed(o.seed, "core.flow_invariants"));
  Ratio r;
  for (int i = 0; i < o.samples(100); ++i) {
    const State5 p = rng.point(2.0);
    const Vec5 f = vector_field(p).vec();
    const double scale = 1e-13 * (1.0 + std::pow(p.norm(), 3));
    r.add(grad_I(p).dot(f), scale);
    r.add(grad_C(p).dot(f), scale);
    r.add(grad_H(p).dot(f), scale);
  }
  return finish("core.flow_invariants", r.worst, 1.0);
}

inline CheckResult core_jacobi(const Options& o) {
  Rng rng(check_seed(o.seed, "core.jacobi"));
  const QuadraticFn H = QuadraticFn::hamiltonian();
  const QuadraticFn I = QuadraticFn::invariant_I();
  const QuadraticFn C = QuadraticFn::casimir();
  Ratio r;
  for (int i = 0; i < o.samples(100); ++i) {
    const State5 p = rng.point(2.0);
    const double pw = std::pow(1.0 + p.norm(), 3);
    r.add(jacobi_sum(H, I, C, p), 1e-12 * pw * H.size() * I.size() * C.size());
    const QuadraticFn F = QuadraticFn::random(rng);
    const QuadraticFn G = QuadraticFn::random(rng);
    const QuadraticFn K = QuadraticFn::random(rng);
    r.add(jacobi_sum(F, G, K, p), 1e-12 * pw * F.size() * G.size() * K.size());
  }
  return finish("core.jacobi", r.worst, 1.0);
}

inline CheckResult integrate_drift(const Options& o) {
  Rng rng(check_seed(o.seed, "integrate.drift"));
  double worst = 0.0;
  const auto cfg = IntegratorConfig::rk4(1e-3, o.t_end(100.0));
  for (int i = 0; i < 20; ++i) {
    auto c = cfg;
    c.sample_stride = 100;
    const Trajectory traj = integrate(rng.point_in_ball(2.0), c);
    worst = std::max(worst, drift_report(traj).max());
  }
  return finish("integrate.drift", worst, 1e-7);
}

inline CheckResult integrate_order(const Options&) {
  const State5 p0{1.0, 1.0, 0.0, 0.0, 1.0};
  auto ref_cfg = IntegratorConfig::rk45(1e-13, 1.0);
  ref_cfg.dt_max = 1e-2;
  const State5 ref = integrate(p0, ref_cfg).back_state();
  const double e1 = (integrate(p0, IntegratorConfig::rk4(0.1, 1.0)).back_state().vec() - ref.vec()).norm();
  const double e2 = (integrate(p0, IntegratorConfig::rk4(0.05, 1.0)).back_state().vec() - ref.vec()).norm();
  const double ratio = e1 / e2;
  return {"integrate.order", ratio >= 12.0 && ratio <= 20.0, ratio, 20.0};
}

inline CheckResult integrate_time_reversal(const Options&) {
  const State5 p0{1.0, 1.0, 0.5, -0.5, 0.2};
  const auto cfg = IntegratorConfig::rk45(1e-12, 10.0);
  const State5 pT = integrate(p0, cfg).back_state();
  auto backward = [](const VecN<5>& v) -> VecN<5> { return -mbloch::detail::mb_field(v); };
  const auto back = integrate_field<5>(backward, pT.vec(), cfg);
  const double err = back.failure ? INFINITY : (back.states.back() - p0.vec()).norm();
  return finish("integrate.time_reversal", err, 1e-8);
}

inline CheckResult integrate_finite_samples(const Options& o) {
  Rng rng(check_seed(o.seed, "integrate.finite_samples"));
  bool ok = true;
  for (int i = 0; i < 10; ++i) {
    const Trajectory traj = integrate(rng.point_in_ball(2.0), IntegratorConfig::rk45(1e-10, o.t_end(20.0)));
    for (const State5& p : traj.states()) ok = ok && p.finite();
  }
  return {"integrate.finite_samples", ok, ok ? 0.0 : 1.0, 0.0};
}

inline const std::array<double, 6> kLeafGrid{-4.0, -1.0, -0.25, 0.25, 1.0, 4.0};

inline CheckResult equilibria_pencil(const Options&) {
  double worst = 0.0;
  for (double c : kLeafGrid) {
    for (double a : {0.1, 0.5, 1.0, 2.0}) {
      const QuarticPoly q = pencil_char_poly(c, a);
      const double c2 = 2 * a * a - 2 * c;
      const double c0 = (a * a + c) * (a * a + c);
      worst = std::max({worst, std::abs(q.c2 - c2) / std::max(1.0, std::abs(c2)),
                        std::abs(q.c0 - c0) / std::max(1.0, std::abs(c0)),
                        std::abs(q.c3), std::abs(q.c1)});
    }
  }
  return finish("equilibria.pencil_coefficients", worst, 1e-12);
}

inline double matched_root_error(QuarticRoots got, const QuarticRoots& want) {
  std::sort(got.begin(), got.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  double best = INFINITY;
  do {
    double e = 0.0;
    for (std::size_t i = 0; i < 4; ++i) e = std::max(e, std::abs(got[i] - want[i]));
    best = std::min(best, e);
  } while (std::next_permutation(got.begin(), got.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  }));
  return best;
}

inline QuarticRoots random_root_set(Rng& rng) {
  for (;;) {
    const int pattern = static_cast<int>(rng.uniform(0.0, 3.0));
    QuarticRoots r;
    if (pattern == 0) {
      for (auto& z : r) z = {rng.uniform(-2, 2), 0.0};
    } else if (pattern == 1) {
      const cplx u{rng.uniform(-2, 2), rng.uniform(0.05, 2)};
      r = {u, std::conj(u), cplx{rng.uniform(-2, 2), 0.0}, cplx{rng.uniform(-2, 2), 0.0}};
    } else {
      const cplx u{rng.uniform(-2, 2), rng.uniform(0.05, 2)};
      const cplx v{rng.uniform(-2, 2), rng.uniform(0.05, 2)};
      r = {u, std::conj(u), v, std::conj(v)};
    }
    double dmin = INFINITY;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) dmin = std::min(dmin, std::abs(r[i] - r[j]));
    if (dmin >= 0.1) return r;
  }
}

inline CheckResult equilibria_quartic(const Options& o) {
  Rng rng(check_seed(o.seed, "equilibria.quartic_reconstruction"));
  double worst = 0.0;
  for (int i = 0; i < o.samples(1000); ++i) {
    const QuarticRoots want = random_root_set(rng);
    worst = std::max(worst, matched_root_error(quartic_roots(QuarticPoly::from_roots(want)), want));
  }
  return finish("equilibria.quartic_reconstruction", worst, 1e-8);
}

inline CheckResult equilibria_commutator(const Options&) {
  double worst = 0.0;
  for (double c : kLeafGrid) {
    const auto lin = leaf_linearization(State5{0, 0, 0, 0, c}, c);
    const Mat4 comm = lin.matrix_H * lin.matrix_I - lin.matrix_I * lin.matrix_H;
    worst = std::max(worst, comm.lpNorm<Eigen::Infinity>());
  }
  return finish("equilibria.commutator", worst, 1e-13);
}

inline CheckResult equilibria_classification(const Options&) {
  bool ok = true;
  double worst = 0.0;
  for (double c : kLeafGrid) {
    const auto r1 = cartan_classify(State5{0, 0, 0, 0, c}, c, alpha_grid(1));
    const auto r2 = cartan_classify(State5{0, 0, 0, 0, c}, c, alpha_grid(2));
    ok = ok && r1.kind == r2.kind;
    if (c > 0) {
      ok = ok && r1.kind == CartanKind::FocusFocus && r1.discriminant && *r1.discriminant < 0.0;
      const double a = *r1.alpha;
      worst = std::max(worst, std::abs(*r1.discriminant + 16 * c * a * a) / (16 * c * a * a));
    } else {
      ok = ok && r1.kind == CartanKind::CenterCenter && std::abs(*r1.alpha) < 0.5 * std::sqrt(-c);
    }
  }
  const auto r0 = cartan_classify(State5{}, 0.0);
  ok = ok && r0.kind == CartanKind::Degenerate;
  return finish("equilibria.classification", worst, 1e-12, ok);
}

inline CheckResult solutions_homoclinic(const Options& o) {
  Ratio r;
  const int n = o.samples(1000);
  for (double c : {0.5, 1.0, 2.0}) {
    for (double th : {0.0, std::numbers::pi / 3, std::numbers::pi / 2}) {
      for (int sg : {1, -1}) {
        const HomoclinicParams prm{c, th, sg};
        const double scale = 1e-12 * (1.0 + c * c);
        for (int i = 0; i < n; ++i) {
          const double t = -10.0 + 20.0 * i / (n - 1);
          const State5 p = homoclinic(prm, t);
          r.add((homoclinic_derivative(prm, t).vec() - vector_field(p).vec()).lpNorm<Eigen::Infinity>(), scale);
          const ConservedTriple k = conserved(p);
          r.add(k.H - 0.5 * c * c, scale);
          r.add(k.I, scale);
          r.add(k.C - c, scale);
        }
      }
    }
  }
  return finish("solutions.homoclinic_identity", r.worst, 1.0);
}

inline CheckResult solutions_biasymptotics(const Options&) {
  Ratio r;
  for (double c : {0.5, 1.0, 2.0}) {
    for (double T : {1.0, 2.0, 5.0, 10.0, 20.0}) {
      for (double sgn_t : {1.0, -1.0}) {
        const HomoclinicParams prm{c, 0.7, 1};
        const double d = (homoclinic(prm, sgn_t * T).vec() - State5{0, 0, 0, 0, c}.vec()).norm();
        r.add(d, 5.0 * std::sqrt(c * (1.0 + c)) * std::exp(-std::sqrt(c) * T));
      }
    }
  }
  return finish("solutions.biasymptotics", r.worst, 1.0);
}

inline CheckResult solutions_theta(const Options& o) {
  double worst = 0.0;
  const int n = o.samples(100);
  for (double c : {0.5, 1.0, 2.0}) {
    for (double th : {0.0, 1.0, std::numbers::pi / 2, 4.0}) {
      for (int sg : {1, -1}) {
        const HomoclinicParams prm{c, th, sg};
        const double expect = wrap_two_pi(sg > 0 ? th : th + std::numbers::pi);
        for (int i = 0; i < n; ++i) {
          const double t = -10.0 + 20.0 * i / (n - 1);
          const double got = state_to_polar(homoclinic(prm, t), c).theta;
          const double d = std::abs(std::remainder(got - expect, 2 * std::numbers::pi));
          worst = std::max(worst, d);
        }
      }
    }
  }
  return finish("solutions.theta_conserved", worst, 1e-12);
}

inline CheckResult solutions_pushforward(const Options& o) {
  Rng rng(check_seed(o.seed, "solutions.polar_pushforward"));
  Ratio r;
  for (int i = 0; i < o.samples(100); ++i) {
    const PolarState q{rng.uniform(1e-6, 2.0), rng.uniform(0.0, 2 * std::numbers::pi),
                       rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const PolarField f = reduced_polar_field(q);
    const double cs = std::cos(q.theta);
    const double sn = std::sin(q.theta);
    const Vec5 pushed{cs * f.dr1 - q.r1 * sn * f.dtheta, f.dy1, sn * f.dr1 + q.r1 * cs * f.dtheta,
                      f.dy2, -q.r1 * f.dr1};
    const State5 p = polar_to_state(q);
    r.add((pushed - vector_field(p).vec()).lpNorm<Eigen::Infinity>(),
          1e-13 * (1.0 + std::pow(p.norm(), 3)));
  }
  return finish("solutions.polar_pushforward", r.worst, 1.0);
}

inline PeriodicParams random_periodic(Rng& rng) {
  auto mag = [&] { return rng.uniform(0.1, 2.0) * (rng.uniform(0, 1) < 0.5 ? -1.0 : 1.0); };
  return {rng.uniform(-2.0, 2.0), mag(), mag()};
}

inline CheckResult solutions_periodic(const Options& o) {
  Rng rng(check_seed(o.seed, "solutions.periodic"));
  Ratio r;
  for (int k = 0; k < 20; ++k) {
    const PeriodicParams prm = random_periodic(rng);
    const double w = prm.omega();
    const double f1 = prm.x1_0 * prm.x1_0 + prm.x2_0 * prm.x2_0;
    const double scale = 1e-12 * (1.0 + w * w) * (1.0 + f1);
    const int n = o.samples(1000);
    for (int i = 0; i < n; ++i) {
      const double t = prm.period() * i / (n - 1);
      const State5 p = periodic_solution(prm, t);
      r.add((periodic_derivative(prm, t).vec() - vector_field(p).vec()).lpNorm<Eigen::Infinity>(), scale);
      r.add(p.y1 - w * p.x2, scale);
      r.add(p.y2 + w * p.x1, scale);
      r.add(p.z + w * w, scale);
    }
    r.add((periodic_solution(prm, prm.period()).vec() - periodic_solution(prm, 0).vec())
              .lpNorm<Eigen::Infinity>(),
          1e-12 * (1.0 + std::abs(w)) * (1.0 + std::sqrt(f1)));
  }
  return finish("solutions.periodic_identity", r.worst, 1.0);
}

inline CheckResult invariant_rank(const Options& o) {
  Rng rng(check_seed(o.seed, "invariant_sets.rank_dichotomy"));
  bool ok = true;
  int generic = 0;
  const int n = o.samples(1000);
  while (generic < n) {
    const State5 p = rng.point(2.0);
    if (std::min(m1_defect(p), m2_defect(p)) < 1e-3) continue;
    ++generic;
    ok = ok && rank_F(p).rank == 3;
  }
  for (int i = 0; i < n; ++i) {
    M1Point q{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0.1, 2)};
    if (rng.uniform(0, 1) < 0.5) q.x2 = -q.x2;
    if (q.y1 == 0.0) continue;
    ok = ok && rank_F(m1_embed(q)).rank == 2;
    M2Point m{rng.uniform(0.1, 2), rng.uniform(-2, 2)};
    if (rng.uniform(0, 1) < 0.5) m.x1 = -m.x1;
    ok = ok && rank_F(m2_embed(m)).rank == 2;
  }
  return {"invariant_sets.rank_dichotomy", ok, ok ? 0.0 : 1.0, 0.0};
}

inline CheckResult invariant_f_conservation(const Options& o) {
  Rng rng(check_seed(o.seed, "invariant_sets.f_conservation"));
  Ratio r;
  for (int k = 0; k < o.samples(100); ++k) {
    const PeriodicParams prm = random_periodic(rng);
    const M1Conserved f0 = m1_conserved(prm.m1_start());
    for (int i = 0; i < 50; ++i) {
      const double t = rng.uniform(-20, 20);
      const M1Point q = m1_solution(prm, t);
      if (std::abs(q.x2) <= 0.1) continue;
      const M1Conserved f = m1_conserved(q);
      r.add(f.f1 - f0.f1, 1e-12 * (1.0 + f0.f1));
      r.add(f.f2 - f0.f2, 1e-11 * (1.0 + std::abs(f0.f2)));
    }
    const M1Point q{prm.x1_0, prm.y1_0, prm.x2_0};
    r.add(conserved(m1_embed(q)).I - f0.f1 * f0.f2, 1e-13 * (1.0 + std::abs(f0.f1 * f0.f2)));
  }
  return finish("invariant_sets.f_conservation", r.worst, 1.0);
}

inline CheckResult invariant_probe(const Options& o) {
  const double t_end = o.t_end(20.0);
  const PeriodicParams prm{0.0, 1.0, 1.0};
  const ProbeReport rep = invariance_probe(prm.m1_start(), t_end, IntegratorConfig::rk45(1e-10, t_end));
  const long predicted = puncture_times(prm).count_in(0.0, t_end);
  const bool ok = rep.puncture_count == predicted && rep.puncture_count >= 1;
  return finish("invariant_sets.union_invariance", rep.max_distance_to_union, 1e-6, ok);
}

} // namespace detail

/// Runs every check; the result is sorted by check name.
inline std::vector<CheckResult> run_all(const Options& o) {
  using Fn = CheckResult (*)(const Options&);
  const std::vector<std::pair<const char*, Fn>> checks{
      {"core.antisymmetry", detail::core_antisymmetry},
      {"core.casimir_kernel", detail::core_casimir_kernel},
      {"core.commuting", detail::core_commuting},
      {"core.flow_invariants", detail::core_flow_invariants},
      {"core.hamilton_poisson", detail::core_hamilton_poisson},
      {"core.jacobi", detail::core_jacobi},
      {"equilibria.classification", detail::equilibria_classification},
      {"equilibria.commutator", detail::equilibria_commutator},
      {"equilibria.pencil_coefficients", detail::equilibria_pencil},
      {"equilibria.quartic_reconstruction", detail::equilibria_quartic},
      {"integrate.drift", detail::integrate_drift},
      {"integrate.finite_samples", detail::integrate_finite_samples},
      {"integrate.order", detail::integrate_order},
      {"integrate.time_reversal", detail::integrate_time_reversal},
      {"invariant_sets.f_conservation", detail::invariant_f_conservation},
      {"invariant_sets.rank_dichotomy", detail::invariant_rank},
      {"invariant_sets.union_invariance", detail::invariant_probe},
      {"solutions.biasymptotics", detail::solutions_biasymptotics},
      {"solutions.homoclinic_identity", detail::solutions_homoclinic},
      {"solutions.periodic_identity", detail::solutions_periodic},
      {"solutions.polar_pushforward", detail::solutions_pushforward},
      {"solutions.theta_conserved", detail::solutions_theta}};

  std::vector<std::future<CheckResult>> running;
  running.reserve(checks.size());
  for (const auto& [name, fn] : checks) {
    running.push_back(std::async(std::launch::async, [name = name, fn = fn, &o] {
      try {
        return fn(o);
      } catch (const std::exception&) {
        return CheckResult{name, false, INFINITY, 0.0};
      }
    }));
  }
  std::vector<CheckResult> results;
  for (auto& f : running) results.push_back(f.get());
  std::sort(results.begin(), results.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  return results;
}

} // namespace mbloch::verify

#endif // MBLOCH_VERIFY_HPP
