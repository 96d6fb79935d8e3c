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

#ifndef MBLOCH_SOLUTIONS_HPP
#define MBLOCH_SOLUTIONS_HPP

// Closed-form special solutions: the polar chart around (0,0,0,0,c), the
// homoclinic family of the focus-focus equilibria (c > 0) and the periodic
// family living on M1 u M2.

#include <cmath>
#include <numbers>

#include "mbloch/core.hpp"
#include "mbloch/errors.hpp"
#include "mbloch/invariant_sets.hpp"

namespace mbloch {

inline double wrap_two_pi(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(a, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

// --- polar chart -----------------------------------------------------------

/// Chart coordinates around (0,0,0,0,c): x1 = r1 cos(theta),
/// x2 = r1 sin(theta), z = c - r1^2 / 2.
struct PolarState {
  double r1 = 0.0;
  double theta = 0.0;
  double y1 = 0.0;
  double y2 = 0.0;
  double c = 0.0;
};

inline State5 polar_to_state(const PolarState& q) {
  if (!(q.r1 > 0.0) || !std::isfinite(q.r1)) {
    throw domain_error("polar_to_state: r1 must be positive");
  }
  return {q.r1 * std::cos(q.theta), q.y1, q.r1 * std::sin(q.theta), q.y2,
          q.c - 0.5 * q.r1 * q.r1};
}

inline PolarState state_to_polar(const State5& p, double c) {
  detail::require_finite(p, "state_to_polar");
  if (p.x1 == 0.0 && p.x2 == 0.0) throw domain_error("state_to_polar: chart excludes x1 = x2 = 0");
  if (std::abs(conserved(p).C - c) > 1e-10 * (1.0 + std::abs(c))) {
    throw domain_error("state_to_polar: point is not on the leaf C = c");
  }
  return {std::hypot(p.x1, p.x2), wrap_two_pi(std::atan2(p.x2, p.x1)), p.y1, p.y2, c};
}

struct PolarField {
  double dr1 = 0.0;
  double dtheta = 0.0;
  double dy1 = 0.0;
  double dy2 = 0.0;
};

/// The Maxwell-Bloch flow on the leaf O_c in polar chart coordinates.
inline PolarField reduced_polar_field(const PolarState& q) {
  if (q.r1 == 0.0) throw singularity_error("reduced_polar_field: r1 = 0");
  const double cs = std::cos(q.theta);
  const double sn = std::sin(q.theta);
  const double z = q.c - 0.5 * q.r1 * q.r1;
  return {q.y1 * cs + q.y2 * sn, (q.y2 * cs - q.y1 * sn) / q.r1, q.r1 * cs * z,
          q.r1 * sn * z};
}

// --- homoclinic family ----------------------------------------------------

struct HomoclinicParams {
  double c = 1.0;
  double theta0 = 0.0;
  int sign = 1;

  void validate() const {
    if (!(c > 0.0) || !std::isfinite(c)) throw domain_error("homoclinic: c must be positive");
    if (!std::isfinite(theta0)) throw domain_error("homoclinic: theta0 must be finite");
    if (sign != 1 && sign != -1) throw domain_error("homoclinic: sign must be +1 or -1");
  }
};

namespace detail {

// sech and tanh that stay accurate (and finite) for large |u|.
inline double sech(double u) {
  const double e = std::exp(-std::abs(u));
  return 2.0 * e / (1.0 + e * e);
}

} // namespace detail

inline State5 homoclinic(const HomoclinicParams& prm, double t) {
  prm.validate();
  const double k = std::sqrt(prm.c);
  const double s = detail::sech(k * t);
  const double th = std::tanh(k * t);
  const double sg = prm.sign;
  const double amp = sg * 2.0 * k * s;
  const double vel = -sg * 2.0 * prm.c * s * th;
  return {amp * std::cos(prm.theta0), vel * std::cos(prm.theta0), amp * std::sin(prm.theta0),
          vel * std::sin(prm.theta0), prm.c * (1.0 - 2.0 * s * s)};
}

/// Analytic time derivative of homoclinic(); uses sech' = -sech tanh and
/// tanh' = sech^2.
inline State5 homoclinic_derivative(const HomoclinicParams& prm, double t) {
  prm.validate();
  const double k = std::sqrt(prm.c);
  const double s = detail::sech(k * t);
  const double th = std::tanh(k * t);
  const double sg = prm.sign;
  const double damp = -sg * 2.0 * prm.c * s * th;
  const double dvel = -sg * 2.0 * prm.c * k * s * (s * s - th * th);
  return {damp * std::cos(prm.theta0), dvel * std::cos(prm.theta0),
          damp * std::sin(prm.theta0), dvel * std::sin(prm.theta0),
          4.0 * prm.c * k * s * s * th};
}

struct RadialProfile {
  double r1 = 0.0;
  double r1_dot = 0.0;
  double r1_ddot = 0.0;
};

/// r1(t) = 2 sqrt(c) sech(sqrt(c) t), the solution of
/// r1'' = r1 (c - r1^2 / 2) that decays at both ends.
inline RadialProfile second_order_profile(double c, double t) {
  if (!(c > 0.0) || !std::isfinite(c)) throw domain_error("second_order_profile: c must be positive");
  const double k = std::sqrt(c);
  const double s = detail::sech(k * t);
  const double th = std::tanh(k * t);
  return {2.0 * k * s, -2.0 * c * s * th, 2.0 * c * k * s * (th * th - s * s)};
}

// --- periodic family ------------------------------------------------------

struct PeriodicParams {
  double x1_0 = 0.0;
  double y1_0 = 1.0;
  double x2_0 = 1.0;

  void validate() const {
    if (!std::isfinite(x1_0) || !std::isfinite(y1_0) || !std::isfinite(x2_0)) {
      throw domain_error("periodic: non-finite parameter");
    }
    if (x2_0 == 0.0) throw domain_error("periodic: x2_0 must be nonzero");
    if (y1_0 == 0.0) throw domain_error("periodic: y1_0 must be nonzero");
  }

  [[nodiscard]] double omega() const { return y1_0 / x2_0; }
  [[nodiscard]] double period() const { return 2.0 * std::numbers::pi / std::abs(omega()); }
  [[nodiscard]] M1Point m1_start() const { return {x1_0, y1_0, x2_0}; }
};

inline State5 periodic_solution(const PeriodicParams& prm, double t) {
  prm.validate();
  const double w = prm.omega();
  const double sn = std::sin(w * t);
  const double cs = std::cos(w * t);
  return {prm.x2_0 * sn + prm.x1_0 * cs, -w * (prm.x1_0 * sn - prm.x2_0 * cs),
          -prm.x1_0 * sn + prm.x2_0 * cs, -w * (prm.x2_0 * sn + prm.x1_0 * cs), -w * w};
}

inline State5 periodic_derivative(const PeriodicParams& prm, double t) {
  prm.validate();
  const double w = prm.omega();
  const double sn = std::sin(w * t);
  const double cs = std::cos(w * t);
  return {w * (prm.x2_0 * cs - prm.x1_0 * sn), -w * w * (prm.x1_0 * cs + prm.x2_0 * sn),
          -w * (prm.x1_0 * cs + prm.x2_0 * sn), -w * w * (prm.x2_0 * cs - prm.x1_0 * sn), 0.0};
}

/// (x1, y1, x2) components of the periodic orbit, i.e. the solution of the
/// restricted M1 dynamics.
inline M1Point m1_solution(const PeriodicParams& prm, double t) {
  const State5 p = periodic_solution(prm, t);
  return {p.x1, p.y1, p.x2};
}

/// Times t_k = (x2_0 / y1_0)(vartheta + k pi) at which the orbit leaves M1
/// (x2 = y1 = 0) and crosses M2.
struct PunctureSchedule {
  double vartheta = 0.0;
  double scale = 1.0; // x2_0 / y1_0

  [[nodiscard]] double t(long k) const {
    return scale * vartheta + static_cast<double>(k) * std::numbers::pi * scale;
  }

  /// Number of puncture times in the half-open interval (a, b].
  [[nodiscard]] long count_in(double a, double b) const {
    const double step = std::abs(scale) * std::numbers::pi;
    const double base = scale * vartheta;
    return static_cast<long>(std::floor((b - base) / step) - std::floor((a - base) / step));
  }
};

inline PunctureSchedule puncture_times(const PeriodicParams& prm) {
  prm.validate();
  const double r = std::hypot(prm.x1_0, prm.x2_0);
  return {wrap_two_pi(std::atan2(prm.x2_0 / r, prm.x1_0 / r)), prm.x2_0 / prm.y1_0};
}

} // namespace mbloch

#endif // MBLOCH_SOLUTIONS_HPP
