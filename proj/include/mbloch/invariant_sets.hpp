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

#ifndef MBLOCH_INVARIANT_SETS_HPP
#define MBLOCH_INVARIANT_SETS_HPP

// The set where the Jacobian of F = (H, I, C) has rank 2 is invariant and
// splits as M1 u M2:
//
//   M1 = {(x1, y1, x2, -x1 y1 / x2, -y1^2 / x2^2) : x2 != 0}
//   M2 = {(x1, 0, 0, y2, -y2^2 / x1^2)            : x1 != 0}
//
// Neither piece is invariant on its own; orbits leaving M1 through x2 = 0
// cross M2.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include <Eigen/Dense>

#include "mbloch/core.hpp"
#include "mbloch/errors.hpp"
#include "mbloch/integrate.hpp"

namespace mbloch {

using Mat35 = Eigen::Matrix<double, 3, 5>;

/// Rows grad H, grad I, grad C.
inline Mat35 jacobian_F(const State5& p) {
  detail::require_finite(p, "jacobian_F");
  Mat35 j;
  j.row(0) = grad_H(p).transpose();
  j.row(1) = grad_I(p).transpose();
  j.row(2) = grad_C(p).transpose();
  return j;
}

struct RankReport {
  std::array<double, 3> singular_values{};
  int rank = 0;
  double tol_used = 0.0;
};

inline RankReport rank_F(const State5& p) {
  const Mat35 j = jacobian_F(p);
  Eigen::JacobiSVD<Mat35> svd(j);
  const auto& sv = svd.singularValues(); // descending
  RankReport r;
  for (int i = 0; i < 3; ++i) r.singular_values[static_cast<std::size_t>(i)] = sv[i];
  r.tol_used = std::max(sv[0] * 1e-10, 1e-14);
  for (double s : r.singular_values) r.rank += s > r.tol_used ? 1 : 0;
  return r;
}

struct M1Point {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
};

struct M2Point {
  double x1 = 0.0;
  double y2 = 0.0;
};

inline State5 m1_embed(const M1Point& q) {
  if (q.x2 == 0.0) throw domain_error("m1_embed: x2 must be nonzero");
  return {q.x1, q.y1, q.x2, -q.x1 * q.y1 / q.x2, -(q.y1 * q.y1) / (q.x2 * q.x2)};
}

inline State5 m2_embed(const M2Point& q) {
  if (q.x1 == 0.0) throw domain_error("m2_embed: x1 must be nonzero");
  return {q.x1, 0.0, 0.0, q.y2, -(q.y2 * q.y2) / (q.x1 * q.x1)};
}

/// Constraint residuals with cleared denominators, scaled by the degree of
/// each constraint. Zero on the closure of the respective piece.
inline double m1_defect(const State5& p) {
  const double n2 = p.vec().squaredNorm();
  const double n3 = n2 * std::sqrt(n2);
  return std::max(std::abs(p.y2 * p.x2 + p.x1 * p.y1) / (1.0 + n2),
                  std::abs(p.z * p.x2 * p.x2 + p.y1 * p.y1) / (1.0 + n3));
}

inline double m2_defect(const State5& p) {
  const double n2 = p.vec().squaredNorm();
  const double n3 = n2 * std::sqrt(n2);
  return std::max({std::abs(p.y1), std::abs(p.x2),
                   std::abs(p.z * p.x1 * p.x1 + p.y2 * p.y2) / (1.0 + n3)});
}

inline bool m1_membership(const State5& p, double tol) {
  if (!(tol > 0.0)) throw domain_error("m1_membership: tol must be positive");
  const double n2 = p.vec().squaredNorm();
  const double n3 = n2 * std::sqrt(n2);
  return std::abs(p.x2) > tol &&
         std::abs(p.y2 * p.x2 + p.x1 * p.y1) <= tol * (1.0 + n2) &&
         std::abs(p.z * p.x2 * p.x2 + p.y1 * p.y1) <= tol * (1.0 + n3);
}

inline bool m2_membership(const State5& p, double tol) {
  if (!(tol > 0.0)) throw domain_error("m2_membership: tol must be positive");
  const double n2 = p.vec().squaredNorm();
  const double n3 = n2 * std::sqrt(n2);
  return std::abs(p.x1) > tol && std::abs(p.y1) <= tol && std::abs(p.x2) <= tol &&
         std::abs(p.z * p.x1 * p.x1 + p.y2 * p.y2) <= tol * (1.0 + n3);
}

/// Restricted dynamics on M1 in the coordinates (x1, y1, x2).
inline M1Point m1_reduced_field(const M1Point& q) {
  if (q.x2 == 0.0) throw singularity_error("m1_reduced_field: x2 = 0");
  return {q.y1, -q.x1 * q.y1 * q.y1 / (q.x2 * q.x2), -q.x1 * q.y1 / q.x2};
}

struct M1Conserved {
  double f1 = 0.0; // x1^2 + x2^2
  double f2 = 0.0; // y1 / x2
};

inline M1Conserved m1_conserved(const M1Point& q) {
  if (q.x2 == 0.0) throw singularity_error("m1_conserved: x2 = 0");
  return {q.x1 * q.x1 + q.x2 * q.x2, q.y1 / q.x2};
}

struct ProbeReport {
  double max_distance_to_union = 0.0;
  int puncture_count = 0;
  std::size_t samples = 0;
};

/// Integrates the full system from m1_embed(q0) and tracks how far the
/// samples stray from M1 u M2 and how often x2 changes sign.
inline ProbeReport invariance_probe(const M1Point& q0, double t_end, IntegratorConfig cfg) {
  if (!(t_end > 0.0)) throw domain_error("invariance_probe: t_end must be positive");
  cfg.t_start = 0.0;
  cfg.t_end = t_end;
  const Trajectory traj = integrate(m1_embed(q0), cfg);
  ProbeReport rep;
  rep.samples = traj.size();
  double prev_x2 = traj.states().front().x2;
  for (const State5& p : traj.states()) {
    rep.max_distance_to_union =
        std::max(rep.max_distance_to_union, std::min(m1_defect(p), m2_defect(p)));
    if ((p.x2 > 0.0 && prev_x2 < 0.0) || (p.x2 < 0.0 && prev_x2 > 0.0)) ++rep.puncture_count;
    if (p.x2 != 0.0) prev_x2 = p.x2;
  }
  return rep;
}

} // namespace mbloch

#endif // MBLOCH_INVARIANT_SETS_HPP
