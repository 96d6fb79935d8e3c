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

#ifndef MBLOCH_INTEGRATE_HPP
#define MBLOCH_INTEGRATE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mbloch/core.hpp"
#include "mbloch/errors.hpp"

namespace mbloch {

template <int N>
using VecN = Eigen::Matrix<double, N, 1>;

enum class Method { rk4_fixed, rk45_adaptive };

struct IntegratorConfig {
  Method method = Method::rk45_adaptive;
  double dt = 1e-3; // rk4 step
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double dt_initial = 1e-3;
  double dt_min = 1e-12;
  double dt_max = 1.0;
  double t_start = 0.0;
  double t_end = 1.0;
  int sample_stride = 1;

  static IntegratorConfig rk4(double dt, double t_end) {
    IntegratorConfig cfg;
    cfg.method = Method::rk4_fixed;
    cfg.dt = dt;
    cfg.t_end = t_end;
    return cfg;
  }

  static IntegratorConfig rk45(double tol, double t_end) {
    IntegratorConfig cfg;
    cfg.method = Method::rk45_adaptive;
    cfg.abs_tol = tol;
    cfg.rel_tol = tol;
    cfg.t_end = t_end;
    return cfg;
  }

  void validate() const {
    auto fail = [](const std::string& what) {
      throw domain_error("IntegratorConfig: " + what);
    };
    if (!std::isfinite(t_start) || !std::isfinite(t_end)) fail("non-finite time bounds");
    if (!(t_end > t_start)) fail("t_end must exceed t_start");
    if (sample_stride < 1) fail("sample_stride must be positive");
    if (method == Method::rk4_fixed) {
      if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt must be positive");
    } else {
      if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) fail("tolerances must be positive");
      if (!(dt_min > 0.0)) fail("dt_min must be positive");
      if (!(dt_min <= dt_initial && dt_initial <= dt_max)) {
        fail("require dt_min <= dt_initial <= dt_max");
      }
    }
  }
};

enum class FailureKind { stalled, overflow };

inline const char* to_string(FailureKind k) {
  return k == FailureKind::stalled ? "integration-stalled" : "overflow";
}

struct Failure {
  FailureKind kind;
  double time;
  std::string message;
};

/// Samples from a generic integration run. On failure `failure` is set and
/// the samples hold everything accepted before it; no sample is non-finite.
template <int N>
struct RunResult {
  std::vector<double> times;
  std::vector<VecN<N>> states;
  std::optional<Failure> failure;
};

/// Thrown by the State5 entry points; carries the partial trajectory.
class integration_error : public std::runtime_error {
public:
  integration_error(Failure f, Trajectory partial)
      : std::runtime_error(std::string(to_string(f.kind)) + " at t=" +
                           std::to_string(f.time) + ": " + f.message),
        failure_(std::move(f)),
        partial_(std::move(partial)) {}

  [[nodiscard]] const Failure& failure() const { return failure_; }
  [[nodiscard]] const Trajectory& partial() const { return partial_; }

private:
  Failure failure_;
  Trajectory partial_;
};

namespace detail {

template <int N, class Field>
std::optional<VecN<N>> rk4_step_impl(Field& f, const VecN<N>& y, double h) {
  const VecN<N> k1 = f(y);
  if (!k1.allFinite()) return std::nullopt;
  const VecN<N> k2 = f(VecN<N>(y + 0.5 * h * k1));
  if (!k2.allFinite()) return std::nullopt;
  const VecN<N> k3 = f(VecN<N>(y + 0.5 * h * k2));
  if (!k3.allFinite()) return std::nullopt;
  const VecN<N> k4 = f(VecN<N>(y + h * k3));
  if (!k4.allFinite()) return std::nullopt;
  VecN<N> out = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!out.allFinite()) return std::nullopt;
  return out;
}

// Dormand-Prince 5(4) tableau.
struct DP54 {
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                          a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                          a65 = -5103.0 / 18656.0;
  static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0,
                          b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                          b6 = 11.0 / 84.0;
  // Difference between the 5th-order weights and the embedded 4th-order ones.
  static constexpr double e1 = b1 - 5179.0 / 57600.0, e3 = b3 - 7571.0 / 16695.0,
                          e4 = b4 - 393.0 / 640.0, e5 = b5 - (-92097.0 / 339200.0),
                          e6 = b6 - 187.0 / 2100.0, e7 = -1.0 / 40.0;
};

template <int N>
struct DPStep {
  VecN<N> y;
  VecN<N> err;
  VecN<N> k7;
};

template <int N, class Field>
std::optional<DPStep<N>> dp54_step(Field& f, const VecN<N>& y, const VecN<N>& k1,
                                   double h) {
  using T = DP54;
  const VecN<N> k2 = f(VecN<N>(y + h * T::a21 * k1));
  if (!k2.allFinite()) return std::nullopt;
  const VecN<N> k3 = f(VecN<N>(y + h * (T::a31 * k1 + T::a32 * k2)));
  if (!k3.allFinite()) return std::nullopt;
  const VecN<N> k4 = f(VecN<N>(y + h * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3)));
  if (!k4.allFinite()) return std::nullopt;
  const VecN<N> k5 = f(VecN<N>(
      y + h * (T::a51 * k1 + T::a52 * k2 + T::a53 * k3 + T::a54 * k4)));
  if (!k5.allFinite()) return std::nullopt;
  const VecN<N> k6 = f(VecN<N>(y + h * (T::a61 * k1 + T::a62 * k2 + T::a63 * k3 +
                                         T::a64 * k4 + T::a65 * k5)));
  if (!k6.allFinite()) return std::nullopt;
  DPStep<N> s;
  s.y = y + h * (T::b1 * k1 + T::b3 * k3 + T::b4 * k4 + T::b5 * k5 + T::b6 * k6);
  if (!s.y.allFinite()) return std::nullopt;
  s.k7 = f(s.y);
  if (!s.k7.allFinite()) return std::nullopt;
  s.err = h * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 + T::e6 * k6 +
               T::e7 * s.k7);
  return s;
}

template <int N>
class Recorder {
public:
  Recorder(RunResult<N>& out, int stride) : out_(out), stride_(stride) {}

  void first(double t, const VecN<N>& y) {
    out_.times.push_back(t);
    out_.states.push_back(y);
  }

  void accepted(double t, const VecN<N>& y, bool last) {
    ++count_;
    if (last || count_ % stride_ == 0) {
      out_.times.push_back(t);
      out_.states.push_back(y);
    }
  }

private:
  RunResult<N>& out_;
  int stride_;
  long long count_ = 0;
};

} // namespace detail

/// Integrates y' = field(y) over [cfg.t_start, cfg.t_end]. The final step is
/// shortened so the last sample lands exactly on t_end.
template <int N, class Field>
RunResult<N> integrate_field(Field field, const VecN<N>& y0,
                             const IntegratorConfig& cfg) {
  cfg.validate();
  RunResult<N> out;
  if (!y0.allFinite()) throw domain_error("integrate: non-finite initial state");
  detail::Recorder<N> rec(out, cfg.sample_stride);
  rec.first(cfg.t_start, y0);

  const double t0 = cfg.t_start;
  const double span = cfg.t_end - cfg.t_start;

  if (cfg.method == Method::rk4_fixed) {
    const auto n = static_cast<long long>(std::ceil(span / cfg.dt * (1.0 - 1e-14)));
    VecN<N> y = y0;
    for (long long k = 0; k < n; ++k) {
      const double t = t0 + static_cast<double>(k) * cfg.dt;
      const bool last = (k + 1 == n);
      const double t_next = last ? cfg.t_end : t0 + static_cast<double>(k + 1) * cfg.dt;
      auto next = detail::rk4_step_impl<N>(field, y, t_next - t);
      if (!next) {
        out.failure = Failure{FailureKind::overflow, t, "non-finite Runge-Kutta stage"};
        return out;
      }
      y = *next;
      rec.accepted(t_next, y, last);
    }
    return out;
  }

  VecN<N> y = y0;
  VecN<N> k1 = field(y);
  if (!k1.allFinite()) {
    out.failure = Failure{FailureKind::overflow, t0, "non-finite field at start"};
    return out;
  }
  double t = t0;
  double h = std::min(cfg.dt_initial, cfg.dt_max);
  constexpr double safety = 0.9;
  constexpr double grow_min = 0.2;
  constexpr double grow_max = 5.0;

  while (t < cfg.t_end) {
    const double remaining = cfg.t_end - t;
    // Absorb a sliver-sized remainder into this step.
    const bool last = h * (1.0 + 1e-8) >= remaining;
    const double step = last ? remaining : h;

    auto s = detail::dp54_step<N>(field, y, k1, step);
    if (!s) {
      // Treat a blown-up stage like a rejected step first; only give up once
      // the step cannot shrink further.
      h = step * grow_min;
      if (h < cfg.dt_min) {
        out.failure = Failure{FailureKind::overflow, t, "non-finite Runge-Kutta stage"};
        return out;
      }
      continue;
    }

    const double scale =
        cfg.abs_tol + cfg.rel_tol * std::max(y.template lpNorm<Eigen::Infinity>(),
                                             s->y.template lpNorm<Eigen::Infinity>());
    const double err = s->err.template lpNorm<Eigen::Infinity>() / scale;
    const double factor =
        err == 0.0 ? grow_max
                   : std::clamp(safety * std::pow(err, -0.2), grow_min, grow_max);

    if (err <= 1.0) {
      t = last ? cfg.t_end : t + step;
      y = s->y;
      k1 = s->k7;
      rec.accepted(t, y, last);
      if (last) break;
      h = std::min(step * factor, cfg.dt_max);
    } else {
      h = step * factor;
      if (h < cfg.dt_min) {
        out.failure = Failure{FailureKind::stalled, t,
                              "step size fell below dt_min"};
        return out;
      }
    }
  }
  return out;
}

namespace detail {

inline VecN<5> mb_field(const VecN<5>& v) {
  return detail::field_unchecked(State5::from(v)).vec();
}

inline Trajectory to_trajectory(const RunResult<5>& r) {
  Trajectory traj;
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    traj.push_back(r.times[i], State5::from(r.states[i]));
  }
  return traj;
}

} // namespace detail

/// One classical Runge-Kutta step of the Maxwell-Bloch field. `t` is only
/// used to label an overflow failure.
inline State5 rk4_step(const State5& p, double h, double t = 0.0) {
  detail::require_finite(p, "rk4_step");
  if (h == 0.0 || !std::isfinite(h)) throw domain_error("rk4_step: h must be finite and nonzero");
  auto f = detail::mb_field;
  auto next = detail::rk4_step_impl<5>(f, p.vec(), h);
  if (!next) {
    Trajectory partial;
    partial.push_back(t, p);
    throw integration_error(
        Failure{FailureKind::overflow, t, "non-finite Runge-Kutta stage"},
        std::move(partial));
  }
  return State5::from(*next);
}

/// Integrates the Maxwell-Bloch system. Throws integration_error (with the
/// partial trajectory) on overflow or step-size underflow.
inline Trajectory integrate(const State5& p0, const IntegratorConfig& cfg) {
  detail::require_finite(p0, "integrate");
  auto r = integrate_field<5>(detail::mb_field, p0.vec(), cfg);
  Trajectory traj = detail::to_trajectory(r);
  if (r.failure) throw integration_error(*r.failure, std::move(traj));
  return traj;
}

struct DriftReport {
  double max_abs_dH = 0.0;
  double max_abs_dI = 0.0;
  double max_abs_dC = 0.0;

  [[nodiscard]] double max() const {
    return std::max({max_abs_dH, max_abs_dI, max_abs_dC});
  }
};

inline DriftReport drift_report(const Trajectory& traj) {
  if (traj.empty()) throw domain_error("drift_report: empty trajectory");
  const auto& cs = traj.conserved();
  const ConservedTriple& c0 = cs.front();
  DriftReport d;
  for (const auto& c : cs) {
    d.max_abs_dH = std::max(d.max_abs_dH, std::abs(c.H - c0.H));
    d.max_abs_dI = std::max(d.max_abs_dI, std::abs(c.I - c0.I));
    d.max_abs_dC = std::max(d.max_abs_dC, std::abs(c.C - c0.C));
  }
  return d;
}

} // namespace mbloch

#endif // MBLOCH_INTEGRATE_HPP
