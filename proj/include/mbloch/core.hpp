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

#ifndef MBLOCH_CORE_HPP
#define MBLOCH_CORE_HPP

// Phase space, vector field and Hamilton-Poisson structure of the real
// five-component Maxwell-Bloch system
//
//   x1' = y1,  y1' = x1 z,  x2' = y2,  y2' = x2 z,  z' = -(x1 y1 + x2 y2).
//
// Component order is (x1, y1, x2, y2, z) everywhere; every 5-vector and
// 5x5 matrix in the library uses it.

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mbloch/errors.hpp"

namespace mbloch {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

/// A point of the 5D phase space.
struct State5 {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;
  double z = 0.0;

  [[nodiscard]] Vec5 vec() const { return Vec5{x1, y1, x2, y2, z}; }

  [[nodiscard]] static State5 from(const Vec5& v) {
    return {v[0], v[1], v[2], v[3], v[4]};
  }

  [[nodiscard]] bool finite() const {
    return std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2) &&
           std::isfinite(y2) && std::isfinite(z);
  }

  [[nodiscard]] double norm() const { return vec().norm(); }

  friend bool operator==(const State5&, const State5&) = default;
};

/// Complex form: X = x1 + i x2 (field), Y = y1 + i y2 (polarizability),
/// Z = z (occupation-number difference).
struct ComplexState {
  std::complex<double> X;
  std::complex<double> Y;
  double Z = 0.0;

  friend bool operator==(const ComplexState&, const ComplexState&) = default;
};

struct ConservedTriple {
  double H = 0.0;
  double I = 0.0;
  double C = 0.0;
};

namespace detail {

inline void require_finite(const State5& p, const char* where) {
  if (!p.finite()) {
    throw domain_error(std::string(where) + ": non-finite state component");
  }
}

inline void require_finite(const Vec5& v, const char* where) {
  if (!v.allFinite()) {
    throw domain_error(std::string(where) + ": non-finite gradient component");
  }
}

inline State5 field_unchecked(const State5& p) {
  return {p.y1, p.x1 * p.z, p.y2, p.x2 * p.z, -(p.x1 * p.y1 + p.x2 * p.y2)};
}

} // namespace detail

/// Right-hand side of the Maxwell-Bloch system.
inline State5 vector_field(const State5& p) {
  detail::require_finite(p, "vector_field");
  return detail::field_unchecked(p);
}

/// The Poisson tensor J(p). Only the strict upper triangle is stored as data;
/// the lower triangle is its exact negative.
class PoissonMatrix {
public:
  explicit PoissonMatrix(const State5& p) {
    detail::require_finite(p, "poisson_tensor");
    m_.setZero();
    set(0, 1, 1.0);
    set(1, 4, p.x1);
    set(2, 3, 1.0);
    set(3, 4, p.x2);
  }

  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  [[nodiscard]] const Mat5& matrix() const { return m_; }

  [[nodiscard]] Vec5 apply(const Vec5& v) const { return m_ * v; }

private:
  void set(Eigen::Index i, Eigen::Index j, double v) {
    m_(i, j) = v;
    m_(j, i) = -v;
  }

  Mat5 m_;
};

inline PoissonMatrix poisson_tensor(const State5& p) { return PoissonMatrix(p); }

inline ConservedTriple conserved(const State5& p) {
  return {0.5 * (p.y1 * p.y1 + p.y2 * p.y2 + p.z * p.z),
          p.x2 * p.y1 - p.x1 * p.y2,
          0.5 * (p.x1 * p.x1 + p.x2 * p.x2) + p.z};
}

// Hand-differentiated gradients.
inline Vec5 grad_H(const State5& p) { return Vec5{0.0, p.y1, 0.0, p.y2, p.z}; }
inline Vec5 grad_I(const State5& p) { return Vec5{-p.y2, p.x2, p.y1, -p.x1, 0.0}; }
inline Vec5 grad_C(const State5& p) { return Vec5{p.x1, 0.0, p.x2, 0.0, 1.0}; }

/// {F, G}(p) = gradF(p)^T J(p) gradG(p).
///
/// Summed over the strict upper triangle as J_ij (a_i b_j - a_j b_i), so
/// {F, F} is exactly zero for any F.
template <class GradF, class GradG>
double poisson_bracket(GradF&& gradF, GradG&& gradG, const State5& p) {
  detail::require_finite(p, "poisson_bracket");
  const Vec5 a = gradF(p);
  const Vec5 b = gradG(p);
  detail::require_finite(a, "poisson_bracket");
  detail::require_finite(b, "poisson_bracket");
  const PoissonMatrix J(p);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < 5; ++i) {
    for (Eigen::Index j = i + 1; j < 5; ++j) {
      const double jij = J.matrix()(i, j);
      if (jij != 0.0) sum += jij * (a[i] * b[j] - a[j] * b[i]);
    }
  }
  return sum;
}

inline State5 to_real(const ComplexState& q) {
  return {q.X.real(), q.Y.real(), q.X.imag(), q.Y.imag(), q.Z};
}

inline ComplexState to_complex(const State5& p) {
  return {{p.x1, p.x2}, {p.y1, p.y2}, p.z};
}

/// Time-stamped samples with their conserved values.
class Trajectory {
public:
  void push_back(double t, const State5& p) {
    if (!times_.empty() && !(t > times_.back())) {
      throw domain_error("Trajectory: sample times must be strictly increasing");
    }
    times_.push_back(t);
    states_.push_back(p);
    conserved_.push_back(mbloch::conserved(p));
  }

  [[nodiscard]] std::size_t size() const { return times_.size(); }
  [[nodiscard]] bool empty() const { return times_.empty(); }

  [[nodiscard]] const std::vector<double>& times() const { return times_; }
  [[nodiscard]] const std::vector<State5>& states() const { return states_; }
  [[nodiscard]] const std::vector<ConservedTriple>& conserved() const {
    return conserved_;
  }

  [[nodiscard]] double back_time() const { return times_.back(); }
  [[nodiscard]] const State5& back_state() const { return states_.back(); }

private:
  std::vector<double> times_;
  std::vector<State5> states_;
  std::vector<ConservedTriple> conserved_;
};

} // namespace mbloch

#endif // MBLOCH_CORE_HPP
