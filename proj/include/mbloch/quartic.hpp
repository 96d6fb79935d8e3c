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

#ifndef MBLOCH_QUARTIC_HPP
#define MBLOCH_QUARTIC_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>

#include "mbloch/errors.hpp"

namespace mbloch {

using Mat4 = Eigen::Matrix4d;
using cplx = std::complex<double>;
using QuarticRoots = std::array<cplx, 4>;

/// Monic quartic t^4 + c3 t^3 + c2 t^2 + c1 t + c0.
struct QuarticPoly {
  double c3 = 0.0;
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  [[nodiscard]] bool biquadratic() const { return c3 == 0.0 && c1 == 0.0; }

  [[nodiscard]] cplx operator()(cplx t) const {
    return (((t + c3) * t + c2) * t + c1) * t + c0;
  }

  [[nodiscard]] cplx derivative(cplx t) const {
    return ((4.0 * t + 3.0 * c3) * t + 2.0 * c2) * t + c1;
  }

  /// Builds the monic polynomial with the given roots.
  static QuarticPoly from_roots(const QuarticRoots& r) {
    // Expand prod (t - r_i); imaginary parts cancel for conjugate-closed sets.
    std::array<cplx, 5> a{1.0, 0.0, 0.0, 0.0, 0.0}; // a[k] multiplies t^(4-k)
    int deg = 0;
    for (const cplx& root : r) {
      for (int k = deg + 1; k >= 1; --k) a[k] -= root * a[k - 1];
      ++deg;
    }
    return {a[1].real(), a[2].real(), a[3].real(), a[4].real()};
  }
};

/// Characteristic polynomial det(t I - M) by the Faddeev-LeVerrier recursion.
inline QuarticPoly char_poly(const Mat4& m) {
  std::array<double, 5> c{}; // c[k] multiplies t^(4-k)
  c[0] = 1.0;
  Mat4 mk = Mat4::Zero();
  for (int k = 1; k <= 4; ++k) {
    mk = m * mk + c[k - 1] * Mat4::Identity();
    c[k] = -(m * mk).trace() / k;
  }
  return {c[1], c[2], c[3], c[4]};
}

namespace detail {

// Roots of s^2 + b s + c; a discriminant within rounding of zero is snapped
// to zero so exact double roots stay double.
inline std::array<cplx, 2> quadratic_roots(double b, double c) {
  double disc = b * b - 4.0 * c;
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                       (b * b + 4.0 * std::abs(c));
  if (std::abs(disc) <= noise) disc = 0.0;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    if (q == 0.0) return {cplx{0.0, 0.0}, cplx{0.0, 0.0}};
    return {cplx{q, 0.0}, cplx{c / q, 0.0}};
  }
  const double re = -0.5 * b;
  const double im = 0.5 * std::sqrt(-disc);
  return {cplx{re, im}, cplx{re, -im}};
}

inline void sort_roots(QuarticRoots& r) {
  std::sort(r.begin(), r.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

inline QuarticRoots biquadratic_roots(const QuarticPoly& q) {
  const auto s = quadratic_roots(q.c2, q.c0);
  QuarticRoots r;
  if (s[0].imag() != 0.0) {
    const cplx w = std::sqrt(s[0].imag() > 0.0 ? s[0] : s[1]);
    r = {w, std::conj(w), -w, -std::conj(w)};
  } else {
    std::size_t k = 0;
    for (const cplx& si : s) {
      const double v = si.real();
      if (v >= 0.0) {
        const double w = std::sqrt(v);
        r[k++] = {w, 0.0};
        r[k++] = {-w, 0.0};
      } else {
        const double w = std::sqrt(-v);
        r[k++] = {0.0, w};
        r[k++] = {0.0, -w};
      }
    }
  }
  sort_roots(r);
  return r;
}

inline QuarticRoots general_roots(const QuarticPoly& q) {
  Mat4 companion = Mat4::Zero();
  companion(0, 0) = -q.c3;
  companion(0, 1) = -q.c2;
  companion(0, 2) = -q.c1;
  companion(0, 3) = -q.c0;
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  companion(3, 2) = 1.0;
  Eigen::EigenSolver<Mat4> es(companion, false);
  QuarticRoots r;
  for (int i = 0; i < 4; ++i) {
    cplx t = es.eigenvalues()[i];
    // Newton polish; skipped near multiple roots where f' vanishes.
    for (int it = 0; it < 3; ++it) {
      const cplx d = q.derivative(t);
      if (std::abs(d) < 1e-8 * (1.0 + std::abs(t))) break;
      const cplx step = q(t) / d;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      t -= step;
    }
    r[static_cast<std::size_t>(i)] = t;
  }

  // Restore exact conjugate symmetry.
  std::sort(r.begin(), r.end(),
            [](const cplx& a, const cplx& b) { return a.imag() > b.imag(); });
  auto is_real = [](const cplx& z) {
    return std::abs(z.imag()) <= 1e-10 * (1.0 + std::abs(z));
  };
  QuarticRoots out;
  std::size_t n_real = 0;
  for (const cplx& z : r) n_real += is_real(z) ? 1 : 0;
  if (n_real == 4) {
    for (std::size_t i = 0; i < 4; ++i) out[i] = {r[i].real(), 0.0};
  } else if (n_real == 2) {
    const cplx u = 0.5 * (r[0] + std::conj(r[3]));
    out = {u, std::conj(u), cplx{r[1].real(), 0.0}, cplx{r[2].real(), 0.0}};
  } else {
    const cplx u = 0.5 * (r[0] + std::conj(r[3]));
    const cplx v = 0.5 * (r[1] + std::conj(r[2]));
    out = {u, std::conj(u), v, std::conj(v)};
  }
  sort_roots(out);
  return out;
}

} // namespace detail

/// All four complex roots of a monic real quartic, with conjugate roots
/// carrying bit-exactly negated imaginary parts. Biquadratic inputs are
/// solved through s = t^2; everything else goes through the companion
/// matrix.
inline QuarticRoots quartic_roots(const QuarticPoly& q) {
  if (!std::isfinite(q.c3) || !std::isfinite(q.c2) || !std::isfinite(q.c1) ||
      !std::isfinite(q.c0)) {
    throw domain_error("quartic_roots: non-finite coefficient");
  }
  return q.biquadratic() ? detail::biquadratic_roots(q) : detail::general_roots(q);
}

} // namespace mbloch

#endif // MBLOCH_QUARTIC_HPP
