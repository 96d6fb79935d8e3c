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

#ifndef MBLOCH_EQUILIBRIA_HPP
#define MBLOCH_EQUILIBRIA_HPP

// Equilibrium families and their stability on the symplectic leaves
// O_c = {C = c}.
//
//   E1 = {(0,0,0,0,M) : M != 0}
//   E2 = {(M,0,N,0,0) : M^2 + N^2 != 0}
//   E3 = {origin}
//
// On a leaf, E1 and E3 points are K0 (both dH and dI vanish on the leaf),
// E2 points are K1. K0 points off the origin are classified by searching
// the pencil DX_H + alpha DX_I for an element with four distinct
// eigenvalues and reading off the Cartan type from the root pattern.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mbloch/core.hpp"
#include "mbloch/errors.hpp"
#include "mbloch/quartic.hpp"

namespace mbloch {

enum class FamilyTag { E1, E2, E3 };

/// A member of one of the three equilibrium families.
class Equilibrium {
public:
  static Equilibrium e1(double M) {
    if (!(M != 0.0) || !std::isfinite(M)) throw domain_error("E1 requires finite M != 0");
    return Equilibrium(FamilyTag::E1, M, 0.0);
  }
  static Equilibrium e2(double M, double N) {
    if (!std::isfinite(M) || !std::isfinite(N) || M * M + N * N == 0.0) {
      throw domain_error("E2 requires finite (M, N) with M^2 + N^2 != 0");
    }
    return Equilibrium(FamilyTag::E2, M, N);
  }
  static Equilibrium e3() { return Equilibrium(FamilyTag::E3, 0.0, 0.0); }

  [[nodiscard]] FamilyTag tag() const { return tag_; }
  [[nodiscard]] double M() const { return M_; }
  [[nodiscard]] double N() const { return N_; }

  [[nodiscard]] State5 embed() const {
    switch (tag_) {
    case FamilyTag::E1: return {0.0, 0.0, 0.0, 0.0, M_};
    case FamilyTag::E2: return {M_, 0.0, N_, 0.0, 0.0};
    case FamilyTag::E3: break;
    }
    return {};
  }

private:
  Equilibrium(FamilyTag t, double M, double N) : tag_(t), M_(M), N_(N) {}

  FamilyTag tag_;
  double M_;
  double N_;
};

inline bool is_equilibrium(const State5& p, double tol) {
  if (!(tol > 0.0)) throw domain_error("is_equilibrium: tol must be positive");
  return vector_field(p).vec().lpNorm<Eigen::Infinity>() <= tol;
}

enum class KType { K0, K1 };

struct KSplit {
  KType kind;
  /// Tangent vector to the leaf on which dI is evaluated (zero for K0).
  Vec5 witness_vector = Vec5::Zero();
  /// dI(e)(witness_vector); nonzero exactly for K1.
  double witness_value = 0.0;
};

/// Decides whether d(I restricted to O_c) vanishes at the equilibrium.
inline KSplit k_split(const Equilibrium& e, double c) {
  const State5 p = e.embed();
  if (std::abs(conserved(p).C - c) > 1e-12) {
    throw domain_error("k_split: equilibrium does not lie on the leaf C = c");
  }
  const Vec5 dI = grad_I(p);
  const Vec5 dC = grad_C(p);
  // The leaf restriction of dI vanishes iff dI is parallel to dC.
  const Vec5 tangential = dI - (dI.dot(dC) / dC.squaredNorm()) * dC;
  if (tangential.lpNorm<Eigen::Infinity>() <= 1e-14 * (1.0 + dI.norm())) {
    return {KType::K0, Vec5::Zero(), 0.0};
  }
  Vec5 v = tangential;
  if (e.tag() == FamilyTag::E2) v = Vec5{-e.N(), e.N(), e.M(), -e.M(), 0.0};
  return {KType::K1, v, dI.dot(v)};
}

/// Linearizations of the leaf-restricted X_H and X_I flows in the Casimir
/// graph chart z = c - (x1^2 + x2^2)/2 with coordinates (x1, y1, x2, y2).
struct LeafLinearization {
  double c = 0.0;
  Mat4 matrix_H = Mat4::Zero();
  Mat4 matrix_I = Mat4::Zero();
};

namespace detail {

// Jacobian of (y1, x1 z, y2, x2 z) with z = c - (x1^2 + x2^2)/2.
inline Mat4 chart_jacobian_H(const Eigen::Vector4d& u, double c) {
  const double x1 = u[0];
  const double x2 = u[2];
  const double z = c - 0.5 * (x1 * x1 + x2 * x2);
  Mat4 m = Mat4::Zero();
  m(0, 1) = 1.0;
  m(1, 0) = z - x1 * x1;
  m(1, 2) = -x1 * x2;
  m(2, 3) = 1.0;
  m(3, 0) = -x1 * x2;
  m(3, 2) = z - x2 * x2;
  return m;
}

// X_I = J grad I = (x2, y2, -x1, -y1, 0) is linear, so its Jacobian is constant.
inline Mat4 chart_jacobian_I() {
  Mat4 m = Mat4::Zero();
  m(0, 2) = 1.0;
  m(1, 3) = 1.0;
  m(2, 0) = -1.0;
  m(3, 1) = -1.0;
  return m;
}

} // namespace detail

inline LeafLinearization leaf_linearization(const State5& e, double c) {
  detail::require_finite(e, "leaf_linearization");
  if (e.x1 != 0.0 || e.y1 != 0.0 || e.x2 != 0.0 || e.y2 != 0.0 ||
      std::abs(e.z - c) > 1e-12) {
    throw domain_error("leaf_linearization: chart is centered at (0,0,0,0,c) only");
  }
  const Eigen::Vector4d origin = Eigen::Vector4d::Zero();
  return {c, detail::chart_jacobian_H(origin, c), detail::chart_jacobian_I()};
}

/// Characteristic polynomial of matrix_H + alpha matrix_I at (0,0,0,0,c).
inline QuarticPoly pencil_char_poly(double c, double alpha) {
  const LeafLinearization lin = leaf_linearization(State5{0, 0, 0, 0, c}, c);
  return char_poly(lin.matrix_H + alpha * lin.matrix_I);
}

enum class CartanKind { CenterCenter, CenterSaddle, SaddleSaddle, FocusFocus, Degenerate };
enum class Stability { stable, unstable, not_determined };

inline const char* to_string(CartanKind k) {
  switch (k) {
  case CartanKind::CenterCenter: return "center-center";
  case CartanKind::CenterSaddle: return "center-saddle";
  case CartanKind::SaddleSaddle: return "saddle-saddle";
  case CartanKind::FocusFocus: return "focus-focus";
  case CartanKind::Degenerate: return "degenerate";
  }
  return "unknown";
}

inline const char* to_string(Stability s) {
  switch (s) {
  case Stability::stable: return "stable";
  case Stability::unstable: return "unstable";
  case Stability::not_determined: return "not-determined";
  }
  return "unknown";
}

struct ClassificationResult {
  CartanKind kind = CartanKind::Degenerate;
  std::optional<double> alpha;
  QuarticRoots roots{};
  std::optional<double> A;
  std::optional<double> B;
  /// Discriminant of the quadratic in s = t^2 (biquadratic pencils only).
  std::optional<double> discriminant;
  Stability stable = Stability::not_determined;
};

/// Pencil parameters {+-2^k}, k = -6..3, visited by increasing |alpha|.
/// `density` d inserts d - 1 geometric midpoints between consecutive
/// exponents (density 2 doubles the grid).
inline std::vector<double> alpha_grid(int density = 1) {
  if (density < 1) throw domain_error("alpha_grid: density must be positive");
  std::vector<double> grid;
  const int steps = 9 * density;
  for (int j = 0; j <= steps; ++j) {
    const double a = std::exp2(-6.0 + static_cast<double>(j) / density);
    grid.push_back(a);
    grid.push_back(-a);
  }
  return grid;
}

namespace detail {

inline bool roots_distinct(const QuarticRoots& r) {
  double scale = 0.0;
  for (const cplx& z : r) scale = std::max(scale, std::abs(z));
  const double tol = 1e-9 * (1.0 + scale);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (std::abs(r[i] - r[j]) <= tol) return false;
  return true;
}

// Matches the root pattern against the four Cartan types.
inline std::optional<ClassificationResult> classify_pattern(const QuarticRoots& r) {
  std::vector<double> imag_mag;
  std::vector<double> real_mag;
  std::vector<cplx> complex_roots;
  for (const cplx& z : r) {
    const double tol = 1e-9 * (1.0 + std::abs(z));
    const bool pure_imag = std::abs(z.real()) < tol;
    const bool pure_real = std::abs(z.imag()) < tol;
    if (pure_imag && pure_real) return std::nullopt; // zero root
    if (pure_imag) {
      imag_mag.push_back(std::abs(z.imag()));
    } else if (pure_real) {
      real_mag.push_back(std::abs(z.real()));
    } else {
      complex_roots.push_back(z);
    }
  }
  auto desc = [](std::vector<double>& v) { std::sort(v.rbegin(), v.rend()); };
  desc(imag_mag);
  desc(real_mag);

  ClassificationResult res;
  if (imag_mag.size() == 4) {
    res.kind = CartanKind::CenterCenter;
    res.A = imag_mag[0];
    res.B = imag_mag[2];
    res.stable = Stability::stable;
  } else if (imag_mag.size() == 2 && real_mag.size() == 2) {
    res.kind = CartanKind::CenterSaddle;
    res.A = real_mag[0];
    res.B = imag_mag[0];
    res.stable = Stability::unstable;
  } else if (real_mag.size() == 4) {
    res.kind = CartanKind::SaddleSaddle;
    res.A = real_mag[0];
    res.B = real_mag[2];
    res.stable = Stability::unstable;
  } else if (complex_roots.size() == 4) {
    res.kind = CartanKind::FocusFocus;
    res.A = std::abs(complex_roots[0].real());
    res.B = std::abs(complex_roots[0].imag());
    res.stable = Stability::unstable;
  } else {
    return std::nullopt;
  }
  res.roots = r;
  return res;
}

} // namespace detail

/// Cartan type of the K0 equilibrium (0,0,0,0,c) on the leaf O_c.
///
/// Walks `grid` until the pencil element has four distinct eigenvalues.
/// When no grid element qualifies and c = 0 the result is Degenerate with
/// stability left to origin_stability_certificate().
inline ClassificationResult cartan_classify(const State5& e, double c,
                                            const std::vector<double>& grid = alpha_grid()) {
  detail::require_finite(e, "cartan_classify");
  const bool on_axis = e.x1 == 0.0 && e.y1 == 0.0 && e.x2 == 0.0 && e.y2 == 0.0;
  if (!on_axis || std::abs(e.z - c) > 1e-12) {
    throw domain_error("cartan_classify: point is not a K0 equilibrium on the leaf C = c");
  }

  for (double alpha : grid) {
    if (alpha == 0.0) continue;
    const QuarticPoly poly = pencil_char_poly(c, alpha);
    const QuarticRoots roots = quartic_roots(poly);
    if (!detail::roots_distinct(roots)) continue;
    auto res = detail::classify_pattern(roots);
    if (!res) continue;
    res->alpha = alpha;
    if (poly.biquadratic()) res->discriminant = poly.c2 * poly.c2 - 4.0 * poly.c0;
    return *res;
  }

  if (c == 0.0) {
    ClassificationResult res;
    res.kind = CartanKind::Degenerate;
    res.roots = quartic_roots(pencil_char_poly(c, grid.empty() ? 1.0 : grid.front()));
    res.stable = Stability::not_determined;
    return res;
  }
  throw std::runtime_error("cartan_classify: no pencil element with distinct eigenvalues on the grid");
}

struct CertificateLevel {
  double epsilon = 0.0;
  std::size_t admitted = 0;  // grid points with max(|H|, |I|, |C|) <= epsilon
  double max_norm = 0.0;     // largest norm among admitted points
  double chain_bound = 0.0;  // sqrt(4 eps + 2 sqrt(2 eps))
};

struct StabilityCertificate {
  bool unique_solution = false;
  std::optional<State5> worst_offender;
  std::vector<CertificateLevel> levels;
};

/// Grid check that near-level points of (H, I, C) shrink to the origin as
/// the level tolerance shrinks.
///
/// For each epsilon the admitted set {max(|H|,|I|,|C|) <= eps} must have norm
/// below 10 eps^(1/4) and below the chain bound: H <= eps forces
/// y1^2 + y2^2 + z^2 <= 2 eps, then |C| <= eps forces
/// x1^2 + x2^2 <= 2 eps + 2 sqrt(2 eps). Maxima must not increase as eps
/// decreases. `worst_offender` is the farthest admitted point at the
/// loosest level, if it is not the origin.
inline StabilityCertificate origin_stability_certificate(
    double box_half_width, int grid_n,
    std::vector<double> epsilons = {1e-2, 1e-4, 1e-6}) {
  if (!(box_half_width > 0.0) || !std::isfinite(box_half_width)) {
    throw domain_error("origin_stability_certificate: box_half_width must be positive");
  }
  if (grid_n < 3) throw domain_error("origin_stability_certificate: grid_n must be >= 3");
  if (epsilons.empty()) throw domain_error("origin_stability_certificate: no levels");
  std::sort(epsilons.rbegin(), epsilons.rend());

  std::vector<double> axis(static_cast<std::size_t>(grid_n));
  for (int i = 0; i < grid_n; ++i) {
    axis[static_cast<std::size_t>(i)] =
        2 * i == grid_n - 1
            ? 0.0
            : -box_half_width + 2.0 * box_half_width * i / (grid_n - 1);
  }

  StabilityCertificate cert;
  for (double eps : epsilons) {
    cert.levels.push_back({eps, 0, 0.0, std::sqrt(4.0 * eps + 2.0 * std::sqrt(2.0 * eps))});
  }
  const double loosest = epsilons.front();
  State5 worst{};

  for (double y1 : axis) {
    for (double y2 : axis) {
      for (double z : axis) {
        const double H = 0.5 * (y1 * y1 + y2 * y2 + z * z);
        if (H > loosest) continue;
        for (double x1 : axis) {
          for (double x2 : axis) {
            const State5 p{x1, y1, x2, y2, z};
            const ConservedTriple k = conserved(p);
            const double level = std::max({std::abs(k.H), std::abs(k.I), std::abs(k.C)});
            if (level > loosest) continue;
            const double n = p.norm();
            for (std::size_t l = 0; l < cert.levels.size(); ++l) {
              auto& lv = cert.levels[l];
              if (level > lv.epsilon) break;
              ++lv.admitted;
              if (n > lv.max_norm) {
                lv.max_norm = n;
                if (l == 0) worst = p;
              }
            }
          }
        }
      }
    }
  }

  bool ok = true;
  for (std::size_t l = 0; l < cert.levels.size(); ++l) {
    const auto& lv = cert.levels[l];
    ok = ok && lv.max_norm < 10.0 * std::pow(lv.epsilon, 0.25) &&
         lv.max_norm <= lv.chain_bound;
    if (l > 0) ok = ok && lv.max_norm <= cert.levels[l - 1].max_norm;
  }
  cert.unique_solution = ok;
  if (cert.levels.front().max_norm > 0.0) cert.worst_offender = worst;
  return cert;
}

} // namespace mbloch

#endif // MBLOCH_EQUILIBRIA_HPP
