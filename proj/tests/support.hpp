#pragma once

#include <random>

#include "cfs/geometry.hpp"

namespace cfs::test {

using Rng = std::mt19937_64;

inline double max_abs(const Eigen::MatrixXcd& M) { return M.cwiseAbs().maxCoeff(); }

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline Mat4 random_matrix(Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Mat4 M;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) M(i, j) = cplx(g(rng), g(rng));
  return M;
}

inline Mat4 random_spin_symmetric(Rng& rng, double scale = 1.0) {
  const Mat4 M = random_matrix(rng, scale);
  return 0.5 * (M + spin_adjoint(M));
}

inline Mat4 random_spin_unitary(Rng& rng, double scale = 0.5) { return spin_exp_i(random_spin_symmetric(rng, scale)); }

/// G S G^{-1} with G spin-unitary is a sign operator.
inline Mat4 random_sign_operator(Rng& rng, double scale = 0.5) {
  const Mat4 G = random_spin_unitary(rng, scale);
  return G * spin_signature() * spin_adjoint(G);
}

inline Mat2 random_su2(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Vector4d q(g(rng), g(rng), g(rng), g(rng));
  q.normalize();
  Mat2 V;
  V << cplx(q(0), q(1)), cplx(q(2), q(3)), cplx(-q(2), q(3)), cplx(q(0), -q(1));
  return V;
}

/// Positive Hermitian 2x2 with eigenvalues in [lo, hi].
inline Mat2 random_positive(Rng& rng, double lo, double hi) {
  const Mat2 V = random_su2(rng);
  Eigen::Vector2cd w(uniform(rng, lo, hi), uniform(rng, lo, hi));
  return V * w.asDiagonal() * V.adjoint();
}

/// Spin-connectable pair built in adapted bases: P = F_x diag(e^{i t+} R+ V+, e^{i t-} R- V-) F_y^{-1}.
inline PointPairData synthetic_pair(Rng& rng) {
  const double tp = uniform(rng, -pi, pi);
  double d = uniform(rng, 0.1, pi / 2 - 0.1);
  if (uniform(rng, 0.0, 1.0) < 0.5) d += pi / 2;
  Mat4 Pa = Mat4::Zero();
  Pa.topLeftCorner<2, 2>() = std::exp(cplx(0, tp)) * random_positive(rng, 1.0, 2.0) * random_su2(rng);
  Pa.bottomRightCorner<2, 2>() = std::exp(cplx(0, tp - d)) * random_positive(rng, 3.0, 4.0) * random_su2(rng);
  const Mat4 Fx = random_spin_unitary(rng), Fy = random_spin_unitary(rng);
  return make_pair_data(Fx * Pa * spin_adjoint(Fy), random_sign_operator(rng), random_sign_operator(rng));
}

}  // namespace cfs::test

namespace cfs::test {

/// Sign operator of the form used for generically separated pairs (parameters a, b > 0).
inline Mat4 vt_sign(double a, double b) {
  Mat4 w = Mat4::Zero();
  w(0, 0) = std::cosh(a);
  w(0, 2) = std::sinh(a);
  w(2, 0) = -std::sinh(a);
  w(2, 2) = -std::cosh(a);
  w(1, 1) = std::cosh(b);
  w(1, 3) = -std::sinh(b);
  w(3, 1) = std::sinh(b);
  w(3, 3) = -std::cosh(b);
  return w;
}

}  // namespace cfs::test
