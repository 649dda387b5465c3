#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cfs/geometry.hpp"

namespace cfs {

using AmbientOperator = Eigen::MatrixXcd;

struct AmbientSystem {
  std::size_t f = 0;
  std::vector<AmbientOperator> points;
  std::vector<double> weights;
};

struct PointDiagnostics {
  std::size_t rank = 0;
  int positive = 0;
  int negative = 0;
  bool regular = false;
};

/// Hermiticity, rank <= 4 and at most two eigenvalues of each sign. Throws NotAdmissible.
PointDiagnostics validate_point(const AmbientOperator& x, const Tolerance& tol = {});

struct LocalSpin {
  Eigen::MatrixXcd basis;  // f x 4; columns f_1..f_4 with <f_a|f_b> = S_ab
  Eigen::Vector4d lambda;  // eigenvalue of x belonging to each basis vector
  Mat4 S = spin_signature();
  Mat4 s_x = spin_signature();
  Mat4 E_x = Mat4::Identity();     // the operator -x^{-1} on S_x
  Mat4 E_gram = Mat4::Identity();  // S E_x: Gram matrix of the Hilbert product in the spin basis
};

/// Spin basis of the image of x: negative eigenvalues first (spin norm +1), each group sorted
/// descending, largest-modulus component real positive. Throws NotRegular.
LocalSpin localize(const AmbientOperator& x, const Tolerance& tol = {});

/// Matrix of pi_x y : S_y -> S_x in the two spin bases.
Mat4 ambient_kernel(const AmbientOperator& x, const LocalSpin& bx, const AmbientOperator& y, const LocalSpin& by);

/// Pair data for points i, j of a localized system.
PointPairData ambient_pair(const AmbientSystem& sys, const std::vector<LocalSpin>& loc, std::size_t i,
                           std::size_t j);

/// Points F = -iota S iota^dagger with Gaussian iota : C^4 -> C^f (mt19937_64).
AmbientSystem random_system(std::size_t f, std::size_t n_points, std::uint64_t seed);

/// Eigenvalues of the f x f product x y with the largest four moduli, sorted like eigenvalues().
std::array<cplx, 4> nontrivial_product_spectrum(const AmbientOperator& x, const AmbientOperator& y);

/// {"f": f, "points": [[[re,im], ...row-major...]], "weights": [...]}; validated on read.
AmbientSystem system_from_json(const std::string& text, const Tolerance& tol = {});
std::string system_to_json(const AmbientSystem& sys);

}  // namespace cfs
