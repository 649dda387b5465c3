#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace cfs {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;
using Mat2 = Eigen::Matrix2cd;
using RVec4 = Eigen::Vector4d;
using Mat5r = Eigen::Matrix<double, 5, 5>;

inline constexpr double pi = 3.14159265358979323846;

// Explicit snapping and rank rules for the exact definitions.
struct Tolerance {
  double real_threshold = 1e-9;
  double definiteness_margin = 1e-9;
  double rank_threshold = 1e-9;
};

}  // namespace cfs
