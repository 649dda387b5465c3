#pragma once

#include <optional>

#include "cfs/geometry.hpp"

namespace cfs {

struct Event {
  double t = 0.0, x = 0.0, y = 0.0, z = 0.0;

  RVec4 vec() const { return {t, x, y, z}; }
  static Event from(const RVec4& v) { return {v(0), v(1), v(2), v(3)}; }
};

inline Event operator-(const Event& a, const Event& b) { return {a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Event operator+(const Event& a, const Event& b) { return {a.t + b.t, a.x + b.x, a.y + b.y, a.z + b.z}; }

/// t^2 - x^2 - y^2 - z^2.
double minkowski_square(const Event& xi);

/// Spatial length |xi|.
double spatial_norm(const Event& xi);

struct VacuumParams {
  double m = 1.0;
  double eps = 0.0;  // regularization length; 0 selects the unregularized kernel
};

/// P = alpha slash(xi) + beta, or alpha (slash(xi) - i eps gamma^0) + beta when regularized.
struct KernelCoeffs {
  cplx alpha;
  cplx beta;
};

/// Unregularized coefficients at xi = y - x (params.eps is ignored). Throws OnLightCone.
KernelCoeffs kernel(const Event& xi, const VacuumParams& params);

/// Regularized coefficients, z = m sqrt(r^2 + (eps + i t)^2). Throws OutOfDomain, InvalidInput for eps <= 0.
KernelCoeffs kernel_reg(const Event& xi, const VacuumParams& params);

/// Assembled P(x,y) for xi = y - x; dispatches on params.eps.
Mat4 kernel_matrix(const Event& xi, const VacuumParams& params);

struct ChainAnalysis {
  CausalType type = CausalType::timelike;
  KernelCoeffs coeffs;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;  // c, d vanish without regularization
  cplx lambda_plus, lambda_minus;
  std::optional<Mat4> v;  // directional sign operator
  std::optional<double> theta_plus, theta_minus;
  std::optional<double> phi, kappa, kappa_alt;
};

/// Chain coefficients, eigenvalues and (timelike, unregularized) the analytic phases.
/// Throws OnLightCone.
ChainAnalysis chain_analysis(const Event& xi, const VacuumParams& params, const Tolerance& tol = {});

struct NuEigenvalues {
  double nu12 = 0.0;
  double nu34 = 0.0;
};

/// Eigenvalues of the regularized local operator, by quadrature. Throws QuadratureFailure.
NuEigenvalues nu_eigenvalues(const VacuumParams& params);

/// P(x,y), its adjoint and s_x = s_y = gamma^0. Throws OnLightCone, InvalidInput for x == y.
PointPairData dirac_sea_pair(const Event& x, const Event& y, const VacuumParams& params);

struct AnalyticConnection {
  Mat4 D = Mat4::Identity();  // e^{i kappa} 1
  double kappa = 0.0;
  double phi = 0.0;
  Orientation orientation = Orientation::future;
};

/// Closed-form spin connection of an unregularized timelike pair. Throws NotSpinConnectable.
AnalyticConnection analytic_connection(const Event& x, const Event& y, const VacuumParams& params,
                                       const Tolerance& tol = {});

struct LorentzBoost {
  Eigen::Matrix4d Lambda = Eigen::Matrix4d::Identity();
  Mat4 U = Mat4::Identity();  // slash(Lambda xi) = U slash(xi) U^{-1}
};

/// Boost with the given rapidity along the unit spatial direction n.
LorentzBoost lorentz_boost(double rapidity, const Eigen::Vector3d& n);

}  // namespace cfs
