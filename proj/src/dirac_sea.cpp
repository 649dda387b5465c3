#include "cfs/dirac_sea.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cfs/bessel.hpp"

namespace cfs {

namespace {

const cplx I1(0.0, 1.0);

void require_mass(const VacuumParams& p) {
  if (!(p.m > 0.0) || !std::isfinite(p.m)) throw Error(Errc::InvalidInput, "mass must be positive");
  if (!(p.eps >= 0.0) || !std::isfinite(p.eps)) throw Error(Errc::InvalidInput, "eps must be non-negative");
}

void require_off_cone(const Event& xi) {
  const double scale2 = xi.t * xi.t + xi.x * xi.x + xi.y * xi.y + xi.z * xi.z;
  if (!(scale2 > 0.0) || std::abs(minkowski_square(xi)) < 1e-9 * scale2)
    throw Error(Errc::OnLightCone, "xi^2 vanishes");
}

double sgn(double x) { return x >= 0.0 ? 1.0 : -1.0; }

}  // namespace

double minkowski_square(const Event& xi) { return xi.t * xi.t - xi.x * xi.x - xi.y * xi.y - xi.z * xi.z; }

double spatial_norm(const Event& xi) { return std::sqrt(xi.x * xi.x + xi.y * xi.y + xi.z * xi.z); }

KernelCoeffs kernel(const Event& xi, const VacuumParams& p) {
  require_mass(p);
  require_off_cone(xi);
  const double m = p.m;
  const double x2 = minkowski_square(xi);
  KernelCoeffs k;
  if (x2 > 0.0) {
    const double z = m * std::sqrt(x2);
    const double e = sgn(xi.t);
    const BesselJY b = bessel_J0J1Y0Y1(z);
    const double J2 = bessel_J2(z), Y2 = bessel_Y2(z);
    k.beta = m * m * m / (16.0 * pi * pi) * cplx(b.Y1, e * b.J1) / z;
    k.alpha = I1 * std::pow(m, 4) / (16.0 * pi * pi) * cplx(Y2, e * J2) / (z * z);
  } else {
    const double z = m * std::sqrt(-x2);
    k.beta = m * m * m / (8.0 * pi * pi * pi) * bessel_K1_real(z) / z;
    k.alpha = -I1 * std::pow(m, 4) / (8.0 * pi * pi * pi) * bessel_K2_real(z) / (z * z);
  }
  return k;
}

KernelCoeffs kernel_reg(const Event& xi, const VacuumParams& p) {
  require_mass(p);
  if (!(p.eps > 0.0)) throw Error(Errc::InvalidInput, "kernel_reg needs eps > 0");
  const double m = p.m;
  const double r2 = xi.x * xi.x + xi.y * xi.y + xi.z * xi.z;
  const cplx w = cplx(p.eps, xi.t);
  const cplx z = m * std::sqrt(r2 + w * w);
  if (!(z.real() > 0.0)) throw Error(Errc::OutOfDomain, "Re z <= 0");
  const auto [K0, K1] = bessel_K0K1(z);
  const double c = 1.0 / std::pow(2.0 * pi, 3);
  KernelCoeffs k;
  k.alpha = -I1 * std::pow(m, 4) * c * (K0 / (z * z) + 2.0 * K1 / (z * z * z));
  k.beta = m * m * m * c * K1 / z;
  return k;
}

Mat4 kernel_matrix(const Event& xi, const VacuumParams& p) {
  if (p.eps > 0.0) {
    const KernelCoeffs k = kernel_reg(xi, p);
    return k.alpha * (slash(xi.vec()) - I1 * p.eps * gamma(0)) + k.beta * Mat4::Identity();
  }
  const KernelCoeffs k = kernel(xi, p);
  return k.alpha * slash(xi.vec()) + k.beta * Mat4::Identity();
}

ChainAnalysis chain_analysis(const Event& xi, const VacuumParams& p, const Tolerance& tol) {
  require_off_cone(xi);
  ChainAnalysis r;
  const double x2 = minkowski_square(xi);
  const bool reg = p.eps > 0.0;
  r.coeffs = reg ? kernel_reg(xi, p) : kernel(xi, p);
  const cplx ab = r.coeffs.alpha * std::conj(r.coeffs.beta);
  const double aa = std::norm(r.coeffs.alpha), bb = std::norm(r.coeffs.beta);
  r.a = 2.0 * ab.real();
  if (!reg) {
    r.b = aa * x2 + bb;
    const cplx root = std::sqrt(cplx(r.a * r.a * x2, 0.0));
    r.lambda_plus = r.b + root;
    r.lambda_minus = r.b - root;
    if (x2 < 0.0) {
      r.type = CausalType::spacelike;
      return r;
    }
    r.type = CausalType::timelike;
    const double e = sgn(xi.t);
    const double rt = std::sqrt(x2);
    r.v = Mat4(e * slash(xi.vec()) / rt);
    const cplx bp = r.coeffs.beta + e * r.coeffs.alpha * rt;
    const cplx bm = r.coeffs.beta - e * r.coeffs.alpha * rt;
    r.theta_plus = std::arg(bp);
    r.theta_minus = std::arg(bm);
    Mat4 Pd = Mat4::Zero();
    Pd.topLeftCorner<2, 2>() = bp * Mat2::Identity();
    Pd.bottomRightCorner<2, 2>() = bm * Mat2::Identity();
    r.phi = fix_phase(Pd, tol).phi;
    r.kappa = std::arg(std::exp(I1 * *r.phi) * bp);
    r.kappa_alt = std::arg(std::exp(-I1 * *r.phi) * bm);
    return r;
  }

  const double eps = p.eps;
  const double s2 = xi.x * xi.x + xi.y * xi.y + xi.z * xi.z;
  r.b = aa * (x2 + eps * eps) + bb;
  r.c = 2.0 * eps * ab.imag();
  r.d = 2.0 * eps * aa;
  const double rad = r.a * r.a * x2 + 2.0 * r.a * r.c * xi.t + r.c * r.c - r.d * r.d * s2;
  const cplx root = std::sqrt(cplx(rad, 0.0));
  r.lambda_plus = r.b + root;
  r.lambda_minus = r.b - root;
  if (rad <= 0.0) {
    r.type = CausalType::spacelike;
    return r;
  }
  r.type = CausalType::timelike;
  const Mat4 vg = xi.x * gamma(1) + xi.y * gamma(2) + xi.z * gamma(3);
  Mat4 v = (r.a * slash(xi.vec()) + r.c * gamma(0) - I1 * r.d * vg * gamma(0)) / std::sqrt(rad);
  // Choose the sign that is positive on the positive definite eigenspace.
  if ((spin_signature() * v).trace().real() < 0.0) v = -v;
  r.v = v;
  return r;
}

NuEigenvalues nu_eigenvalues(const VacuumParams& p) {
  require_mass(p);
  if (!(p.eps > 0.0)) throw Error(Errc::InvalidInput, "nu_eigenvalues needs eps > 0");
  const double m = p.m, x = p.eps * p.m;
  // Beyond s_max the integrand is below e^{-700} relative to its scale.
  const double s_max = std::acosh(std::max(1.0, 700.0 / x) + 1.0);
  const auto integrate = [&](double sign) {
    const auto f = [&](double s) {
      const double sh = std::sinh(s), ch = std::cosh(s);
      return m * m * sh * sh * (sign * m * ch + m) * std::exp(-x * ch);
    };
    double err = 0.0, l1 = 0.0;
    const double val = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, s_max, 20, 1e-13, &err, &l1);
    if (!std::isfinite(val) || err > 1e-9 * std::max(std::abs(val), 1e-300))
      throw Error(Errc::QuadratureFailure, "error estimate above 1e-9 relative");
    return val;
  };
  return {integrate(-1.0), integrate(1.0)};
}

PointPairData dirac_sea_pair(const Event& x, const Event& y, const VacuumParams& p) {
  const Event xi = y - x;
  if (xi.t == 0.0 && xi.x == 0.0 && xi.y == 0.0 && xi.z == 0.0)
    throw Error(Errc::InvalidInput, "dirac_sea_pair needs distinct points");
  return make_pair_data(kernel_matrix(xi, p), gamma(0), gamma(0));
}

AnalyticConnection analytic_connection(const Event& x, const Event& y, const VacuumParams& p, const Tolerance& tol) {
  const Event xi = y - x;
  VacuumParams p0 = p;
  p0.eps = 0.0;
  ChainAnalysis c;
  try {
    c = chain_analysis(xi, p0, tol);
  } catch (const Error& e) {
    throw Error(Errc::NotSpinConnectable, std::string("not_properly_timelike: ") + e.what(), "not_properly_timelike");
  }
  if (c.type != CausalType::timelike)
    throw Error(Errc::NotSpinConnectable, "not_properly_timelike: spacelike pair", "not_properly_timelike");
  AnalyticConnection a;
  a.kappa = *c.kappa;
  a.phi = *c.phi;
  a.D = std::exp(I1 * a.kappa) * Mat4::Identity();
  a.orientation = a.phi > 0.0 ? Orientation::future : Orientation::past;
  return a;
}

LorentzBoost lorentz_boost(double rapidity, const Eigen::Vector3d& n_in) {
  const double nn = n_in.norm();
  if (!(nn > 0.0)) throw Error(Errc::InvalidInput, "boost direction must be nonzero");
  const Eigen::Vector3d n = n_in / nn;
  const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
  LorentzBoost b;
  b.Lambda(0, 0) = ch;
  b.Lambda.block<1, 3>(0, 1) = sh * n.transpose();
  b.Lambda.block<3, 1>(1, 0) = sh * n;
  b.Lambda.block<3, 3>(1, 1) = Eigen::Matrix3d::Identity() + (ch - 1.0) * n * n.transpose();
  const Mat4 ng = n(0) * gamma(1) + n(1) * gamma(2) + n(2) * gamma(3);
  b.U = std::cosh(rapidity / 2.0) * Mat4::Identity() + std::sinh(rapidity / 2.0) * gamma(0) * ng;
  return b;
}

}  // namespace cfs
