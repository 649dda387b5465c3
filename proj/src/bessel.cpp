#include "cfs/bessel.hpp"

#include <cmath>

#include <boost/math/special_functions/bessel.hpp>

#include "cfs/errors.hpp"

namespace cfs {

namespace {

constexpr double euler_gamma = 0.57721566490153286061;

void require_positive(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw Error(Errc::OutOfDomain, "Bessel argument must be positive");
}

// Abramowitz-Stegun 9.6.13 and 9.6.11 with y = z^2/4.
std::pair<cplx, cplx> k_series(cplx z) {
  const cplx y = z * z / 4.0;
  cplx term = 1.0;  // y^k / (k!)^2
  cplx t1 = 1.0;    // y^k / (k! (k+1)!)
  double H = 0.0;
  double psi1 = -euler_gamma, psi2 = 1.0 - euler_gamma;  // psi(k+1), psi(k+2)
  cplx I0 = term, I1s = t1, S0 = 0.0, S1 = (psi1 + psi2) * t1;
  for (int k = 1; k < 200; ++k) {
    term *= y / double(k * k);
    t1 *= y / double(k * (k + 1));
    H += 1.0 / k;
    psi1 += 1.0 / k;
    psi2 += 1.0 / (k + 1);
    I0 += term;
    I1s += t1;
    S0 += H * term;
    S1 += (psi1 + psi2) * t1;
    if (std::abs(term) < 1e-17 * std::abs(I0) && std::abs(t1) < 1e-17 * std::abs(I1s)) break;
  }
  const cplx L = std::log(z / 2.0);
  const cplx K0 = -(L + euler_gamma) * I0 + S0;
  const cplx K1 = 1.0 / z + L * (z / 2.0) * I1s - 0.25 * z * S1;
  return {K0, K1};
}

// Steed's CF2 (Temme normalization, order 0).
std::pair<cplx, cplx> k_steed(cplx x) {
  cplx b = 2.0 * (1.0 + x);
  cplx d = 1.0 / b;
  cplx delh = d, h = d;
  cplx q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  cplx q = a1, c = a1;
  double a = -a1;
  cplx s = 1.0 + q * delh;
  for (int i = 1; i < 50000; ++i) {
    a -= 2.0 * i;
    c = -a * c / (i + 1.0);
    const cplx qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const cplx dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 1e-17) break;
  }
  h = a1 * h;
  const cplx K0 = std::sqrt(pi / (2.0 * x)) * std::exp(-x) / s;
  const cplx K1 = K0 * (x + 0.5 - h) / x;
  return {K0, K1};
}

}  // namespace

BesselJY bessel_J0J1Y0Y1(double x) {
  require_positive(x);
  namespace bm = boost::math;
  return {bm::cyl_bessel_j(0, x), bm::cyl_bessel_j(1, x), bm::cyl_neumann(0, x), bm::cyl_neumann(1, x)};
}

double bessel_J2(double x) {
  require_positive(x);
  return boost::math::cyl_bessel_j(2, x);
}

double bessel_Y2(double x) {
  require_positive(x);
  return boost::math::cyl_neumann(2, x);
}

double bessel_K1_real(double x) {
  require_positive(x);
  return boost::math::cyl_bessel_k(1, x);
}

double bessel_K2_real(double x) {
  require_positive(x);
  return boost::math::cyl_bessel_k(2, x);
}

std::pair<cplx, cplx> bessel_K0K1(cplx z) {
  if (!(z.real() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(Errc::OutOfDomain, "K0/K1 need Re z > 0");
  }
  return std::abs(z) < 2.0 ? k_series(z) : k_steed(z);
}

}  // namespace cfs
