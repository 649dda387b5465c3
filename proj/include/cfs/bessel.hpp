#pragma once

#include <utility>

#include "cfs/types.hpp"

namespace cfs {

struct BesselJY {
  double J0 = 0.0, J1 = 0.0, Y0 = 0.0, Y1 = 0.0;
};

/// J_0, J_1, Y_0, Y_1 at x > 0. Throws OutOfDomain.
BesselJY bessel_J0J1Y0Y1(double x);

/// Real-order-2 companions used by the kernel coefficients.
double bessel_J2(double x);
double bessel_Y2(double x);
double bessel_K1_real(double x);
double bessel_K2_real(double x);

/// K_0(z), K_1(z) on the principal branch for Re z > 0: ascending series for |z| < 2,
/// Steed's continued fraction otherwise. Throws OutOfDomain.
std::pair<cplx, cplx> bessel_K0K1(cplx z);

}  // namespace cfs
