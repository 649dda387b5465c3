#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cfs/dirac_sea.hpp"

namespace cfs {

/// Future-directed timelike curve parametrized by proper time on [0, t_max].
struct TimelikeCurve {
  std::function<Event(double)> gamma;
  double t_max = 0.0;
};

/// start + t u with u the unit-normalized timelike velocity.
TimelikeCurve straight_segment(const Event& start, const RVec4& velocity, double length);

/// Re-parametrizes param on [u0, u1] by proper time, using chord lengths on `samples` intervals
/// and linear interpolation of the inverse. Throws NotAdmissible for a non-timelike chord.
TimelikeCurve arc_length_curve(std::function<Event(double)> param, double u0, double u1,
                               std::size_t samples = 4096);

/// Successive samples at resolution N are timelike separated and future ordered, else NotAdmissible.
void check_curve(const TimelikeCurve& curve, std::size_t N = 1024);

struct TransportOptions {
  bool spliced = false;            // insert splice maps between consecutive steps
  bool analytic_fallback = true;   // e^{i kappa} 1 where the generic algorithm is not applicable
  int max_halvings = 40;           // finite-eps mode
};

struct TransportStep {
  Mat4 D = Mat4::Identity();
  double phi = 0.0;
  std::optional<double> kappa;  // closed-form value, unregularized backend only
  Orientation orientation = Orientation::future;
  bool analytic = false;
  Mat4 v_xy, v_yx;
};

struct TransportResult {
  Mat4 D_total = Mat4::Identity();
  double deviation = 0.0;  // operator norm of D_total - 1
  double eps_used = 0.0;
  std::vector<TransportStep> per_step;
};

/// Ordered product D_{x0,x1} D_{x1,x2} ... over N equal steps. With params.eps > 0 the
/// regularization length is halved until every step is spin-connectable.
/// Throws NotAdmissible naming the failing segment.
TransportResult compose_transport(const TimelikeCurve& curve, std::size_t N, const VacuumParams& params,
                                  const TransportOptions& opts = {}, const Tolerance& tol = {});

// ---- curved space ----

/// Curvature data along the curve in a frame e_0 = curve tangent, e_1..e_3 (assumed parallel).
struct CurvatureSample {
  double s = 0.0;                                  // scalar curvature
  RVec4 grad_s = RVec4::Zero();                    // e_a(s)
  Eigen::Matrix4d ricci = Eigen::Matrix4d::Zero();  // Ric(e_a, e_b)
  std::array<Eigen::Matrix4d, 4> nabla_ricci{};    // (nabla_{e_a} Ric)(e_b, e_c)
  std::array<RVec4, 4> nabla_riemann{};            // components of (nabla_{e_j} R)(e_0, e_j) e_0
  std::optional<std::array<double, 3>> bounds;     // |R|, |nabla R|, |nabla^2 R|

  CurvatureSample();
};

struct CurvatureField {
  double t0 = 0.0;
  double t1 = 0.0;
  std::function<CurvatureSample(double)> sample;
};

inline constexpr double curvature_bound_constant = 0.5;

/// Same sample everywhere on [t0, t1].
CurvatureField constant_field(const CurvatureSample& s, double t0, double t1);

/// Loads {"t0", "dt", "samples": [...]} with linear interpolation. Throws InvalidInput.
CurvatureField curvature_field_from_json(const std::string& text, double m);

/// Antisymmetry of R in its first pair (1e-9) and, where supplied, the curvature bound.
/// Throws InvalidInput.
void validate_sample(const CurvatureSample& s, double m);

/// W = sum_j eps_j (nabla_{e_j} R)(e_0, e_j) e_0 with eps = (+, -, -, -).
RVec4 curvature_source(const CurvatureSample& s);

/// u^a gamma_a for frame components u^a.
Mat4 frame_operator(const RVec4& u);

struct DeltaU {
  RVec4 components = RVec4::Zero();
  Mat4 op = Mat4::Zero();  // frame_operator(components)
};

/// Leading correction (delta/6) (m^2 - s/12)^{-1} W for the step T = delta e_0.
/// Throws MassShellDegenerate.
DeltaU delta_u(const CurvatureField& field, double t, double delta, const VacuumParams& params);

/// (1/6) (m^2 - s/12)^{-1} frame_operator(W) gamma^0; spin-antisymmetric when W is orthogonal to e_0.
Mat4 texp_generator(const CurvatureSample& s, const VacuumParams& params);

/// Time-ordered exponential of the generator over [t0, t1] (adaptive Dormand-Prince, 1e-12).
/// Throws MassShellDegenerate, IntegrationFailure.
Mat4 texp_correction(const CurvatureField& field, const VacuumParams& params);

struct HadamardLeading {
  cplx V_scalar;
  double vleck = 1.0;
};

/// V = m^2 - s/12 + (d_T s)/24 and the van Vleck expansion 1 + t^2/12 Ric(T,T) - t^3/24 (nabla_T Ric)(T,T).
HadamardLeading hadamard_leading(const CurvatureSample& s, double m, double t, const RVec4& T);

}  // namespace cfs
