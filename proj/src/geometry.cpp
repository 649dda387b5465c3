#include "cfs/geometry.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace cfs {

namespace {

const cplx I1(0.0, 1.0);

Error not_connectable(const std::string& sub, const std::string& what) {
  return Error(Errc::NotSpinConnectable, sub + ": " + what, sub);
}

struct Polar {
  Mat2 R, V;
  double theta = 0.0;
};

// X = e^{i theta} R V with R > 0 and V in SU(2); theta is fixed modulo pi.
Polar polar_split(const Mat2& X) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(X * X.adjoint());
  const Eigen::Vector2d w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Polar p;
  p.R = es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  p.theta = std::arg(X.determinant()) / 2.0;
  p.V = std::exp(-I1 * p.theta) * p.R.inverse() * X;
  return p;
}

}  // namespace

PointPairData make_pair_data(const Mat4& P_xy, const Mat4& s_x, const Mat4& s_y) {
  return {P_xy, spin_adjoint(P_xy), s_x, s_y};
}

PointPairData swapped(const PointPairData& p) { return {p.P_yx, p.P_xy, p.s_y, p.s_x}; }

Mat4 closed_chain(const PointPairData& pair) { return pair.P_xy * pair.P_yx; }

const char* causal_name(CausalType c) noexcept {
  switch (c) {
    case CausalType::timelike: return "timelike";
    case CausalType::spacelike: return "spacelike";
    case CausalType::lightlike: return "lightlike";
  }
  return "unknown";
}

CausalType classify_causal(const Mat4& A, const Tolerance& tol) {
  const auto ev = eigenvalues(A, tol);
  bool all_real = true, none_real = true;
  double lo = 1e300, hi = 0.0;
  for (cplx z : ev) {
    (z.imag() == 0.0 ? none_real : all_real) = false;
    lo = std::min(lo, std::abs(z));
    hi = std::max(hi, std::abs(z));
  }
  if (all_real) return CausalType::timelike;
  if (none_real && hi - lo <= tol.real_threshold * hi) return CausalType::spacelike;
  return CausalType::lightlike;
}

TimelikeDiagnostics timelike_diagnostics(const Mat4& A, const Tolerance& tol) {
  TimelikeDiagnostics d;
  EigenSystem es;
  try {
    es = spectrum(A, tol);
  } catch (const Error& e) {
    d.reason = e.what();
    return d;
  }
  const double sc = A.cwiseAbs().maxCoeff();
  bool ok = true;
  for (const auto& sp : es.spaces) {
    if (sp.multiplicity > 2 || sp.definiteness == Definiteness::indefinite) d.degenerate_spectrum = true;
    if (!sp.real || sp.lambda.real() <= tol.definiteness_margin * sc) {
      ok = false;
      d.reason = "spectrum not strictly positive";
    } else if (sp.definiteness != Definiteness::positive && sp.definiteness != Definiteness::negative) {
      ok = false;
      if (d.reason.empty()) d.reason = "eigenspace not definite";
    }
  }
  d.properly_timelike = ok;
  return d;
}

bool properly_timelike(const Mat4& A, const Tolerance& tol) { return timelike_diagnostics(A, tol).properly_timelike; }

Mat4 directional_sign(const Mat4& A, const Tolerance& tol) {
  EigenSystem es;
  try {
    es = spectrum(A, tol);
  } catch (const Error& e) {
    throw Error(Errc::NotProperlyTimelike, e.what());
  }
  const double sc = A.cwiseAbs().maxCoeff();
  bool positive = true, indefinite = false;
  for (const auto& sp : es.spaces) {
    if (!sp.real || sp.lambda.real() <= tol.definiteness_margin * sc) positive = false;
    if (sp.definiteness == Definiteness::indefinite) indefinite = true;
    if (sp.definiteness == Definiteness::null) positive = false;
  }
  if (!positive) throw Error(Errc::NotProperlyTimelike, "spectrum not strictly positive");
  if (indefinite) throw Error(Errc::AmbiguousDirection, "eigenspace not definite; split not unique");
  Mat4 v = Mat4::Zero();
  for (std::size_t k = 0; k < es.spaces.size(); ++k) {
    const double sign = es.spaces[k].definiteness == Definiteness::positive ? 1.0 : -1.0;
    v += sign * es.projector(k);
  }
  return v;
}

const char* orientation_name(Orientation o) noexcept { return o == Orientation::future ? "future" : "past"; }

PhaseFix fix_phase(const Mat4& P, const Tolerance& tol) {
  PhaseFix f;
  const double n = P.norm();
  f.offdiag_residual = n > 0.0 ? (P.topRightCorner<2, 2>().norm() + P.bottomLeftCorner<2, 2>().norm()) / n : 0.0;
  const Polar pp = polar_split(P.topLeftCorner<2, 2>());
  const Polar pm = polar_split(P.bottomRightCorner<2, 2>());
  double d = std::fmod(pp.theta - pm.theta, pi);
  if (d < 0.0) d += pi;
  const double guard = 2.0 * tol.real_threshold;
  f.time_directed = !(d <= guard || std::abs(d - pi / 2.0) <= guard || pi - d <= guard);
  const double delta = d < pi / 2.0 ? d + pi : d - 2.0 * pi;
  f.phi = -delta / 2.0;
  f.theta_plus = pp.theta;
  f.theta_minus = pp.theta - delta;
  f.R_plus = pp.R;
  f.R_minus = pm.R;
  f.V_plus = pp.V;
  // Flip the sign of V^- together with theta^- so that theta^+ - theta^- equals delta.
  const double k = std::round((f.theta_minus - pm.theta) / pi);
  f.V_minus = (static_cast<long>(k) % 2 == 0) ? pm.V : Mat2(-pm.V);
  return f;
}

SpinConnectionResult spin_connection(const PointPairData& pair, const Tolerance& tol) {
  SpinConnectionResult r;
  r.A_xy = closed_chain(pair);
  r.A_yx = pair.P_yx * pair.P_xy;
  try {
    r.v_xy = directional_sign(r.A_xy, tol);
    r.v_yx = directional_sign(r.A_yx, tol);
  } catch (const Error& e) {
    throw not_connectable("not_properly_timelike", e.what());
  }
  if (!generically_separated(r.v_xy, pair.s_x, tol) || !generically_separated(r.v_yx, pair.s_y, tol)) {
    throw not_connectable("not_generically_separated", "directional and Euclidean sign operators");
  }
  const SyncResult sx = synchronize(pair.s_x, r.v_xy, tol);
  const SyncResult sy = synchronize(pair.s_y, r.v_yx, tol);
  r.K_x_y = sx.K_v;
  r.K_xy = sx.K_vt;
  r.U_xy = sx.U;
  r.K_y_x = sy.K_v;
  r.K_yx = sy.K_vt;
  r.U_yx = sy.U;

  const Mat4 Fx = adapted_frame(r.K_xy, r.v_xy);
  const Mat4 Fy = adapted_frame(r.K_yx, r.v_yx);
  r.phase = fix_phase(spin_adjoint(Fx) * pair.P_xy * Fy, tol);
  if (!r.phase.time_directed) {
    throw not_connectable("not_time_directed", "phase difference is a multiple of pi/2");
  }
  r.phi = r.phase.phi;
  r.D = exp_i_sign(r.phi, r.v_xy) * principal_inv_sqrt(r.A_xy, tol) * pair.P_xy;
  r.orientation = r.phi > 0.0 ? Orientation::future : Orientation::past;
  return r;
}

TangentVector make_tangent(const CliffordSubspace& home, const Mat4& rep) {
  if (span_residual(home, rep) > 1e-8) throw Error(Errc::InvalidInput, "vector not in the span of its home");
  return {rep, home};
}

double tangent_inner(const TangentVector& u, const TangentVector& w) { return trace_inner(u.rep, w.rep).real(); }

TangentVector conjugate_tangent(const Mat4& U, const TangentVector& u, const CliffordSubspace& new_home) {
  const Mat4 rep = U * u.rep * U.inverse();
  if (span_residual(new_home, rep) > 1e-8) throw Error(Errc::HomeMismatch, "conjugated vector leaves the target home");
  return {rep, new_home};
}

TangentVector metric_connection(const SpinConnectionResult& c, const TangentVector& u_y) {
  if (!same_span(u_y.home, c.K_y_x)) throw Error(Errc::HomeMismatch, "u_y must live in K_y^(x)");
  const Mat4 u_yx = c.U_yx * u_y.rep * spin_adjoint(c.U_yx);
  const Mat4 u_xy = c.D * u_yx * spin_adjoint(c.D);
  return {spin_adjoint(c.U_xy) * u_xy * c.U_xy, c.K_x_y};
}

DirectionalTangents tangent_vectors(const SpinConnectionResult& c, const PointPairData& pair, const Tolerance& tol) {
  const Mat4 L = -I1 * c.D * pair.P_yx;
  const Mat4 M = 0.5 * (L + spin_adjoint(L));
  const Mat4 prM = project_onto(c.K_xy, M);
  const Mat4 Ui = spin_adjoint(c.U_xy);
  DirectionalTangents t;
  t.y_x = {Ui * prM * c.U_xy, c.K_x_y};
  t.yhat_x = {Ui * c.v_xy * c.U_xy, c.K_x_y};
  t.factor = tangent_inner(t.y_x, t.yhat_x) / tangent_inner(t.yhat_x, t.yhat_x);
  t.expected_factor = 0.25 * std::sin(c.phi) * principal_sqrt(c.A_xy, tol).trace().real();
  const double n = t.y_x.rep.norm();
  t.proportionality_residual = n > 0.0 ? (t.y_x.rep - t.factor * t.yhat_x.rep).norm() / n : 0.0;
  return t;
}

Mat4 splice_map(const Mat4& s_x, const Mat4& v1, const Mat4& v2, const Tolerance& tol) {
  const SyncResult a = synchronize(s_x, v1, tol);
  const SyncResult b = synchronize(s_x, v2, tol);
  const Identification id = identification_map(s_x, b.K_v, a.K_v, tol);
  return a.U * id.U * spin_adjoint(b.U);
}

namespace {

SpinConnectionResult connect_named(const PointPairData& p, const char* name, const Tolerance& tol) {
  try {
    return spin_connection(p, tol);
  } catch (const Error& e) {
    throw Error(Errc::NotSpinConnectable, std::string("pair ") + name + ": " + e.what(),
                std::string(name) + ":" + e.subreason());
  }
}

}  // namespace

Curvatures curvatures(const PointPairData& pxy, const PointPairData& pyz, const PointPairData& pzx,
                      const Tolerance& tol) {
  const auto cxy = connect_named(pxy, "xy", tol);
  const auto cyz = connect_named(pyz, "yz", tol);
  const auto czx = connect_named(pzx, "zx", tol);
  const Mat4& s_x = pxy.s_x;
  const Mat4& s_y = pxy.s_y;
  const Mat4& s_z = pyz.s_y;

  Curvatures out;
  out.home = czx.K_y_x;  // K_x^{(z)}
  out.U_xz = czx.U_yx;

  // Metric curvature: nabla_{x,y} nabla_{y,z} nabla_{z,x} with identifications between homes.
  const Mat4 Iz = identification_map(s_z, czx.K_x_y, cyz.K_y_x, tol).U;
  const Mat4 Iy = identification_map(s_y, cyz.K_x_y, cxy.K_y_x, tol).U;
  const Mat4 Ix = identification_map(s_x, cxy.K_x_y, czx.K_y_x, tol).U;
  for (int j = 0; j < 5; ++j) {
    TangentVector u{out.home.generators[j], out.home};
    u = metric_connection(czx, u);
    u = conjugate_tangent(Iz, u, cyz.K_y_x);
    u = metric_connection(cyz, u);
    u = conjugate_tangent(Iy, u, cxy.K_y_x);
    u = metric_connection(cxy, u);
    u = conjugate_tangent(Ix, u, out.home);
    out.R_metric.col(j) = clifford_coords(out.home, u.rep).real();
  }
  const auto hop = [](const SpinConnectionResult& c) { return Mat4(spin_adjoint(c.U_xy) * c.D * c.U_yx); };
  out.R_metric_unitary = Ix * hop(cxy) * Iy * hop(cyz) * Iz * hop(czx);

  out.R_spin_unspliced = cxy.D * cyz.D * czx.D;
  const Mat4 Ux = splice_map(s_x, czx.v_yx, cxy.v_xy, tol);
  const Mat4 Uy = splice_map(s_y, cxy.v_yx, cyz.v_xy, tol);
  const Mat4 Uz = splice_map(s_z, cyz.v_yx, czx.v_xy, tol);
  out.R_spin_spliced = Ux * cxy.D * Uy * cyz.D * Uz * czx.D;
  return out;
}

TangentVector apply_metric_curvature(const Curvatures& c, const TangentVector& u) {
  if (!same_span(u.home, c.home)) throw Error(Errc::HomeMismatch, "curvature acts on K_x^(z)");
  return {c.R_metric_unitary * u.rep * c.R_metric_unitary.inverse(), c.home};
}

ReducedTangent reduce_tangent(const CliffordSubspace& K, const TangentVector& u) {
  const double uu = tangent_inner(u, u);
  if (!(uu < 0.0)) throw Error(Errc::NotSpacelike, "reduction needs <u,u> < 0");
  auto comp = orthogonal_complement(K, u.rep, 4);
  std::stable_sort(comp.begin(), comp.end(), [](const Mat4& a, const Mat4& b) {
    return trace_inner(a, a).real() > trace_inner(b, b).real();
  });
  ReducedTangent r;
  for (int i = 0; i < 4; ++i) r.generators[i] = comp[i];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.gram(i, j) = trace_inner(comp[i], comp[j]).real();
  r.e5 = -I1 * u.rep / std::sqrt(-uu);
  return r;
}

}  // namespace cfs
