#include "cfs/transport.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

namespace cfs {

TimelikeCurve straight_segment(const Event& start, const RVec4& velocity, double length) {
  const Event u = Event::from(velocity);
  const double u2 = minkowski_square(u);
  if (!(u2 > 0.0) || !(u.t > 0.0)) throw Error(Errc::NotAdmissible, "velocity must be future-directed timelike");
  if (!(length > 0.0)) throw Error(Errc::InvalidInput, "segment length must be positive");
  const RVec4 n = velocity / std::sqrt(u2);
  const RVec4 x0 = start.vec();
  return {[x0, n](double t) { return Event::from(x0 + t * n); }, length};
}

TimelikeCurve arc_length_curve(std::function<Event(double)> param, double u0, double u1, std::size_t samples) {
  if (!(u1 > u0) || samples < 1) throw Error(Errc::InvalidInput, "empty parameter interval");
  std::vector<double> us(samples + 1), tau(samples + 1, 0.0);
  Event prev = param(u0);
  us[0] = u0;
  for (std::size_t k = 1; k <= samples; ++k) {
    us[k] = u0 + (u1 - u0) * static_cast<double>(k) / static_cast<double>(samples);
    const Event cur = param(us[k]);
    const Event d = cur - prev;
    const double d2 = minkowski_square(d);
    if (!(d2 > 0.0) || !(d.t > 0.0))
      throw Error(Errc::NotAdmissible, "chord " + std::to_string(k) + " is not future timelike");
    tau[k] = tau[k - 1] + std::sqrt(d2);
    prev = cur;
  }
  const double total = tau.back();
  auto inverse = [us, tau, param](double t) {
    const auto it = std::upper_bound(tau.begin(), tau.end(), t);
    std::size_t k = static_cast<std::size_t>(std::distance(tau.begin(), it));
    k = std::clamp<std::size_t>(k, 1, tau.size() - 1);
    const double w = (t - tau[k - 1]) / (tau[k] - tau[k - 1]);
    return param(us[k - 1] + w * (us[k] - us[k - 1]));
  };
  return {inverse, total};
}

void check_curve(const TimelikeCurve& curve, std::size_t N) {
  if (!curve.gamma || !(curve.t_max > 0.0)) throw Error(Errc::NotAdmissible, "curve has empty domain");
  Event prev = curve.gamma(0.0);
  for (std::size_t n = 1; n <= N; ++n) {
    const Event cur = curve.gamma(curve.t_max * static_cast<double>(n) / static_cast<double>(N));
    const Event d = cur - prev;
    if (!(minkowski_square(d) > 0.0) || !(d.t > 0.0))
      throw Error(Errc::NotAdmissible, "samples " + std::to_string(n - 1) + " and " + std::to_string(n) +
                                           " are not future timelike separated");
    prev = cur;
  }
}

namespace {

// One attempt at a fixed eps; throws the underlying error annotated with the segment index.
TransportResult transport_once(const std::vector<Event>& x, const VacuumParams& p, const TransportOptions& opts,
                               const Tolerance& tol) {
  TransportResult r;
  r.eps_used = p.eps;
  const std::size_t N = x.size() - 1;
  for (std::size_t n = 1; n <= N; ++n) {
    const std::string seg = "segment " + std::to_string(n - 1) + "->" + std::to_string(n);
    TransportStep st;
    try {
      const PointPairData pair = dirac_sea_pair(x[n - 1], x[n], p);
      if (p.eps == 0.0) st.kappa = chain_analysis(x[n] - x[n - 1], p, tol).kappa;
      try {
        const SpinConnectionResult c = spin_connection(pair, tol);
        st.D = c.D;
        st.phi = c.phi;
        st.orientation = c.orientation;
        st.v_xy = c.v_xy;
        st.v_yx = c.v_yx;
      } catch (const Error& e) {
        const bool fallback = p.eps == 0.0 && opts.analytic_fallback && !opts.spliced &&
                              e.subreason() == "not_generically_separated";
        if (!fallback) throw;
        const AnalyticConnection a = analytic_connection(x[n - 1], x[n], p, tol);
        st.D = a.D;
        st.phi = a.phi;
        st.orientation = a.orientation;
        st.analytic = true;
      }
    } catch (const Error& e) {
      throw Error(e.code(), seg + ": " + e.what(), e.subreason());
    }
    r.per_step.push_back(st);
  }
  for (std::size_t n = 0; n < N; ++n) {
    r.D_total = r.D_total * r.per_step[n].D;
    if (opts.spliced && n + 1 < N) {
      try {
        r.D_total = r.D_total * splice_map(gamma(0), r.per_step[n].v_yx, r.per_step[n + 1].v_xy, tol);
      } catch (const Error& e) {
        throw Error(e.code(), "splice at point " + std::to_string(n + 1) + ": " + e.what(), e.subreason());
      }
    }
  }
  r.deviation = operator_norm(r.D_total - Mat4::Identity());
  return r;
}

}  // namespace

TransportResult compose_transport(const TimelikeCurve& curve, std::size_t N, const VacuumParams& params,
                                  const TransportOptions& opts, const Tolerance& tol) {
  if (N < 1) throw Error(Errc::InvalidInput, "N must be at least 1");
  check_curve(curve, std::max<std::size_t>(N, 1));
  std::vector<Event> x(N + 1);
  for (std::size_t n = 0; n <= N; ++n) x[n] = curve.gamma(curve.t_max * static_cast<double>(n) / static_cast<double>(N));

  VacuumParams p = params;
  for (int attempt = 0;; ++attempt) {
    try {
      return transport_once(x, p, opts, tol);
    } catch (const Error& e) {
      const bool retry = p.eps > 0.0 && attempt < opts.max_halvings &&
                         (e.code() == Errc::NotSpinConnectable || e.code() == Errc::OutOfDomain);
      if (!retry) throw Error(Errc::NotAdmissible, e.what(), e.subreason());
      p.eps /= 2.0;
    }
  }
}

// ---- curved space ----

CurvatureSample::CurvatureSample() {
  for (auto& m : nabla_ricci) m.setZero();
  for (auto& v : nabla_riemann) v.setZero();
}

CurvatureField constant_field(const CurvatureSample& s, double t0, double t1) {
  return {t0, t1, [s](double) { return s; }};
}

void validate_sample(const CurvatureSample& s, double m) {
  double scale = 1.0;
  for (const auto& v : s.nabla_riemann) scale = std::max(scale, v.cwiseAbs().maxCoeff());
  if (s.nabla_riemann[0].cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw Error(Errc::InvalidInput, "R(e0, e0) must vanish by antisymmetry");
  for (int j = 0; j < 4; ++j)
    if (std::abs(s.nabla_riemann[j](0)) > 1e-9 * scale)
      throw Error(Errc::InvalidInput, "<R(e0, e_j) e0, e0> must vanish by antisymmetry");
  if (s.bounds) {
    const auto& b = *s.bounds;
    const double v = b[0] / (m * m) + b[1] / (m * m * m) + b[2] / (m * m * m * m);
    if (!(v < curvature_bound_constant))
      throw Error(Errc::InvalidInput, "curvature bound exceeded: " + std::to_string(v));
  }
}

RVec4 curvature_source(const CurvatureSample& s) {
  return s.nabla_riemann[0] - s.nabla_riemann[1] - s.nabla_riemann[2] - s.nabla_riemann[3];
}

Mat4 frame_operator(const RVec4& u) {
  Mat4 op = Mat4::Zero();
  for (int a = 0; a < 4; ++a) op += u(a) * gamma(a);
  return op;
}

namespace {

double mass_shell(const CurvatureSample& s, double m) {
  const double v = m * m - s.s / 12.0;
  if (std::abs(v) < 1e-12 * m * m) throw Error(Errc::MassShellDegenerate, "m^2 - s/12 vanishes");
  return v;
}

}  // namespace

DeltaU delta_u(const CurvatureField& field, double t, double delta, const VacuumParams& params) {
  const CurvatureSample s = field.sample(t);
  validate_sample(s, params.m);
  DeltaU d;
  d.components = delta / (6.0 * mass_shell(s, params.m)) * curvature_source(s);
  d.op = frame_operator(d.components);
  return d;
}

Mat4 texp_generator(const CurvatureSample& s, const VacuumParams& params) {
  return frame_operator(curvature_source(s)) * gamma(0) / (6.0 * mass_shell(s, params.m));
}

Mat4 texp_correction(const CurvatureField& field, const VacuumParams& params) {
  namespace ode = boost::numeric::odeint;
  using State = std::array<double, 32>;
  const auto pack = [](const Mat4& M, State& x) {
    for (int k = 0; k < 16; ++k) {
      x[2 * k] = M(k / 4, k % 4).real();
      x[2 * k + 1] = M(k / 4, k % 4).imag();
    }
  };
  const auto unpack = [](const State& x) {
    Mat4 M;
    for (int k = 0; k < 16; ++k) M(k / 4, k % 4) = cplx(x[2 * k], x[2 * k + 1]);
    return M;
  };
  for (double t : {field.t0, 0.5 * (field.t0 + field.t1), field.t1}) validate_sample(field.sample(t), params.m);
  if (field.t1 == field.t0) return Mat4::Identity();

  const auto rhs = [&](const State& x, State& dx, double t) {
    const Mat4 G = texp_generator(field.sample(t), params);
    pack(G * unpack(x), dx);
  };
  State x;
  pack(Mat4::Identity(), x);
  try {
    auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-12, 1e-12);
    ode::integrate_adaptive(stepper, rhs, x, field.t0, field.t1, (field.t1 - field.t0) / 64.0);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(Errc::IntegrationFailure, e.what());
  }
  const Mat4 D = unpack(x);
  if (!D.allFinite()) throw Error(Errc::IntegrationFailure, "non-finite state");
  return D;
}

HadamardLeading hadamard_leading(const CurvatureSample& s, double m, double t, const RVec4& T) {
  HadamardLeading h;
  h.V_scalar = m * m - s.s / 12.0 + s.grad_s.dot(T) / 24.0;
  double nabla = 0.0;
  for (int a = 0; a < 4; ++a) nabla += T(a) * T.dot(s.nabla_ricci[a] * T);
  h.vleck = 1.0 + t * t / 12.0 * T.dot(s.ricci * T) - t * t * t / 24.0 * nabla;
  return h;
}

}  // namespace cfs
