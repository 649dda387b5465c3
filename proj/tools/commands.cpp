#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cfs/ambient_system.hpp"
#include "cfs/bessel.hpp"
#include "cfs/transport.hpp"

namespace cfs::cli {

namespace {

using json = nlohmann::json;

VacuumParams params(const Config& c, bool regularized) {
  if (!(c.mass > 0.0) || !std::isfinite(c.mass)) throw Error(Errc::InvalidInput, "--mass must be positive");
  for (double e : c.eps)
    if (!(e >= 0.0)) throw Error(Errc::InvalidInput, "--eps must be non-negative");
  return {c.mass, regularized && !c.eps.empty() ? c.eps.front() : 0.0};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> grid_or(const Config& c, const std::string& fallback) {
  return parse_grid(c.grid.empty() ? fallback : c.grid);
}

}  // namespace

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> parse_grid(const std::string& spec) {
  double lo = 0.0, hi = 0.0;
  long count = -1;
  char extra = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &count, &extra) != 3)
    throw Error(Errc::InvalidInput, "grid must be lo:hi:count");
  if (count < 0 || !(lo > 0.0) || !(hi >= lo)) throw Error(Errc::InvalidInput, "grid needs 0 < lo <= hi, count >= 0");
  std::vector<double> g;
  for (long k = 0; k < count; ++k) {
    const double w = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
    g.push_back(lo * std::pow(hi / lo, w));
  }
  return g;
}

std::string cmd_phase_plot(const Config& c) {
  const VacuumParams p = params(c, false);
  std::ostringstream out;
  out << "m_sqrt_xi2,phi,kappa\n";
  for (double z : grid_or(c, "0.1:20:400")) {
    const ChainAnalysis a = chain_analysis({z / p.m, 0.0, 0.0, 0.0}, p, c.tol);
    out << fmt(z) << ',' << fmt(*a.phi) << ',' << fmt(*a.kappa) << '\n';
  }
  return out.str();
}

std::string cmd_bessel_check(const Config& c) {
  const VacuumParams p = params(c, false);
  std::ostringstream out;
  out << "z,im_alpha_conj_beta\n";
  for (double z : grid_or(c, "0.05:50:200")) {
    const KernelCoeffs k = kernel({z / p.m, 0.0, 0.0, 0.0}, p);
    out << fmt(z) << ',' << fmt((k.alpha * std::conj(k.beta)).imag()) << '\n';
  }
  return out.str();
}

std::string cmd_convergence(const Config& c) {
  const VacuumParams p = params(c, true);
  const std::vector<std::size_t> Ns = c.N.empty() ? std::vector<std::size_t>{8, 16, 32, 64, 128, 256} : c.N;
  const double rapidity = 0.3;
  const TimelikeCurve curve =
      straight_segment({}, RVec4(std::cosh(rapidity), std::sinh(rapidity), 0.0, 0.0), 1.0 / p.m);
  TransportOptions opts;
  opts.spliced = c.spliced;
  std::ostringstream out;
  out << "N,deviation,ratio,eps_used\n";
  double prev = 0.0;
  for (std::size_t N : Ns) {
    if (N < 1) throw Error(Errc::InvalidInput, "--N entries must be at least 1");
    const TransportResult r = compose_transport(curve, N, p, opts, c.tol);
    out << N << ',' << fmt(r.deviation) << ',' << (prev > 0.0 ? fmt(prev / r.deviation) : std::string()) << ','
        << fmt(r.eps_used) << '\n';
    prev = r.deviation;
  }
  return out.str();
}

std::string cmd_nu_table(const Config& c) {
  const double m = params(c, true).m;
  std::ostringstream out;
  out << "m,eps,nu12,nu34,eps3_nu34\n";
  for (double e : c.eps) {
    if (!(e > 0.0)) throw Error(Errc::InvalidInput, "nu-table needs --eps > 0");
    const NuEigenvalues nu = nu_eigenvalues({m, e});
    out << fmt(m) << ',' << fmt(e) << ',' << fmt(nu.nu12) << ',' << fmt(nu.nu34) << ',' << fmt(e * e * e * nu.nu34)
        << '\n';
  }
  return out.str();
}

std::string cmd_audit_system(const Config& c) {
  PairFunction pair;
  std::size_t n = 0;
  std::string source;
  AmbientSystem sys;
  std::vector<LocalSpin> loc;
  std::vector<Event> events;
  if (!c.input.empty() || c.model == "random") {
    if (!c.input.empty()) {
      sys = system_from_json(read_file(c.input), c.tol);
      source = "file";
    } else {
      sys = random_system(c.f, c.points, c.seed);
      source = "random";
    }
    for (const auto& x : sys.points) loc.push_back(localize(x, c.tol));
    n = sys.points.size();
    pair = [&](std::size_t i, std::size_t j) { return ambient_pair(sys, loc, i, j); };
  } else if (c.model == "minkowski") {
    const VacuumParams p = params(c, true);
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t k = 0; k < c.points; ++k) {
      const double t = 4.0 * u(rng) / p.m;
      events.push_back({t, u(rng) / p.m, u(rng) / p.m, u(rng) / p.m});
    }
    n = events.size();
    pair = [&, p](std::size_t i, std::size_t j) { return dirac_sea_pair(events[i], events[j], p); };
    source = "minkowski";
  } else {
    throw Error(Errc::InvalidInput, "unknown --model " + c.model);
  }

  const PairwiseAnalysis a = analyze_pairs(n, pair, c.tol);
  const CausalReport cr = check_causal_axioms(relation_matrix(a));
  const SymmetryReport sr = check_symmetries(a, c.tol);
  std::map<std::string, int> hist{{"timelike", 0}, {"spacelike", 0}, {"lightlike", 0}};
  std::map<std::string, int> fails;
  std::size_t connectable = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a.causal[i][j]) ++hist[causal_name(*a.causal[i][j])];
      if (a.conn[i][j]) ++connectable;
      else ++fails[a.failure[i][j]];
    }
  json j;
  j["schema"] = "cfs-report/1";
  j["source"] = source;
  j["points"] = n;
  j["seed"] = c.seed;
  j["causal"] = {{"irreflexivity_violations", cr.irreflexivity_violations},
                 {"transitivity_violations", cr.transitivity_violations},
                 {"connected_triples", cr.connected_triples},
                 {"future_transitive", cr.future_transitive}};
  j["symmetry"] = {{"parity_preserving", sr.parity_preserving},
                   {"clifford_parallel", sr.clifford_parallel},
                   {"chirally_symmetric", sr.chirally_symmetric},
                   {"max_splice_deviation", sr.max_splice_deviation},
                   {"chiral_residual", sr.chiral_residual}};
  j["classification"] = hist;
  j["spin_connectable_pairs"] = connectable;
  j["failures"] = fails;
  return j.dump(2) + "\n";
}

namespace {

// Single-component toy field used when no curvature file is supplied.
CurvatureField toy_field(double m) {
  CurvatureSample s;
  s.s = 0.05 * m * m;
  s.ricci = Eigen::Matrix4d(Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal()) * (s.s / 4.0);
  s.nabla_riemann[1] = RVec4(0.0, 0.0, 0.02 * m * m * m, 0.0);
  s.bounds = std::array<double, 3>{0.05 * m * m, 0.02 * m * m * m, 0.0};
  return constant_field(s, 0.0, 1.0 / m);
}

}  // namespace

std::string cmd_curved_correction(const Config& c) {
  const VacuumParams p = params(c, false);
  const CurvatureField field = c.input.empty() ? toy_field(p.m) : curvature_field_from_json(read_file(c.input), p.m);
  const Mat4 D = texp_correction(field, p);
  double max_dR = 0.0;
  for (int k = 0; k <= 16; ++k) {
    const CurvatureSample s = field.sample(field.t0 + (field.t1 - field.t0) * k / 16.0);
    max_dR = std::max(max_dR, s.bounds ? (*s.bounds)[1] : curvature_source(s).norm());
  }
  const double L = field.t1 - field.t0;
  json j;
  j["schema"] = "cfs-report/1";
  j["m"] = p.m;
  j["t0"] = field.t0;
  j["t1"] = field.t1;
  j["deviation"] = operator_norm(D - Mat4::Identity());
  j["spin_unitarity_residual"] = operator_norm(spin_adjoint(D) * D - Mat4::Identity());
  j["bound_estimate"] = L * max_dR / (p.m * p.m);
  const DeltaU du = delta_u(field, field.t0, L, p);
  j["delta_u"] = {du.components(0), du.components(1), du.components(2), du.components(3)};
  return j.dump(2) + "\n";
}

}  // namespace cfs::cli
